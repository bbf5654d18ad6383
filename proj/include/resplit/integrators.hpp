#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "resplit/frequency.hpp"
#include "resplit/spectral.hpp"

namespace resplit {

enum class Scheme { ExactSplit, MidSplit, Midpoint, TruncatedSplit };
enum class PhaseKind { Exact, MidpointRational, TruncatedExact };

const char* scheme_name(Scheme s) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

struct SchemeConfig {
  Scheme scheme = Scheme::MidSplit;
  double h = 0.1;
  double cutoff = kNoCutoff;  // K, read by TruncatedSplit only
  double fixed_point_tol = 1e-12;
  int fixed_point_max_iters = 200;
  bool nonlinearity = true;  // false switches off the cubic term (linear-limit checks)
  FrequencyModel freq = FrequencyModel::nls_convolution();

  void validate() const;
};

/// Multiplier applied to mode k by a linear phase map:
///   Exact            e^{-i h w}
///   MidpointRational (1 - i h w / 2) / (1 + i h w / 2)
///   TruncatedExact   e^{-i h w} if |h w| <= K, else 1
Complex phase_multiplier(PhaseKind kind, double h, double omega, double cutoff = kNoCutoff);

/// Exact flow of the cubic part: u(x_m) -> exp(-i h |u(x_m)|^2) u(x_m).
SpectralState nonlinear_flow(const SpectralState& state, double h);

SpectralState linear_phase(const SpectralState& state, double h, PhaseKind kind,
                           const FrequencyModel& freq, double cutoff = kNoCutoff);

/// One-step map of a scheme with preallocated transform workspace. The
/// configuration is fixed at construction. Not thread safe; use one per run.
class Integrator {
 public:
  Integrator(const SchemeConfig& cfg, int n, Grid grid);
  ~Integrator();
  Integrator(Integrator&&) noexcept;
  Integrator& operator=(Integrator&&) noexcept;

  const SchemeConfig& config() const noexcept;

  /// Advances in place. Midpoint throws DivergenceError (step index -1) when
  /// the fixed-point solve does not reach the tolerance.
  void step(SpectralState& state);

  // Fixed-point iterations used by the last Midpoint step.
  int last_iterations() const noexcept;
  double last_residual() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SpectralState step_midsplit(const SpectralState& state, const SchemeConfig& cfg);
SpectralState step_midpoint(const SpectralState& state, const SchemeConfig& cfg);
SpectralState step_truncated_split(const SpectralState& state, const SchemeConfig& cfg);
SpectralState step_exact_split(const SpectralState& state, const SchemeConfig& cfg);

/// Largest step with h * max_k |omega_k| <= cfl over the grid modes of size n.
double cfl_step(const FrequencyModel& freq, int n, double cfl = 1.0);

struct ActionRecord {
  long step = 0;
  double t = 0.0;
  std::vector<double> actions;  // A_0 .. A_{N/2-1}
  double l2 = 0.0;
  double sobolev = 0.0;
  double weighted_drift = 0.0;  // sum_a max(1,|a|)^{2s} |I_a(z^n) - I_a(z^0)|
};

struct ActionSeries {
  double h = 0.0;
  double sobolev_s = 0.0;
  int n = 0;
  long steps_completed = 0;
  std::vector<ActionRecord> records;
  // Suprema over every step, not only recorded ones.
  double max_weighted_drift = 0.0;
  double max_sobolev = 0.0;
  double max_l2_relative_change = 0.0;
};

struct DivergenceInfo {
  long step = 0;
  int iterations = 0;
  double residual = 0.0;
};

struct RunOutcome {
  ActionSeries series;
  SpectralState final_state;  // last successfully computed state
  std::optional<DivergenceInfo> failure;
};

/// Iterates the configured step n_steps times, recording the initial state and
/// every record_every-th step (and the last one). Stops at the first
/// divergence and reports it alongside the partial series.
RunOutcome run_checked(const SpectralState& initial, const SchemeConfig& cfg, long n_steps,
                       long record_every = 1, double sobolev_s = 1.0);

/// As run_checked but throws DivergenceError carrying the failing step.
ActionSeries run(const SpectralState& initial, const SchemeConfig& cfg, long n_steps,
                 long record_every = 1, double sobolev_s = 1.0);

/// Advances a state by n_steps without recording.
SpectralState advance(const SpectralState& initial, const SchemeConfig& cfg, long n_steps);

/// Header "t,A_0,...,A_{N/2-1},l2_norm,sobolev_s" then one row per record.
std::string series_to_csv(const ActionSeries& series);

}  // namespace resplit
