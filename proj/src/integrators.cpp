#include "resplit/integrators.hpp"

#include <cmath>
#include <sstream>

#include "resplit/errors.hpp"
#include "resplit/format.hpp"

namespace resplit {

namespace {
const Complex kI{0.0, 1.0};
}  // namespace

DivergenceError::DivergenceError(long step, int iterations, double residual)
    : std::runtime_error("midpoint fixed-point iteration diverged at step " +
                         std::to_string(step) + " after " + std::to_string(iterations) +
                         " iterations (residual " + format_double(residual) +
                         "); the step size is too large for the contraction"),
      step_(step),
      iterations_(iterations),
      residual_(residual) {}

const char* scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::ExactSplit: return "exact-split";
    case Scheme::MidSplit: return "mid-split";
    case Scheme::Midpoint: return "midpoint";
    case Scheme::TruncatedSplit: return "truncated-split";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
  for (auto s : {Scheme::ExactSplit, Scheme::MidSplit, Scheme::Midpoint, Scheme::TruncatedSplit}) {
    if (name == scheme_name(s)) return s;
  }
  return std::nullopt;
}

void SchemeConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("scheme: step h must be positive");
  if (!(cutoff > 0.0)) throw ParameterError("scheme: cut-off K must be positive");
  if (scheme == Scheme::TruncatedSplit && !std::isfinite(cutoff)) {
    throw ParameterError("scheme: truncated-split needs a finite cut-off K (use exact-split)");
  }
  if (scheme == Scheme::Midpoint) {
    if (!(fixed_point_tol > 0.0)) throw ParameterError("scheme: fixed_point_tol must be positive");
    if (fixed_point_max_iters < 1) {
      throw ParameterError("scheme: fixed_point_max_iters must be positive");
    }
  }
}

Complex phase_multiplier(PhaseKind kind, double h, double omega, double cutoff) {
  switch (kind) {
    case PhaseKind::Exact: return std::polar(1.0, -h * omega);
    case PhaseKind::MidpointRational: {
      const Complex z = kI * (h * omega / 2.0);
      return (1.0 - z) / (1.0 + z);
    }
    case PhaseKind::TruncatedExact:
      return is_kept(h, cutoff, omega) ? std::polar(1.0, -h * omega) : Complex{1.0};
  }
  return Complex{1.0};
}

namespace {

void check_model_covers(const FrequencyModel& freq, int n) {
  if (freq.index_bound() < n / 2) {
    throw ParameterError("frequency model index_bound " + std::to_string(freq.index_bound()) +
                         " does not cover grid modes |k| <= " + std::to_string(n / 2));
  }
}

void apply_nonlinear(FourierTransform& fft, std::vector<Complex>& work, SpectralState& state,
                     double h) {
  fft.to_physical(state, work);
  for (auto& u : work) u *= std::polar(1.0, -h * std::norm(u));
  fft.to_spectral(work, state);
}

}  // namespace

SpectralState nonlinear_flow(const SpectralState& state, double h) {
  FourierTransform fft(state.size(), state.grid());
  std::vector<Complex> work;
  SpectralState out = state;
  apply_nonlinear(fft, work, out, h);
  return out;
}

SpectralState linear_phase(const SpectralState& state, double h, PhaseKind kind,
                           const FrequencyModel& freq, double cutoff) {
  if (!(h > 0.0)) throw ParameterError("linear_phase: step h must be positive");
  check_model_covers(freq, state.size());
  SpectralState out = state;
  auto c = out.raw();
  for (int i = 0; i < out.size(); ++i) {
    c[i] *= phase_multiplier(kind, h, freq(signed_mode(i, out.size())), cutoff);
  }
  return out;
}

struct Integrator::Impl {
  SchemeConfig cfg;
  FourierTransform fft;
  std::vector<Complex> work;
  std::vector<Complex> multiplier;  // split schemes
  std::vector<Complex> resolvent;   // midpoint: 1 / (1 + i h w / 2)
  SpectralState w, w_next, g;
  int last_iterations = 0;
  double last_residual = 0.0;

  Impl(const SchemeConfig& c, int n, Grid grid) : cfg(c), fft(n, grid) {
    cfg.validate();
    check_model_covers(cfg.freq, n);
    multiplier.resize(static_cast<std::size_t>(n));
    resolvent.resize(static_cast<std::size_t>(n));
    PhaseKind kind = PhaseKind::Exact;
    if (cfg.scheme == Scheme::MidSplit) kind = PhaseKind::MidpointRational;
    if (cfg.scheme == Scheme::TruncatedSplit) kind = PhaseKind::TruncatedExact;
    for (int i = 0; i < n; ++i) {
      const double om = cfg.freq(signed_mode(i, n));
      multiplier[i] = phase_multiplier(kind, cfg.h, om, cfg.cutoff);
      resolvent[i] = 1.0 / (1.0 + kI * (cfg.h * om / 2.0));
    }
  }

  void split_step(SpectralState& state) {
    if (cfg.nonlinearity) apply_nonlinear(fft, work, state, cfg.h);
    auto c = state.raw();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= multiplier[i];
  }

  // w = (u^{n+1} + u^n) / 2 solves w = (I + i h H0 / 2)^{-1} (u^n - (i h / 2) g(w)).
  void midpoint_step(SpectralState& state) {
    const auto u = state.raw();
    const Complex half_ih = kI * (cfg.h / 2.0);
    w = state;
    last_residual = 0.0;
    for (int it = 1; it <= cfg.fixed_point_max_iters; ++it) {
      if (cfg.nonlinearity) {
        fft.to_physical(w, work);
        for (auto& v : work) v *= std::norm(v);
        fft.to_spectral(work, g);
      }
      if (w_next.size() != state.size()) w_next = state;
      auto wn = w_next.raw();
      const auto wc = w.raw();
      double diff2 = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const Complex rhs = cfg.nonlinearity ? u[i] - half_ih * g.raw()[i] : u[i];
        wn[i] = resolvent[i] * rhs;
        diff2 += std::norm(wn[i] - wc[i]);
      }
      std::swap(w, w_next);
      last_iterations = it;
      last_residual = std::sqrt(diff2);
      if (!std::isfinite(last_residual)) break;
      if (last_residual < cfg.fixed_point_tol) {
        auto out = state.raw();
        const auto wf = w.raw();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2.0 * wf[i] - out[i];
        return;
      }
    }
    throw DivergenceError(-1, last_iterations, last_residual);
  }
};

Integrator::Integrator(const SchemeConfig& cfg, int n, Grid grid)
    : impl_(std::make_unique<Impl>(cfg, n, grid)) {}
Integrator::~Integrator() = default;
Integrator::Integrator(Integrator&&) noexcept = default;
Integrator& Integrator::operator=(Integrator&&) noexcept = default;

const SchemeConfig& Integrator::config() const noexcept { return impl_->cfg; }

void Integrator::step(SpectralState& state) {
  if (state.size() != impl_->fft.size() || state.grid() != impl_->fft.grid()) {
    throw ParameterError("integrator: state does not match the integrator grid");
  }
  if (impl_->cfg.scheme == Scheme::Midpoint) {
    impl_->midpoint_step(state);
  } else {
    impl_->split_step(state);
  }
}

int Integrator::last_iterations() const noexcept { return impl_->last_iterations; }
double Integrator::last_residual() const noexcept { return impl_->last_residual; }

namespace {

SpectralState single_step(const SpectralState& state, const SchemeConfig& cfg, Scheme expected) {
  if (cfg.scheme != expected) {
    throw ParameterError(std::string("step: configuration is for ") + scheme_name(cfg.scheme) +
                         ", not " + scheme_name(expected));
  }
  Integrator integrator(cfg, state.size(), state.grid());
  SpectralState out = state;
  integrator.step(out);
  return out;
}

}  // namespace

SpectralState step_midsplit(const SpectralState& state, const SchemeConfig& cfg) {
  return single_step(state, cfg, Scheme::MidSplit);
}
SpectralState step_midpoint(const SpectralState& state, const SchemeConfig& cfg) {
  return single_step(state, cfg, Scheme::Midpoint);
}
SpectralState step_truncated_split(const SpectralState& state, const SchemeConfig& cfg) {
  return single_step(state, cfg, Scheme::TruncatedSplit);
}
SpectralState step_exact_split(const SpectralState& state, const SchemeConfig& cfg) {
  return single_step(state, cfg, Scheme::ExactSplit);
}

double cfl_step(const FrequencyModel& freq, int n, double cfl) {
  double m = 0.0;
  for (int k = -n / 2; k < n / 2; ++k) m = std::max(m, std::abs(freq(k)));
  if (m == 0.0) throw ParameterError("cfl_step: all frequencies vanish");
  return cfl / m;
}

namespace {

double weighted_drift(const std::vector<double>& now, const std::vector<double>& initial,
                      const std::vector<double>& weights) {
  double d = 0.0;
  for (std::size_t i = 0; i < now.size(); ++i) d += weights[i] * std::abs(now[i] - initial[i]);
  return d;
}

}  // namespace

RunOutcome run_checked(const SpectralState& initial, const SchemeConfig& cfg, long n_steps,
                       long record_every, double sobolev_s) {
  if (n_steps < 0) throw ParameterError("run: n_steps must be >= 0");
  if (record_every < 1) throw ParameterError("run: record_every must be >= 1");
  Integrator integrator(cfg, initial.size(), initial.grid());

  const int n = initial.size();
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    weights[i] = std::pow(std::max(1, std::abs(signed_mode(i, n))), 2.0 * sobolev_s);
  }
  const auto initial_actions = index_actions(initial);
  const double l2_0 = l2_norm(initial);

  RunOutcome outcome;
  auto& series = outcome.series;
  series.h = cfg.h;
  series.sobolev_s = sobolev_s;
  series.n = n;

  auto record = [&](const SpectralState& s, long step, double drift, double sob) {
    series.records.push_back(
        {step, static_cast<double>(step) * cfg.h, actions(s), l2_norm(s), sob, drift});
  };

  series.max_sobolev = sobolev_norm(initial, sobolev_s);
  record(initial, 0, 0.0, series.max_sobolev);

  SpectralState state = initial;
  for (long step = 1; step <= n_steps; ++step) {
    try {
      integrator.step(state);
    } catch (const DivergenceError& e) {
      outcome.failure = DivergenceInfo{step, e.iterations(), e.residual()};
      break;
    }
    series.steps_completed = step;
    const double drift = weighted_drift(index_actions(state), initial_actions, weights);
    const double sob = sobolev_norm(state, sobolev_s);
    series.max_weighted_drift = std::max(series.max_weighted_drift, drift);
    series.max_sobolev = std::max(series.max_sobolev, sob);
    if (l2_0 > 0.0) {
      series.max_l2_relative_change =
          std::max(series.max_l2_relative_change, std::abs(l2_norm(state) - l2_0) / l2_0);
    }
    if (step % record_every == 0 || step == n_steps) record(state, step, drift, sob);
  }
  outcome.final_state = std::move(state);
  return outcome;
}

ActionSeries run(const SpectralState& initial, const SchemeConfig& cfg, long n_steps,
                 long record_every, double sobolev_s) {
  auto outcome = run_checked(initial, cfg, n_steps, record_every, sobolev_s);
  if (outcome.failure) {
    throw DivergenceError(outcome.failure->step, outcome.failure->iterations,
                          outcome.failure->residual);
  }
  return std::move(outcome.series);
}

SpectralState advance(const SpectralState& initial, const SchemeConfig& cfg, long n_steps) {
  Integrator integrator(cfg, initial.size(), initial.grid());
  SpectralState state = initial;
  for (long step = 1; step <= n_steps; ++step) {
    try {
      integrator.step(state);
    } catch (const DivergenceError& e) {
      throw DivergenceError(step, e.iterations(), e.residual());
    }
  }
  return state;
}

std::string series_to_csv(const ActionSeries& series) {
  std::ostringstream out;
  out << 't';
  for (int k = 0; k < series.n / 2; ++k) out << ",A_" << k;
  out << ",l2_norm,sobolev_s\n";
  for (const auto& r : series.records) {
    out << format_double(r.t);
    for (double a : r.actions) out << ',' << format_double(a);
    out << ',' << format_double(r.l2) << ',' << format_double(r.sobolev) << '\n';
  }
  return out.str();
}

}  // namespace resplit
