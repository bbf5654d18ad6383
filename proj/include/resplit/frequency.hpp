#pragma once

#include <limits>
#include <map>

namespace resplit {

inline constexpr double kNoCutoff = std::numeric_limits<double>::infinity();

enum class FrequencyKind { NlsConvolution, Explicit };

/// Frequencies omega_a of the linear operator H0 on signed Fourier indices
/// |a| <= index_bound.
///
/// NlsConvolution evaluates a^2 + potential_scale * Vhat(a) with the
/// convolution potential Vhat(a) = -2 / (10 + 2 a^2). Explicit models take
/// every frequency from the override table. Overrides always win.
/// Immutable once built.
class FrequencyModel {
 public:
  static FrequencyModel nls_convolution(int index_bound = 50, double potential_scale = 1.0);
  static FrequencyModel explicit_table(std::map<int, double> table, int index_bound);

  FrequencyModel with_overrides(const std::map<int, double>& overrides) const;

  FrequencyKind kind() const noexcept { return kind_; }
  int index_bound() const noexcept { return index_bound_; }
  double potential_scale() const noexcept { return potential_scale_; }
  const std::map<int, double>& overrides() const noexcept { return overrides_; }

  bool in_range(int a) const noexcept;

  // Throws RangeError outside [-index_bound, index_bound], or for an Explicit
  // model with no table entry at a.
  double operator()(int a) const;

  // Largest |omega_a| over the retained range.
  double max_abs() const;

 private:
  FrequencyModel(FrequencyKind kind, int index_bound, double potential_scale,
                 std::map<int, double> overrides);

  FrequencyKind kind_;
  int index_bound_;
  double potential_scale_;
  std::map<int, double> overrides_;
};

double frequency(const FrequencyModel& model, int a);

/// omega_a^h: omega_a when |h omega_a| <= K, otherwise 0. K may be kNoCutoff.
double truncate(const FrequencyModel& model, double h, double cutoff, int a);

/// True when mode a keeps its linear phase under the cut-off.
bool is_kept(double h, double cutoff, double omega) noexcept;

}  // namespace resplit
