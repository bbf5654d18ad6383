#include "resplit/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "resplit/errors.hpp"

namespace resplit {

FrequencyModel::FrequencyModel(FrequencyKind kind, int index_bound, double potential_scale,
                               std::map<int, double> overrides)
    : kind_(kind),
      index_bound_(index_bound),
      potential_scale_(potential_scale),
      overrides_(std::move(overrides)) {
  if (index_bound_ < 1) {
    throw ParameterError("frequency model: index_bound must be positive");
  }
  for (const auto& [a, w] : overrides_) {
    if (std::abs(a) > index_bound_) {
      throw RangeError("frequency model: override index " + std::to_string(a) +
                       " outside |a| <= " + std::to_string(index_bound_));
    }
    if (!std::isfinite(w)) {
      throw ParameterError("frequency model: non-finite override at index " + std::to_string(a));
    }
  }
}

FrequencyModel FrequencyModel::nls_convolution(int index_bound, double potential_scale) {
  return FrequencyModel(FrequencyKind::NlsConvolution, index_bound, potential_scale, {});
}

FrequencyModel FrequencyModel::explicit_table(std::map<int, double> table, int index_bound) {
  return FrequencyModel(FrequencyKind::Explicit, index_bound, 0.0, std::move(table));
}

FrequencyModel FrequencyModel::with_overrides(const std::map<int, double>& overrides) const {
  auto merged = overrides_;
  for (const auto& [a, w] : overrides) merged[a] = w;
  return FrequencyModel(kind_, index_bound_, potential_scale_, std::move(merged));
}

bool FrequencyModel::in_range(int a) const noexcept { return std::abs(a) <= index_bound_; }

double FrequencyModel::operator()(int a) const {
  if (!in_range(a)) {
    throw RangeError("frequency: index " + std::to_string(a) + " outside |a| <= " +
                     std::to_string(index_bound_));
  }
  if (auto it = overrides_.find(a); it != overrides_.end()) return it->second;
  if (kind_ == FrequencyKind::Explicit) {
    throw RangeError("frequency: explicit model has no entry for index " + std::to_string(a));
  }
  const double k2 = static_cast<double>(a) * static_cast<double>(a);
  return k2 - potential_scale_ * 2.0 / (10.0 + 2.0 * k2);
}

double FrequencyModel::max_abs() const {
  double m = 0.0;
  for (int a = -index_bound_; a <= index_bound_; ++a) {
    if (kind_ == FrequencyKind::Explicit && !overrides_.contains(a)) continue;
    m = std::max(m, std::abs((*this)(a)));
  }
  return m;
}

double frequency(const FrequencyModel& model, int a) { return model(a); }

bool is_kept(double h, double cutoff, double omega) noexcept {
  return !(std::abs(h * omega) > cutoff);
}

double truncate(const FrequencyModel& model, double h, double cutoff, int a) {
  if (!(h > 0.0)) throw ParameterError("truncate: step h must be positive");
  if (!(cutoff > 0.0)) throw ParameterError("truncate: cut-off K must be positive");
  const double w = model(a);
  return is_kept(h, cutoff, w) ? w : 0.0;
}

}  // namespace resplit
