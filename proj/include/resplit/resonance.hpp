#pragma once

#include <string>
#include <utility>
#include <vector>

#include "resplit/frequency.hpp"
#include "resplit/multi_index.hpp"

namespace resplit {

struct ResonanceQuery {
  MultiIndex j;
  FrequencyModel freq = FrequencyModel::nls_convolution();
  Phase phase = Phase::Midpoint;
  double target = 0.0;  // radians
  double h_lo = 0.0;
  double h_hi = 0.0;
  double tol = 1e-10;
};

/// Step h* in [h_lo, h_hi] with |Psi(h*, j) - target| < tol. Bisection with
/// secant (Illinois) acceleration. Throws BracketError without a sign change
/// and ParameterError for h_lo <= 0 or an empty bracket.
double find_resonant_step(const ResonanceQuery& q);

struct ResonanceHit {
  double h = 0.0;
  double psi = 0.0;
  long ell = 0;             // nearest multiple: Psi ~ 2 pi ell
  double distance = 0.0;    // |Psi - 2 pi ell|
  double divisor = 0.0;     // |e^{i Psi} - 1|
  bool refined = false;     // true when h comes from the root finder
};

/// Distance of psi to the nearest multiple of 2 pi and that multiple.
std::pair<double, long> distance_to_2pi_lattice(double psi) noexcept;

/// Samples Psi(h, j) on n_grid uniform points of [lo, hi] and reports one hit
/// per cluster of consecutive samples within `window` of 2 pi Z, refined by
/// find_resonant_step when the cluster brackets a crossing.
std::vector<ResonanceHit> scan_resonances(const MultiIndex& j, const FrequencyModel& freq,
                                          Phase phase, double lo, double hi, int n_grid,
                                          double window = 0.05);

std::string hits_to_csv(const std::vector<ResonanceHit>& hits);
std::string hits_to_text(const std::vector<ResonanceHit>& hits);

}  // namespace resplit
