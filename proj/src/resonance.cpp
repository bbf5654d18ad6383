#include "resplit/resonance.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "resplit/errors.hpp"
#include "resplit/format.hpp"

namespace resplit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double find_resonant_step(const ResonanceQuery& q) {
  if (!(q.h_lo > 0.0)) throw ParameterError("find_resonant_step: h_lo must be positive");
  if (!(q.h_hi > q.h_lo)) throw ParameterError("find_resonant_step: need h_lo < h_hi");
  if (!(q.tol > 0.0)) throw ParameterError("find_resonant_step: tol must be positive");

  auto f = [&](double h) {
    const double v = psi_sum(q.j, q.freq, h, q.phase) - q.target;
    if (!std::isfinite(v)) throw std::domain_error("find_resonant_step: non-finite phase sum");
    return v;
  };

  double a = q.h_lo, b = q.h_hi;
  double fa = f(a), fb = f(b);
  if (std::abs(fa) < q.tol) return a;
  if (std::abs(fb) < q.tol) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw BracketError("find_resonant_step: Psi - target has the same sign at both ends of [" +
                       format_double(a) + ", " + format_double(b) + "]");
  }

  // Illinois regula falsi, with a bisection whenever the bracket fails to halve.
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    const double width = b - a;
    double c = b - fb * (b - a) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    double fc = f(c);
    if (std::abs(fc) < q.tol) return c;
    if ((fc > 0.0) == (fa > 0.0)) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (b - a > 0.5 * width) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (std::abs(fm) < q.tol) return m;
      if ((fm > 0.0) == (fa > 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
        fb = fm;
      }
      side = 0;
    }
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b)) break;
  }
  const double fa_true = f(a), fb_true = f(b);
  const double best = std::abs(fa_true) < std::abs(fb_true) ? a : b;
  if (std::abs(std::min(std::abs(fa_true), std::abs(fb_true))) < q.tol) return best;
  throw BracketError("find_resonant_step: bracket collapsed without reaching tolerance");
}

std::pair<double, long> distance_to_2pi_lattice(double psi) noexcept {
  const double turns = std::nearbyint(psi / kTwoPi);
  return {std::abs(std::remainder(psi, kTwoPi)), static_cast<long>(turns)};
}

std::vector<ResonanceHit> scan_resonances(const MultiIndex& j, const FrequencyModel& freq,
                                          Phase phase, double lo, double hi, int n_grid,
                                          double window) {
  if (!(lo > 0.0)) throw ParameterError("scan_resonances: lower end must be positive");
  if (!(hi > lo)) throw ParameterError("scan_resonances: need lo < hi");
  if (n_grid < 2) throw ParameterError("scan_resonances: n_grid must be >= 2");

  std::vector<double> hs(static_cast<std::size_t>(n_grid)), psis(hs.size()), dist(hs.size());
  std::vector<long> ells(hs.size());
  for (int i = 0; i < n_grid; ++i) {
    hs[i] = i == n_grid - 1 ? hi : lo + (hi - lo) * i / (n_grid - 1);
    psis[i] = psi_sum(j, freq, hs[i], phase);
    std::tie(dist[i], ells[i]) = distance_to_2pi_lattice(psis[i]);
  }

  std::vector<ResonanceHit> hits;
  int i = 0;
  while (i < n_grid) {
    if (dist[i] >= window) {
      ++i;
      continue;
    }
    int end = i;
    while (end + 1 < n_grid && dist[end + 1] < window) ++end;
    int best = i;
    for (int q = i; q <= end; ++q) {
      if (dist[q] < dist[best]) best = q;
    }
    const long ell = ells[best];
    const double target = kTwoPi * static_cast<double>(ell);

    // Sign change of Psi - target nearest to the best sample, one sample of slack per side.
    const int lo_i = std::max(0, i - 1), hi_i = std::min(n_grid - 1, end + 1);
    int bracket = -1;
    for (int q = lo_i; q < hi_i; ++q) {
      const double fa = psis[q] - target, fb = psis[q + 1] - target;
      if ((fa <= 0.0 && fb >= 0.0) || (fa >= 0.0 && fb <= 0.0)) {
        if (bracket < 0 || std::abs(q - best) < std::abs(bracket - best)) bracket = q;
      }
    }

    ResonanceHit hit;
    hit.h = hs[best];
    if (bracket >= 0) {
      ResonanceQuery rq{j, freq, phase, target, hs[bracket], hs[bracket + 1], 1e-12};
      try {
        hit.h = find_resonant_step(rq);
        hit.refined = true;
      } catch (const BracketError&) {
        hit.refined = false;
      }
    }
    hit.psi = psi_sum(j, freq, hit.h, phase);
    std::tie(hit.distance, hit.ell) = distance_to_2pi_lattice(hit.psi);
    hit.divisor = small_divisor(hit.psi);
    hits.push_back(hit);
    i = end + 1;
  }
  return hits;
}

std::string hits_to_csv(const std::vector<ResonanceHit>& hits) {
  std::ostringstream out;
  out << "h,psi,ell,divisor,distance,refined\n";
  for (const auto& h : hits) {
    out << format_double(h.h) << ',' << format_double(h.psi) << ',' << h.ell << ','
        << format_double(h.divisor) << ',' << format_double(h.distance) << ','
        << (h.refined ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string hits_to_text(const std::vector<ResonanceHit>& hits) {
  std::ostringstream out;
  out << std::setw(25) << "h" << std::setw(26) << "Psi(h)" << std::setw(6) << "ell"
      << std::setw(26) << "|e^{iPsi}-1|" << '\n';
  for (const auto& h : hits) {
    out << std::setw(25) << format_double(h.h) << "  " << std::setw(24) << format_double(h.psi)
        << std::setw(6) << h.ell << "  " << std::setw(24) << format_double(h.divisor)
        << (h.refined ? "" : "  (grid)") << '\n';
  }
  if (hits.empty()) out << "  no resonant steps in range\n";
  return out.str();
}

}  // namespace resplit
