#include "resplit/nonresonance.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "resplit/errors.hpp"
#include "resplit/format.hpp"

namespace resplit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

NonresonanceReport check_nonresonance(const FrequencyModel& f, int r, double gamma, double alpha,
                                      int k_max, std::size_t max_violators) {
  if (r < 3) throw ParameterError("check_nonresonance: r must be >= 3");
  NonresonanceReport rep;
  rep.r = r;
  rep.gamma = gamma;
  rep.alpha = alpha;
  rep.k_max = k_max;
  rep.min_ratio = kInf;
  for (int ell = 3; ell <= r; ++ell) {
    for_each_zero_moment(ell, k_max, [&](const MultiIndex& j) {
      if (is_action_only(j)) return;
      ++rep.audited;
      const double om = std::abs(omega_sum(j, f));
      const int mu = mu_S(j).mu;
      const double mu_pow = std::pow(static_cast<double>(mu), alpha);
      const double ratio = om * mu_pow;
      if (ratio < rep.min_ratio) {
        rep.min_ratio = ratio;
        rep.argmin = j;
      }
      const double bound = gamma / mu_pow;
      if (om < bound) {
        ++rep.violator_count;
        if (rep.violators.size() < max_violators) rep.violators.push_back({j, om, mu, bound});
      }
    });
  }
  return rep;
}

const char* audit_case_name(AuditCase c) noexcept {
  switch (c) {
    case AuditCase::TwoBig: return "two_big";
    case AuditCase::OneBig: return "one_big";
    case AuditCase::NoneBig: return "none_big";
    case AuditCase::ThreeOrMoreBig: return "three_plus_big";
  }
  return "unknown";
}

std::size_t AuditReport::exact_zeros_in_theorem_cases() const noexcept {
  return at(AuditCase::TwoBig).exact_zeros + at(AuditCase::OneBig).exact_zeros +
         at(AuditCase::NoneBig).exact_zeros;
}

std::size_t AuditReport::inequality_violations() const noexcept {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.inequality_violations;
  return n;
}

void AuditReport::merge(const AuditReport& other) {
  audited += other.audited;
  skipped_action_only += other.skipped_action_only;
  skipped_mu += other.skipped_mu;
  for (std::size_t i = 0; i < kAuditCaseCount; ++i) {
    auto& mine = cases[i];
    const auto& theirs = other.cases[i];
    if (theirs.count == 0) continue;
    if (mine.count == 0 || theirs.min_scaled < mine.min_scaled) {
      mine.min_scaled = theirs.min_scaled;
      mine.argmin = theirs.argmin;
      mine.argmin_h_omega = theirs.argmin_h_omega;
    }
    mine.min_divisor =
        mine.count == 0 ? theirs.min_divisor : std::min(mine.min_divisor, theirs.min_divisor);
    mine.count += theirs.count;
    mine.exact_zeros += theirs.exact_zeros;
    mine.inequality_violations += theirs.inequality_violations;
  }
  for (const auto& j : other.exact_zero_list) {
    if (exact_zero_list.size() >= params.max_listed) break;
    exact_zero_list.push_back(j);
  }
  if (other.nearest_resonance &&
      (!nearest_resonance || other.nearest_resonance_distance < nearest_resonance_distance)) {
    nearest_resonance_distance = other.nearest_resonance_distance;
    nearest_resonance = other.nearest_resonance;
    nearest_resonance_h_omega = other.nearest_resonance_h_omega;
  }
  within_window += other.within_window;
}

AuditReport audit_truncated_divisors(const FrequencyModel& f, const AuditParams& p) {
  if (!(p.h > 0.0)) throw ParameterError("audit: step h must be positive");
  if (!(p.cutoff > 0.0)) throw ParameterError("audit: cut-off K must be positive");
  if (p.ell < 3) throw ParameterError("audit: ell must be >= 3");
  if (!p.stress && p.cutoff > std::numbers::pi) {
    throw ParameterError("audit: K must not exceed pi (|e^{ix}-1| >= 2|x|/pi needs |x| <= pi)");
  }
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  AuditReport rep;
  rep.params = p;
  rep.mu_limit = p.cutoff / (static_cast<double>(p.ell - 2) * p.h);
  rep.nearest_resonance_distance = kInf;

  for_each_zero_moment(p.ell, p.k_max, [&](const MultiIndex& j) {
    if (is_action_only(j)) {
      ++rep.skipped_action_only;
      return;
    }
    const int mu = mu_S(j).mu;
    if (static_cast<double>(mu) > rep.mu_limit) {
      ++rep.skipped_mu;
      return;
    }
    ++rep.audited;

    int big = 0;
    double omega_h = 0.0;
    for (const auto& e : j.entries()) {
      const double w = f(e.a);
      if (is_kept(p.h, p.cutoff, w)) {
        omega_h += e.delta * w;
      } else {
        ++big;
      }
    }
    const auto kind = big >= 3 ? AuditCase::ThreeOrMoreBig
                      : big == 2 ? AuditCase::TwoBig
                      : big == 1 ? AuditCase::OneBig
                                 : AuditCase::NoneBig;
    auto& c = rep.cases[static_cast<std::size_t>(kind)];

    const double x = p.h * omega_h;
    const double divisor = small_divisor(x);
    const double scaled = divisor * std::pow(static_cast<double>(mu), p.alpha) / p.h;
    if (c.count == 0 || scaled < c.min_scaled) {
      c.min_scaled = scaled;
      c.argmin = j;
      c.argmin_h_omega = x;
    }
    c.min_divisor = c.count == 0 ? divisor : std::min(c.min_divisor, divisor);
    ++c.count;

    if (omega_h == 0.0) {
      ++c.exact_zeros;
      if (kind != AuditCase::ThreeOrMoreBig && rep.exact_zero_list.size() < p.max_listed) {
        rep.exact_zero_list.push_back(j);
      }
    }
    if (divisor < (2.0 / std::numbers::pi) * std::abs(x) * (1.0 - 1e-12)) {
      ++c.inequality_violations;
    }

    const double ell_turns = std::nearbyint(x / kTwoPi);
    if (ell_turns != 0.0) {
      const double dist = std::abs(x - ell_turns * kTwoPi);
      if (dist < p.resonance_window) ++rep.within_window;
      if (dist < rep.nearest_resonance_distance) {
        rep.nearest_resonance_distance = dist;
        rep.nearest_resonance = j;
        rep.nearest_resonance_h_omega = x;
      }
    }
  });
  return rep;
}

std::string audit_to_csv(const AuditReport& report) {
  std::ostringstream out;
  out << "case,count,min_divisor,min_scaled_divisor,exact_zeros,inequality_violations,argmin\n";
  for (std::size_t i = 0; i < kAuditCaseCount; ++i) {
    const auto& c = report.cases[i];
    out << audit_case_name(static_cast<AuditCase>(i)) << ',' << c.count << ','
        << (c.count ? format_double(c.min_divisor) : "") << ','
        << (c.count ? format_double(c.min_scaled) : "") << ',' << c.exact_zeros << ','
        << c.inequality_violations << ',' << (c.argmin ? format_multi_index(*c.argmin) : "")
        << '\n';
  }
  return out.str();
}

std::string audit_to_text(const AuditReport& report) {
  const auto& p = report.params;
  std::ostringstream out;
  out << "truncated small-divisor audit\n"
      << "  h = " << format_double(p.h) << ", K = " << format_double(p.cutoff)
      << ", ell = " << p.ell << ", k_max = " << p.k_max << ", alpha = " << format_double(p.alpha)
      << (p.stress ? " (stress mode)" : "") << '\n'
      << "  mu limit K/((ell-2)h) = " << format_double(report.mu_limit) << '\n'
      << "  audited " << report.audited << ", skipped action-only " << report.skipped_action_only
      << ", skipped by mu " << report.skipped_mu << '\n';
  for (std::size_t i = 0; i < kAuditCaseCount; ++i) {
    const auto& c = report.cases[i];
    out << "  " << audit_case_name(static_cast<AuditCase>(i)) << ": count " << c.count;
    if (c.count) {
      out << ", min |e^{ihW}-1| " << format_double(c.min_divisor) << ", min scaled "
          << format_double(c.min_scaled) << " at " << format_multi_index(*c.argmin)
          << ", exact zeros " << c.exact_zeros << ", inequality violations "
          << c.inequality_violations;
    }
    out << '\n';
  }
  out << "  exact zeros outside three_plus_big: " << report.exact_zeros_in_theorem_cases() << '\n';
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < report.exact_zero_list.size() && i < kShown; ++i) {
    out << "    " << format_multi_index(report.exact_zero_list[i]) << '\n';
  }
  if (report.exact_zeros_in_theorem_cases() > kShown) {
    out << "    ... " << report.exact_zeros_in_theorem_cases() - kShown << " more\n";
  }
  if (report.nearest_resonance) {
    out << "  nearest approach to 2*pi*l (l != 0): distance "
        << format_double(report.nearest_resonance_distance) << " at "
        << format_multi_index(*report.nearest_resonance)
        << " (h*Omega^h = " << format_double(report.nearest_resonance_h_omega) << "), "
        << report.within_window << " within window " << format_double(p.resonance_window)
        << '\n';
  }
  return out.str();
}

}  // namespace resplit
