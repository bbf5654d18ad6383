#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "resplit/frequency.hpp"
#include "resplit/multi_index.hpp"

namespace resplit {

struct Violator {
  MultiIndex j;
  double omega = 0.0;
  int mu = 0;
  double bound = 0.0;  // gamma / mu^alpha
};

struct NonresonanceReport {
  int r = 0;
  double gamma = 0.0;
  double alpha = 0.0;
  int k_max = 0;
  std::size_t audited = 0;
  std::size_t violator_count = 0;
  std::vector<Violator> violators;  // first max_violators, in enumeration order
  double min_ratio = 0.0;           // min |Omega(j)| mu(j)^alpha
  std::optional<MultiIndex> argmin;

  bool holds() const noexcept { return violator_count == 0; }
};

/// Scans every canonical zero-moment j of length 3..r (|a| <= k_max) that is
/// not action-only and checks |Omega(j)| >= gamma / mu(j)^alpha.
NonresonanceReport check_nonresonance(const FrequencyModel& f, int r, double gamma, double alpha,
                                      int k_max, std::size_t max_violators = 10000);

enum class AuditCase { TwoBig = 0, OneBig = 1, NoneBig = 2, ThreeOrMoreBig = 3 };
inline constexpr std::size_t kAuditCaseCount = 4;

const char* audit_case_name(AuditCase c) noexcept;

struct CaseSummary {
  std::size_t count = 0;
  std::size_t exact_zeros = 0;
  std::size_t inequality_violations = 0;  // divisor < (2/pi) |h Omega^h|
  double min_divisor = 0.0;
  double min_scaled = 0.0;  // min |e^{ih Omega^h} - 1| mu^alpha / h
  std::optional<MultiIndex> argmin;
  double argmin_h_omega = 0.0;
};

struct AuditParams {
  double h = 0.0;
  double cutoff = 0.0;  // K
  int ell = 3;
  int k_max = 12;
  double alpha = 1.0;
  // Allows K > pi to demonstrate the resonances a large cut-off admits.
  bool stress = false;
  double resonance_window = 0.5;
  std::size_t max_listed = 1000;
};

struct AuditReport {
  AuditParams params;
  double mu_limit = 0.0;  // K / ((ell - 2) h)
  std::size_t audited = 0;
  std::size_t skipped_action_only = 0;
  std::size_t skipped_mu = 0;
  std::array<CaseSummary, kAuditCaseCount> cases{};
  std::vector<MultiIndex> exact_zero_list;  // first max_listed exact zeros
  // Closest approach of h Omega^h(j) to a nonzero multiple of 2 pi.
  double nearest_resonance_distance = 0.0;
  std::optional<MultiIndex> nearest_resonance;
  double nearest_resonance_h_omega = 0.0;
  std::size_t within_window = 0;

  const CaseSummary& at(AuditCase c) const { return cases[static_cast<std::size_t>(c)]; }
  std::size_t exact_zeros_in_theorem_cases() const noexcept;
  std::size_t inequality_violations() const noexcept;

  // Associative combination of two partial scans over disjoint index sets.
  void merge(const AuditReport& other);
};

/// Brute-force audit of the truncated splitting small divisors
/// |e^{i h Omega^h(j)} - 1| over zero-moment j of length ell, not action-only,
/// with mu(j) <= K / ((ell - 2) h). Entries with |h omega_a| > K count as big;
/// each audited j lands in the class given by its number of big entries.
/// Without stress mode K must not exceed pi.
AuditReport audit_truncated_divisors(const FrequencyModel& f, const AuditParams& params);

std::string audit_to_csv(const AuditReport& report);
std::string audit_to_text(const AuditReport& report);

}  // namespace resplit
