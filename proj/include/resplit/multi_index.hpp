#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "resplit/frequency.hpp"

namespace resplit {

/// j = (a, delta): a signed Fourier index with a sign selecting xi (+1) or eta (-1).
struct IndexEntry {
  int a = 0;
  int delta = 1;

  IndexEntry conjugate() const noexcept { return {a, -delta}; }
  // |j| = max(1, |a|)
  int weight() const noexcept;
  // a * delta
  int moment() const noexcept { return a * delta; }

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

// Canonical entry order: |a| descending, then a, then delta.
bool canonical_less(const IndexEntry& lhs, const IndexEntry& rhs) noexcept;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<IndexEntry> entries);
  MultiIndex(std::initializer_list<IndexEntry> entries);

  const std::vector<IndexEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  MultiIndex conjugate() const;
  MultiIndex canonical() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<IndexEntry> entries_;
};

/// Parses "2:+1;5:+1;-7:-1" (also accepts ',' between entries and bare +/-).
MultiIndex parse_multi_index(std::string_view text);
std::string format_multi_index(const MultiIndex& j);

long moment(const MultiIndex& j) noexcept;

struct MuS {
  int mu = 0;
  int s = 0;
};

/// mu = third largest |j_i|, S = largest - second largest + mu. ArityError for r < 3.
MuS mu_S(const MultiIndex& j);

/// j is its own conjugate as a multiset (depends on the actions only).
bool is_action_only(const MultiIndex& j);

double omega_sum(const MultiIndex& j, const FrequencyModel& f);

enum class Phase { Splitting, Midpoint };

/// Splitting: h * Omega(j). Midpoint: sum_i delta_i * 2 atan(h omega_{a_i} / 2).
double psi_sum(const MultiIndex& j, const FrequencyModel& f, double h, Phase phase);

/// |e^{i theta} - 1| = 2 |sin(theta / 2)|.
double small_divisor(double theta) noexcept;

/// Lazily enumerates every zero-moment multi-index of length r with entries
/// |a| <= k_max, each exactly once, in canonical form and canonical order.
///
/// Depth-first over non-decreasing positions in the canonically sorted entry
/// alphabet; a prefix is dropped as soon as the remaining entries cannot bring
/// the running moment back to zero.
class ZeroMomentStream {
 public:
  ZeroMomentStream(int r, int k_max);

  bool next(MultiIndex& out);

 private:
  int r_;
  int k_max_;
  std::vector<IndexEntry> alphabet_;
  std::vector<int> pos_;
  std::vector<long> prefix_;  // prefix_[i] = moment of the first i entries
  bool started_ = false;
  bool done_ = false;
};

void for_each_zero_moment(int r, int k_max, const std::function<void(const MultiIndex&)>& fn);

}  // namespace resplit
