#include "resplit/multi_index.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <tuple>

#include "resplit/errors.hpp"

namespace resplit {

int IndexEntry::weight() const noexcept { return std::max(1, std::abs(a)); }

bool canonical_less(const IndexEntry& lhs, const IndexEntry& rhs) noexcept {
  return std::tuple(-std::abs(lhs.a), lhs.a, lhs.delta) <
         std::tuple(-std::abs(rhs.a), rhs.a, rhs.delta);
}

MultiIndex::MultiIndex(std::vector<IndexEntry> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.delta != 1 && e.delta != -1) {
      throw ParameterError("multi-index: sign must be +1 or -1");
    }
  }
}

MultiIndex::MultiIndex(std::initializer_list<IndexEntry> entries)
    : MultiIndex(std::vector<IndexEntry>(entries)) {}

MultiIndex MultiIndex::conjugate() const {
  std::vector<IndexEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.conjugate());
  return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::canonical() const {
  auto sorted = entries_;
  std::sort(sorted.begin(), sorted.end(), canonical_less);
  return MultiIndex(std::move(sorted));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '(')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == ')')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParameterError("multi-index: cannot parse " + std::string(what) + " '" +
                         std::string(s) + "'");
  }
  return v;
}

}  // namespace

MultiIndex parse_multi_index(std::string_view text) {
  std::vector<IndexEntry> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";,", start);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ParameterError("multi-index: expected 'a:sign' entry, got '" + std::string(item) + "'");
    }
    const int a = parse_int(item.substr(0, colon), "index");
    auto sign = trim(item.substr(colon + 1));
    int delta = 0;
    if (sign == "+" || sign == "-") {
      delta = sign == "+" ? 1 : -1;
    } else {
      delta = parse_int(sign, "sign");
    }
    if (delta != 1 && delta != -1) throw ParameterError("multi-index: sign must be +1 or -1");
    entries.push_back({a, delta});
  }
  return MultiIndex(std::move(entries));
}

std::string format_multi_index(const MultiIndex& j) {
  std::string out;
  for (const auto& e : j.entries()) {
    if (!out.empty()) out += ';';
    out += std::to_string(e.a);
    out += e.delta > 0 ? ":+1" : ":-1";
  }
  return out;
}

long moment(const MultiIndex& j) noexcept {
  long m = 0;
  for (const auto& e : j.entries()) m += e.moment();
  return m;
}

MuS mu_S(const MultiIndex& j) {
  if (j.size() < 3) {
    throw ArityError("mu_S: multi-index needs at least 3 entries, got " +
                     std::to_string(j.size()));
  }
  std::vector<int> w;
  w.reserve(j.size());
  for (const auto& e : j.entries()) w.push_back(e.weight());
  std::partial_sort(w.begin(), w.begin() + 3, w.end(), std::greater<>());
  return {w[2], w[0] - w[1] + w[2]};
}

bool is_action_only(const MultiIndex& j) {
  if (j.size() % 2 != 0) return false;
  return j.canonical() == j.conjugate().canonical();
}

double omega_sum(const MultiIndex& j, const FrequencyModel& f) {
  double s = 0.0;
  for (const auto& e : j.entries()) s += e.delta * f(e.a);
  return s;
}

double psi_sum(const MultiIndex& j, const FrequencyModel& f, double h, Phase phase) {
  if (!(h > 0.0)) throw ParameterError("psi_sum: step h must be positive");
  if (phase == Phase::Splitting) return h * omega_sum(j, f);
  double s = 0.0;
  for (const auto& e : j.entries()) s += e.delta * 2.0 * std::atan(h * f(e.a) / 2.0);
  return s;
}

double small_divisor(double theta) noexcept { return 2.0 * std::abs(std::sin(theta / 2.0)); }

ZeroMomentStream::ZeroMomentStream(int r, int k_max) : r_(r), k_max_(k_max) {
  if (r < 2) throw ParameterError("enumerate_zero_moment: r must be >= 2");
  if (k_max < 1) throw ParameterError("enumerate_zero_moment: k_max must be >= 1");
  for (int a = -k_max; a <= k_max; ++a) {
    alphabet_.push_back({a, 1});
    alphabet_.push_back({a, -1});
  }
  std::sort(alphabet_.begin(), alphabet_.end(), canonical_less);
  pos_.assign(static_cast<std::size_t>(r_), -1);
  prefix_.assign(static_cast<std::size_t>(r_) + 1, 0);
}

bool ZeroMomentStream::next(MultiIndex& out) {
  if (done_) return false;
  const int m = static_cast<int>(alphabet_.size());
  int i = started_ ? r_ - 1 : 0;
  started_ = true;
  while (i >= 0) {
    const long reach = static_cast<long>(r_ - 1 - i) * k_max_;
    int p = pos_[i] + 1;
    for (; p < m; ++p) {
      if (std::abs(prefix_[i] + alphabet_[p].moment()) <= reach) break;
    }
    if (p >= m) {
      --i;
      continue;
    }
    pos_[i] = p;
    prefix_[i + 1] = prefix_[i] + alphabet_[p].moment();
    if (i == r_ - 1) {
      std::vector<IndexEntry> entries;
      entries.reserve(static_cast<std::size_t>(r_));
      for (int q : pos_) entries.push_back(alphabet_[q]);
      out = MultiIndex(std::move(entries));
      return true;
    }
    ++i;
    pos_[i] = pos_[i - 1] - 1;
  }
  done_ = true;
  return false;
}

void for_each_zero_moment(int r, int k_max, const std::function<void(const MultiIndex&)>& fn) {
  ZeroMomentStream stream(r, k_max);
  MultiIndex j;
  while (stream.next(j)) fn(j);
}

}  // namespace resplit
