#pragma once

// Minimal seeded property runner: each case draws its inputs from a fixed
// mt19937_64 stream, so failures reproduce exactly.

#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <string>

namespace proptest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_real(double lo, double hi) {
    return std::exp(real(std::log(lo), std::log(hi)));
  }
  int sign() { return integer(0, 1) ? 1 : -1; }

 private:
  std::mt19937_64 rng_;
};

// Runs body(gen, case_index) for `cases` draws; stops at the first failure.
template <class Body>
void for_all(const std::string& name, int cases, Body body, std::uint64_t seed = 20260415) {
  for (int i = 0; i < cases; ++i) {
    Gen gen(seed + static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL);
    SCOPED_TRACE(name + ", case " + std::to_string(i));
    body(gen, i);
    if (::testing::Test::HasFailure()) return;
  }
}

}  // namespace proptest
