#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "property.hpp"
#include "resplit/errors.hpp"
#include "resplit/frequency.hpp"

using namespace resplit;

// Reference values evaluated at 30 digits with mpmath.
TEST(Frequency, MatchesHighPrecisionValues) {
  const auto f = FrequencyModel::nls_convolution();
  EXPECT_NEAR(f(0), -0.2, 1e-15);
  EXPECT_NEAR(f(1), 0.83333333333333333333, 1e-15);
  EXPECT_NEAR(f(2), 3.8888888888888888889, 1e-14);
  EXPECT_NEAR(f(5), 24.966666666666666667, 1e-13);
  EXPECT_NEAR(f(7), 48.981481481481481481, 1e-13);
  EXPECT_NEAR(f(50), 2499.9996007984031936, 1e-11);
}

TEST(Frequency, EvenInIndex) {
  const auto f = FrequencyModel::nls_convolution();
  for (int a = 0; a <= 50; ++a) EXPECT_EQ(f(a), f(-a));
}

TEST(Frequency, PotentialScaleZeroGivesSquares) {
  const auto f = FrequencyModel::nls_convolution(50, 0.0);
  for (int a = -50; a <= 50; ++a) EXPECT_EQ(f(a), static_cast<double>(a) * a);
}

TEST(Frequency, OutOfRangeThrows) {
  const auto f = FrequencyModel::nls_convolution(10);
  EXPECT_THROW(f(11), RangeError);
  EXPECT_THROW(frequency(f, -11), RangeError);
  EXPECT_NO_THROW(f(-10));
}

TEST(Frequency, OverridesReplaceSingleEntries) {
  const auto f = FrequencyModel::nls_convolution().with_overrides({{2, 10}, {5, 30}, {-7, 40}});
  EXPECT_EQ(f(2), 10.0);
  EXPECT_EQ(f(5), 30.0);
  EXPECT_EQ(f(-7), 40.0);
  EXPECT_NEAR(f(7), 48.981481481481481481, 1e-13);
  EXPECT_NEAR(f(-2), 3.8888888888888888889, 1e-14);
  EXPECT_EQ(f(2) + f(5) - f(-7), 0.0);
}

TEST(Frequency, ExplicitTableRequiresEntries) {
  const auto f = FrequencyModel::explicit_table({{0, 1.0}, {1, 2.0}}, 1);
  EXPECT_EQ(f(1), 2.0);
  EXPECT_THROW(f(-1), RangeError);
}

TEST(Frequency, TruncationKeepsBoundaryAndDropsBeyond) {
  const auto f = FrequencyModel::nls_convolution();
  const double K = std::numbers::pi / 3;
  // h w_2 = 0.5056 kept, h w_3 = 1.16 dropped at h = 0.13
  EXPECT_EQ(truncate(f, 0.13, K, 2), f(2));
  EXPECT_EQ(truncate(f, 0.13, K, 3), 0.0);
  EXPECT_EQ(truncate(f, 0.13, kNoCutoff, 40), f(40));
  EXPECT_TRUE(is_kept(1.0, 2.0, 2.0));
  EXPECT_FALSE(is_kept(1.0, 2.0, std::nextafter(2.0, 3.0)));
}

TEST(Frequency, TruncationRejectsBadParameters) {
  const auto f = FrequencyModel::nls_convolution();
  EXPECT_THROW(truncate(f, 0.0, 1.0, 1), ParameterError);
  EXPECT_THROW(truncate(f, -0.1, 1.0, 1), ParameterError);
  EXPECT_THROW(truncate(f, 0.1, 0.0, 1), ParameterError);
}

TEST(FrequencyProperty, TruncatedPhaseNeverExceedsCutoff) {
  const auto f = FrequencyModel::nls_convolution();
  proptest::for_all("|h w^h| <= K", 500, [&](proptest::Gen& g, int) {
    const double h = g.log_real(1e-3, 2.0);
    const double K = g.real(0.05, std::numbers::pi);
    const int a = g.integer(-50, 50);
    const double wh = truncate(f, h, K, a);
    EXPECT_LE(std::abs(h * wh), K);
    EXPECT_TRUE(wh == 0.0 || wh == f(a));
  });
}
