#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "property.hpp"
#include "resplit/errors.hpp"
#include "resplit/spectral.hpp"

using namespace resplit;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

SpectralState random_state(proptest::Gen& g, int n, Grid grid, double scale = 1.0) {
  SpectralState s(n, grid);
  for (int k = s.k_min(); k <= s.k_max(); ++k) {
    s[k] = scale * Complex{g.real(-1, 1), g.real(-1, 1)} / (1.0 + k * k);
  }
  return s;
}

// Direct O(N^2) synthesis u(x_m) = sum_k u_k e^{i k x_m}.
std::vector<Complex> naive_physical(const SpectralState& s) {
  const int n = s.size();
  const double shift = s.grid() == Grid::Shifted ? 0.5 : 0.0;
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double x = kTwoPi * (m + shift) / n;
    for (int k = s.k_min(); k <= s.k_max(); ++k) out[m] += s[k] * std::polar(1.0, k * x);
  }
  return out;
}

}  // namespace

TEST(Spectral, IndexingAndStorageOrder) {
  SpectralState s(8);
  s[-4] = 1.0;
  s[3] = 2.0;
  EXPECT_EQ(s.raw()[4], Complex(1.0));
  EXPECT_EQ(s.raw()[3], Complex(2.0));
  EXPECT_THROW(s[4], RangeError);
  EXPECT_THROW(s[-5], RangeError);
  EXPECT_EQ(signed_mode(5, 8), -3);
  EXPECT_EQ(signed_mode(3, 8), 3);
}

TEST(Spectral, TransformsMatchDirectSums) {
  for (auto grid : {Grid::Standard, Grid::Shifted}) {
    proptest::Gen g(7);
    const auto s = random_state(g, 32, grid);
    FourierTransform fft(32, grid);
    std::vector<Complex> u;
    fft.to_physical(s, u);
    const auto ref = naive_physical(s);
    for (std::size_t m = 0; m < u.size(); ++m) EXPECT_LT(std::abs(u[m] - ref[m]), 1e-13);
    SpectralState back(32, grid);
    fft.to_spectral(u, back);
    for (int k = s.k_min(); k <= s.k_max(); ++k) EXPECT_LT(std::abs(back[k] - s[k]), 1e-14);
  }
}

TEST(Spectral, GridPoints) {
  FourierTransform a(4, Grid::Standard), b(4, Grid::Shifted);
  EXPECT_DOUBLE_EQ(a.points()[1], kTwoPi / 4);
  EXPECT_DOUBLE_EQ(b.points()[0], kTwoPi / 8);
}

TEST(Spectral, ActionsPairOppositeModes) {
  SpectralState s(8);
  s[0] = {0, 2};
  s[1] = 1.0;
  s[-1] = {0, 3};
  s[-4] = 5.0;
  const auto A = actions(s);
  ASSERT_EQ(A.size(), 4u);
  EXPECT_DOUBLE_EQ(A[0], 4.0);
  EXPECT_DOUBLE_EQ(A[1], 10.0);
  EXPECT_DOUBLE_EQ(A[2], 0.0);
}

TEST(Spectral, NormsOfSingleMode) {
  SpectralState s(16);
  s[3] = {0.6, 0.8};
  EXPECT_NEAR(l2_norm(s), std::sqrt(kTwoPi), 1e-15);
  EXPECT_NEAR(sobolev_norm(s, 2), std::sqrt(81.0 * 2.0), 1e-13);
  s[3] = 0;
  s[0] = 1;
  EXPECT_NEAR(sobolev_norm(s, 5), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(sobolev_norm(s, -1), ParameterError);
}

TEST(Spectral, ParsevalOnGrid) {
  proptest::for_all("Parseval", 50, [](proptest::Gen& g, int) {
    const int n = 2 * g.integer(8, 64);
    const auto grid = g.integer(0, 1) ? Grid::Shifted : Grid::Standard;
    const auto s = random_state(g, n, grid);
    FourierTransform fft(n, grid);
    std::vector<Complex> u;
    fft.to_physical(s, u);
    double quad = 0;
    for (auto v : u) quad += std::norm(v);
    quad *= kTwoPi / n;
    EXPECT_NEAR(std::sqrt(quad), l2_norm(s), 1e-12 * l2_norm(s));
  });
}

TEST(Spectral, PaperDatumSampledOnShiftedGrid) {
  const auto s = synthesize_initial(InitialSpec{}, 100);
  EXPECT_EQ(s.grid(), Grid::Shifted);
  FourierTransform fft(100, Grid::Shifted);
  std::vector<Complex> u;
  fft.to_physical(s, u);
  const auto x = fft.points();
  for (int m = 0; m < 100; ++m) {
    const double x_m = kTwoPi * (m + 0.5) / 100;
    const Complex ref = 0.1 / (2 - 2 * std::cos(x_m)) +
                        0.05 * (2.0 * std::polar(1.0, 2 * x_m) - 2.0 * std::polar(1.0, 5 * x_m) +
                                3.0 * std::polar(1.0, 7 * x_m));
    EXPECT_LT(std::abs(u[m] - ref), 1e-12 * std::abs(ref));
    EXPECT_LT(std::abs(paper_datum(x[m]) - ref), 1e-12 * std::abs(ref));
  }
}

TEST(Spectral, PaperDatumOnStandardGridHitsPole) {
  InitialSpec spec;
  spec.grid = Grid::Standard;
  EXPECT_THROW(synthesize_initial(spec, 100), SingularityError);
}

TEST(Spectral, RejectsBadGridSizes) {
  EXPECT_THROW(synthesize_initial(InitialSpec{}, 15), ParameterError);
  EXPECT_THROW(synthesize_initial(InitialSpec{}, 14), ParameterError);
  EXPECT_THROW(synthesize_initial(InitialSpec{}, 8), ParameterError);
}

TEST(Spectral, TableIsCopiedAndScaled) {
  InitialSpec spec;
  spec.source = CoefficientTable{{{1, 1.0}, {-2, Complex{0, 2}}}};
  auto s = synthesize_initial(spec, 16);
  EXPECT_EQ(s.grid(), Grid::Standard);
  EXPECT_EQ(s[-2], Complex(0, 2));
  spec.scale_to = SobolevScaling{3.0, 0.01};
  s = synthesize_initial(spec, 16);
  EXPECT_NEAR(sobolev_norm(s, 3.0), 0.01, 1e-16);
  EXPECT_NEAR(std::abs(s[-2]) / std::abs(s[1]), 2.0, 1e-14);
  spec.source = CoefficientTable{{{9, 1.0}}};
  EXPECT_THROW(synthesize_initial(spec, 16), RangeError);
}

TEST(Spectral, StateCsv) {
  SpectralState s(16);
  s[-8] = {1, -0.5};
  const auto csv = state_to_csv(s);
  EXPECT_EQ(csv.rfind("k,re,im\n-8,1,-0.5\n", 0), 0u);
}
