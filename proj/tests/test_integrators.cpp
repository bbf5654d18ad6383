#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "property.hpp"
#include "resplit/errors.hpp"
#include "resplit/integrators.hpp"

using namespace resplit;

namespace {

SpectralState smooth_state(proptest::Gen& g, int n, double size) {
  SpectralState s(n);
  for (int k = -6; k <= 6; ++k) {
    s[k] = Complex{g.real(-1, 1), g.real(-1, 1)} * std::exp(-0.5 * std::abs(k));
  }
  s.scale(size / l2_norm(s));
  return s;
}

SchemeConfig config(Scheme s, double h, double K = kNoCutoff) {
  SchemeConfig c;
  c.scheme = s;
  c.h = h;
  c.cutoff = K;
  c.freq = FrequencyModel::nls_convolution(32);
  return c;
}

double max_diff(const SpectralState& a, const SpectralState& b) {
  double d = 0;
  for (int k = a.k_min(); k <= a.k_max(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace

TEST(PhaseMultiplier, Forms) {
  const double h = 0.3, w = 7.0;
  EXPECT_LT(std::abs(phase_multiplier(PhaseKind::Exact, h, w) - std::polar(1.0, -h * w)), 1e-15);
  EXPECT_LT(std::abs(phase_multiplier(PhaseKind::MidpointRational, h, w) -
                     std::polar(1.0, -2 * std::atan(h * w / 2))),
            1e-15);
  EXPECT_EQ(phase_multiplier(PhaseKind::TruncatedExact, h, w, 1.0), Complex(1.0));
  EXPECT_LT(std::abs(phase_multiplier(PhaseKind::TruncatedExact, h, w, 3.0) -
                     std::polar(1.0, -h * w)),
            1e-15);
}

// A single Fourier mode has constant modulus, so the exact flow is a rotation
// by (w_k + |c|^2) t and every scheme reduces to a scalar recursion.
TEST(PlaneWave, SplittingSchemesRotateByKnownPhase) {
  const int k = 3;
  const Complex c{0.3, 0.4};
  const double h = 0.07, a2 = std::norm(c);
  const auto f = FrequencyModel::nls_convolution(32);
  SpectralState s(64);
  s[k] = c;
  const auto exact = step_exact_split(s, config(Scheme::ExactSplit, h));
  EXPECT_LT(std::abs(exact[k] - c * std::polar(1.0, -h * (f(k) + a2))), 1e-15);
  const auto mid = step_midsplit(s, config(Scheme::MidSplit, h));
  EXPECT_LT(std::abs(mid[k] - c * std::polar(1.0, -h * a2 - 2 * std::atan(h * f(k) / 2))), 1e-15);
  for (int q = s.k_min(); q <= s.k_max(); ++q) {
    if (q != k) {
      EXPECT_LT(std::abs(exact[q]), 1e-15);
    }
  }
}

TEST(PlaneWave, MidpointMatchesScalarImplicitRule) {
  const int k = 2;
  const Complex c{0.5, -0.2};
  const double h = 0.05, a2 = std::norm(c);
  const double w = FrequencyModel::nls_convolution(32)(k);
  // rotation angle phi solves tan(phi/2) = h (w + a2 cos^2(phi/2)) / 2
  double lo = 0, hi = std::numbers::pi - 1e-9;
  auto F = [&](double phi) {
    return std::tan(phi / 2) - h * (w + a2 * std::pow(std::cos(phi / 2), 2)) / 2;
  };
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (F(m) > 0 ? hi : lo) = m;
  }
  SpectralState s(32);
  s[k] = c;
  const auto out = step_midpoint(s, config(Scheme::Midpoint, h));
  EXPECT_LT(std::abs(out[k] - c * std::polar(1.0, -0.5 * (lo + hi))), 1e-12);
}

TEST(Splitting, NonlinearFlowThenLinearPhase) {
  proptest::Gen g(3);
  const auto s = smooth_state(g, 32, 0.5);
  const auto cfg = config(Scheme::ExactSplit, 0.2);
  const auto composed = linear_phase(nonlinear_flow(s, 0.2), 0.2, PhaseKind::Exact, cfg.freq);
  EXPECT_LT(max_diff(step_exact_split(s, cfg), composed), 1e-15);
  const auto reversed = nonlinear_flow(linear_phase(s, 0.2, PhaseKind::Exact, cfg.freq), 0.2);
  EXPECT_GT(max_diff(step_exact_split(s, cfg), reversed), 1e-6);
}

TEST(Splitting, HugeCutoffEqualsExactSplit) {
  proptest::Gen g(4);
  const auto s = smooth_state(g, 32, 0.5);
  EXPECT_EQ(max_diff(step_truncated_split(s, config(Scheme::TruncatedSplit, 0.1, 1e9)),
                     step_exact_split(s, config(Scheme::ExactSplit, 0.1))),
            0.0);
}

TEST(Splitting, TruncationFreezesHighModesInLinearLimit) {
  SpectralState s(32);
  for (int k = -16; k < 16; ++k) s[k] = 1.0;
  auto cfg = config(Scheme::TruncatedSplit, 0.13, std::numbers::pi / 3);
  cfg.nonlinearity = false;
  const auto out = advance(s, cfg, 5);
  for (int k = -16; k < 16; ++k) {
    if (std::abs(0.13 * cfg.freq(k)) > cfg.cutoff) {
      EXPECT_EQ(out[k], Complex(1.0)) << k;
    } else {
      EXPECT_LT(std::abs(out[k] - std::polar(1.0, -5 * 0.13 * cfg.freq(k))), 1e-13) << k;
    }
  }
}

TEST(Midpoint, LinearLimitMatchesMidSplit) {
  proptest::Gen g(5);
  const auto s = smooth_state(g, 32, 1.0);
  auto a = config(Scheme::Midpoint, 0.3);
  auto b = config(Scheme::MidSplit, 0.3);
  a.nonlinearity = b.nonlinearity = false;
  EXPECT_LT(max_diff(advance(s, a, 20), advance(s, b, 20)), 1e-13);
}

TEST(Midpoint, DivergenceIsReportedWithStep) {
  SpectralState s(32);
  s[0] = 40.0;
  s[1] = 25.0;
  const auto cfg = config(Scheme::Midpoint, 0.13);
  try {
    advance(s, cfg, 3);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.step(), 1);
  }
  const auto outcome = run_checked(s, cfg, 3);
  ASSERT_TRUE(outcome.failure.has_value());
  EXPECT_EQ(outcome.failure->step, 1);
  EXPECT_EQ(outcome.series.steps_completed, 0);
  EXPECT_EQ(outcome.series.records.size(), 1u);
}

TEST(Schemes, ValidationErrors) {
  SpectralState s(32);
  EXPECT_THROW(step_midsplit(s, config(Scheme::Midpoint, 0.1)), ParameterError);
  EXPECT_THROW(step_exact_split(s, config(Scheme::ExactSplit, 0.0)), ParameterError);
  EXPECT_THROW(step_truncated_split(s, config(Scheme::TruncatedSplit, 0.1)), ParameterError);
  auto small = config(Scheme::ExactSplit, 0.1);
  small.freq = FrequencyModel::nls_convolution(10);
  EXPECT_THROW(step_exact_split(s, small), ParameterError);
  EXPECT_EQ(parse_scheme("mid-split"), Scheme::MidSplit);
  EXPECT_FALSE(parse_scheme("midsplit").has_value());
}

TEST(Schemes, CflStep) {
  const auto f = FrequencyModel::nls_convolution(50);
  const double h = cfl_step(f, 100, 1.0);
  EXPECT_NEAR(h * 2499.9996007984031936, 1.0, 1e-15);
}

TEST(Run, RecordsScheduleAndFinalStep) {
  proptest::Gen g(6);
  const auto s = smooth_state(g, 32, 0.1);
  const auto series = run(s, config(Scheme::MidSplit, 0.1), 10, 3, 1.0);
  std::vector<long> steps;
  for (const auto& r : series.records) steps.push_back(r.step);
  EXPECT_EQ(steps, (std::vector<long>{0, 3, 6, 9, 10}));
  EXPECT_DOUBLE_EQ(series.records.back().t, 1.0);
  EXPECT_EQ(series.records.front().weighted_drift, 0.0);
  const auto csv = series_to_csv(series);
  EXPECT_EQ(csv.rfind("t,A_0,A_1,", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST(Run, ZeroDataStaysZero) {
  SpectralState s(32);
  for (auto sch : {Scheme::ExactSplit, Scheme::MidSplit, Scheme::Midpoint}) {
    const auto series = run(s, config(sch, 0.1), 20);
    EXPECT_EQ(series.max_weighted_drift, 0.0);
    EXPECT_EQ(series.max_sobolev, 0.0);
  }
}

TEST(IntegratorProperty, L2ConservedBySplittingSchemes) {
  proptest::for_all("L2 conservation", 30, [](proptest::Gen& g, int i) {
    const auto s = smooth_state(g, 32, g.real(0.05, 1.0));
    const double h = g.real(0.01, 0.5);
    const Scheme sch = std::array{Scheme::ExactSplit, Scheme::MidSplit, Scheme::TruncatedSplit}[i % 3];
    const auto out = advance(s, config(sch, h, g.real(0.1, 3.0)), 200);
    EXPECT_NEAR(l2_norm(out), l2_norm(s), 1e-12 * l2_norm(s));
  });
}

TEST(IntegratorProperty, LinearPhasesPreserveEveryAction) {
  proptest::for_all("actions under linear phase", 100, [](proptest::Gen& g, int) {
    const auto s = smooth_state(g, 32, 1.0);
    const double h = g.log_real(1e-3, 10.0);
    const auto f = FrequencyModel::nls_convolution(32);
    for (auto kind : {PhaseKind::Exact, PhaseKind::MidpointRational, PhaseKind::TruncatedExact}) {
      const auto out = linear_phase(s, h, kind, f, g.real(0.1, 3.0));
      const auto a = index_actions(s), b = index_actions(out);
      for (std::size_t q = 0; q < a.size(); ++q) EXPECT_NEAR(a[q], b[q], 1e-15 * (1 + a[q]));
    }
  });
}

TEST(IntegratorProperty, NonlinearFlowPreservesPointwiseModulus) {
  proptest::for_all("|phi_P(u)(x)| = |u(x)|", 30, [](proptest::Gen& g, int) {
    const auto s = smooth_state(g, 32, g.real(0.1, 2.0));
    const auto out = nonlinear_flow(s, g.real(0.01, 1.0));
    FourierTransform fft(32, Grid::Standard);
    std::vector<Complex> u, v;
    fft.to_physical(s, u);
    fft.to_physical(out, v);
    for (std::size_t m = 0; m < u.size(); ++m) EXPECT_NEAR(std::abs(u[m]), std::abs(v[m]), 1e-13);
  });
}
