#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "property.hpp"
#include "resplit/errors.hpp"
#include "resplit/resonance.hpp"

using namespace resplit;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
const MultiIndex kTriple{{2, 1}, {5, 1}, {-7, -1}};

ResonanceQuery query(FrequencyModel f, Phase phase, double target, double lo, double hi) {
  ResonanceQuery q;
  q.j = kTriple;
  q.freq = std::move(f);
  q.phase = phase;
  q.target = target;
  q.h_lo = lo;
  q.h_hi = hi;
  return q;
}

}  // namespace

// Roots computed at 30 digits with mpmath findroot.
TEST(FindResonantStep, MidpointDefaultModel) {
  const double h = find_resonant_step(
      query(FrequencyModel::nls_convolution(), Phase::Midpoint, 0.0, 0.01, 1.0));
  EXPECT_NEAR(h, 0.1301064788354996934, 1e-9);
}

TEST(FindResonantStep, MidpointPureSquares) {
  const double h = find_resonant_step(
      query(FrequencyModel::nls_convolution(50, 0.0), Phase::Midpoint, 0.0, 0.01, 1.0));
  EXPECT_NEAR(h, 0.12777531299998798265, 1e-9);
}

TEST(FindResonantStep, MidpointResonantOverrides) {
  const auto f = FrequencyModel::nls_convolution().with_overrides({{2, 10}, {5, 30}, {-7, 40}});
  const double h = find_resonant_step(query(f, Phase::Midpoint, 0.5, 0.01, 1.0));
  EXPECT_NEAR(h, 0.081164467592300316753, 1e-9);
}

TEST(FindResonantStep, SplittingInvertsLinearPhase) {
  const auto f = FrequencyModel::nls_convolution();
  const double omega = omega_sum(kTriple, f);
  const double expect = kTwoPi / std::abs(omega);
  const double h = find_resonant_step(query(f, Phase::Splitting, -kTwoPi, 0.2, 0.4));
  EXPECT_NEAR(h, expect, 1e-10 / std::abs(omega));
}

TEST(FindResonantStep, Errors) {
  const auto f = FrequencyModel::nls_convolution();
  EXPECT_THROW(find_resonant_step(query(f, Phase::Midpoint, 0.0, 0.2, 1.0)), BracketError);
  EXPECT_THROW(find_resonant_step(query(f, Phase::Midpoint, 0.0, 0.0, 1.0)), ParameterError);
  EXPECT_THROW(find_resonant_step(query(f, Phase::Midpoint, 0.0, 0.5, 0.4)), ParameterError);
}

TEST(FindResonantStep, Deterministic) {
  const auto q = query(FrequencyModel::nls_convolution(), Phase::Midpoint, 0.0, 0.01, 1.0);
  EXPECT_EQ(find_resonant_step(q), find_resonant_step(q));
}

TEST(Lattice, DistanceToMultiplesOfTwoPi) {
  auto [d0, l0] = distance_to_2pi_lattice(0.1);
  EXPECT_NEAR(d0, 0.1, 1e-16);
  EXPECT_EQ(l0, 0);
  auto [d1, l1] = distance_to_2pi_lattice(-3 * kTwoPi + 0.01);
  EXPECT_NEAR(d1, 0.01, 1e-12);
  EXPECT_EQ(l1, -3);
}

TEST(Scan, SplittingHitsAtMultiplesOfReciprocalOmega) {
  const auto f = FrequencyModel::nls_convolution();
  const double omega = std::abs(omega_sum(kTriple, f));
  const auto hits = scan_resonances(kTriple, f, Phase::Splitting, 0.01, 1.0, 2000, 0.05);
  ASSERT_EQ(hits.size(), 3u);
  for (int l = 1; l <= 3; ++l) {
    EXPECT_NEAR(hits[l - 1].h, kTwoPi * l / omega, 1e-11);
    EXPECT_EQ(std::abs(hits[l - 1].ell), l);
    EXPECT_TRUE(hits[l - 1].refined);
  }
}

TEST(Scan, HitsReproduceTheirPhase) {
  const auto f = FrequencyModel::nls_convolution();
  for (auto phase : {Phase::Splitting, Phase::Midpoint}) {
    for (const auto& hit : scan_resonances(kTriple, f, phase, 0.01, 3.0, 3000, 0.05)) {
      EXPECT_NEAR(psi_sum(kTriple, f, hit.h, phase), hit.psi, 1e-12);
      EXPECT_LE(hit.distance, 0.05);
    }
  }
}

TEST(Scan, EmptyWhenPhaseStaysAway) {
  // midpoint Psi of the triple stays within (1.3, 1.7) on this range
  const auto f = FrequencyModel::nls_convolution();
  EXPECT_TRUE(scan_resonances(kTriple, f, Phase::Midpoint, 0.5, 0.6, 100, 0.05).empty());
}

TEST(Scan, Output) {
  const auto f = FrequencyModel::nls_convolution();
  const auto hits = scan_resonances(kTriple, f, Phase::Splitting, 0.01, 0.4, 500);
  EXPECT_EQ(hits_to_csv(hits).rfind("h,psi,ell,divisor,distance,refined\n", 0), 0u);
  EXPECT_NE(hits_to_text(hits).find("Psi(h)"), std::string::npos);
}

TEST(ResonanceProperty, SplittingRootsSolveLinearEquation) {
  const auto f = FrequencyModel::nls_convolution();
  proptest::for_all("h* Omega = target", 200, [&](proptest::Gen& g, int) {
    std::vector<IndexEntry> e;
    long m = 0;
    for (int i = 0; i < 3; ++i) {
      e.push_back({g.integer(-20, 20), g.sign()});
      m += e.back().moment();
    }
    if (std::abs(m) > 50) return;
    e.push_back({static_cast<int>(-m), 1});
    const MultiIndex j(e);
    const double omega = omega_sum(j, f);
    if (std::abs(omega) < 1e-3) return;
    const double target = g.real(0.1, 10.0) * (omega > 0 ? 1 : -1);
    ResonanceQuery q;
    q.j = j;
    q.freq = f;
    q.phase = Phase::Splitting;
    q.target = target;
    q.h_lo = 0.5 * target / omega;
    q.h_hi = 2.0 * target / omega;
    const double h = find_resonant_step(q);
    EXPECT_GE(h, q.h_lo);
    EXPECT_LE(h, q.h_hi);
    EXPECT_NEAR(h * omega, target, 1e-10);
  });
}
