#include <clubgood/equilibrium.hpp>

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace clubgood {
namespace {

using testing::cn_params;
using testing::near_rel;
using testing::us_params;
namespace frozen = testing::frozen;

TEST(ClosedForm, MatchesIndependentRoots) {
  const auto us = optimal_m_closed_form(us_params());
  EXPECT_EQ(us.method, SolveMethod::ClosedForm);
  EXPECT_NEAR(us.m_star, frozen::kUsMStar, 1e-12);
  EXPECT_NEAR(us.w_star, frozen::kUsWStar, 1e-12);
  EXPECT_NEAR(us.mb_at_star, frozen::kUsMbAtStar, 1e-12);
  EXPECT_NEAR(us.mc_at_star, frozen::kUsMbAtStar, 1e-12);
  EXPECT_LT(us.soc_value, 0);

  EXPECT_NEAR(optimal_m(cn_params()), frozen::kCnMStar, 1e-12);
  EXPECT_NEAR(optimal_m(us_params().with_capacity(8.0)), frozen::kUsK8MStar, 1e-12);
}

TEST(ClosedForm, ReportedPeaksWithinTolerance) {
  EXPECT_NEAR(optimal_m(us_params()), 5.7, 0.1);
  EXPECT_NEAR(optimal_m(cn_params()), 9.0, 0.1);
  EXPECT_NEAR(optimal_m(us_params().with_capacity(8.0)), 10.5, 0.1);
}

TEST(Numeric, AgreesWithClosedForm) {
  for (const auto& p : {us_params(), cn_params()}) {
    const auto numeric = optimal_m_numeric(p, 20.0, 1e-10);
    EXPECT_EQ(numeric.method, SolveMethod::GoldenSection);
    EXPECT_TRUE(near_rel(numeric.m_star, optimal_m(p), 1e-6));
  }
}

TEST(Numeric, SmallInstanceAgainstGridSearch) {
  const auto p = ModelParams::make(1, 0, 0.5, 1, 2, 1);
  // (0.25)^(1/1.5)
  EXPECT_NEAR(optimal_m(p), frozen::kSmallMStar, 1e-14);
  EXPECT_NEAR(optimal_m(p), std::pow(0.25, 1 / 1.5), 1e-14);
  EXPECT_TRUE(near_rel(optimal_m_numeric(p, 20.0, 1e-10).m_star, optimal_m(p), 1e-6));

  const double grid = testing::grid_argmax(1, 0, 0.5, 1, 2, 1, 0.0, 2.0, 1e-6);
  EXPECT_NEAR(grid, optimal_m(p), 2e-6);
}

TEST(Numeric, ExpandsTooSmallBracket) {
  const auto p = us_params();
  const auto r = optimal_m_numeric(p, 0.5, 1e-10);
  EXPECT_TRUE(near_rel(r.m_star, optimal_m(p), 1e-6));
}

TEST(Numeric, RejectsBadArguments) {
  EXPECT_THROW(optimal_m_numeric(us_params(), 0.0, 1e-10), std::invalid_argument);
  EXPECT_THROW(optimal_m_numeric(us_params(), 20.0, 0.0), std::invalid_argument);
}

TEST(Numeric, ExhaustedBracketReportsNoInteriorMaximum) {
  // M* is about 2e26; sixty doublings of 1e-3 stop near 1e15.
  const auto p = ModelParams::make(1, 0, 0.5, 1, 2, 1e20);
  try {
    optimal_m_numeric(p, 1e-3, 1e-10);
    FAIL() << "expected runtime_error";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "no interior maximum found");
  }
}

TEST(Soc, Examples) {
  EXPECT_LT(soc_check(us_params(), optimal_m(us_params())), 0);
  EXPECT_NEAR(soc_check(us_params(), 1.0), frozen::kUsSocAt1, 1e-12);

  // Second-order central difference of welfare.
  const auto p = us_params();
  const double h = 1e-4;
  const double fd = (welfare(p, 1 + h) - 2 * welfare(p, 1.0) + welfare(p, 1 - h)) / (h * h);
  EXPECT_NEAR(soc_check(p, 1.0), fd, 1e-5);
}

TEST(Soc, NegativeEverywhere) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> m(0.01, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_params(rng);
    for (int k = 0; k < 100; ++k) EXPECT_LT(soc_check(p, m(rng)), 0);
  }
}

TEST(Zone, Examples) {
  EXPECT_EQ(classify_zone(us_params(), 6.0).zone, Zone::Diseconomy);
  EXPECT_EQ(classify_zone(cn_params(), 6.0).zone, Zone::Climbing);

  const double m_star = optimal_m(us_params());
  const auto at = classify_zone(us_params(), m_star);
  EXPECT_EQ(at.zone, Zone::AtOptimum);
  EXPECT_EQ(at.gap, 0.0);

  const auto d = classify_zone(us_params(), 6.0);
  EXPECT_DOUBLE_EQ(d.gap, 6.0 - m_star);
  EXPECT_EQ(d.m_actual, 6.0);
  EXPECT_EQ(d.m_star, m_star);
}

TEST(Zone, ToleranceBand) {
  const double m_star = 5.0;
  const double tol = 1e-9 * (1 + m_star);
  EXPECT_EQ(diagnose_zone(m_star + 0.5 * tol, m_star).zone, Zone::AtOptimum);
  EXPECT_EQ(diagnose_zone(m_star - 0.5 * tol, m_star).zone, Zone::AtOptimum);
  EXPECT_EQ(diagnose_zone(m_star + 2 * tol, m_star).zone, Zone::Diseconomy);
  EXPECT_EQ(diagnose_zone(m_star - 2 * tol, m_star).zone, Zone::Climbing);
  EXPECT_EQ(diagnose_zone(0.0, m_star).zone, Zone::Climbing);
}

TEST(CapacityDividend, Examples) {
  const auto up = capacity_dividend(us_params(), 8.0);
  EXPECT_NEAR(up.m_star_old, frozen::kUsMStar, 1e-12);
  EXPECT_NEAR(up.m_star_new, frozen::kUsK8MStar, 1e-12);
  EXPECT_NEAR(up.delta_m_star, frozen::kUsK8MStar - frozen::kUsMStar, 1e-12);
  EXPECT_NEAR(up.m_star_old, 5.7, 0.1);
  EXPECT_NEAR(up.m_star_new, 10.5, 0.1);
  EXPECT_GT(up.delta_m_star, 0);

  EXPECT_EQ(capacity_dividend(us_params(), 5.0).delta_m_star, 0.0);

  const auto down = capacity_dividend(us_params(), 4.0);
  EXPECT_NEAR(down.m_star_new, frozen::kUsK4MStar, 1e-12);
  EXPECT_LT(down.delta_m_star, 0);
  const auto numeric = optimal_m_numeric(us_params().with_capacity(4.0), 20.0, 1e-10);
  EXPECT_TRUE(near_rel(numeric.m_star, down.m_star_new, 1e-6));
}

TEST(GoldenSection, MinimizesQuadratic) {
  const double x = golden_section_minimize([](double v) { return (v - 3.25) * (v - 3.25); },
                                           0.0, 10.0, 1e-12);
  EXPECT_NEAR(x, 3.25, 1e-6);
}

// --------------------------------------------------------------------------
// Randomized invariants

class EquilibriumProperty : public ::testing::Test {
 protected:
  std::mt19937_64 rng{1234567};
  static constexpr int kDraws = 1000;
};

TEST_F(EquilibriumProperty, FirstAndSecondOrderConditions) {
  for (int i = 0; i < kDraws; ++i) {
    const auto p = testing::random_params(rng);
    const auto r = optimal_m_closed_form(p);
    EXPECT_LE(std::abs(r.mb_at_star - r.mc_at_star), 1e-8 * (1 + r.mb_at_star));
    EXPECT_LT(r.soc_value, 0);
  }
}

TEST_F(EquilibriumProperty, IncreasingInCapacityAndCatchUp) {
  std::uniform_real_distribution<double> bump(1e-3, 5.0);
  for (int i = 0; i < kDraws; ++i) {
    const auto p = testing::random_params(rng);
    EXPECT_GT(optimal_m(p.with_capacity(p.capacity() + bump(rng))), optimal_m(p));
    EXPECT_GT(optimal_m(p.with_delta(p.delta() + bump(rng))), optimal_m(p));
  }
}

TEST_F(EquilibriumProperty, GoldenSectionMatchesClosedForm) {
  for (int i = 0; i < kDraws; ++i) {
    const auto p = testing::random_params(rng);
    const double closed = optimal_m(p);
    const double numeric = optimal_m_numeric(p, 20.0, 1e-10).m_star;
    EXPECT_TRUE(near_rel(closed, numeric, 1e-6)) << closed << " vs " << numeric;
  }
}

TEST_F(EquilibriumProperty, CapacityScalingLaw) {
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int i = 0; i < kDraws; ++i) {
    const auto p = testing::random_params(rng);
    const double c = scale(rng);
    const double exponent = p.phi() / (p.phi() - p.theta());
    const double lhs = optimal_m(p.with_capacity(c * p.capacity()));
    const double rhs = std::pow(c, exponent) * optimal_m(p);
    EXPECT_TRUE(near_rel(lhs, rhs, 1e-9)) << lhs << " vs " << rhs;
  }
}

}  // namespace
}  // namespace clubgood
