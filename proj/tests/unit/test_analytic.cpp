#include "dipent/analytic.hpp"
#include "dipent/errors.hpp"
#include "dipent/hamiltonian.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dipent;

namespace {

constexpr double kExactRoot = -0.83923524998219579;

ThermalPairConcurrence zero_field_pair() {
  return ThermalPairConcurrence(hermitian_eigensystem(dipolar_hamiltonian(build_chain(2))), {1, 2});
}

double curve_limit(double alpha) {
  return ThermalPairConcurrence(hermitian_eigensystem(total_hamiltonian(build_chain(2), {alpha, 0.0})), {1, 2})
      .max_abs_beta();
}

}  // namespace

TEST(ZeroField, LambdasSumToOne) {
  for (double beta = -30; beta <= 30; beta += 0.75) {
    const auto e = zero_field_eigs(beta);
    EXPECT_NEAR(e.lambdas[0] + e.lambdas[1] + e.lambdas[2] + e.lambdas[3], 1.0, 1e-14);
  }
}

TEST(ZeroField, InfiniteTemperature) {
  const auto e = zero_field_eigs(0.0);
  EXPECT_DOUBLE_EQ(e.z0, 4.0);
  for (double l : e.lambdas) EXPECT_DOUBLE_EQ(l, 0.25);
  EXPECT_EQ(zero_field_concurrence_analytic(0.0).c, 0.0);
}

TEST(ZeroField, DeepNegativeTemperature) {
  const double expected = (std::exp(5.0) - std::exp(-5.0) - 2 * std::exp(-10.0)) / (2 * std::cosh(5.0) + 2 * std::exp(-10.0));
  EXPECT_NEAR(zero_field_concurrence_analytic(-10.0).c, expected, 1e-15);
  EXPECT_NEAR(zero_field_concurrence_analytic(-10.0).c, 0.99990, 1e-5);
}

TEST(ZeroField, PositiveBetaSeparable) {
  for (double beta = 0.1; beta <= 40; beta += 0.3) EXPECT_EQ(zero_field_concurrence_analytic(beta).c, 0.0);
}

TEST(ZeroField, NearCriticalPoint) {
  EXPECT_NEAR(zero_field_concurrence_analytic(-0.839).c, 0.0, 2e-3);
  const auto rho = oracle::closed_form_zero_field_state(-0.839);
  EXPECT_NEAR(oracle::x_state_concurrence(rho), 0.0, 2e-3);
}

TEST(ZeroField, AgreesWithClosedFormStateOracle) {
  for (int k = 0; k <= 80; ++k) {
    const double beta = -20 + 0.5 * k;
    EXPECT_NEAR(zero_field_concurrence_analytic(beta).c,
                oracle::x_state_concurrence(oracle::closed_form_zero_field_state(beta)), 1e-12);
  }
}

TEST(ZeroField, FiniteBeyondOverflow) {
  const auto b = zero_field_concurrence_analytic(-800.0);
  EXPECT_TRUE(std::isfinite(b.c));
  EXPECT_NEAR(b.c, 1.0, 1e-12);
}

TEST(CriticalBeta, ExactRootSatisfiesCubic) {
  const double beta = critical_beta_zero_field_exact();
  const double x = std::exp(beta / 2);
  EXPECT_NEAR(2 * x * x * x + x * x - 1, 0.0, 1e-14);
  EXPECT_NEAR(beta, kExactRoot, 1e-13);
  EXPECT_NEAR(beta, -0.8391, 1e-3);
}

TEST(CriticalBeta, NumericMatchesExactRoot) {
  const auto beta = critical_beta(zero_field_pair(), BetaSide::negative);
  ASSERT_TRUE(beta.has_value());
  EXPECT_NEAR(*beta, kExactRoot, 1e-6);
  EXPECT_NEAR(*beta, -0.8391, 1e-3);
}

TEST(CriticalBeta, ZeroFieldPositiveSideHasNoRoot) {
  EXPECT_FALSE(critical_beta(zero_field_pair(), BetaSide::positive).has_value());
}

TEST(CriticalBeta, ClusterOverload) {
  const auto beta = critical_beta(build_chain(6), 0.0, {1, 2}, BetaSide::negative);
  ASSERT_TRUE(beta.has_value());
  EXPECT_NEAR(*beta, -0.8944527881503761, 1e-6);
}

TEST(CriticalBeta, RootIsSignChange) {
  const auto curve = ThermalPairConcurrence(hermitian_eigensystem(total_hamiltonian(build_chain(2), {1.0, 0.0})), {1, 2});
  for (auto side : {BetaSide::negative, BetaSide::positive}) {
    const auto beta = critical_beta(curve, side);
    ASSERT_TRUE(beta.has_value());
    const double outward = side == BetaSide::negative ? -1.0 : 1.0;
    EXPECT_LE(curve.at(*beta - outward * 1e-6).f, 1e-12);
    EXPECT_GT(curve.at(*beta + outward * 1e-6).f, 0.0);
  }
}

TEST(InField, ReducesToZeroFieldAtAlphaZero) {
  for (double beta = -12; beta <= 12; beta += 0.4) {
    EXPECT_NEAR(two_spin_infield_concurrence_analytic(beta, 0.0).c, zero_field_concurrence_analytic(beta).c, 1e-12);
  }
}

TEST(InField, ConstantA) {
  EXPECT_DOUBLE_EQ(two_spin_infield_eigs(1.0, 1.0).a, 5.0);
  EXPECT_DOUBLE_EQ(two_spin_infield_eigs(1.0, 0.0).a, 3.0);
}

TEST(InField, EqualLambdasAtInfiniteTemperature) {
  const auto e = two_spin_infield_eigs(0.0, 1.0);
  for (double l : e.lambdas) EXPECT_NEAR(l, 0.25, 1e-15);
}

TEST(InField, ExactFormMatchesPipeline) {
  for (double alpha : {0.0, 0.3, 1.0, 2.5, 10.0, 50.0}) {
    const double limit = curve_limit(alpha);
    for (double beta = -20; beta <= 20; beta += 1.25) {
      if (std::abs(beta) > limit) continue;
      const auto d = compare_infield_with_pipeline(beta, alpha);
      EXPECT_FALSE(d.significant) << "alpha " << alpha << " beta " << beta << " dl " << d.max_lambda_difference;
      EXPECT_LT(d.concurrence_difference, 1e-10);
    }
  }
}

TEST(InField, LegacyFormDisagreesWithPipeline) {
  EXPECT_TRUE(compare_infield_with_pipeline(-2.0, 1.0, InFieldForm::legacy).significant);
  const auto e = two_spin_infield_eigs(0.0, 1.0, InFieldForm::legacy);
  EXPECT_GT(std::abs(e.lambdas[0] - e.lambdas[2]), 1e-3);
}

TEST(InField, AsymptoticSymmetry) {
  const double plus = two_spin_infield_concurrence_analytic(20.0, 1.0).c;
  const double minus = two_spin_infield_concurrence_analytic(-20.0, 1.0).c;
  EXPECT_LE(std::abs(plus - minus), 1e-3);
  EXPECT_NEAR(plus, 3.0 / 5.0, 1e-3);
}

TEST(Units, TemperatureFromBeta) {
  const PhysicalUnits units;
  EXPECT_NEAR(beta_to_temperature(1.0, units), 0.47992430733662217, 1e-12);
  EXPECT_NEAR(beta_to_temperature(-0.8391, units), -0.57195, 1e-5);
  EXPECT_NEAR(beta_to_temperature(kExactRoot, units), -0.571859, 1e-6);
  EXPECT_THROW(beta_to_temperature(0.0, units), DomainError);
}

TEST(Units, FieldFromAlpha) {
  const PhysicalUnits units;
  EXPECT_NEAR(alpha_to_field_gauss(1.0, units), 10.0 / 4.2577, 1e-12);
  EXPECT_EQ(alpha_to_field_gauss(0.0, units), 0.0);
}

TEST(Units, Validation) {
  EXPECT_THROW((PhysicalUnits{0.0, 10.0}.validate()), ArgumentError);
  EXPECT_THROW((PhysicalUnits{4.2577, -1.0}.validate()), ArgumentError);
  EXPECT_THROW(beta_to_temperature(1.0, PhysicalUnits{4.2577, 0.0}), ArgumentError);
}
