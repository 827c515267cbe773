#include "dipent/errors.hpp"
#include "dipent/hamiltonian.hpp"
#include "dipent/thermal.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dipent;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

const OperatorMatrix& axial_h() {
  static const OperatorMatrix h = dipolar_hamiltonian(SpinCluster({{0, 0, 0}, {0, 0, 1}}));
  return h;
}

ComplexMatrix even_projector() {
  ComplexMatrix p = ComplexMatrix::Zero(4, 4);
  p(0, 0) = p(3, 3) = 0.5;
  return p;
}

ComplexMatrix triplet_projector() {
  ComplexMatrix p = ComplexMatrix::Zero(4, 4);
  p(1, 1) = p(2, 2) = p(1, 2) = p(2, 1) = 0.5;
  return p;
}

}  // namespace

TEST(Gibbs, InfiniteTemperatureIsMaximallyMixed) {
  const auto rho = gibbs_state(axial_h(), 0.0);
  EXPECT_LT(max_abs(rho.matrix() - 0.25 * ComplexMatrix::Identity(4, 4)), 1e-15);
}

TEST(Gibbs, NegativeTwoFrozenValues) {
  const auto rho = gibbs_state(axial_h(), -2.0).matrix();
  const double z0 = 2.0 * (std::cosh(1.0) + std::exp(-2.0));
  EXPECT_NEAR(z0, 3.356831836103713, 1e-14);
  EXPECT_NEAR(rho(0, 0).real(), 0.04031637265264287, 1e-12);
  EXPECT_NEAR(rho(3, 3).real(), 0.04031637265264287, 1e-12);
  EXPECT_NEAR(rho(1, 1).real(), 0.45968362734735707, 1e-12);
  EXPECT_NEAR(rho(1, 2).real(), 0.3500923641762948, 1e-12);
  EXPECT_NEAR(rho(1, 2).real(), std::sinh(1.0) / z0, 1e-15);
}

TEST(Gibbs, ExtremeBetaMatchesLimitProjectors) {
  EXPECT_LT(max_abs(gibbs_state(axial_h(), 60.0).matrix() - even_projector()), 1e-8);
  EXPECT_LT(max_abs(gibbs_state(axial_h(), -60.0).matrix() - triplet_projector()), 1e-8);
  EXPECT_LT(max_abs(gibbs_state(axial_h(), 50.0).matrix() - even_projector()), 1e-8);
  EXPECT_LT(max_abs(gibbs_state(axial_h(), -50.0).matrix() - triplet_projector()), 1e-8);
}

TEST(Gibbs, LimitStatesAreExactProjectors) {
  EXPECT_LT(max_abs(limit_state(axial_h(), LimitSide::plus_infinity).matrix() - even_projector()), 1e-14);
  EXPECT_LT(max_abs(limit_state(axial_h(), LimitSide::minus_infinity).matrix() - triplet_projector()), 1e-14);
}

TEST(Gibbs, LimitStateAgreesWithLargeBetaOnChains) {
  for (int n : {3, 4, 6}) {
    const auto eig = hermitian_eigensystem(dipolar_hamiltonian(build_chain(n)));
    const double gap_top = eig.eigenvalues(eig.dim() - 1) - eig.eigenvalues(eig.dim() - 2);
    const double beta = -40.0 / gap_top;
    if (std::abs(beta) * (eig.max() - eig.min()) > kMaxGibbsExponent) continue;
    EXPECT_LT(max_abs(gibbs_state(eig, beta).matrix() - limit_state(eig, LimitSide::minus_infinity).matrix()), 1e-8);
  }
}

TEST(Gibbs, IdentityHamiltonianIsMaximallyMixed) {
  const auto h = OperatorMatrix::hermitian(ComplexMatrix::Identity(8, 8));
  for (double beta : {-30.0, -1.0, 0.0, 2.5, 100.0}) {
    EXPECT_LT(max_abs(gibbs_state(h, beta).matrix() - ComplexMatrix::Identity(8, 8) / 8.0), 1e-15);
  }
  EXPECT_LT(max_abs(limit_state(h, LimitSide::plus_infinity).matrix() - ComplexMatrix::Identity(8, 8) / 8.0), 1e-15);
}

TEST(Gibbs, EnergyShiftInvariance) {
  const auto eig = hermitian_eigensystem(total_hamiltonian(build_circle(4), {0.7, 0.0}));
  EigenSystem shifted = eig;
  shifted.eigenvalues.array() += 123.456;
  for (double beta : {-3.0, 0.4, 5.0}) {
    EXPECT_LT(max_abs(gibbs_state(eig, beta).matrix() - gibbs_state(shifted, beta).matrix()), 1e-12);
  }
}

TEST(Gibbs, PropertiesOnRandomDraws) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ub(-20, 20), ua(0, 5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto cluster = (trial % 2) ? build_chain(2 + trial % 5) : build_circle(3 + trial % 4);
    const auto h = total_hamiltonian(cluster, {ua(rng), 0.0});
    const auto rho = gibbs_state(h, ub(rng));
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_LT(max_abs(rho.matrix() - rho.matrix().adjoint()), 1e-14);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> s(rho.matrix(), Eigen::EigenvaluesOnly);
    EXPECT_GE(s.eigenvalues().minCoeff(), -1e-12);
    EXPECT_NO_THROW(DensityMatrix::checked(rho.matrix()));
  }
}

TEST(Gibbs, EnergyDecreasesWithBeta) {
  const auto h = total_hamiltonian(build_chain(4), {0.5, 0.0});
  double last = INFINITY;
  for (int k = 0; k <= 40; ++k) {
    const double e = energy(gibbs_state(h, -10.0 + 0.5 * k), h);
    EXPECT_LT(e, last);
    last = e;
  }
  const auto eig = hermitian_eigensystem(h);
  EXPECT_NEAR(energy(gibbs_state(h, 0.0), h), eig.eigenvalues.mean(), 1e-14);
}

TEST(Gibbs, WeightsStableAtExtremeExponent) {
  const auto w = gibbs_weights(RealVector::LinSpaced(4, -1.0, 1.0), -600.0);
  EXPECT_TRUE(w.allFinite());
  EXPECT_NEAR(w.sum(), 1.0, 1e-15);
  EXPECT_NEAR(w(3), 1.0, 1e-15);
}

TEST(Gibbs, RejectsOverflowingExponent) {
  EXPECT_THROW(gibbs_state(axial_h(), 1000.0), RangeError);
  EXPECT_THROW(gibbs_state(axial_h(), -1000.0), RangeError);
  EXPECT_NO_THROW(gibbs_state(axial_h(), -900.0));
}

TEST(DensityMatrix, CheckedRejectsInvalid) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 0.5;
  EXPECT_NO_THROW(DensityMatrix::checked(m));
  EXPECT_THROW(DensityMatrix::checked(m * 2.0), ContractViolation);
  ComplexMatrix neg = m;
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix::checked(neg), ContractViolation);
  ComplexMatrix skew = m;
  skew(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix::checked(skew), ContractViolation);
}
