#include "dipent/thermal.hpp"

#include "dipent/errors.hpp"

#include <cmath>
#include <sstream>

namespace dipent {
namespace {

constexpr double kDegeneracyTolerance = 1e-9;

DensityMatrix mixture(const EigenSystem& eig, const RealVector& weights) {
  ComplexMatrix rho = eig.eigenvectors * weights.asDiagonal() * eig.eigenvectors.adjoint();
  return DensityMatrix::trusted(detail::hermitian_part(rho));
}

}  // namespace

DensityMatrix DensityMatrix::checked(ComplexMatrix entries) {
  OperatorMatrix op(std::move(entries), true);
  const Complex tr = op.matrix().trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr << ", expected 1";
    throw ContractViolation(msg.str());
  }
  const EigenSystem eig = detail::eigensystem(op.matrix());
  if (eig.min() < -1e-10) {
    throw ContractViolation("density matrix has negative eigenvalue " +
                            std::to_string(eig.min()));
  }
  return DensityMatrix(std::move(op));
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix entries) {
  return DensityMatrix(OperatorMatrix::hermitian(std::move(entries)));
}

RealVector gibbs_weights(const RealVector& eigenvalues, double beta) {
  if (!std::isfinite(beta)) throw ArgumentError("beta must be finite");
  const double lo = eigenvalues.minCoeff();
  const double hi = eigenvalues.maxCoeff();
  if (std::abs(beta) * (hi - lo) > kMaxGibbsExponent) {
    std::ostringstream msg;
    msg << "|beta| * spectral range = " << std::abs(beta) * (hi - lo) << " exceeds "
        << kMaxGibbsExponent << "; use limit_state for this temperature";
    throw RangeError(msg.str());
  }
  // For beta > 0 the largest exponent sits at the ground level, for beta < 0
  // at the top level.
  const double reference = beta >= 0.0 ? lo : hi;
  RealVector w(eigenvalues.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = std::exp(-beta * (eigenvalues(k) - reference));
  return w / w.sum();
}

DensityMatrix gibbs_state(const EigenSystem& eig, double beta) {
  return mixture(eig, gibbs_weights(eig.eigenvalues, beta));
}

DensityMatrix gibbs_state(const OperatorMatrix& h, double beta) {
  return gibbs_state(hermitian_eigensystem(h), beta);
}

DensityMatrix limit_state(const EigenSystem& eig, LimitSide side) {
  const double target = side == LimitSide::plus_infinity ? eig.min() : eig.max();
  const double scale = std::max(std::abs(eig.min()), std::abs(eig.max()));
  const double tol = kDegeneracyTolerance * scale;
  RealVector w = RealVector::Zero(eig.dim());
  for (Eigen::Index k = 0; k < eig.dim(); ++k) {
    if (std::abs(eig.eigenvalues(k) - target) <= tol) w(k) = 1.0;
  }
  return mixture(eig, w / w.sum());
}

DensityMatrix limit_state(const OperatorMatrix& h, LimitSide side) {
  return limit_state(hermitian_eigensystem(h), side);
}

double energy(const DensityMatrix& rho, const OperatorMatrix& h) {
  if (rho.dim() != h.dim()) throw ArgumentError("energy: dimension mismatch");
  return (rho.matrix() * h.matrix()).trace().real();
}

}  // namespace dipent
