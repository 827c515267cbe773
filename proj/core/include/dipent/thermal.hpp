#pragma once

#include "dipent/operators.hpp"

namespace dipent {

/// Largest |beta| * (E_max - E_min) accepted by gibbs_state.
inline constexpr double kMaxGibbsExponent = 1400.0;

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Verifies Hermiticity (1e-12), unit trace (1e-12) and minimum
  /// eigenvalue >= -1e-10; throws ContractViolation otherwise.
  static DensityMatrix checked(ComplexMatrix entries);

  /// Wraps a matrix that is a density matrix by construction.
  static DensityMatrix trusted(ComplexMatrix entries);

  [[nodiscard]] const ComplexMatrix& matrix() const { return op_.matrix(); }
  [[nodiscard]] const OperatorMatrix& op() const { return op_; }
  [[nodiscard]] int n_spins() const { return op_.n_spins(); }
  [[nodiscard]] Eigen::Index dim() const { return op_.dim(); }

 private:
  explicit DensityMatrix(OperatorMatrix op) : op_(std::move(op)) {}
  OperatorMatrix op_;
};

enum class LimitSide {
  plus_infinity,   ///< beta -> +inf: ground-state projector
  minus_infinity,  ///< beta -> -inf: top-state projector
};

/// Normalised Boltzmann weights exp(-beta E_k) / Z for an ascending
/// spectrum. The exponent is shifted so its maximum is zero. Throws
/// RangeError if |beta| * (E_max - E_min) exceeds kMaxGibbsExponent.
RealVector gibbs_weights(const RealVector& eigenvalues, double beta);

/// exp(-beta H) / Tr exp(-beta H), computed spectrally.
DensityMatrix gibbs_state(const OperatorMatrix& h, double beta);
DensityMatrix gibbs_state(const EigenSystem& eig, double beta);

/// Uniform mixture over the extremal eigenspace selected by `side`.
/// Levels within 1e-9 * max(|E_min|, |E_max|) of the extremum count as
/// degenerate.
DensityMatrix limit_state(const OperatorMatrix& h, LimitSide side);
DensityMatrix limit_state(const EigenSystem& eig, LimitSide side);

/// Tr(rho H).
double energy(const DensityMatrix& rho, const OperatorMatrix& h);

}  // namespace dipent
