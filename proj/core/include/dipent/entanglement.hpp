#pragma once

#include "dipent/operators.hpp"
#include "dipent/thermal.hpp"

#include <array>
#include <vector>

namespace dipent {

/// 1-based spin indices with first < second.
struct SpinPair {
  int first = 1;
  int second = 2;

  friend bool operator==(const SpinPair&, const SpinPair&) = default;
  friend auto operator<=>(const SpinPair&, const SpinPair&) = default;
};

/// Reduced 4x4 density matrix of a spin pair in the basis
/// |s_first s_second> = {uu, ud, du, dd}.
class PairDensity {
 public:
  /// Verifies Hermiticity and unit trace within 1e-12.
  PairDensity(Eigen::Matrix4cd entries, SpinPair pair = {});

  [[nodiscard]] const Eigen::Matrix4cd& matrix() const { return entries_; }
  [[nodiscard]] SpinPair pair() const { return pair_; }

 private:
  Eigen::Matrix4cd entries_;
  SpinPair pair_;
};

struct ConcurrenceBreakdown {
  std::array<double, 4> lambdas{};  ///< descending, non-negative
  double f = 0.0;                   ///< lambda1 - lambda2 - lambda3 - lambda4
  double c = 0.0;                   ///< max(0, f), clipped to [0, 1]
};

/// Traces out every site except `m` < `n`.
PairDensity partial_trace_pair(const DensityMatrix& rho, int m, int n);

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y).
Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho);

/// Wootters concurrence.
///
/// The lambdas are the square roots of the eigenvalues of the Hermitian
/// operator sqrt(rho) rho~ sqrt(rho). They are obtained as the singular
/// values of W^T (sigma_y (x) sigma_y) W, where rho = W W^dagger is the
/// spectral factorisation; T^dagger T for that matrix is unitarily similar
/// to sqrt(rho) rho~ sqrt(rho), and a singular value decomposition keeps
/// small lambdas accurate to machine precision instead of sqrt(epsilon).
///
/// Throws ContractViolation if rho has an eigenvalue below -1e-10.
ConcurrenceBreakdown concurrence(const PairDensity& rho);

ConcurrenceBreakdown pair_concurrence(const DensityMatrix& rho, int m, int n);

/// Pair-reduced eigenprojectors of a fixed Hamiltonian.
///
/// Stores P_k = Tr_rest |v_k><v_k| for every eigenvector, so the reduced
/// Gibbs state at any beta is sum_k w_k(beta) P_k without rebuilding the
/// full 2^N density matrix.
class ReducedProjectors {
 public:
  ReducedProjectors(const EigenSystem& eig, SpinPair pair);

  [[nodiscard]] SpinPair pair() const { return pair_; }

  /// sum_k weights(k) P_k; `weights` must be normalised.
  [[nodiscard]] PairDensity reduce(const RealVector& weights) const;

 private:
  SpinPair pair_;
  std::vector<Eigen::Matrix4cd> projectors_;
};

/// Concurrence of one pair along a beta line for a fixed Hamiltonian.
///
/// Holds the spectrum and the pair-reduced eigenprojectors, so each beta
/// costs O(2^N) instead of a fresh diagonalisation.
class ThermalPairConcurrence {
 public:
  ThermalPairConcurrence(const EigenSystem& eig, SpinPair pair)
      : eigenvalues_(eig.eigenvalues), projectors_(eig, pair) {}

  [[nodiscard]] SpinPair pair() const { return projectors_.pair(); }
  [[nodiscard]] PairDensity reduced_state(double beta) const;
  [[nodiscard]] ConcurrenceBreakdown at(double beta) const;

  /// Largest |beta| accepted by gibbs_weights for this spectrum.
  [[nodiscard]] double max_abs_beta() const;

 private:
  RealVector eigenvalues_;
  ReducedProjectors projectors_;
};

namespace detail {

/// Partial trace of an arbitrary 2^N operator onto sites m < n.
Eigen::Matrix4cd partial_trace_matrix(const ComplexMatrix& rho, int n_spins, int m, int n);

}  // namespace detail

}  // namespace dipent
