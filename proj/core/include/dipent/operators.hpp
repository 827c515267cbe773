#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace dipent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

enum class SpinAxis { x, y, z, plus, minus };

/// Dense complex operator on the 2^N product space of N spin-1/2 sites.
///
/// Basis ordering: site 1 is the leftmost (slowest varying) tensor factor
/// and up precedes down, so index bit (N - k) set means site k is down.
/// The Hermitian tag is verified on construction (entrywise |M - M^dagger|
/// within 1e-12 relative to max |M_ij|) and the stored matrix is then made
/// exactly Hermitian.
class OperatorMatrix {
 public:
  OperatorMatrix(ComplexMatrix entries, bool hermitian);

  static OperatorMatrix hermitian(ComplexMatrix entries) {
    return OperatorMatrix(std::move(entries), true);
  }

  [[nodiscard]] Eigen::Index dim() const { return entries_.rows(); }
  [[nodiscard]] int n_spins() const { return n_spins_; }
  [[nodiscard]] bool is_hermitian() const { return hermitian_; }
  [[nodiscard]] const ComplexMatrix& matrix() const { return entries_; }

 private:
  ComplexMatrix entries_;
  bool hermitian_;
  int n_spins_;
};

/// Spectrum (ascending) and orthonormal eigenvectors (columns).
struct EigenSystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  [[nodiscard]] Eigen::Index dim() const { return eigenvalues.size(); }
  [[nodiscard]] double min() const { return eigenvalues(0); }
  [[nodiscard]] double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

/// Single-site 2x2 matrices: s_z = diag(1/2, -1/2), s_plus = s_x + i s_y.
Eigen::Matrix2cd single_spin_matrix(SpinAxis axis);

/// I_site^axis embedded in the n_spins-site space. Throws ArgumentError if
/// site is outside [1, n_spins] or n_spins outside [1, 12].
OperatorMatrix spin_operator(int n_spins, int site, SpinAxis axis);

/// Adds `coefficient * local` to `target`, where `local` acts on the
/// ordered 1-based sites (first, second) and identity elsewhere. `local` is
/// expressed in the basis |s_first s_second> = {uu, ud, du, dd}.
void add_two_site_term(ComplexMatrix& target, int n_spins, int first, int second,
                       const Eigen::Matrix4cd& local, double coefficient = 1.0);

/// Adds `coefficient * local` acting on the 1-based site.
void add_one_site_term(ComplexMatrix& target, int n_spins, int site,
                       const Eigen::Matrix2cd& local, double coefficient = 1.0);

/// Full diagonalisation of a Hermitian operator. Throws ContractViolation
/// for untagged input.
EigenSystem hermitian_eigensystem(const OperatorMatrix& m);

/// V f(Lambda) V^dagger for a real scalar function of the spectrum.
OperatorMatrix matrix_function(const OperatorMatrix& m, const std::function<double(double)>& f);
OperatorMatrix matrix_function(const EigenSystem& eig, const std::function<double(double)>& f);

/// Principal square root of a positive semidefinite operator. Eigenvalues
/// in [-1e-8, 0) are clamped to zero; anything lower throws DomainError.
OperatorMatrix matrix_sqrt(const OperatorMatrix& m);

OperatorMatrix matrix_exp(const OperatorMatrix& m);

namespace detail {

/// Spectral decomposition of an already-Hermitian Eigen matrix.
EigenSystem eigensystem(const ComplexMatrix& m);

/// Exact Hermitian part, (M + M^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// max_ij |M - M^dagger|_ij.
double hermiticity_defect(const ComplexMatrix& m);

}  // namespace detail

}  // namespace dipent
