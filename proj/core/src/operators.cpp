#include "dipent/operators.hpp"

#include "dipent/errors.hpp"
#include "dipent/geometry.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace dipent {
namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kSqrtClamp = -1e-8;

void check_spins(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw ArgumentError("number of spins must be in [1, " + std::to_string(kMaxSpins) +
                        "], got " + std::to_string(n_spins));
  }
}

void check_site(int n_spins, int site) {
  if (site < 1 || site > n_spins) {
    throw ArgumentError("site " + std::to_string(site) + " outside [1, " +
                        std::to_string(n_spins) + "]");
  }
}

// Bit position in the basis index that encodes 1-based site k.
int bit_of(int n_spins, int site) { return n_spins - site; }

}  // namespace

OperatorMatrix::OperatorMatrix(ComplexMatrix entries, bool hermitian)
    : entries_(std::move(entries)), hermitian_(hermitian), n_spins_(0) {
  const auto n = entries_.rows();
  if (n != entries_.cols() || n < 2 || !std::has_single_bit(static_cast<unsigned long>(n))) {
    throw ArgumentError("operator dimension must be a square power of two, got " +
                        std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
  }
  n_spins_ = std::countr_zero(static_cast<unsigned long>(n));
  if (hermitian_) {
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    const double defect = detail::hermiticity_defect(entries_);
    if (!(defect <= kHermitianTolerance * scale)) {
      throw ContractViolation("matrix tagged Hermitian deviates by " + std::to_string(defect));
    }
    entries_ = detail::hermitian_part(entries_);
  }
}

Eigen::Matrix2cd single_spin_matrix(SpinAxis axis) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd s;
  switch (axis) {
    case SpinAxis::x: s << 0.0, 0.5, 0.5, 0.0; break;
    case SpinAxis::y: s << 0.0, -0.5 * i, 0.5 * i, 0.0; break;
    case SpinAxis::z: s << 0.5, 0.0, 0.0, -0.5; break;
    case SpinAxis::plus: s << 0.0, 1.0, 0.0, 0.0; break;
    case SpinAxis::minus: s << 0.0, 0.0, 1.0, 0.0; break;
  }
  return s;
}

void add_one_site_term(ComplexMatrix& target, int n_spins, int site,
                       const Eigen::Matrix2cd& local, double coefficient) {
  check_spins(n_spins);
  check_site(n_spins, site);
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  const Eigen::Index mask = Eigen::Index{1} << bit_of(n_spins, site);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int c = (col & mask) ? 1 : 0;
    const Eigen::Index base = col & ~mask;
    for (int r = 0; r < 2; ++r) {
      const Complex v = local(r, c);
      if (v == Complex{}) continue;
      target(base | (r ? mask : 0), col) += coefficient * v;
    }
  }
}

void add_two_site_term(ComplexMatrix& target, int n_spins, int first, int second,
                       const Eigen::Matrix4cd& local, double coefficient) {
  check_spins(n_spins);
  check_site(n_spins, first);
  check_site(n_spins, second);
  if (first == second) throw ArgumentError("two-site term needs distinct sites");
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  const Eigen::Index mask_a = Eigen::Index{1} << bit_of(n_spins, first);
  const Eigen::Index mask_b = Eigen::Index{1} << bit_of(n_spins, second);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int c = ((col & mask_a) ? 2 : 0) | ((col & mask_b) ? 1 : 0);
    const Eigen::Index base = col & ~(mask_a | mask_b);
    for (int r = 0; r < 4; ++r) {
      const Complex v = local(r, c);
      if (v == Complex{}) continue;
      const Eigen::Index row = base | ((r & 2) ? mask_a : 0) | ((r & 1) ? mask_b : 0);
      target(row, col) += coefficient * v;
    }
  }
}

OperatorMatrix spin_operator(int n_spins, int site, SpinAxis axis) {
  check_spins(n_spins);
  check_site(n_spins, site);
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  add_one_site_term(m, n_spins, site, single_spin_matrix(axis));
  const bool herm = axis == SpinAxis::x || axis == SpinAxis::y || axis == SpinAxis::z;
  return OperatorMatrix(std::move(m), herm);
}

EigenSystem hermitian_eigensystem(const OperatorMatrix& m) {
  if (!m.is_hermitian()) {
    throw ContractViolation("hermitian_eigensystem requires a Hermitian-tagged operator");
  }
  return detail::eigensystem(m.matrix());
}

OperatorMatrix matrix_function(const EigenSystem& eig, const std::function<double(double)>& f) {
  RealVector mapped(eig.dim());
  for (Eigen::Index k = 0; k < eig.dim(); ++k) mapped(k) = f(eig.eigenvalues(k));
  ComplexMatrix out = eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
  return OperatorMatrix::hermitian(detail::hermitian_part(out));
}

OperatorMatrix matrix_function(const OperatorMatrix& m, const std::function<double(double)>& f) {
  return matrix_function(hermitian_eigensystem(m), f);
}

OperatorMatrix matrix_sqrt(const OperatorMatrix& m) {
  const EigenSystem eig = hermitian_eigensystem(m);
  if (eig.min() < kSqrtClamp) {
    throw DomainError("square root of operator with eigenvalue " + std::to_string(eig.min()));
  }
  return matrix_function(eig, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

OperatorMatrix matrix_exp(const OperatorMatrix& m) {
  return matrix_function(m, [](double x) { return std::exp(x); });
}

namespace detail {

EigenSystem eigensystem(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("Hermitian eigensolver failed to converge");
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace detail

}  // namespace dipent
