#include "dipent/entanglement.hpp"

#include "dipent/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

namespace dipent {
namespace {

constexpr double kPsdTolerance = -1e-10;

// Full-space index of (rest configuration, local pair state) for sites m < n.
struct PairIndexer {
  Eigen::Index mask_m;
  Eigen::Index mask_n;
  std::vector<Eigen::Index> bases;

  PairIndexer(int n_spins, int m, int n) {
    if (n_spins < 2 || m < 1 || n > n_spins || m >= n) {
      std::ostringstream msg;
      msg << "pair (" << m << ", " << n << ") invalid for " << n_spins
          << " spins; need 1 <= m < n <= N";
      throw ArgumentError(msg.str());
    }
    mask_m = Eigen::Index{1} << (n_spins - m);
    mask_n = Eigen::Index{1} << (n_spins - n);
    const Eigen::Index dim = Eigen::Index{1} << n_spins;
    bases.reserve(static_cast<std::size_t>(dim / 4));
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((i & (mask_m | mask_n)) == 0) bases.push_back(i);
    }
  }

  [[nodiscard]] Eigen::Index at(Eigen::Index base, int local) const {
    return base | ((local & 2) ? mask_m : 0) | ((local & 1) ? mask_n : 0);
  }
};

const Eigen::Matrix4cd& sigma_yy() {
  static const Eigen::Matrix4cd yy = [] {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return yy;
}

}  // namespace

PairDensity::PairDensity(Eigen::Matrix4cd entries, SpinPair pair)
    : entries_(std::move(entries)), pair_(pair) {
  const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-12)) {
    throw ContractViolation("pair density is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-12) {
    std::ostringstream msg;
    msg << "pair density trace is " << tr << ", expected 1";
    throw ContractViolation(msg.str());
  }
  entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
}

namespace detail {

Eigen::Matrix4cd partial_trace_matrix(const ComplexMatrix& rho, int n_spins, int m, int n) {
  const PairIndexer idx(n_spins, m, n);
  if (rho.rows() != (Eigen::Index{1} << n_spins) || rho.cols() != rho.rows()) {
    throw ArgumentError("partial trace: matrix dimension does not match spin count");
  }
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (const Eigen::Index base : idx.bases) {
    for (int r = 0; r < 4; ++r) {
      const Eigen::Index row = idx.at(base, r);
      for (int c = 0; c < 4; ++c) out(r, c) += rho(row, idx.at(base, c));
    }
  }
  return out;
}

}  // namespace detail

PairDensity partial_trace_pair(const DensityMatrix& rho, int m, int n) {
  return PairDensity(detail::partial_trace_matrix(rho.matrix(), rho.n_spins(), m, n),
                     SpinPair{m, n});
}

Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho) {
  return sigma_yy() * rho.conjugate() * sigma_yy();
}

ConcurrenceBreakdown concurrence(const PairDensity& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw ContractViolation("pair eigensolver failed");
  const Eigen::Vector4d& p = solver.eigenvalues();
  if (p.minCoeff() < kPsdTolerance) {
    throw ContractViolation("pair density has negative eigenvalue " + std::to_string(p.minCoeff()));
  }
  Eigen::Matrix4cd w = solver.eigenvectors();
  for (int k = 0; k < 4; ++k) w.col(k) *= std::sqrt(std::max(p(k), 0.0));

  const Eigen::Matrix4cd t = w.transpose() * sigma_yy() * w;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(t);
  const Eigen::Vector4d s = svd.singularValues();

  ConcurrenceBreakdown out;
  for (int k = 0; k < 4; ++k) out.lambdas[static_cast<std::size_t>(k)] = s(k);
  std::stable_sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>{});
  out.f = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
  out.c = std::clamp(out.f, 0.0, 1.0);
  return out;
}

ConcurrenceBreakdown pair_concurrence(const DensityMatrix& rho, int m, int n) {
  return concurrence(partial_trace_pair(rho, m, n));
}

ReducedProjectors::ReducedProjectors(const EigenSystem& eig, SpinPair pair) : pair_(pair) {
  const Eigen::Index dim = eig.dim();
  const int n_spins = std::countr_zero(static_cast<unsigned long>(dim));
  const PairIndexer idx(n_spins, pair.first, pair.second);
  projectors_.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
    for (const Eigen::Index base : idx.bases) {
      Eigen::Vector4cd a;
      for (int l = 0; l < 4; ++l) a(l) = eig.eigenvectors(idx.at(base, l), k);
      acc.noalias() += a * a.adjoint();
    }
    projectors_[static_cast<std::size_t>(k)] = acc;
  }
}

PairDensity ReducedProjectors::reduce(const RealVector& weights) const {
  if (weights.size() != static_cast<Eigen::Index>(projectors_.size())) {
    throw ArgumentError("weights size does not match the spectrum");
  }
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (std::size_t k = 0; k < projectors_.size(); ++k) {
    const double wk = weights(static_cast<Eigen::Index>(k));
    if (wk != 0.0) rho += wk * projectors_[k];
  }
  return PairDensity(rho, pair_);
}

PairDensity ThermalPairConcurrence::reduced_state(double beta) const {
  return projectors_.reduce(gibbs_weights(eigenvalues_, beta));
}

ConcurrenceBreakdown ThermalPairConcurrence::at(double beta) const {
  return concurrence(reduced_state(beta));
}

double ThermalPairConcurrence::max_abs_beta() const {
  const double range = eigenvalues_.maxCoeff() - eigenvalues_.minCoeff();
  return range > 0.0 ? kMaxGibbsExponent / range : std::numeric_limits<double>::infinity();
}

}  // namespace dipent
