#include "dipent/hamiltonian.hpp"

#include "dipent/errors.hpp"

#include <array>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace dipent {
namespace {

const std::array<Eigen::Matrix2cd, 3>& cartesian_spins() {
  static const std::array<Eigen::Matrix2cd, 3> s = {single_spin_matrix(SpinAxis::x),
                                                    single_spin_matrix(SpinAxis::y),
                                                    single_spin_matrix(SpinAxis::z)};
  return s;
}

ComplexMatrix zero_operator(const SpinCluster& cluster) {
  const Eigen::Index dim = Eigen::Index{1} << cluster.n_spins();
  return ComplexMatrix::Zero(dim, dim);
}

}  // namespace

void ModelParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ArgumentError("alpha and beta must be finite");
  }
  if (alpha < 0.0) throw ArgumentError("alpha must be non-negative (field magnitude)");
}

Eigen::Matrix4cd dipolar_pair_tensor(const Vec3& u) {
  const auto& s = cartesian_spins();
  Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const double c = (a == b ? 1.0 : 0.0) - 3.0 * u[a] * u[b];
      if (c == 0.0) continue;
      t += c * Eigen::Matrix4cd(Eigen::kroneckerProduct(s[a], s[b]));
    }
  }
  return t;
}

OperatorMatrix zeeman_hamiltonian(const SpinCluster& cluster) {
  const auto& s = cartesian_spins();
  const Vec3& f = cluster.field_direction();
  const Eigen::Matrix2cd local = f.x() * s[0] + f.y() * s[1] + f.z() * s[2];
  ComplexMatrix h = zero_operator(cluster);
  for (int k = 1; k <= cluster.n_spins(); ++k) add_one_site_term(h, cluster.n_spins(), k, local);
  return OperatorMatrix::hermitian(std::move(h));
}

OperatorMatrix dipolar_hamiltonian(const SpinCluster& cluster) {
  const int n = cluster.n_spins();
  ComplexMatrix h = zero_operator(cluster);
  for (int m = 1; m <= n; ++m) {
    for (int k = m + 1; k <= n; ++k) {
      const Vec3 r = cluster.position(k) - cluster.position(m);
      const double dist = r.norm();
      add_two_site_term(h, n, m, k, dipolar_pair_tensor(r / dist), 1.0 / (dist * dist * dist));
    }
  }
  return OperatorMatrix::hermitian(std::move(h));
}

OperatorMatrix total_hamiltonian(const SpinCluster& cluster, const ModelParams& params) {
  params.validate();
  if (params.alpha == 0.0) return dipolar_hamiltonian(cluster);
  ComplexMatrix h = dipolar_hamiltonian(cluster).matrix();
  h += params.alpha * zeeman_hamiltonian(cluster).matrix();
  return OperatorMatrix::hermitian(std::move(h));
}

}  // namespace dipent
