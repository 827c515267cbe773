#pragma once

#include "dipent/geometry.hpp"
#include "dipent/operators.hpp"

namespace dipent {

/// Dimensionless model parameters. Energies are measured in units of the
/// nearest-neighbour dipolar energy; `alpha` is the Zeeman-to-dipolar ratio
/// and `beta` the inverse spin temperature in the same units (negative
/// values are physical).
struct ModelParams {
  double alpha = 0.0;
  double beta = 0.0;

  /// Throws ArgumentError unless both are finite and alpha >= 0.
  void validate() const;
};

/// Sum over sites of (field_direction . I_k). Traceless, Hermitian.
OperatorMatrix zeeman_hamiltonian(const SpinCluster& cluster);

/// Full dipolar coupling without secular truncation:
///
///     h = sum_{m<n} r_mn^-3 [ I_m . I_n - 3 (I_m . u_mn)(I_n . u_mn) ]
///
/// with u_mn the unit vector from m to n.
OperatorMatrix dipolar_hamiltonian(const SpinCluster& cluster);

/// alpha * zeeman + dipolar. Only `params.alpha` is used.
OperatorMatrix total_hamiltonian(const SpinCluster& cluster, const ModelParams& params);

/// The 4x4 coupling tensor of a single pair, (delta_ab - 3 u_a u_b) s_a (x) s_b,
/// in the basis {uu, ud, du, dd}, before the r^-3 factor.
Eigen::Matrix4cd dipolar_pair_tensor(const Vec3& unit_vector);

}  // namespace dipent
