#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace dipent {

using Vec3 = Eigen::Vector3d;

inline constexpr int kMaxSpins = 12;

/// Spherical coordinates of the vector from spin m to spin n, measured
/// relative to the field axis. `r` is in units of the nearest-neighbour
/// distance.
struct PairGeometry {
  double r = 0.0;
  double theta = 0.0;  ///< angle to the field direction, [0, pi]
  double phi = 0.0;    ///< azimuth about the field direction, [0, 2pi)
};

/// Immutable set of spin-1/2 sites plus a field direction.
///
/// Positions are stored in dimensionless units: on construction every
/// coordinate is divided by the smallest pairwise distance, so the nearest
/// neighbours sit at distance 1. The divisor is kept as `scale_factor()`.
/// Sites are addressed with 1-based indices throughout the public API.
class SpinCluster {
 public:
  /// Throws ArgumentError for fewer than 1 or more than kMaxSpins sites,
  /// coincident or non-finite positions, or a zero field direction.
  explicit SpinCluster(std::vector<Vec3> positions,
                       Vec3 field_direction = Vec3::UnitZ());

  [[nodiscard]] int n_spins() const { return static_cast<int>(positions_.size()); }
  [[nodiscard]] const std::vector<Vec3>& positions() const { return positions_; }
  [[nodiscard]] const Vec3& field_direction() const { return field_direction_; }
  [[nodiscard]] double scale_factor() const { return scale_factor_; }

  /// Position of 1-based site `k`.
  [[nodiscard]] const Vec3& position(int k) const;

 private:
  std::vector<Vec3> positions_;
  Vec3 field_direction_;
  double scale_factor_ = 1.0;
};

/// Equally spaced collinear sites along x with unit spacing; field along z.
SpinCluster build_chain(int n);

/// Regular n-gon in the xy plane (nearest-neighbour chord 1); field along z.
/// Site 1 sits on the +x axis and the labels run counter-clockwise.
SpinCluster build_circle(int n);

/// Geometry of the vector r_mn = position(n) - position(m). Indices are
/// 1-based and must differ; swapping them leaves r unchanged and maps
/// theta to pi - theta.
PairGeometry pair_geometry(const SpinCluster& cluster, int m, int n);

/// Parses a JSON cluster document:
///
///     {"positions": [[x, y, z], ...], "field_direction": [x, y, z]}
///
/// `field_direction` is optional (default +z) and is normalised on load.
/// Positions are rescaled so the minimum pair distance is 1. Errors are
/// reported as ParseError naming the offending line or field.
SpinCluster parse_cluster_config(std::string_view text);

/// Inverse of parse_cluster_config for the normalised cluster.
std::string serialize_cluster(const SpinCluster& cluster);

}  // namespace dipent
