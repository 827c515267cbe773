#include "dipent/geometry.hpp"

#include "dipent/errors.hpp"

#include <Eigen/Geometry>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dipent {
namespace {

constexpr double kCoincidentTolerance = 1e-9;

bool finite(const Vec3& v) { return v.allFinite(); }

// Line number (1-based) of a byte offset into `text`.
std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Vec3 parse_vec3(const nlohmann::json& node, const std::string& where) {
  if (!node.is_array() || node.size() != 3) {
    throw ParseError(where + ": expected an array of 3 numbers");
  }
  Vec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!node[i].is_number()) {
      throw ParseError(where + "[" + std::to_string(i) + "]: expected a number");
    }
    v[static_cast<Eigen::Index>(i)] = node[i].get<double>();
    if (!std::isfinite(v[static_cast<Eigen::Index>(i)])) {
      throw ParseError(where + "[" + std::to_string(i) + "]: non-finite coordinate");
    }
  }
  return v;
}

}  // namespace

SpinCluster::SpinCluster(std::vector<Vec3> positions, Vec3 field_direction)
    : positions_(std::move(positions)), field_direction_(std::move(field_direction)) {
  const auto n = positions_.size();
  if (n < 1 || n > static_cast<std::size_t>(kMaxSpins)) {
    throw ArgumentError("spin cluster must have between 1 and " + std::to_string(kMaxSpins) +
                        " sites, got " + std::to_string(n));
  }
  if (!finite(field_direction_) || field_direction_.norm() < 1e-12) {
    throw ArgumentError("field direction must be a finite non-zero vector");
  }
  field_direction_.normalize();

  double min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!finite(positions_[i])) {
      throw ArgumentError("site " + std::to_string(i + 1) + " has a non-finite coordinate");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double d = (positions_[i] - positions_[j]).norm();
      if (d <= kCoincidentTolerance) {
        throw ArgumentError("sites " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                            " coincide");
      }
      min_distance = std::min(min_distance, d);
    }
  }
  if (n >= 2) {
    scale_factor_ = min_distance;
    for (auto& p : positions_) p /= min_distance;
  }
}

const Vec3& SpinCluster::position(int k) const {
  if (k < 1 || k > n_spins()) {
    throw ArgumentError("site index " + std::to_string(k) + " outside [1, " +
                        std::to_string(n_spins()) + "]");
  }
  return positions_[static_cast<std::size_t>(k - 1)];
}

SpinCluster build_chain(int n) {
  if (n < 2 || n > kMaxSpins) {
    throw ArgumentError("chain length must be in [2, " + std::to_string(kMaxSpins) + "], got " +
                        std::to_string(n));
  }
  std::vector<Vec3> sites;
  sites.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) sites.emplace_back(static_cast<double>(k), 0.0, 0.0);
  return SpinCluster(std::move(sites), Vec3::UnitZ());
}

SpinCluster build_circle(int n) {
  if (n < 3 || n > kMaxSpins) {
    throw ArgumentError("circle size must be in [3, " + std::to_string(kMaxSpins) + "], got " +
                        std::to_string(n));
  }
  const double radius = 1.0 / (2.0 * std::sin(std::numbers::pi / n));
  std::vector<Vec3> sites;
  sites.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    sites.emplace_back(radius * std::cos(angle), radius * std::sin(angle), 0.0);
  }
  return SpinCluster(std::move(sites), Vec3::UnitZ());
}

PairGeometry pair_geometry(const SpinCluster& cluster, int m, int n) {
  if (m == n) throw ArgumentError("pair indices must differ");
  const Vec3 r = cluster.position(n) - cluster.position(m);
  const Vec3& axis = cluster.field_direction();

  // Azimuth reference: the cluster x axis projected onto the plane normal to
  // the field, or the y axis when the field is along x.
  Vec3 ref = Vec3::UnitX() - axis.x() * axis;
  if (ref.norm() < 1e-8) ref = Vec3::UnitY() - axis.y() * axis;
  ref.normalize();
  const Vec3 ortho = axis.cross(ref);

  PairGeometry g;
  g.r = r.norm();
  g.theta = std::acos(std::clamp(r.dot(axis) / g.r, -1.0, 1.0));
  const double x = r.dot(ref);
  const double y = r.dot(ortho);
  double phi = (std::abs(x) < 1e-15 && std::abs(y) < 1e-15) ? 0.0 : std::atan2(y, x);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  g.phi = phi;
  return g;
}

SpinCluster parse_cluster_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream msg;
    msg << "cluster config line " << line_of(text, e.byte == 0 ? 0 : e.byte - 1)
        << ": invalid JSON (" << e.what() << ")";
    throw ParseError(msg.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cluster config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("cluster config: top level must be an object");
  if (!doc.contains("positions")) throw ParseError("cluster config: missing key 'positions'");
  for (const auto& item : doc.items()) {
    if (item.key() != "positions" && item.key() != "field_direction") {
      throw ParseError("cluster config: unknown key '" + item.key() + "'");
    }
  }

  const auto& list = doc["positions"];
  if (!list.is_array()) throw ParseError("positions: expected an array of [x, y, z]");
  if (list.size() < 2) throw ParseError("positions: need at least 2 spins");
  if (list.size() > static_cast<std::size_t>(kMaxSpins)) {
    throw ParseError("positions: at most " + std::to_string(kMaxSpins) + " spins supported, got " +
                     std::to_string(list.size()));
  }

  std::vector<Vec3> sites;
  sites.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    sites.push_back(parse_vec3(list[i], "positions[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if ((sites[i] - sites[j]).norm() <= kCoincidentTolerance) {
        throw ParseError("positions[" + std::to_string(i) + "]: duplicate of positions[" +
                         std::to_string(j) + "]");
      }
    }
  }

  Vec3 field = Vec3::UnitZ();
  if (doc.contains("field_direction")) {
    field = parse_vec3(doc["field_direction"], "field_direction");
    if (field.norm() < 1e-12) throw ParseError("field_direction: must be non-zero");
  }
  return SpinCluster(std::move(sites), field);
}

std::string serialize_cluster(const SpinCluster& cluster) {
  nlohmann::json doc;
  auto& list = doc["positions"] = nlohmann::json::array();
  for (const auto& p : cluster.positions()) list.push_back({p.x(), p.y(), p.z()});
  const auto& f = cluster.field_direction();
  doc["field_direction"] = {f.x(), f.y(), f.z()};
  return doc.dump(2);
}

}  // namespace dipent
