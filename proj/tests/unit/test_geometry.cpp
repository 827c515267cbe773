#include "dipent/errors.hpp"
#include "dipent/geometry.hpp"

#include <gtest/gtest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <random>

using namespace dipent;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> nearest_neighbour_distances(const SpinCluster& c) {
  std::vector<double> d;
  const int n = c.n_spins();
  for (int k = 1; k <= n; ++k) d.push_back((c.position(k % n + 1) - c.position(k)).norm());
  return d;
}

}  // namespace

TEST(Chain, TwoSpinsAtUnitSpacing) {
  const auto c = build_chain(2);
  ASSERT_EQ(c.n_spins(), 2);
  EXPECT_EQ(c.position(1), Vec3(0, 0, 0));
  EXPECT_EQ(c.position(2), Vec3(1, 0, 0));
  EXPECT_EQ(c.field_direction(), Vec3::UnitZ());
}

TEST(Chain, PairIsPerpendicularToField) {
  const auto g = pair_geometry(build_chain(2), 1, 2);
  EXPECT_DOUBLE_EQ(g.r, 1.0);
  EXPECT_NEAR(g.theta, kPi / 2, 1e-15);
  EXPECT_EQ(g.phi, 0.0);
}

TEST(Chain, EndToEndDistance) {
  const auto c = build_chain(6);
  EXPECT_EQ(c.n_spins(), 6);
  EXPECT_DOUBLE_EQ(pair_geometry(c, 1, 6).r, 5.0);
  for (int m = 1; m <= 6; ++m) {
    for (int n = m + 1; n <= 6; ++n) EXPECT_NEAR(pair_geometry(c, m, n).theta, kPi / 2, 1e-15);
  }
}

TEST(Chain, RejectsOutOfRange) {
  EXPECT_THROW(build_chain(1), ArgumentError);
  EXPECT_THROW(build_chain(13), ArgumentError);
}

TEST(Circle, HexagonHasUnitCircumradius) {
  const auto c = build_circle(6);
  for (const auto& p : c.positions()) EXPECT_NEAR(p.norm(), 1.0, 1e-12);
  EXPECT_NEAR(pair_geometry(c, 1, 4).r, 2.0, 1e-12);
  EXPECT_NEAR(pair_geometry(c, 1, 2).r, pair_geometry(c, 1, 6).r, 1e-12);
  EXPECT_NEAR(pair_geometry(c, 1, 2).r, 1.0, 1e-12);
}

TEST(Circle, OctagonCircumradius) {
  const auto c = build_circle(8);
  for (const auto& p : c.positions()) EXPECT_NEAR(p.norm(), 1.3065629648763766, 1e-12);
}

TEST(Circle, NearestNeighboursAtUnitDistanceAndPerpendicular) {
  for (int n = 3; n <= 12; ++n) {
    const auto c = build_circle(n);
    for (double d : nearest_neighbour_distances(c)) EXPECT_NEAR(d, 1.0, 1e-12) << "n=" << n;
    for (int m = 1; m <= n; ++m) {
      for (int k = m + 1; k <= n; ++k) EXPECT_NEAR(pair_geometry(c, m, k).theta, kPi / 2, 1e-12);
    }
  }
}

TEST(Circle, InvariantUnderRotationAboutField) {
  for (int n : {3, 6, 8, 11}) {
    const auto c = build_circle(n);
    const Eigen::AngleAxisd rot(2 * kPi / n, c.field_direction());
    for (const auto& p : c.positions()) {
      const Vec3 q = rot * p;
      double best = 1e9;
      for (const auto& other : c.positions()) best = std::min(best, (q - other).norm());
      EXPECT_LT(best, 1e-12);
    }
  }
}

TEST(Circle, RejectsOutOfRange) {
  EXPECT_THROW(build_circle(2), ArgumentError);
  EXPECT_THROW(build_circle(13), ArgumentError);
}

TEST(PairGeometry, ParallelToFieldHasZeroTheta) {
  const SpinCluster c({{0, 0, 0}, {0, 0, 1}});
  EXPECT_NEAR(pair_geometry(c, 1, 2).theta, 0.0, 1e-15);
  EXPECT_NEAR(pair_geometry(c, 2, 1).theta, kPi, 1e-15);
}

TEST(PairGeometry, IndexSwapSymmetry) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> sites;
    for (int k = 0; k < 4; ++k) sites.emplace_back(u(rng), u(rng), u(rng));
    const SpinCluster c(sites, Vec3(u(rng), u(rng), u(rng)));
    for (int m = 1; m <= 4; ++m) {
      for (int n = m + 1; n <= 4; ++n) {
        const auto a = pair_geometry(c, m, n);
        const auto b = pair_geometry(c, n, m);
        EXPECT_NEAR(a.r, b.r, 1e-14);
        EXPECT_NEAR(b.theta, kPi - a.theta, 1e-12);
        EXPECT_GE(a.phi, 0.0);
        EXPECT_LT(a.phi, 2 * kPi);
      }
    }
  }
}

TEST(PairGeometry, AzimuthMeasuredFromXAxis) {
  const SpinCluster c({{0, 0, 0}, {0, 1, 0}});
  EXPECT_NEAR(pair_geometry(c, 1, 2).phi, kPi / 2, 1e-15);
  EXPECT_NEAR(pair_geometry(c, 2, 1).phi, 3 * kPi / 2, 1e-15);
}

TEST(PairGeometry, RejectsBadIndices) {
  const auto c = build_chain(3);
  EXPECT_THROW(pair_geometry(c, 2, 2), ArgumentError);
  EXPECT_THROW(pair_geometry(c, 0, 2), ArgumentError);
  EXPECT_THROW(pair_geometry(c, 1, 4), ArgumentError);
}

TEST(SpinCluster, RejectsCoincidentSites) {
  EXPECT_THROW(SpinCluster({{0, 0, 0}, {0, 0, 0}}), ArgumentError);
}

TEST(SpinCluster, NormalisesFieldDirection) {
  const SpinCluster c({{0, 0, 0}, {1, 0, 0}}, Vec3(0, 3, 4));
  EXPECT_NEAR(c.field_direction().norm(), 1.0, 1e-12);
  EXPECT_NEAR(c.field_direction().y(), 0.6, 1e-15);
}

TEST(ClusterConfig, RescalesToUnitSpacing) {
  const auto c = parse_cluster_config(R"({"positions": [[0,0,0],[2,0,0]]})");
  EXPECT_EQ(c.n_spins(), 2);
  EXPECT_DOUBLE_EQ(c.scale_factor(), 2.0);
  EXPECT_DOUBLE_EQ(pair_geometry(c, 1, 2).r, 1.0);
}

TEST(ClusterConfig, SingleSiteIsRejected) {
  try {
    parse_cluster_config(R"({"positions": [[0,0,0]]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("at least 2 spins"), std::string::npos);
  }
}

TEST(ClusterConfig, ExplicitHexagonEqualsPreset) {
  std::string text = R"({"positions": [)";
  for (int k = 0; k < 6; ++k) {
    const double a = 2 * kPi * k / 6;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g, 0]", k ? "," : "", std::cos(a), std::sin(a));
    text += buf;
  }
  text += "]}";
  const auto parsed = parse_cluster_config(text);
  const auto preset = build_circle(6);
  for (int k = 1; k <= 6; ++k) EXPECT_LT((parsed.position(k) - preset.position(k)).norm(), 1e-12);
}

TEST(ClusterConfig, Errors) {
  EXPECT_THROW(parse_cluster_config(R"({"positions": [[0,0,0],[0,0,0]]})"), ParseError);
  EXPECT_THROW(parse_cluster_config(R"({"positions": [[0,0,0],[1e400,0,0]]})"), ParseError);
  EXPECT_THROW(parse_cluster_config(R"({"positions": [[0,0],[1,0,0]]})"), ParseError);
  EXPECT_THROW(parse_cluster_config(R"({"positions": [[0,0,0],[1,0,0]], "field_direction": [0,0,0]})"),
               ParseError);
  EXPECT_THROW(parse_cluster_config(R"({"positions": [[0,0,0],[1,0,0]], "extra": 1})"), ParseError);
  EXPECT_THROW(parse_cluster_config(R"({"sites": []})"), ParseError);
  std::string many = R"({"positions": [)";
  for (int k = 0; k < 13; ++k) many += (k ? ",[" : "[") + std::to_string(k) + ",0,0]";
  many += "]}";
  EXPECT_THROW(parse_cluster_config(many), ParseError);
}

TEST(ClusterConfig, SyntaxErrorReportsLine) {
  try {
    parse_cluster_config("{\n  \"positions\": [[0,0,0],\n  [1,0,0]\n  ,,\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(ClusterConfig, FieldDirectionNormalisedOnLoad) {
  const auto c = parse_cluster_config(R"({"positions": [[0,0,0],[1,0,0]], "field_direction": [0,0,5]})");
  EXPECT_EQ(c.field_direction(), Vec3::UnitZ());
}

TEST(ClusterConfig, SerializeRoundTripProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> count(2, 12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec3> sites;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) sites.emplace_back(u(rng), u(rng), u(rng));
    const SpinCluster original(sites, Vec3(u(rng), u(rng), u(rng)));
    const SpinCluster back = parse_cluster_config(serialize_cluster(original));
    ASSERT_EQ(back.n_spins(), original.n_spins());
    for (int k = 1; k <= n; ++k) EXPECT_LT((back.position(k) - original.position(k)).norm(), 1e-12);
    EXPECT_LT((back.field_direction() - original.field_direction()).norm(), 1e-12);
  }
}
