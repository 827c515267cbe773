#pragma once

#include "dipent/analytic.hpp"
#include "dipent/entanglement.hpp"
#include "dipent/geometry.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dipent {

/// Inclusive linear grid of `count` >= 2 points from start to stop.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 2;

  void validate() const;
  [[nodiscard]] std::vector<double> values() const;
  [[nodiscard]] std::string describe() const;  ///< "start:stop:count"
};

/// Parses "start:stop:count".
GridSpec parse_grid(const std::string& text);

struct SweepRow {
  std::string system;  ///< empty for single-system tables
  double beta = 0.0;
  double alpha = 0.0;
  int m = 1;
  int n = 2;
  double concurrence = 0.0;
  std::array<double, 4> lambdas{};

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Rows grouped by system (in insertion order) and sorted within each group
/// by (alpha, beta, m, n).
struct SweepTable {
  Metadata metadata;
  std::vector<SweepRow> rows;

  /// True when any row carries a system label; the CSV then has a leading
  /// `system` column.
  [[nodiscard]] bool labelled() const;
  void sort_rows();
};

struct BoundaryPoint {
  double alpha = 0.0;
  std::optional<double> beta_negative;
  std::optional<double> beta_positive;
};

struct PhaseBoundary {
  std::vector<BoundaryPoint> points;
};

struct PhaseDiagram {
  SweepTable table;
  PhaseBoundary boundary;
};

struct SweepOptions {
  int threads = 0;  ///< worker-pool width; 0 means hardware concurrency
};

/// All pairs (m, n), m < n, of an n_spins cluster.
std::vector<SpinPair> all_pairs(int n_spins);

/// C(beta) for each requested pair at fixed alpha. One diagonalisation is
/// shared by every beta and pair; `pairs` empty means all pairs.
SweepTable sweep_beta(const SpinCluster& cluster, double alpha, const GridSpec& betas,
                      std::vector<SpinPair> pairs = {}, const SweepOptions& options = {});

/// Full C(beta, alpha) grid for one pair plus, per alpha, the critical beta
/// on both sides refined by bisection.
PhaseDiagram phase_diagram(const SpinCluster& cluster, const GridSpec& betas,
                           const GridSpec& alphas, SpinPair pair,
                           const SweepOptions& options = {});

/// Boundary only (no C grid).
PhaseBoundary phase_boundary(const SpinCluster& cluster, const std::vector<double>& alphas,
                             SpinPair pair, const SweepOptions& options = {});

/// Least-squares slope of beta_negative against alpha over points where it
/// exists. Returns nullopt for fewer than two such points.
std::optional<double> boundary_slope(const PhaseBoundary& boundary);

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// `# key: value` metadata lines, then the header
/// `[system,]beta,alpha,m,n,concurrence,lambda1,lambda2,lambda3,lambda4`
/// and one line per row. Floats use the shortest round-trip decimal form.
void write_csv(const SweepTable& table, std::ostream& out);
void write_csv(const SweepTable& table, const std::filesystem::path& path);

/// Inverse of write_csv. Throws ParseError with the line number.
SweepTable read_csv(std::istream& in);

/// Header `alpha,beta_cr_negative,beta_cr_positive`; absent roots are empty.
void write_boundary_csv(const PhaseBoundary& boundary, const Metadata& metadata,
                        std::ostream& out);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

/// A named zero-field concurrence curve: one system and one pair.
struct CurvePreset {
  std::string system;  ///< descriptor, e.g. "chain:6"
  SpinPair pair;
};

/// The seven zero-field curves: pair C12; chain:6 C12, C23; chain:8 C12,
/// C23; circle:6 C12; circle:8 C12.
std::vector<CurvePreset> zero_field_curve_presets();

/// Cluster for a preset descriptor: "pair", "chain:N" or "circle:N".
SpinCluster preset_cluster(const std::string& descriptor);

/// Sweeps every curve at the given alpha, each system diagonalised once.
SweepTable sweep_curves(const std::vector<CurvePreset>& curves, double alpha,
                        const GridSpec& betas, const SweepOptions& options = {});

struct FigureData {
  std::optional<SweepTable> table;
  std::optional<PhaseBoundary> boundary;
  Metadata metadata;
};

inline constexpr GridSpec kFigureBetaGrid{-10.0, 10.0, 401};        // figures 1, 4
inline constexpr GridSpec kPlaneBetaGrid{-6.0, 6.0, 241};           // figures 2, 3
inline constexpr GridSpec kPlaneAlphaGrid{0.0, 6.0, 121};           // figures 2, 3

/// Data behind figure 1 (pair, alpha = 1, lambdas and C against beta),
/// 2 (pair, C over the beta-alpha plane), 3 (phase boundary) or 4 (the
/// seven zero-field curves). Throws ArgumentError for other numbers.
FigureData figure_data(int figure, const SweepOptions& options = {});

}  // namespace dipent
