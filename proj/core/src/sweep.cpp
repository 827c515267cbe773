#include "dipent/sweep.hpp"

#include "dipent/errors.hpp"
#include "dipent/hamiltonian.hpp"
#include "dipent/thermal.hpp"
#include "dipent/version.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace dipent {
namespace {

int resolve_threads(const SweepOptions& options, std::size_t work) {
  int t = options.threads;
  if (t <= 0) t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(t), std::max<std::size_t>(work, 1)));
}

// Runs body(i) for i in [0, count) on a pool of `threads` workers. Each
// index is processed exactly once; the first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

bool row_less(const SweepRow& a, const SweepRow& b) {
  return std::tie(a.alpha, a.beta, a.m, a.n) < std::tie(b.alpha, b.beta, b.m, b.n);
}

std::string describe_pairs(const std::vector<SpinPair>& pairs) {
  std::string s;
  for (const auto& p : pairs) {
    if (!s.empty()) s += ';';
    s += std::to_string(p.first) + "," + std::to_string(p.second);
  }
  return s;
}

void validate_pairs(const std::vector<SpinPair>& pairs, int n_spins) {
  for (const auto& p : pairs) {
    if (p.first < 1 || p.second > n_spins || p.first >= p.second) {
      throw ArgumentError("pair (" + std::to_string(p.first) + "," + std::to_string(p.second) +
                          ") invalid for " + std::to_string(n_spins) + " spins");
    }
  }
}

EigenSystem spectrum(const SpinCluster& cluster, double alpha) {
  return hermitian_eigensystem(total_hamiltonian(cluster, ModelParams{alpha, 0.0}));
}

// Rows for one (system, alpha): beta-major, pairs in the given order.
std::vector<SweepRow> evaluate_line(const EigenSystem& eig, double alpha,
                                    const std::vector<double>& betas,
                                    const std::vector<ReducedProjectors>& projectors,
                                    const std::string& label, int threads) {
  std::vector<SweepRow> rows(betas.size() * projectors.size());
  parallel_for(betas.size(), threads, [&](std::size_t i) {
    const RealVector w = gibbs_weights(eig.eigenvalues, betas[i]);
    for (std::size_t p = 0; p < projectors.size(); ++p) {
      const auto b = concurrence(projectors[p].reduce(w));
      SweepRow& row = rows[i * projectors.size() + p];
      row.system = label;
      row.beta = betas[i];
      row.alpha = alpha;
      row.m = projectors[p].pair().first;
      row.n = projectors[p].pair().second;
      row.concurrence = b.c;
      row.lambdas = b.lambdas;
    }
  });
  return rows;
}

std::vector<ReducedProjectors> make_projectors(const EigenSystem& eig,
                                               const std::vector<SpinPair>& pairs) {
  std::vector<ReducedProjectors> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.emplace_back(eig, p);
  return out;
}

double parse_number(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

int parse_index(std::string_view field, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad index '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

constexpr std::string_view kHeader = "beta,alpha,m,n,concurrence,lambda1,lambda2,lambda3,lambda4";

}  // namespace

// ---------------------------------------------------------------------------

void GridSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ArgumentError("grid bounds must be finite");
  if (count < 2) throw ArgumentError("grid needs at least 2 points, got " + std::to_string(count));
}

std::vector<double> GridSpec::values() const {
  validate();
  std::vector<double> v(static_cast<std::size_t>(count));
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = start + i * step;
  v.back() = stop;
  return v;
}

std::string GridSpec::describe() const {
  return format_double(start) + ":" + format_double(stop) + ":" + std::to_string(count);
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ArgumentError("grid must be start:stop:count, got '" + text + "'");
  GridSpec g;
  try {
    g.start = parse_number(parts[0], 0);
    g.stop = parse_number(parts[1], 0);
    g.count = parse_index(parts[2], 0);
  } catch (const ParseError&) {
    throw ArgumentError("grid must be start:stop:count, got '" + text + "'");
  }
  g.validate();
  return g;
}

bool SweepTable::labelled() const {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.system.empty(); });
}

void SweepTable::sort_rows() {
  // Group boundaries follow first appearance of each system label.
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (std::find(order.begin(), order.end(), r.system) == order.end()) order.push_back(r.system);
  }
  std::stable_sort(rows.begin(), rows.end(), [&](const SweepRow& a, const SweepRow& b) {
    if (a.system != b.system) {
      return std::find(order.begin(), order.end(), a.system) <
             std::find(order.begin(), order.end(), b.system);
    }
    return row_less(a, b);
  });
}

std::vector<SpinPair> all_pairs(int n_spins) {
  std::vector<SpinPair> out;
  for (int m = 1; m <= n_spins; ++m) {
    for (int n = m + 1; n <= n_spins; ++n) out.push_back({m, n});
  }
  return out;
}

SweepTable sweep_beta(const SpinCluster& cluster, double alpha, const GridSpec& betas,
                      std::vector<SpinPair> pairs, const SweepOptions& options) {
  if (pairs.empty()) pairs = all_pairs(cluster.n_spins());
  validate_pairs(pairs, cluster.n_spins());
  const auto grid = betas.values();
  const EigenSystem eig = spectrum(cluster, alpha);
  const auto projectors = make_projectors(eig, pairs);

  SweepTable table;
  table.metadata = {{"alpha", format_double(alpha)},
                    {"beta_grid", betas.describe()},
                    {"pairs", describe_pairs(pairs)},
                    {"version", std::string(kVersion)}};
  table.rows = evaluate_line(eig, alpha, grid, projectors, "", resolve_threads(options, grid.size()));
  table.sort_rows();
  return table;
}

PhaseDiagram phase_diagram(const SpinCluster& cluster, const GridSpec& betas,
                           const GridSpec& alphas, SpinPair pair, const SweepOptions& options) {
  validate_pairs({pair}, cluster.n_spins());
  const auto beta_values = betas.values();
  const auto alpha_values = alphas.values();

  std::vector<std::vector<SweepRow>> blocks(alpha_values.size());
  std::vector<BoundaryPoint> points(alpha_values.size());
  parallel_for(alpha_values.size(), resolve_threads(options, alpha_values.size()),
               [&](std::size_t i) {
                 const double alpha = alpha_values[i];
                 const EigenSystem eig = spectrum(cluster, alpha);
                 const auto projectors = make_projectors(eig, {pair});
                 blocks[i] = evaluate_line(eig, alpha, beta_values, projectors, "", 1);
                 const ThermalPairConcurrence curve(eig, pair);
                 points[i] = BoundaryPoint{alpha, critical_beta(curve, BetaSide::negative),
                                           critical_beta(curve, BetaSide::positive)};
               });

  PhaseDiagram out;
  out.table.metadata = {{"alpha_grid", alphas.describe()},
                        {"beta_grid", betas.describe()},
                        {"pairs", describe_pairs({pair})},
                        {"version", std::string(kVersion)}};
  for (auto& b : blocks) {
    out.table.rows.insert(out.table.rows.end(), std::make_move_iterator(b.begin()),
                          std::make_move_iterator(b.end()));
  }
  out.table.sort_rows();
  out.boundary.points = std::move(points);
  return out;
}

PhaseBoundary phase_boundary(const SpinCluster& cluster, const std::vector<double>& alphas,
                             SpinPair pair, const SweepOptions& options) {
  validate_pairs({pair}, cluster.n_spins());
  PhaseBoundary out;
  out.points.resize(alphas.size());
  parallel_for(alphas.size(), resolve_threads(options, alphas.size()), [&](std::size_t i) {
    const ThermalPairConcurrence curve(spectrum(cluster, alphas[i]), pair);
    out.points[i] = BoundaryPoint{alphas[i], critical_beta(curve, BetaSide::negative),
                                  critical_beta(curve, BetaSide::positive)};
  });
  return out;
}

std::optional<double> boundary_slope(const PhaseBoundary& boundary) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& p : boundary.points) {
    if (!p.beta_negative) continue;
    sx += p.alpha;
    sy += *p.beta_negative;
    sxx += p.alpha * p.alpha;
    sxy += p.alpha * *p.beta_negative;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

// ---------------------------------------------------------------------------

std::string format_double(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw IoError("cannot format floating-point value");
  return std::string(buf, ptr);
}

void write_csv(const SweepTable& table, std::ostream& out) {
  const bool labelled = table.labelled();
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
  if (labelled) out << "system,";
  out << kHeader << '\n';
  for (const auto& r : table.rows) {
    if (labelled) out << r.system << ',';
    out << format_double(r.beta) << ',' << format_double(r.alpha) << ',' << r.m << ',' << r.n
        << ',' << format_double(r.concurrence);
    for (double l : r.lambdas) out << ',' << format_double(l);
    out << '\n';
  }
}

void write_csv(const SweepTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

SweepTable read_csv(std::istream& in) {
  SweepTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool labelled = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line.rfind("# ", 0) == 0) {
        const auto colon = line.find(": ", 2);
        if (colon == std::string::npos) {
          throw ParseError("line " + std::to_string(line_no) + ": metadata must be '# key: value'");
        }
        table.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
        continue;
      }
      if (line == kHeader) {
        header_seen = true;
      } else if (line == "system," + std::string(kHeader)) {
        header_seen = labelled = true;
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": unexpected header '" + line + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    auto fields = split(line, ',');
    const std::size_t expected = labelled ? 10 : 9;
    if (fields.size() != expected) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(expected) + " fields, got " + std::to_string(fields.size()));
    }
    SweepRow r;
    std::size_t f = 0;
    if (labelled) r.system = std::string(fields[f++]);
    r.beta = parse_number(fields[f++], line_no);
    r.alpha = parse_number(fields[f++], line_no);
    r.m = parse_index(fields[f++], line_no);
    r.n = parse_index(fields[f++], line_no);
    r.concurrence = parse_number(fields[f++], line_no);
    for (auto& l : r.lambdas) l = parse_number(fields[f++], line_no);
    table.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError("missing CSV header");
  return table;
}

void write_boundary_csv(const PhaseBoundary& boundary, const Metadata& metadata,
                        std::ostream& out) {
  for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << '\n';
  out << "alpha,beta_cr_negative,beta_cr_positive\n";
  for (const auto& p : boundary.points) {
    out << format_double(p.alpha) << ',';
    if (p.beta_negative) out << format_double(*p.beta_negative);
    out << ',';
    if (p.beta_positive) out << format_double(*p.beta_positive);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------

std::vector<CurvePreset> zero_field_curve_presets() {
  return {{"pair", {1, 2}},     {"chain:6", {1, 2}},  {"chain:8", {1, 2}}, {"circle:6", {1, 2}},
          {"circle:8", {1, 2}}, {"chain:6", {2, 3}},  {"chain:8", {2, 3}}};
}

SpinCluster preset_cluster(const std::string& descriptor) {
  if (descriptor == "pair") return build_chain(2);
  const auto colon = descriptor.find(':');
  if (colon != std::string::npos) {
    const std::string kind = descriptor.substr(0, colon);
    const std::string count = descriptor.substr(colon + 1);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
    if (ec == std::errc{} && ptr == count.data() + count.size()) {
      if (kind == "chain") return build_chain(n);
      if (kind == "circle") return build_circle(n);
    }
  }
  throw ArgumentError("unknown system '" + descriptor +
                      "'; expected pair, chain:N, circle:N or file:PATH");
}

SweepTable sweep_curves(const std::vector<CurvePreset>& curves, double alpha,
                        const GridSpec& betas, const SweepOptions& options) {
  const auto grid = betas.values();
  // Systems in first-appearance order, each with the pairs requested for it.
  std::vector<std::pair<std::string, std::vector<SpinPair>>> systems;
  for (const auto& c : curves) {
    auto it = std::find_if(systems.begin(), systems.end(),
                           [&](const auto& s) { return s.first == c.system; });
    if (it == systems.end()) {
      systems.push_back({c.system, {c.pair}});
    } else if (std::find(it->second.begin(), it->second.end(), c.pair) == it->second.end()) {
      it->second.push_back(c.pair);
    }
  }

  SweepTable table;
  std::string curve_list;
  for (const auto& c : curves) {
    if (!curve_list.empty()) curve_list += ' ';
    curve_list += c.system + "/" + std::to_string(c.pair.first) + "," + std::to_string(c.pair.second);
  }
  table.metadata = {{"curves", curve_list},
                    {"alpha", format_double(alpha)},
                    {"beta_grid", betas.describe()},
                    {"version", std::string(kVersion)}};
  const int threads = resolve_threads(options, grid.size());
  for (const auto& [name, pairs] : systems) {
    const SpinCluster cluster = preset_cluster(name);
    validate_pairs(pairs, cluster.n_spins());
    const EigenSystem eig = spectrum(cluster, alpha);
    auto rows = evaluate_line(eig, alpha, grid, make_projectors(eig, pairs), name, threads);
    table.rows.insert(table.rows.end(), std::make_move_iterator(rows.begin()),
                      std::make_move_iterator(rows.end()));
  }
  table.sort_rows();
  return table;
}

FigureData figure_data(int figure, const SweepOptions& options) {
  FigureData out;
  switch (figure) {
    case 1: {
      auto t = sweep_beta(build_chain(2), 1.0, kFigureBetaGrid, {{1, 2}}, options);
      t.metadata.insert(t.metadata.begin(), {"system", "pair"});
      out.metadata = t.metadata;
      out.table = std::move(t);
      break;
    }
    case 2: {
      auto d = phase_diagram(build_chain(2), kPlaneBetaGrid, kPlaneAlphaGrid, {1, 2}, options);
      d.table.metadata.insert(d.table.metadata.begin(), {"system", "pair"});
      out.metadata = d.table.metadata;
      out.table = std::move(d.table);
      out.boundary = std::move(d.boundary);
      break;
    }
    case 3: {
      out.boundary = phase_boundary(build_chain(2), kPlaneAlphaGrid.values(), {1, 2}, options);
      out.metadata = {{"system", "pair"},
                      {"alpha_grid", kPlaneAlphaGrid.describe()},
                      {"pairs", "1,2"},
                      {"version", std::string(kVersion)}};
      break;
    }
    case 4: {
      auto t = sweep_curves(zero_field_curve_presets(), 0.0, kFigureBetaGrid, options);
      out.metadata = t.metadata;
      out.table = std::move(t);
      break;
    }
    default:
      throw ArgumentError("figure must be 1, 2, 3 or 4, got " + std::to_string(figure));
  }
  return out;
}

}  // namespace dipent
