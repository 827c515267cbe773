#include "cli.hpp"

#include "dipent/analytic.hpp"
#include "dipent/errors.hpp"
#include "dipent/hamiltonian.hpp"
#include "dipent/sweep.hpp"
#include "dipent/thermal.hpp"
#include "dipent/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace dipent::cli {
namespace {

constexpr const char* kFooter = R"(Systems:
  pair        two spins at unit distance, perpendicular to the field
  chain:N     N collinear spins (2 <= N <= 12), unit spacing, perpendicular to the field
  circle:N    regular N-gon (3 <= N <= 12), nearest-neighbour distance 1, in the plane normal to the field
  file:PATH   JSON cluster file {"positions": [[x,y,z],...], "field_direction": [x,y,z]}

Figure presets (sweep --fig):
  1   pair, alpha = 1, beta in [-10, 10] x 401: lambdas and concurrence
  2   pair, concurrence over beta in [-6, 6] x 241 and alpha in [0, 6] x 121
  3   pair, phase boundary (critical beta on both sides) over alpha in [0, 6] x 121
  4   zero-field curves: pair C12, chain:6 C12 C23, chain:8 C12 C23, circle:6 C12, circle:8 C12

Exit codes: 0 success, 1 computation error, 2 usage error.)";

int to_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ArgumentError("invalid " + what + " '" + s + "'");
  }
  return v;
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ArgumentError("invalid " + what + " '" + s + "'");
  }
  return v;
}

PhysicalUnits parse_units(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ArgumentError("--units expects GAMMA_KHZ_PER_G,COUPLING_KHZ, got '" + text + "'");
  }
  PhysicalUnits u{to_double(text.substr(0, comma), "gyromagnetic ratio"),
                  to_double(text.substr(comma + 1), "coupling")};
  u.validate();
  return u;
}

BetaSide parse_side(const std::string& text) {
  if (text == "negative") return BetaSide::negative;
  if (text == "positive") return BetaSide::positive;
  throw ArgumentError("--side must be 'negative' or 'positive', got '" + text + "'");
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void write_manifest(const std::string& path, const nlohmann::json& manifest) {
  const std::string sidecar = path + ".manifest.json";
  std::ofstream out(sidecar, std::ios::binary);
  if (!out) throw IoError("cannot open '" + sidecar + "' for writing");
  out << manifest.dump(2) << '\n';
  if (!out) throw IoError("write to '" + sidecar + "' failed");
}

// Writes `emit` to --out (plus manifest) or to stdout.
template <typename Emit>
void deliver(const std::string& out_path, std::ostream& out, const nlohmann::json& manifest,
             Emit&& emit) {
  if (out_path.empty()) {
    emit(out);
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + out_path + "' for writing");
  emit(file);
  file.flush();
  if (!file) throw IoError("write to '" + out_path + "' failed");
  write_manifest(out_path, manifest);
}

struct ConcurrenceArgs {
  std::string system;
  double beta = 0.0;
  double alpha = 0.0;
  std::string pair = "1,2";
  bool show_rho = false;
};

struct SweepArgs {
  std::string system;
  std::string beta_range;
  std::optional<double> alpha;
  std::string alpha_range;
  std::string pairs = "all";
  std::string out_path;
  int threads = 0;
  int fig = 0;
};

struct CriticalArgs {
  std::string system;
  std::string pair = "1,2";
  double alpha = 0.0;
  std::string side;
  std::string units;
};

struct TemperatureArgs {
  double beta = 0.0;
  std::string units;
};

int cmd_concurrence(const ConcurrenceArgs& a, std::ostream& out) {
  const SpinCluster cluster = resolve_system(a.system);
  const SpinPair pair = parse_pair(a.pair);
  const ModelParams params{a.alpha, a.beta};
  params.validate();
  const auto rho = gibbs_state(total_hamiltonian(cluster, params), a.beta);
  const auto reduced = partial_trace_pair(rho, pair.first, pair.second);
  const auto b = concurrence(reduced);

  out << "system: " << a.system << '\n'
      << "pair: " << pair.first << ',' << pair.second << '\n'
      << "beta: " << format_double(a.beta) << '\n'
      << "alpha: " << format_double(a.alpha) << '\n'
      << "concurrence: " << format_double(b.c) << '\n'
      << "F: " << format_double(b.f) << '\n';
  for (std::size_t k = 0; k < 4; ++k) {
    out << "lambda" << k + 1 << ": " << format_double(b.lambdas[k]) << '\n';
  }
  if (a.show_rho) {
    out << "rho (basis uu, ud, du, dd):\n";
    for (int r = 0; r < 4; ++r) {
      out << ' ';
      for (int c = 0; c < 4; ++c) {
        const auto v = reduced.matrix()(r, c);
        out << ' ' << format_double(v.real()) << (v.imag() < 0 ? "-" : "+")
            << format_double(std::abs(v.imag())) << 'i';
      }
      out << '\n';
    }
  }
  return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const SweepOptions options{a.threads};
  nlohmann::json manifest = {{"tool", "dipent"}, {"version", std::string(kVersion)}, {"command", "sweep"}};

  if (a.fig != 0) {
    if (!a.system.empty() || !a.beta_range.empty() || a.alpha || !a.alpha_range.empty() ||
        a.pairs != "all") {
      throw ArgumentError("--fig cannot be combined with a system, ranges or --pairs");
    }
    const FigureData data = figure_data(a.fig, options);
    manifest["figure"] = a.fig;
    for (const auto& [k, v] : data.metadata) manifest["metadata"][k] = v;
    deliver(a.out_path, out, manifest, [&](std::ostream& os) {
      if (data.table) {
        write_csv(*data.table, os);
      } else {
        write_boundary_csv(*data.boundary, data.metadata, os);
      }
    });
    return kExitOk;
  }

  if (a.system.empty()) throw ArgumentError("sweep needs a SYSTEM or --fig");
  if (a.beta_range.empty()) throw ArgumentError("sweep needs --beta-range");
  if (a.alpha && !a.alpha_range.empty()) {
    throw ArgumentError("--alpha and --alpha-range are mutually exclusive");
  }
  const SpinCluster cluster = resolve_system(a.system);
  const GridSpec betas = parse_grid(a.beta_range);
  const auto pairs = parse_pairs(a.pairs);

  SweepTable table;
  if (!a.alpha_range.empty()) {
    const GridSpec alphas = parse_grid(a.alpha_range);
    for (double alpha : alphas.values()) {
      auto line = sweep_beta(cluster, alpha, betas, pairs, options);
      table.rows.insert(table.rows.end(), line.rows.begin(), line.rows.end());
      if (table.metadata.empty()) table.metadata = line.metadata;
    }
    for (auto& [k, v] : table.metadata) {
      if (k == "alpha") {
        k = "alpha_grid";
        v = alphas.describe();
      }
    }
    table.sort_rows();
  } else {
    table = sweep_beta(cluster, a.alpha.value_or(0.0), betas, pairs, options);
  }
  table.metadata.insert(table.metadata.begin(), {"system", a.system});
  for (const auto& [k, v] : table.metadata) manifest["metadata"][k] = v;
  manifest["rows"] = table.rows.size();
  deliver(a.out_path, out, manifest, [&](std::ostream& os) { write_csv(table, os); });
  return kExitOk;
}

int cmd_critical(const CriticalArgs& a, std::ostream& out) {
  const SpinCluster cluster = resolve_system(a.system);
  const SpinPair pair = parse_pair(a.pair);
  const BetaSide side = parse_side(a.side);
  ModelParams{a.alpha, 0.0}.validate();
  std::optional<PhysicalUnits> units;
  if (!a.units.empty()) units = parse_units(a.units);

  const auto beta = critical_beta(cluster, a.alpha, pair, side);
  if (!beta) {
    out << "beta_cr: none\n";
    return kExitOk;
  }
  out << "beta_cr: " << fixed(*beta, 6) << '\n';
  if (units) out << "temperature_uK: " << fixed(beta_to_temperature(*beta, *units), 6) << '\n';
  return kExitOk;
}

int cmd_temperature(const TemperatureArgs& a, std::ostream& out) {
  const PhysicalUnits units = a.units.empty() ? PhysicalUnits{} : parse_units(a.units);
  out << "temperature_uK: " << fixed(beta_to_temperature(a.beta, units), 6) << '\n';
  return kExitOk;
}

}  // namespace

SpinCluster resolve_system(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read cluster file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return parse_cluster_config(buf.str());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  return preset_cluster(spec);
}

SpinPair parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ArgumentError("pair must be 'm,n', got '" + text + "'");
  SpinPair p{to_int(text.substr(0, comma), "pair index"), to_int(text.substr(comma + 1), "pair index")};
  if (p.first < 1 || p.first >= p.second) {
    throw ArgumentError("pair must satisfy 1 <= m < n, got '" + text + "'");
  }
  return p;
}

std::vector<SpinPair> parse_pairs(const std::string& text) {
  if (text == "all") return {};
  std::vector<SpinPair> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    out.push_back(parse_pair(text.substr(start, end == std::string::npos ? std::string::npos : end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal-equilibrium concurrence of dipolar-coupled spin-1/2 clusters at positive "
               "and negative spin temperatures",
               "dipent"};
  app.footer(kFooter);
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ConcurrenceArgs conc;
  auto* c = app.add_subcommand("concurrence", "Concurrence of one pair in a Gibbs state");
  c->add_option("system", conc.system, "pair | chain:N | circle:N | file:PATH")->required();
  c->add_option("--beta", conc.beta, "Inverse temperature (dipolar units, may be negative)")->required();
  c->add_option("--alpha", conc.alpha, "Field strength (Zeeman / dipolar)")->capture_default_str();
  c->add_option("--pair", conc.pair, "Spin pair m,n (1-based)")->capture_default_str();
  c->add_flag("--show-rho", conc.show_rho, "Also print the reduced 4x4 density matrix");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Concurrence over a beta grid (CSV)");
  s->add_option("system", sw.system, "pair | chain:N | circle:N | file:PATH");
  s->add_option("--beta-range", sw.beta_range, "start:stop:count");
  s->add_option("--alpha", sw.alpha, "Fixed field strength (default 0)");
  s->add_option("--alpha-range", sw.alpha_range, "start:stop:count; rows for every alpha");
  s->add_option("--pairs", sw.pairs, "'all' or m,n;m,n;...")->capture_default_str();
  s->add_option("--out", sw.out_path, "Write CSV here (plus PATH.manifest.json) instead of stdout");
  s->add_option("--threads", sw.threads, "Worker threads (0 = available parallelism)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  s->add_option("--fig", sw.fig, "Figure preset 1-4")->check(CLI::Range(1, 4));

  CriticalArgs crit;
  auto* k = app.add_subcommand("critical-beta", "Critical inverse temperature of a pair");
  k->add_option("system", crit.system, "pair | chain:N | circle:N | file:PATH")->required();
  k->add_option("--pair", crit.pair, "Spin pair m,n (1-based)")->capture_default_str();
  k->add_option("--alpha", crit.alpha, "Field strength")->capture_default_str();
  k->add_option("--side", crit.side, "negative | positive")->required();
  k->add_option("--units", crit.units, "GAMMA_KHZ_PER_G,COUPLING_KHZ: also print the temperature in uK");

  TemperatureArgs temp;
  auto* t = app.add_subcommand("temperature", "Convert a dimensionless beta to microkelvin");
  t->add_option("--beta", temp.beta, "Inverse temperature")->required();
  t->add_option("--units", temp.units, "GAMMA_KHZ_PER_G,COUPLING_KHZ (default 4.2577,10)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c) return cmd_concurrence(conc, out);
    if (*s) return cmd_sweep(sw, out);
    if (*k) return cmd_critical(crit, out);
    if (*t) return cmd_temperature(temp, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCompute;
  }
  return kExitUsage;
}

}  // namespace dipent::cli
