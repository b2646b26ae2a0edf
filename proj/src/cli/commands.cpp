// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "eigdecoh/basis.hpp"
#include "eigdecoh/cli/output.hpp"
#include "eigdecoh/dynamics.hpp"
#include "eigdecoh/error.hpp"
#include "eigdecoh/kernels/kernels.hpp"
#include "eigdecoh/operators.hpp"
#include "eigdecoh/oracle.hpp"
#include "eigdecoh/parallel.hpp"
#include "eigdecoh/reduced.hpp"
#include "eigdecoh/regression.hpp"
#include "eigdecoh/spectral.hpp"
#include "eigdecoh/witness.hpp"

#ifndef EIGDECOH_VERSION
#define EIGDECOH_VERSION "0.0.0"
#endif

namespace eigdecoh::cli {
namespace fs = std::filesystem;

namespace {

RunConfig builtin_config() {
  RunConfig cfg;
  cfg.graph = builtin_graph("default10", 10);
  cfg.operators = default_operators();
  return cfg;
}

// Output files written so far, relative to the output directory.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}
  void write(const std::string& name, std::string_view content) {
    write_atomic(dir_ / name, content);
    names_.push_back(name);
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

PauliStringSum prepare_operator(const Session& s, const std::string& id, bool as_witness) {
  const OperatorSpec& spec = s.config.find_operator(id);
  const PauliStringSum op = build_operator(spec, s.config.graph);
  if (!is_hermitian(op)) throw ConfigError("operators", fmt::format("operator '{}' is not Hermitian", id));
  if (as_witness) {
    try {
      Witness check(op, s.config.graph);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("operators", fmt::format("operator '{}' is not a usable witness: {}", id, e.what()));
    }
  }
  return op;
}

EigenSystem spectrum_of(const Session& s) {
  const auto t0 = std::chrono::steady_clock::now();
  EigenSystem es = diagonalize(s.config.graph, s.config.degeneracy_tolerance);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  fmt::print("spectrum: {} eigenpairs in {} sectors ({:.2f} s)\n", es.size(), es.sector_count(), dt.count());
  return es;
}

struct ScanOutcome {
  std::size_t records = 0;
  std::optional<SuppressionSummary> summary;
};

ScanOutcome scan_and_write(const Session& s, const EigenSystem& es, const std::string& id, bool plot,
                           OutputSet& out) {
  const PauliStringSum op = prepare_operator(s, id, false);
  const ScanResult scan = witness_scan(es, op, s.config.gap_max, id);
  out.write(fmt::format("witness_{}.csv", id), witness_csv(scan.records));

  ScanOutcome outcome{scan.records.size(), std::nullopt};
  BinnedStats stats;
  stats.width = s.config.bin_width;
  try {
    stats = bin_stats(scan.records, s.config.bin_width);
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "warning: no binned statistics for '{}': {}\n", id, e.what());
  }
  out.write(fmt::format("witness_{}_bins.csv", id), bins_csv(stats));
  if (plot) {
    out.write(fmt::format("witness_{}.svg", id),
              scatter_svg(scan.records, stats, {fmt::format("operator {}: |<m|A|n>| against energy gap", id)}));
  }

  fmt::print("witness-scan {}: {} pairs ({} excluded from bins as degenerate), {} pairs skipped by selection rule\n",
             id, scan.records.size(), stats.excluded_degenerate, scan.structural_zero_pairs);
  if (stats.used > 0) {
    try {
      const SuppressionSummary sum = suppression_summary(scan.records, stats);
      fmt::print("  lowest-bin median {:.6g}, pooled median over gap in [2, 5] {:.6g}, ratio {:.6g}, "
                 "Spearman(gap <= 2) {:.4f}\n",
                 sum.lowest_median, sum.mid_pooled_median, sum.ratio, sum.spearman_low_gap);
      outcome.summary = sum;
    } catch (const std::invalid_argument& e) {
      fmt::print("  no suppression summary: {}\n", e.what());
    }
  }
  return outcome;
}

std::vector<double> evolve_grid(const RunConfig& cfg, const EvolveOptions& ev) {
  TimeGrid grid = cfg.times;
  if (ev.tmax >= 0.0) grid.stop = ev.tmax;
  if (ev.steps >= 0) grid.steps = ev.steps;
  if (grid.stop > grid.start && grid.steps < 1) throw ConfigError("steps", "need at least one step for tmax > 0");
  return grid.points();
}

CVector read_state_file(const fs::path& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot read initial state file {}", path.string()));
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,re,im", 0) != 0) {
    throw ConfigError("initial", "state file must start with the header index,re,im");
  }
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(dim));
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    std::size_t index = 0;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
      throw ConfigError("initial", fmt::format("line {}: expected index,re,im", lineno));
    }
    const auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), index);
    if (ec != std::errc() || p != a.data() + a.size() || index >= dim) {
      throw ConfigError("initial", fmt::format("line {}: bad basis index '{}'", lineno, a));
    }
    try {
      psi[static_cast<Eigen::Index>(index)] = Complex(std::stod(b), std::stod(c));
    } catch (const std::exception&) {
      throw ConfigError("initial", fmt::format("line {}: bad amplitude", lineno));
    }
  }
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-8) throw ConfigError("initial", fmt::format("state norm {:.12g} is not 1", norm));
  return psi / norm;
}

CVector initial_state(const Session& s, const EigenSystem& es, const std::string& spec) {
  const SpinGraph& g = s.config.graph;
  if (spec == "cat") return cat_initial(g, neel_bath_bits(g));
  if (spec.rfind("eigenstate:", 0) == 0) {
    const std::string arg = spec.substr(11);
    std::size_t n = 0;
    const auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (ec != std::errc() || p != arg.data() + arg.size() || n >= es.size()) {
      throw ConfigError("initial", fmt::format("eigenstate label must be in [0, {})", es.size()));
    }
    return eigenstate_full(es, n);
  }
  if (spec.rfind("file:", 0) == 0) return read_state_file(spec.substr(5), es.size());
  throw ConfigError("initial", fmt::format("unknown initial state '{}' (cat, eigenstate:<n>, file:<path>)", spec));
}

struct EvolveOutcome {
  double w0 = 0.0;
  double min_w = 0.0;
  std::optional<double> tau;
  std::optional<double> below_0p2;
};

EvolveOutcome evolve_and_write(const Session& s, const EigenSystem& es, const EvolveOptions& ev, OutputSet& out) {
  const PauliStringSum op = prepare_operator(s, ev.operator_id, true);
  const CVector psi0 = initial_state(s, es, ev.initial);
  const std::vector<double> times = evolve_grid(s.config, ev);
  const auto rows = witness_timeseries(psi0, op, times, es, s.config.graph);
  out.write(fmt::format("evolve_{}.csv", ev.operator_id), timeseries_csv(rows));

  EvolveOutcome outcome;
  outcome.w0 = rows.front().w;
  outcome.min_w = rows.front().w;
  for (const auto& r : rows) {
    outcome.min_w = std::min(outcome.min_w, r.w);
    if (!outcome.below_0p2 && r.w < 0.2) outcome.below_0p2 = r.t;
  }
  fmt::print("evolve {} from {}: {} time points, w(0) = {:.12g}\n", ev.operator_id, ev.initial, rows.size(),
             outcome.w0);
  if (outcome.w0 == 0.0) {
    fmt::print("tau: undefined (w(0) = 0)\n");
  } else {
    outcome.tau = decoherence_time(rows);
    if (outcome.tau) {
      fmt::print("tau: {:.6g} (first grid time with w <= w(0)/e)\n", *outcome.tau);
    } else {
      fmt::print("tau: not reached on the grid\n");
    }
  }
  return outcome;
}

std::string rdm_file_tag(std::string s) {
  for (char& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '_';
  }
  return s;
}

std::size_t parse_label(const std::string& text, std::size_t bound) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || v >= bound) {
    throw ConfigError("rdm", fmt::format("bad eigenstate label '{}'", text));
  }
  return v;
}

CMatrix rdm_for(const std::string& spec, const Session& s, const EigenSystem& es) {
  const SpinGraph& g = s.config.graph;
  const auto cat = [&] { return overlaps(cat_initial(g, neel_bath_bits(g)), es); };
  if (spec == "diagonal") return diagonal_ensemble(cat(), es, g).rho;
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("rdm", fmt::format("unknown matrix '{}'", spec));
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  const ReducedStates rs(es, g);
  if (kind == "eth") {
    const std::size_t n = parse_label(arg, es.size());
    return rs.rdm(n, n);
  }
  if (kind == "transition") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw ConfigError("rdm", "transition needs <n>,<m>");
    return rs.rdm(parse_label(arg.substr(0, comma), es.size()), parse_label(arg.substr(comma + 1), es.size()));
  }
  if (kind == "quench") {
    double t = 0.0;
    try {
      t = std::stod(arg);
    } catch (const std::exception&) {
      throw ConfigError("rdm", fmt::format("bad time '{}'", arg));
    }
    return evolve_rdm(cat(), t, es, g);
  }
  throw ConfigError("rdm", fmt::format("unknown matrix kind '{}'", kind));
}

std::string utc_now() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(
                                                  std::chrono::system_clock::now())));
}

void apply_threads(const GlobalOptions& opts) { set_thread_count(opts.threads); }

}  // namespace

Session open_session(const GlobalOptions& opts) {
  Session s;
  if (opts.config_path.empty()) {
    s.config = builtin_config();
    s.config_source = "builtin:default10";
  } else {
    s.config = load_model(opts.config_path);
    s.config_source = opts.config_path;
  }
  if (!is_connected(s.config.graph)) {
    fmt::print(stderr, "warning: interaction graph is disconnected; the bath may not couple to the subsystem\n");
  }
  std::string dir = opts.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("EIGDECOH_OUT"); env != nullptr && *env != '\0') dir = env;
  }
  if (dir.empty()) dir = s.config.output_dir;
  if (dir.empty()) dir = ".";
  s.out_dir = dir;
  std::error_code ec;
  fs::create_directories(s.out_dir, ec);
  if (ec || !fs::is_directory(s.out_dir)) {
    throw IoError(fmt::format("cannot create output directory {}: {}", s.out_dir.string(),
                              ec ? ec.message() : "not a directory"));
  }
  return s;
}

int cmd_spectrum(const GlobalOptions& opts) {
  apply_threads(opts);
  const Session s = open_session(opts);
  const EigenSystem es = spectrum_of(s);
  OutputSet out(s.out_dir);
  out.write("spectrum.csv", spectrum_csv(es));
  fmt::print("spectrum: {} degeneracy groups, ground energy {:.12g}\n", es.degeneracy_groups().size(), es.energy(0));
  return kOk;
}

int cmd_witness_scan(const GlobalOptions& opts, const std::string& operator_id) {
  apply_threads(opts);
  const Session s = open_session(opts);
  prepare_operator(s, operator_id, false);
  const EigenSystem es = spectrum_of(s);
  OutputSet out(s.out_dir);
  scan_and_write(s, es, operator_id, opts.plot, out);
  return kOk;
}

int cmd_evolve(const GlobalOptions& opts, const EvolveOptions& evolve) {
  apply_threads(opts);
  const Session s = open_session(opts);
  prepare_operator(s, evolve.operator_id, true);
  const EigenSystem es = spectrum_of(s);
  OutputSet out(s.out_dir);
  evolve_and_write(s, es, evolve, out);
  return kOk;
}

int cmd_report(const GlobalOptions& opts, const ReportOptions& report) {
  apply_threads(opts);
  const std::string started = utc_now();
  const Session s = open_session(opts);
  EvolveOptions ev;
  ev.operator_id = report.operator_id;
  prepare_operator(s, ev.operator_id, true);

  const EigenSystem es = spectrum_of(s);
  OutputSet out(s.out_dir);
  out.write("spectrum.csv", spectrum_csv(es));

  std::string summary = "metric,value\n";
  summary += fmt::format("eigenpairs,{}\n", es.size());
  summary += fmt::format("degeneracy_groups,{}\n", es.degeneracy_groups().size());
  summary += fmt::format("ground_energy,{}\n", format_real(es.energy(0)));
  for (const auto& spec : s.config.operators) {
    const ScanOutcome scan = scan_and_write(s, es, spec.id, opts.plot, out);
    summary += fmt::format("{}.pairs,{}\n", spec.id, scan.records);
    if (scan.summary) {
      const auto& sm = *scan.summary;
      summary += fmt::format("{0}.lowest_bin_median,{1}\n{0}.mid_pooled_median,{2}\n{0}.mid_min_median,{3}\n"
                             "{0}.suppression_ratio,{4}\n{0}.spearman_low_gap,{5}\n{0}.lowest_below_every_mid,{6}\n",
                             spec.id, format_real(sm.lowest_median), format_real(sm.mid_pooled_median),
                             format_real(sm.mid_min_median), format_real(sm.ratio), format_real(sm.spearman_low_gap),
                             sm.lowest_below_every_mid ? 1 : 0);
    }
  }

  const EvolveOutcome quench = evolve_and_write(s, es, ev, out);
  summary += fmt::format("cat.w0,{}\n", format_real(quench.w0));
  summary += fmt::format("cat.min_w,{}\n", format_real(quench.min_w));
  summary += fmt::format("cat.tau,{}\n", quench.tau ? format_real(*quench.tau) : "nan");
  summary += fmt::format("cat.first_below_0.2,{}\n", quench.below_0p2 ? format_real(*quench.below_0p2) : "nan");

  for (const auto& spec : report.rdm_dumps) {
    out.write(fmt::format("rdm_{}.csv", rdm_file_tag(spec)), matrix_csv(rdm_for(spec, s, es)));
  }
  out.write("summary.csv", summary);

  nlohmann::json consts = nlohmann::json::object();
  for (const auto& c : regression::constants()) consts[std::string(c.name)] = {{"value", c.value}, {"rel_tolerance", c.rel_tolerance}};
  const nlohmann::json manifest = {
      {"tool", "eigdecoh"},
      {"version", EIGDECOH_VERSION},
      {"config_source", s.config_source},
      {"config_sha256", sha256_hex(serialize_model(s.config))},
      {"started_utc", started},
      {"finished_utc", utc_now()},
      {"threads", thread_count()},
      {"kernels", std::string(kernels::active().name)},
      {"outputs", out.names()},
      {"regression_constants", {{"set", std::string(regression::kSetName)}, {"values", consts}}},
  };
  write_atomic(s.out_dir / "manifest.json", manifest.dump(2) + "\n");
  fmt::print("report: {} files written to {}\n", out.names().size() + 1, s.out_dir.string());
  return kOk;
}

int cmd_selftest(const GlobalOptions& opts) {
  apply_threads(opts);
  int failed = 0;
  for (const auto& check : oracle::run_selftest()) {
    fmt::print("{} {} (error {:.3g}, tolerance {:.3g})\n", check.passed ? "PASS" : "FAIL", check.name, check.error,
               check.tolerance);
    if (!check.passed) ++failed;
  }
  fmt::print("selftest: {} failed\n", failed);
  return failed == 0 ? kOk : kNumericalError;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Eigenstate decoherence toolkit for spin-1/2 Heisenberg clusters"};
  app.set_version_flag("--version", EIGDECOH_VERSION);
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config_path, "Model file (JSON); default: built-in default10 model");
  app.add_option("--out", g.out_dir, "Output directory (default: $EIGDECOH_OUT, the model's output_dir, or .)");
  app.add_option("--threads", g.threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
  app.add_flag("--plot", g.plot, "Also write SVG scatter plots of witness scans");

  auto* spectrum = app.add_subcommand("spectrum", "Diagonalize and write spectrum.csv");
  std::string scan_op = "W";
  auto* scan = app.add_subcommand("witness-scan", "Witness matrix elements against energy gap");
  scan->add_option("--operator", scan_op, "Operator id from the model")->capture_default_str();
  EvolveOptions ev;
  auto* evolve = app.add_subcommand("evolve", "Quench dynamics of the subsystem witness");
  evolve->add_option("--operator", ev.operator_id, "Witness operator id")->capture_default_str();
  evolve->add_option("--tmax", ev.tmax, "Final time (default: model grid)")->check(CLI::NonNegativeNumber);
  evolve->add_option("--steps", ev.steps, "Number of time intervals")->check(CLI::NonNegativeNumber);
  evolve->add_option("--initial", ev.initial, "cat | eigenstate:<n> | file:<path>")->capture_default_str();
  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Full pipeline with summary and manifest");
  report->add_option("--operator", rep.operator_id, "Witness used for the cat quench")->capture_default_str();
  report->add_option("--rdm", rep.rdm_dumps, "Subsystem matrix to dump: eth:<n>, transition:<n>,<m>, quench:<t>, diagonal");
  auto* selftest = app.add_subcommand("selftest", "Compare fast paths against dense references");
  for (auto* sub : {spectrum, scan, evolve, report, selftest}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*spectrum) return cmd_spectrum(g);
    if (*scan) return cmd_witness_scan(g, scan_op);
    if (*evolve) return cmd_evolve(g, ev);
    if (*report) return cmd_report(g, rep);
    return cmd_selftest(g);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const IoError& e) {
    fmt::print(stderr, "I/O error: {}\n", e.what());
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    fmt::print(stderr, "I/O error: {}\n", e.what());
    return kIoError;
  } catch (const NumericalError& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return kNumericalError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kFailure;
  }
}

}  // namespace eigdecoh::cli
