// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
//
//   eigdecoh_acceptance [--criterion N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <unistd.h>

#include "eigdecoh/basis.hpp"
#include "eigdecoh/cli/commands.hpp"
#include "eigdecoh/config.hpp"
#include "eigdecoh/dynamics.hpp"
#include "eigdecoh/operators.hpp"
#include "eigdecoh/oracle.hpp"
#include "eigdecoh/reduced.hpp"
#include "eigdecoh/regression.hpp"
#include "eigdecoh/spectral.hpp"
#include "eigdecoh/witness.hpp"

namespace fs = std::filesystem;
using namespace eigdecoh;

namespace {

// Tolerances.
constexpr double kRuntimeBudgetSeconds = 60.0;
constexpr double kResidualTol = 1e-9;
constexpr double kDenseSpectrumTol = 1e-9;
constexpr double kTwoSiteTol = 1e-12;
constexpr double kRdmTraceTol = 1e-10;
constexpr double kRdmPositivityTol = 1e-10;
constexpr double kRdmAdjointTol = 1e-12;
constexpr double kPartialTraceTol = 1e-12;
constexpr int kRandomPartialTraceStates = 100;
constexpr double kWitnessValueTol = 1e-12;
constexpr double kWitnessBoundSlack = 1e-12;
constexpr double kNoSuppressionFactor = 0.5;
constexpr double kDoubleSumTol = 1e-9;
constexpr int kDoubleSumTimes = 10;
constexpr double kAverageWindow = 1e4;
constexpr std::size_t kAverageSamples = 10000;
constexpr double kAverageFrobeniusTol = 0.02;
constexpr int kAverageStates = 3;
constexpr double kCatStartTol = 1e-12;
constexpr double kCatThreshold = 0.2;
constexpr double kCatWindow = 50.0;
constexpr std::uint64_t kSeed = 20260419;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, std::string note) {
    pass = pass && ok;
    notes.push_back((ok ? "" : "!") + std::move(note));
  }
};

fs::path model_path(const std::string& name) { return fs::path(EIGDECOH_MODEL_DIR) / (name + ".json"); }

struct Model {
  RunConfig cfg;
  std::unique_ptr<EigenSystem> es;
};

Model& model(const std::string& name) {
  static std::map<std::string, Model> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    Model m;
    m.cfg = load_model(model_path(name));
    m.es = std::make_unique<EigenSystem>(diagonalize(m.cfg.graph, m.cfg.degeneracy_tolerance));
    it = cache.emplace(name, std::move(m)).first;
  }
  return it->second;
}

SpinGraph graph(int n, std::vector<std::pair<int, int>> edges, std::vector<int> subsystem) {
  SpinGraph g;
  g.n_sites = n;
  g.edges = std::move(edges);
  g.subsystem = std::move(subsystem);
  validate(g);
  return g;
}

SpinGraph chain(int n, int m) {
  SpinGraph g = builtin_graph("chain", n);
  g.subsystem.clear();
  for (int i = 0; i < m; ++i) g.subsystem.push_back(i);
  validate(g);
  return g;
}

CVector random_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> nd;
  CVector v(dim);
  for (auto& x : v) x = Complex(nd(rng), nd(rng));
  return v / v.norm();
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string sci(double x) { return fmt::format("{:.6e}", x); }

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / fmt::format("eigdecoh_acc_{}_{}", tag, ::getpid());
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("eigdecoh");
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_regression(Outcome& out, std::string_view name, double observed) {
  const auto& c = regression::lookup(name);
  out.require(c.matches(observed),
              fmt::format("{} = {:.12e} (locked {:.12e}, rel tol {:g})", name, observed, c.value, c.rel_tolerance));
}

// ---------------------------------------------------------------------------

Outcome criterion_dimensions() {
  Outcome out;
  TempDir tmp("c1");
  const auto t0 = std::chrono::steady_clock::now();
  const int rc = run_cli({"--config", model_path("default10").string(), "--out", tmp.path.string(), "report"});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(rc == 0, fmt::format("report exit code {}", rc));
  out.require(seconds < kRuntimeBudgetSeconds, fmt::format("report took {:.2f} s", seconds));

  const EigenSystem& es = *model("default10").es;
  out.require(es.size() == 1024, fmt::format("{} eigenpairs", es.size()));
  bool sizes_ok = es.sector_count() == 11;
  for (int k = 0; sizes_ok && k <= 10; ++k) sizes_ok = es.sector(k).basis.size() == binomial(10, k);
  out.require(sizes_ok, "sector sizes binomial(10, k)");
  return out;
}

Outcome criterion_spectrum() {
  Outcome out;
  {
    const Model& m = model("default10");
    const auto blocks = heisenberg_blocks(m.cfg.graph);
    double worst = 0.0;
    for (std::size_t n = 0; n < m.es->size(); ++n) {
      const auto& lab = m.es->label(n);
      const auto v = m.es->vector(n);
      const CVector hv = blocks.at(static_cast<std::size_t>(lab.sector)).apply(v);
      const CVector r = hv - m.es->energy(n) * Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
      worst = std::max(worst, r.norm());
    }
    out.require(worst <= kResidualTol, fmt::format("default10 max residual {}", sci(worst)));
  }
  {
    const SpinGraph g = chain(6, 3);
    const EigenSystem es = diagonalize(g, 1e-8);
    const auto dense = oracle::dense_spectrum(oracle::dense_hamiltonian(g));
    double worst = dense.size() == es.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < dense.size() && i < es.size(); ++i) {
      worst = std::max(worst, std::abs(dense[i] - es.energy(i)));
    }
    out.require(worst <= kDenseSpectrumTol, fmt::format("chain6 vs dense {}", sci(worst)));
  }
  {
    const SpinGraph g = graph(2, {{0, 1}}, {0});
    const EigenSystem es = diagonalize(g, 1e-8);
    const double expected[] = {-1.5, 0.5, 0.5, 0.5};
    double worst = es.size() == 4 ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < 4 && i < es.size(); ++i) worst = std::max(worst, std::abs(es.energy(i) - expected[i]));
    out.require(worst <= kTwoSiteTol, fmt::format("N=2 spectrum {}", sci(worst)));
  }
  return out;
}

Outcome criterion_rdm() {
  Outcome out;
  const SpinGraph g = chain(8, 4);
  const EigenSystem es = diagonalize(g, 1e-8);
  ReducedStates rs(es, g);
  rs.prefetch_all();
  const std::size_t d = es.size();
  double trace_diag = 0.0;
  double min_eig = INFINITY;
  double trace_off = 0.0;
  double adjoint = 0.0;
  for (std::size_t n = 0; n < d; ++n) {
    const CMatrix rnn = rs.rdm(n, n);
    trace_diag = std::max(trace_diag, std::abs(rnn.trace() - 1.0));
    min_eig = std::min(min_eig, min_eigenvalue(rnn));
    for (std::size_t m = n + 1; m < d; ++m) {
      const CMatrix rnm = rs.rdm(n, m);
      const CMatrix rmn = rs.rdm(m, n);
      trace_off = std::max(trace_off, std::abs(rnm.trace()));
      adjoint = std::max(adjoint, max_abs(rnm.adjoint() - rmn));
    }
  }
  out.require(trace_diag <= kRdmTraceTol, fmt::format("|tr rho_nn - 1| {}", sci(trace_diag)));
  out.require(min_eig >= -kRdmPositivityTol, fmt::format("min eigenvalue {}", sci(min_eig)));
  out.require(trace_off <= kRdmTraceTol, fmt::format("|tr rho_nm| {}", sci(trace_off)));
  out.require(adjoint <= kRdmAdjointTol, fmt::format("adjoint {}", sci(adjoint)));

  std::mt19937_64 rng(kSeed);
  const Eigen::Index dim = Eigen::Index{1} << g.n_sites;
  double worst = 0.0;
  for (int i = 0; i < kRandomPartialTraceStates; ++i) {
    const CVector u = random_vector(rng, dim);
    const CVector v = random_vector(rng, dim);
    const CMatrix fast = transition_rdm(u, v, g);
    const CMatrix dense = oracle::dense_partial_trace(u * v.adjoint(), g);
    worst = std::max(worst, max_abs(fast - dense));
  }
  out.require(worst <= kPartialTraceTol, fmt::format("random states vs dense partial trace {}", sci(worst)));
  return out;
}

bool outside_sectors_zero(const CVector& v, std::initializer_list<int> allowed) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const int k = popcount(static_cast<Config>(i));
    if (std::find(allowed.begin(), allowed.end(), k) != allowed.end()) continue;
    if (v[i] != Complex(0.0, 0.0)) return false;
  }
  return true;
}

Outcome criterion_witness_values() {
  Outcome out;
  const Model& m = model("default10");
  const SpinGraph& g = m.cfg.graph;
  const EigenSystem& es = *m.es;
  const int M = g.subsystem_size();
  const PauliStringSum w_op = build_operator(m.cfg.find_operator("W"), g);
  const PauliStringSum c_op = build_operator(m.cfg.find_operator("C"), g);

  const Witness wit(w_op, g);
  const CVector cat = cat_initial(g, neel_bath_bits(g));
  const double w_cat = wit(transition_rdm(cat, cat, g));
  out.require(std::abs(w_cat - 1.0) <= kWitnessValueTol, fmt::format("cat w - 1 = {}", sci(w_cat - 1.0)));
  const auto sdim = static_cast<Eigen::Index>(std::size_t{1} << M);
  const double w_mixed = wit(CMatrix::Identity(sdim, sdim) / static_cast<double>(sdim));
  out.require(std::abs(w_mixed) <= kWitnessValueTol, fmt::format("maximally mixed w = {}", sci(w_mixed)));

  for (const auto* id : {"W", "C"}) {
    const PauliStringSum& op = std::string(id) == "W" ? w_op : c_op;
    const ScanResult scan = witness_scan(es, op, m.cfg.gap_max, id);
    double largest = 0.0;
    for (const auto& r : scan.records) largest = std::max({largest, std::abs(r.w), r.w_abs});
    out.require(largest <= 1.0 + kWitnessBoundSlack, fmt::format("{} max |w|, w_abs {:.15f}", id, largest));
  }

  bool rules = true;
  for (std::size_t n = 0; n < es.size() && rules; ++n) {
    const int k = es.sector_of(n);
    const CVector phi = eigenstate_full(es, n);
    const std::span<const Complex> phi_view(phi.data(), static_cast<std::size_t>(phi.size()));
    rules = outside_sectors_zero(apply(w_op, phi_view, g.n_sites), {k - M, k + M}) &&
            outside_sectors_zero(apply(c_op, phi_view, g.n_sites), {k});
  }
  out.require(rules, "full-space W and C images confined to allowed sectors");

  std::size_t checked = 0;
  bool zeros = true;
  for (std::size_t a = 0; a < es.size(); a += 5) {
    for (std::size_t b = a + 1; b < es.size(); b += 7) {
      const int dk = std::abs(es.sector_of(a) - es.sector_of(b));
      if (dk != M) {
        const PairWitness pw = pair_witness(a, b, w_op, es);
        zeros = zeros && pw.w == 0.0 && pw.w_abs == 0.0;
        zeros = zeros && matrix_element(es, w_op, a, b) == Complex(0.0, 0.0);
        ++checked;
      }
      if (dk != 0) {
        zeros = zeros && matrix_element(es, c_op, a, b) == Complex(0.0, 0.0);
        ++checked;
      }
    }
  }
  out.require(zeros, fmt::format("{} forbidden matrix elements exactly zero", checked));
  return out;
}

SuppressionSummary summarize(const std::string& model_name, const std::string& op_id) {
  const Model& m = model(model_name);
  const PauliStringSum op = build_operator(m.cfg.find_operator(op_id), m.cfg.graph);
  const ScanResult scan = witness_scan(*m.es, op, m.cfg.gap_max, op_id);
  const BinnedStats stats = bin_stats(scan.records, m.cfg.bin_width);
  return suppression_summary(scan.records, stats);
}

Outcome directional_suppression(const std::string& model_name) {
  Outcome out;
  const SuppressionSummary s = summarize(model_name, "W");
  out.require(s.lowest_below_every_mid,
              fmt::format("lowest-bin median {} vs smallest mid median {}", sci(s.lowest_median), sci(s.mid_min_median)));
  out.require(s.spearman_low_gap > 0.0, fmt::format("spearman(gap <= 2) {:.6f}", s.spearman_low_gap));
  check_regression(out, model_name + ".W.suppression_ratio", s.ratio);
  check_regression(out, model_name + ".W.spearman_low_gap", s.spearman_low_gap);
  return out;
}

Outcome criterion_classical() {
  Outcome out;
  const SuppressionSummary s = summarize("default10", "C");
  out.require(s.lowest_median >= kNoSuppressionFactor * s.mid_pooled_median,
              fmt::format("lowest-bin median {} vs pooled mid median {}", sci(s.lowest_median),
                          sci(s.mid_pooled_median)));
  check_regression(out, "default10.C.lowest_over_mid", s.ratio);
  return out;
}

std::vector<std::size_t> one_per_level(const EigenSystem& es) {
  std::vector<std::size_t> picks;
  std::vector<char> seen(es.degeneracy_groups().size(), 0);
  for (std::size_t n = 0; n < es.size(); ++n) {
    const int grp = es.degeneracy_group(n);
    if (grp < 0) {
      picks.push_back(n);
    } else if (!seen[static_cast<std::size_t>(grp)]) {
      seen[static_cast<std::size_t>(grp)] = 1;
      picks.push_back(n);
    }
  }
  return picks;
}

Outcome criterion_dynamics() {
  Outcome out;
  std::mt19937_64 rng(kSeed + 8);
  {
    const SpinGraph g = chain(6, 3);
    const EigenSystem es = diagonalize(g, 1e-8);
    const auto rdms = oracle::all_transition_rdms(es, g);
    const OverlapCoefficients c = overlaps(random_vector(rng, Eigen::Index{1} << g.n_sites), es);
    std::uniform_real_distribution<double> ut(0.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < kDoubleSumTimes; ++i) {
      const double t = ut(rng);
      worst = std::max(worst, max_abs(evolve_rdm(c, t, es, g) - oracle::rdm_double_sum(c, t, es, rdms)));
    }
    out.require(worst <= kDoubleSumTol, fmt::format("N=6 double sum {}", sci(worst)));
  }
  {
    const SpinGraph g = graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 5}, {2, 6}}, {0, 1, 2, 3});
    const EigenSystem es = diagonalize(g, 1e-8);
    const auto support = one_per_level(es);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int s = 0; s < kAverageStates; ++s) {
      OverlapCoefficients c{CVector::Zero(static_cast<Eigen::Index>(es.size()))};
      for (auto n : support) c.c[static_cast<Eigen::Index>(n)] = Complex(nd(rng), nd(rng));
      c.c /= c.c.norm();
      const DiagonalEnsemble de = diagonal_ensemble(c, es, g);
      const CMatrix avg = time_average_rdm(c, kAverageWindow, kAverageSamples, es, g);
      worst = std::max(worst, (avg - de.rho).norm());
    }
    out.require(worst <= kAverageFrobeniusTol,
                fmt::format("N=8 time average vs diagonal ensemble {} over {} levels", sci(worst), support.size()));
  }
  {
    const Model& m = model("default10");
    const SpinGraph& g = m.cfg.graph;
    const PauliStringSum op = build_operator(m.cfg.find_operator("W"), g);
    const auto times = m.cfg.times.points();
    const auto rows = witness_timeseries(cat_initial(g, neel_bath_bits(g)), op, times, *m.es, g);
    out.require(std::abs(rows.front().w - 1.0) <= kCatStartTol, fmt::format("cat w(0) = {:.15f}", rows.front().w));
    double below = NAN;
    for (const auto& r : rows) {
      if (r.t <= kCatWindow && r.w < kCatThreshold) {
        below = r.t;
        break;
      }
    }
    out.require(!std::isnan(below), fmt::format("cat w < {} first at t = {}", kCatThreshold, below));
    const auto tau = decoherence_time(rows);
    out.require(tau.has_value(), "cat decoherence time reached");
    if (tau) check_regression(out, "default10.cat.tau", *tau);
    check_regression(out, "default10.cat.first_below_0.2", below);
  }
  return out;
}

Outcome criterion_determinism() {
  Outcome out;
  TempDir a("c9a");
  TempDir b("c9b");
  const std::string cfg = model_path("default10").string();
  const int rc_a = run_cli({"--config", cfg, "--out", a.path.string(), "--threads", "1", "report"});
  const int rc_b = run_cli({"--config", cfg, "--out", b.path.string(), "--threads", "4", "report"});
  out.require(rc_a == 0 && rc_b == 0, fmt::format("report exit codes {} {}", rc_a, rc_b));
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a.path)) {
    if (e.path().extension() == ".csv") names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  std::size_t other = 0;
  for (const auto& e : fs::directory_iterator(b.path)) other += e.path().extension() == ".csv" ? 1 : 0;
  out.require(!names.empty() && other == names.size(), fmt::format("{} vs {} csv files", names.size(), other));
  std::vector<std::string> differing;
  for (const auto& n : names) {
    if (!fs::exists(b.path / n) || slurp(a.path / n) != slurp(b.path / n)) differing.push_back(n);
  }
  std::string list;
  for (const auto& n : differing) list += " " + n;
  out.require(differing.empty(), fmt::format("threads 1 vs 4: {} differing{}", differing.size(), list));
  return out;
}

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigdecoh acceptance suite"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "dimensions and runtime", criterion_dimensions},
      {2, "spectral correctness", criterion_spectrum},
      {3, "reduced density matrix identities", criterion_rdm},
      {4, "witness values and selection rules", criterion_witness_values},
      {5, "default10 W suppression near zero gap", [] { return directional_suppression("default10"); }},
      {6, "default10 C no suppression near zero gap", criterion_classical},
      {7, "chain10 W suppression near zero gap", [] { return directional_suppression("chain10"); }},
      {8, "dynamics", criterion_dynamics},
      {9, "determinism across thread counts", criterion_determinism},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, fmt::format("exception: {}", e.what()));
    }
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    fmt::print("{} criterion {}: {} [{}]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, detail);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
