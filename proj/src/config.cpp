// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include <json.hpp>

#include "eigdecoh/error.hpp"

namespace eigdecoh {

using nlohmann::json;

void validate(const SpinGraph& g) {
  if (g.n_sites < 2 || g.n_sites > kMaxSites) {
    throw ConfigError("n_sites", fmt::format("must be in [2, {}], got {}", kMaxSites, g.n_sites));
  }
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [i, j] = g.edges[e];
    const std::string field = fmt::format("edges[{}]", e);
    if (i < 0 || j < 0 || i >= g.n_sites || j >= g.n_sites) {
      throw ConfigError(field, fmt::format("site index out of range [0, {})", g.n_sites));
    }
    if (i == j) throw ConfigError(field, "self-loop");
    if (!seen.insert(std::minmax(i, j)).second) throw ConfigError(field, "duplicate edge");
  }
  if (g.subsystem.empty()) throw ConfigError("subsystem", "empty subsystem");
  if (g.subsystem_size() >= g.n_sites) throw ConfigError("subsystem", "must be a proper subset of the sites");
  std::set<int> sub;
  for (std::size_t k = 0; k < g.subsystem.size(); ++k) {
    const int s = g.subsystem[k];
    const std::string field = fmt::format("subsystem[{}]", k);
    if (s < 0 || s >= g.n_sites) throw ConfigError(field, fmt::format("site index out of range [0, {})", g.n_sites));
    if (!sub.insert(s).second) throw ConfigError(field, "repeated site");
  }
}

bool is_connected(const SpinGraph& g) {
  std::vector<int> parent(g.n_sites);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [i, j] : g.edges) parent[find(i)] = find(j);
  const int root = find(0);
  for (int s = 1; s < g.n_sites; ++s) {
    if (find(s) != root) return false;
  }
  return true;
}

SpinGraph builtin_graph(std::string_view name, int n_sites) {
  SpinGraph g;
  g.n_sites = n_sites;
  if (name == "chain") {
    if (n_sites < 2) throw ConfigError("n_sites", "chain needs at least 2 sites");
    for (int i = 0; i + 1 < n_sites; ++i) g.edges.emplace_back(i, i + 1);
  } else if (name == "default10") {
    if (n_sites != 10) throw ConfigError("n_sites", "preset default10 has exactly 10 sites");
    for (int i = 0; i + 1 < 10; ++i) g.edges.emplace_back(i, i + 1);
    g.edges.insert(g.edges.end(), {{0, 4}, {2, 7}, {5, 9}});
  } else {
    throw ConfigError("preset", fmt::format("unknown preset '{}'", name));
  }
  g.subsystem.resize(n_sites / 2);
  std::iota(g.subsystem.begin(), g.subsystem.end(), 0);
  validate(g);
  return g;
}

std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::W: return "W";
    case OperatorKind::C: return "C";
    case OperatorKind::PauliSum: return "pauli_sum";
  }
  return "?";
}

std::vector<double> TimeGrid::points() const {
  if (steps <= 0 || stop == start) return {start};
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  const double dt = (stop - start) / steps;
  for (int i = 0; i <= steps; ++i) t[i] = start + dt * i;
  t.back() = stop;
  return t;
}

const OperatorSpec& RunConfig::find_operator(std::string_view id) const {
  for (const auto& op : operators) {
    if (op.id == id) return op;
  }
  throw ConfigError("operators", fmt::format("unknown operator id '{}'", id));
}

std::vector<OperatorSpec> default_operators() {
  return {OperatorSpec{"W", OperatorKind::W, {}}, OperatorSpec{"C", OperatorKind::C, {}}};
}

namespace {

template <class T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(field, fmt::format("wrong type ({})", j.type_name()));
  }
}

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  return j.get<int>();
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  return j.get<double>();
}

PauliStringSum parse_terms(const json& j, const std::string& field, int n_sites) {
  if (!j.is_array()) throw ConfigError(field, "expected an array of terms");
  PauliStringSum op;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tf = fmt::format("{}[{}]", field, t);
    const json& term = j[t];
    if (!term.is_object()) throw ConfigError(tf, "expected an object");
    PauliTerm pt;
    pt.coeff = Complex(term.contains("coeff_re") ? get_number(term["coeff_re"], tf + ".coeff_re") : 0.0,
                       term.contains("coeff_im") ? get_number(term["coeff_im"], tf + ".coeff_im") : 0.0);
    if (!term.contains("factors") || !term["factors"].is_array()) throw ConfigError(tf + ".factors", "missing");
    std::set<int> sites;
    const json& fs = term["factors"];
    for (std::size_t f = 0; f < fs.size(); ++f) {
      const std::string ff = fmt::format("{}.factors[{}]", tf, f);
      if (!fs[f].is_array() || fs[f].size() != 2) throw ConfigError(ff, "expected [site, letter]");
      const int site = get_int(fs[f][0], ff);
      if (site < 0 || site >= n_sites) throw ConfigError(ff, "site index out of range");
      if (!sites.insert(site).second) throw ConfigError(ff, "site repeated within one term");
      const auto letter = parse_pauli_letter(get_as<std::string>(fs[f][1], ff));
      if (!letter) throw ConfigError(ff, "letter must be one of x, y, z, +, -");
      pt.factors.push_back({site, *letter});
    }
    op.terms.push_back(std::move(pt));
  }
  return op;
}

std::vector<std::pair<int, int>> parse_edges(const json& j) {
  if (!j.is_array()) throw ConfigError("edges", "expected an array of [i, j] pairs");
  std::vector<std::pair<int, int>> edges;
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string field = fmt::format("edges[{}]", e);
    if (!j[e].is_array() || j[e].size() != 2) throw ConfigError(field, "expected [i, j]");
    const int a = get_int(j[e][0], field);
    const int b = get_int(j[e][1], field);
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return edges;
}

}  // namespace

RunConfig parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("document", fmt::format("malformed document ({})", e.what()));
  }
  if (!doc.is_object()) throw ConfigError("document", "top level must be an object");

  static const std::set<std::string> known{"n_sites", "edges", "preset", "subsystem", "operators",
                                           "degeneracy_tolerance", "gap_max", "bin_width", "times",
                                           "output_dir"};
  for (const auto& [k, v] : doc.items()) {
    if (!known.contains(k)) throw ConfigError(k, "unknown key");
  }

  RunConfig cfg;
  SpinGraph& g = cfg.graph;
  if (doc.contains("preset")) {
    const auto name = get_as<std::string>(doc["preset"], "preset");
    const int n = doc.contains("n_sites") ? get_int(doc["n_sites"], "n_sites") : (name == "default10" ? 10 : 0);
    if (doc.contains("edges")) throw ConfigError("edges", "give either preset or edges, not both");
    g = builtin_graph(name, n);
  } else {
    if (!doc.contains("n_sites")) throw ConfigError("n_sites", "missing");
    g.n_sites = get_int(doc["n_sites"], "n_sites");
    if (!doc.contains("edges")) throw ConfigError("edges", "missing");
    g.edges = parse_edges(doc["edges"]);
    g.subsystem.resize(std::max(g.n_sites / 2, 0));
    std::iota(g.subsystem.begin(), g.subsystem.end(), 0);
  }
  if (doc.contains("subsystem")) {
    const json& s = doc["subsystem"];
    if (!s.is_array()) throw ConfigError("subsystem", "expected an array of site indices");
    g.subsystem.clear();
    for (std::size_t k = 0; k < s.size(); ++k) g.subsystem.push_back(get_int(s[k], fmt::format("subsystem[{}]", k)));
  }
  validate(g);

  if (doc.contains("operators")) {
    const json& ops = doc["operators"];
    if (!ops.is_array()) throw ConfigError("operators", "expected an array");
    std::set<std::string> ids;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const std::string field = fmt::format("operators[{}]", k);
      const json& o = ops[k];
      if (!o.is_object()) throw ConfigError(field, "expected an object");
      OperatorSpec spec;
      if (!o.contains("id")) throw ConfigError(field + ".id", "missing");
      spec.id = get_as<std::string>(o["id"], field + ".id");
      if (spec.id.empty()) throw ConfigError(field + ".id", "empty id");
      if (!ids.insert(spec.id).second) throw ConfigError(field + ".id", "duplicate operator id");
      const auto kind = o.contains("kind") ? get_as<std::string>(o["kind"], field + ".kind") : std::string("W");
      if (kind == "W") {
        spec.kind = OperatorKind::W;
      } else if (kind == "C") {
        spec.kind = OperatorKind::C;
      } else if (kind == "pauli_sum") {
        spec.kind = OperatorKind::PauliSum;
        if (!o.contains("terms")) throw ConfigError(field + ".terms", "missing");
        spec.terms = parse_terms(o["terms"], field + ".terms", g.n_sites);
      } else {
        throw ConfigError(field + ".kind", "must be W, C or pauli_sum");
      }
      cfg.operators.push_back(std::move(spec));
    }
  } else {
    cfg.operators = default_operators();
  }

  if (doc.contains("degeneracy_tolerance")) {
    cfg.degeneracy_tolerance = get_number(doc["degeneracy_tolerance"], "degeneracy_tolerance");
  }
  if (!(cfg.degeneracy_tolerance > 0.0)) throw ConfigError("degeneracy_tolerance", "must be > 0");

  if (doc.contains("gap_max")) {
    const json& gm = doc["gap_max"];
    if (gm.is_string()) {
      if (gm.get<std::string>() != "inf") throw ConfigError("gap_max", "expected a number or \"inf\"");
      cfg.gap_max = std::numeric_limits<double>::infinity();
    } else {
      cfg.gap_max = get_number(gm, "gap_max");
    }
  }
  if (!(cfg.gap_max >= 0.0)) throw ConfigError("gap_max", "must be >= 0");

  if (doc.contains("bin_width")) cfg.bin_width = get_number(doc["bin_width"], "bin_width");
  if (!(cfg.bin_width > 0.0) || !std::isfinite(cfg.bin_width)) throw ConfigError("bin_width", "must be > 0");

  if (doc.contains("times")) {
    const json& t = doc["times"];
    if (!t.is_object()) throw ConfigError("times", "expected {start, stop, steps}");
    if (t.contains("start")) cfg.times.start = get_number(t["start"], "times.start");
    if (t.contains("stop")) cfg.times.stop = get_number(t["stop"], "times.stop");
    if (t.contains("steps")) cfg.times.steps = get_int(t["steps"], "times.steps");
  }
  if (cfg.times.start != 0.0) throw ConfigError("times.start", "time grid must start at 0");
  if (!(cfg.times.stop >= cfg.times.start) || !std::isfinite(cfg.times.stop)) {
    throw ConfigError("times.stop", "must be finite and >= start");
  }
  if (cfg.times.steps < 0) throw ConfigError("times.steps", "must be >= 0");
  if (cfg.times.steps == 0 && cfg.times.stop != cfg.times.start) {
    throw ConfigError("times.steps", "must be >= 1 when stop > start");
  }

  if (doc.contains("output_dir")) cfg.output_dir = get_as<std::string>(doc["output_dir"], "output_dir");
  return cfg;
}

std::string serialize_model(const RunConfig& cfg) {
  json doc;
  doc["n_sites"] = cfg.graph.n_sites;
  json edges = json::array();
  for (auto [i, j] : cfg.graph.edges) edges.push_back({i, j});
  doc["edges"] = edges;
  doc["subsystem"] = cfg.graph.subsystem;
  json ops = json::array();
  for (const auto& op : cfg.operators) {
    json o{{"id", op.id}, {"kind", std::string(to_string(op.kind))}};
    if (op.kind == OperatorKind::PauliSum) {
      json terms = json::array();
      for (const auto& t : op.terms.terms) {
        json factors = json::array();
        for (const auto& f : t.factors) factors.push_back({f.site, std::string(1, to_char(f.letter))});
        terms.push_back({{"coeff_re", t.coeff.real()}, {"coeff_im", t.coeff.imag()}, {"factors", factors}});
      }
      o["terms"] = terms;
    }
    ops.push_back(o);
  }
  doc["operators"] = ops;
  doc["degeneracy_tolerance"] = cfg.degeneracy_tolerance;
  if (std::isinf(cfg.gap_max)) {
    doc["gap_max"] = "inf";
  } else {
    doc["gap_max"] = cfg.gap_max;
  }
  doc["bin_width"] = cfg.bin_width;
  doc["times"] = {{"start", cfg.times.start}, {"stop", cfg.times.stop}, {"steps", cfg.times.steps}};
  if (!cfg.output_dir.empty()) doc["output_dir"] = cfg.output_dir;
  return doc.dump(2) + "\n";
}

RunConfig load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read model file '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace eigdecoh
