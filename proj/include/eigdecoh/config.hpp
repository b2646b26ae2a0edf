// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Physical model and run parameters, plus the JSON model-file format.

#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eigdecoh/pauli.hpp"

namespace eigdecoh {

/// Spin-1/2 sites, Heisenberg bonds, and the subsystem/bath bipartition.
/// Edges are stored with i < j.
struct SpinGraph {
  int n_sites = 0;
  std::vector<std::pair<int, int>> edges;
  /// Subsystem sites; their order fixes the bit order of subsystem indices.
  std::vector<int> subsystem;

  int subsystem_size() const { return static_cast<int>(subsystem.size()); }
  int bath_size() const { return n_sites - subsystem_size(); }
  bool operator==(const SpinGraph&) const = default;
};

/// Throws ConfigError naming the field for: site out of range, self-loop,
/// duplicate edge, empty/full/repeated subsystem.
void validate(const SpinGraph& g);

bool is_connected(const SpinGraph& g);

/// "chain": open chain {(i,i+1)}. "default10": open chain 0-9 plus chords
/// (0,4), (2,7), (5,9). Subsystem is the first floor(n_sites/2) sites.
SpinGraph builtin_graph(std::string_view name, int n_sites);

enum class OperatorKind { W, C, PauliSum };

std::string_view to_string(OperatorKind k);

struct OperatorSpec {
  std::string id;
  OperatorKind kind = OperatorKind::W;
  /// Only for OperatorKind::PauliSum.
  PauliStringSum terms;
  bool operator==(const OperatorSpec&) const = default;
};

/// Times start, start + dt, ..., stop with dt = (stop - start) / steps.
struct TimeGrid {
  double start = 0.0;
  double stop = 50.0;
  int steps = 500;

  std::vector<double> points() const;
  bool operator==(const TimeGrid&) const = default;
};

struct RunConfig {
  SpinGraph graph;
  std::vector<OperatorSpec> operators;
  double degeneracy_tolerance = 1e-8;
  double gap_max = std::numeric_limits<double>::infinity();
  double bin_width = 0.25;
  TimeGrid times;
  std::string output_dir;

  const OperatorSpec& find_operator(std::string_view id) const;
  bool operator==(const RunConfig&) const = default;
};

/// Default witness/classical pair: ids "W" and "C".
std::vector<OperatorSpec> default_operators();

/// Parses and validates a JSON model document. Keys: n_sites, edges (or
/// preset), subsystem, operators, degeneracy_tolerance, gap_max, bin_width,
/// times {start, stop, steps}, output_dir.
RunConfig parse_model(std::string_view text);

/// Inverse of parse_model; always writes explicit edges.
std::string serialize_model(const RunConfig& cfg);

/// Reads a model file. Throws IoError when the file cannot be read.
RunConfig load_model(const std::filesystem::path& path);

}  // namespace eigdecoh
