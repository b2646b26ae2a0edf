// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eigdecoh/config.hpp"

namespace eigdecoh::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kIoError = 3,
  kNumericalError = 4,
};

struct GlobalOptions {
  std::string config_path;  // empty: built-in default10 model
  std::string out_dir;      // empty: $EIGDECOH_OUT, then output_dir from the model, then "."
  int threads = 0;          // 0: all cores
  bool plot = false;
};

struct EvolveOptions {
  std::string operator_id = "W";
  double tmax = -1.0;  // < 0: take the grid from the model
  int steps = -1;
  std::string initial = "cat";  // cat | eigenstate:<n> | file:<path>
};

struct ReportOptions {
  std::string operator_id = "W";  // witness used for the cat quench
  /// Extra subsystem matrices to dump: eth:<n>, transition:<n>,<m>, quench:<t>, diagonal.
  std::vector<std::string> rdm_dumps;
};

/// Loaded model plus resolved output directory (created if missing).
struct Session {
  RunConfig config;
  std::string config_source;
  std::filesystem::path out_dir;
};

Session open_session(const GlobalOptions& opts);

int cmd_spectrum(const GlobalOptions& opts);
int cmd_witness_scan(const GlobalOptions& opts, const std::string& operator_id);
int cmd_evolve(const GlobalOptions& opts, const EvolveOptions& evolve);
int cmd_report(const GlobalOptions& opts, const ReportOptions& report);
int cmd_selftest(const GlobalOptions& opts);

/// Argument parsing and error-to-exit-code mapping.
int run(int argc, const char* const* argv);

}  // namespace eigdecoh::cli
