// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eigdecoh/dynamics.hpp"
#include "eigdecoh/spectral.hpp"
#include "eigdecoh/witness.hpp"

namespace eigdecoh::cli {

/// Writes to a sibling temporary file and renames it into place. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Scientific notation with 12 significant digits.
std::string format_real(double x);

std::string spectrum_csv(const EigenSystem& es);
std::string witness_csv(const std::vector<WitnessRecord>& records);
std::string bins_csv(const BinnedStats& stats);
std::string timeseries_csv(const std::vector<TimeSeriesRow>& rows);
/// One line per entry: s, s', re, im.
std::string matrix_csv(const CMatrix& rho);

struct PlotLabels {
  std::string title;
  std::string y_label = "|<m|A|n>|";
};

/// Standalone SVG: scatter of (gap, w_abs) and the binned-median polyline.
std::string scatter_svg(const std::vector<WitnessRecord>& records, const BinnedStats& stats,
                        const PlotLabels& labels);

std::string sha256_hex(std::string_view data);

}  // namespace eigdecoh::cli
