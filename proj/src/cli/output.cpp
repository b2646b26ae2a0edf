// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <system_error>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "eigdecoh/error.hpp"

namespace eigdecoh::cli {

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path tmp = fs::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open {} for writing", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(fmt::format("cannot move {} into place: {}", path.string(), ec.message()));
  }
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // Keep "-0" out of the files so reruns diff cleanly.
  if (x == 0.0) x = 0.0;
  return fmt::format("{:.11e}", x);
}

std::string spectrum_csv(const EigenSystem& es) {
  std::string out = "n,sector,E_n,degeneracy_group_id\n";
  for (std::size_t n = 0; n < es.size(); ++n) {
    out += fmt::format("{},{},{},{}\n", n, es.sector_of(n), format_real(es.energy(n)), es.degeneracy_group(n));
  }
  return out;
}

std::string witness_csv(const std::vector<WitnessRecord>& records) {
  std::string out = "m,n,sector_m,sector_n,E_m,E_n,gap,w,w_abs,degenerate_flag,operator_id\n";
  out.reserve(out.size() + records.size() * 140);
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.m, r.n, r.sector_m, r.sector_n,
                       format_real(r.energy_m), format_real(r.energy_n), format_real(r.gap), format_real(r.w),
                       format_real(r.w_abs), r.degenerate ? 1 : 0, r.operator_id);
  }
  return out;
}

std::string bins_csv(const BinnedStats& stats) {
  std::string out = "bin_lo,bin_hi,count,median_abs,mean_abs,max_abs\n";
  for (const auto& b : stats.bins) {
    out += fmt::format("{},{},{},{},{},{}\n", format_real(b.lo), format_real(b.hi), b.count, format_real(b.median),
                       format_real(b.mean), format_real(b.max));
  }
  return out;
}

std::string timeseries_csv(const std::vector<TimeSeriesRow>& rows) {
  std::string out = "t,w,purity,trace_err\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{}\n", format_real(r.t), format_real(r.w), format_real(r.purity),
                       format_real(r.trace_err));
  }
  return out;
}

std::string matrix_csv(const CMatrix& rho) {
  std::string out = "s,s_prime,re,im\n";
  for (Eigen::Index s = 0; s < rho.rows(); ++s) {
    for (Eigen::Index sp = 0; sp < rho.cols(); ++sp) {
      out += fmt::format("{},{},{},{}\n", s, sp, format_real(rho(s, sp).real()), format_real(rho(s, sp).imag()));
    }
  }
  return out;
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

// 1, 2 or 5 times a power of ten, giving roughly `target` ticks over span.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0}) {
    if (f * mag >= raw) return f * mag;
  }
  return 10.0 * mag;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string scatter_svg(const std::vector<WitnessRecord>& records, const BinnedStats& stats,
                        const PlotLabels& labels) {
  double x_max = 0.0;
  double y_max = 0.0;
  for (const auto& r : records) {
    x_max = std::max(x_max, r.gap);
    y_max = std::max(y_max, r.w_abs);
  }
  if (!stats.bins.empty()) x_max = std::max(x_max, stats.bins.back().hi);
  if (x_max <= 0.0) x_max = 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + pw * x / x_max; };
  auto sy = [&](double y) { return kTop + ph * (1.0 - y / y_max); };

  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{3}</text>\n",
      kWidth, kHeight, kLeft + pw / 2, escape(labels.title));

  out += fmt::format("<g stroke=\"black\" fill=\"none\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></g>\n",
                     kLeft, kTop, pw, ph);
  const double xs = tick_step(x_max, 8);
  for (double x = 0.0; x <= x_max + 1e-9 * x_max; x += xs) {
    out += fmt::format("<line x1=\"{0:.2f}\" x2=\"{0:.2f}\" y1=\"{1}\" y2=\"{2}\" stroke=\"black\"/>"
                       "<text x=\"{0:.2f}\" y=\"{3}\" text-anchor=\"middle\">{4:g}</text>\n",
                       sx(x), kTop + ph, kTop + ph + 5, kTop + ph + 18, x);
  }
  const double ys = tick_step(y_max, 6);
  for (double y = 0.0; y <= y_max; y += ys) {
    out += fmt::format("<line x1=\"{0}\" x2=\"{1}\" y1=\"{2:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
                       "<text x=\"{3}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:g}</text>\n",
                       kLeft - 5, kLeft, sy(y), kLeft - 8, sy(y) + 4, y);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">|E_m - E_n|</text>\n", kLeft + pw / 2,
                     kHeight - 14);
  out += fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">{1}</text>\n",
                     kTop + ph / 2, escape(labels.y_label));

  out += "<g fill=\"#1f4e9a\" fill-opacity=\"0.35\">\n";
  for (const auto& r : records) {
    out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.2\"/>\n", sx(r.gap), sy(r.w_abs));
  }
  out += "</g>\n";

  std::string points;
  for (const auto& b : stats.bins) {
    if (b.count == 0) continue;
    points += fmt::format("{:.2f},{:.2f} ", sx(b.center()), sy(b.median));
  }
  if (!points.empty()) {
    points.pop_back();
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n", points);
  }
  out += "</svg>\n";
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

}  // namespace eigdecoh::cli
