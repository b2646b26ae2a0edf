// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eigdecoh/cli/output.hpp"
#include "eigdecoh/error.hpp"

using namespace eigdecoh;
using namespace eigdecoh::cli;
namespace fs = std::filesystem;

TEST_CASE("numbers carry twelve significant digits") {
  CHECK(format_real(1.0) == "1.00000000000e+00");
  CHECK(format_real(-0.0) == "0.00000000000e+00");
  CHECK(format_real(-1234.5678901234) == "-1.23456789012e+03");
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("csv headers") {
  CHECK(witness_csv({}) == "m,n,sector_m,sector_n,E_m,E_n,gap,w,w_abs,degenerate_flag,operator_id\n");
  CHECK(bins_csv({}) == "bin_lo,bin_hi,count,median_abs,mean_abs,max_abs\n");
  CHECK(timeseries_csv({}) == "t,w,purity,trace_err\n");
  WitnessRecord r;
  r.m = 2;
  r.n = 7;
  r.sector_m = 1;
  r.sector_n = 4;
  r.gap = 0.5;
  r.degenerate = true;
  r.operator_id = "W";
  const std::string row = witness_csv({r}).substr(witness_csv({}).size());
  CHECK(row == "2,7,1,4,0.00000000000e+00,0.00000000000e+00,5.00000000000e-01,0.00000000000e+00,"
               "0.00000000000e+00,1,W\n");
  CMatrix m(1, 2);
  m << Complex(1, -2), Complex(0.5, 0);
  CHECK(matrix_csv(m) ==
        "s,s_prime,re,im\n0,0,1.00000000000e+00,-2.00000000000e+00\n0,1,5.00000000000e-01,0.00000000000e+00\n");
}

TEST_CASE("plot document") {
  std::vector<WitnessRecord> recs(3);
  recs[0].gap = 0.1;
  recs[0].w_abs = 0.2;
  recs[1].gap = 1.1;
  recs[1].w_abs = 0.4;
  recs[2].gap = 2.3;
  recs[2].w_abs = 0.3;
  const BinnedStats stats = bin_stats(recs, 0.5);
  const std::string svg = scatter_svg(recs, stats, {"A < B & C"});
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("A &lt; B &amp; C") != std::string::npos);
  std::size_t circles = 0;
  for (auto p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) ++circles;
  CHECK(circles == 3);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("|E_m - E_n|") != std::string::npos);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("atomic writes") {
  const fs::path dir = fs::temp_directory_path() / "eigdecoh_output_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_atomic(dir / "a.csv", "x\n1\n");
  write_atomic(dir / "a.csv", "x\n2\n");
  std::ifstream in(dir / "a.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "x\n2\n");
  CHECK_FALSE(fs::exists(dir / "a.csv.tmp"));
  CHECK_THROWS_AS(write_atomic(dir / "missing" / "b.csv", "x"), IoError);
  fs::remove_all(dir);
}
