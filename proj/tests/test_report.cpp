// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sstream>

#include "islocc/report.hpp"

using namespace islocc;

namespace {

std::vector<SweepRecord> sample_rows() {
  SweepConfig c;
  c.outer_grid = {0.0, 1.0, 4};
  c.p_grid = {0.0, 1.0, 5};
  auto rows = run_sweep(c, 2);
  SweepConfig dead;
  dead.constraint = Constraint::l_eq_lprime;
  dead.outer_grid = {1.0, 1.0, 1};
  dead.p_grid = {0.5, 0.5, 1};
  const auto extra = run_sweep(dead, 1);
  rows.insert(rows.end(), extra.begin(), extra.end());
  return rows;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

void expect_same(const SweepRecord& a, const SweepRecord& b) {
  EXPECT_TRUE(same(a.p, b.p));
  EXPECT_TRUE(same(a.l, b.l));
  EXPECT_TRUE(same(a.lprime, b.lprime));
  EXPECT_TRUE(same(a.theta, b.theta));
  EXPECT_EQ(a.statistics, b.statistics);
  EXPECT_TRUE(same(a.indist, b.indist));
  EXPECT_TRUE(same(a.concurrence, b.concurrence));
  EXPECT_TRUE(same(a.eof, b.eof));
  EXPECT_TRUE(same(a.p_lr, b.p_lr));
  EXPECT_TRUE(same(a.bell, b.bell));
  EXPECT_EQ(a.detected, b.detected);
}

}  // namespace

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(format_real(NAN), "nan");
}

TEST(Csv, HeaderAndRoundTrip) {
  const auto rows = sample_rows();
  std::ostringstream os;
  write_sweep_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "p,l,lprime,theta,statistics,indist,concurrence,eof,p_lr,bell");
  std::istringstream is(os.str());
  const auto back = read_sweep_csv(is);
  ASSERT_EQ(back.size(), rows.size());
  std::ostringstream again;
  write_sweep_csv(again, back);
  EXPECT_EQ(again.str(), os.str());
  EXPECT_NE(os.str().find(",nan,"), std::string::npos);
}

TEST(Csv, ByteIdenticalAcrossRuns) {
  std::ostringstream a, b;
  write_sweep_csv(a, sample_rows());
  write_sweep_csv(b, sample_rows());
  EXPECT_EQ(a.str(), b.str());
}

TEST(Csv, RejectsMalformedInput) {
  std::istringstream bad_header("p,l\n");
  EXPECT_THROW(read_sweep_csv(bad_header), Error);
  std::istringstream short_row(std::string(kSweepCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(read_sweep_csv(short_row), Error);
}

TEST(Json, EncodesTheSameRecordsAsCsv) {
  const auto rows = sample_rows();
  std::ostringstream os;
  write_sweep_csv(os, rows);
  std::istringstream is(os.str());
  const auto from_csv = read_sweep_csv(is);
  const auto from_json = sweep_from_json(nlohmann::ordered_json::parse(sweep_to_json(rows).dump()));
  ASSERT_EQ(from_csv.size(), from_json.size());
  for (std::size_t i = 0; i < from_csv.size(); ++i) expect_same(from_csv[i], from_json[i]);
}

TEST(Json, ThresholdNone) {
  EXPECT_TRUE(threshold_to_json(ThresholdResult{}).at("threshold").is_null());
  std::ostringstream os;
  write_threshold_text(os, ThresholdResult{});
  EXPECT_EQ(os.str(), "threshold = none\n");
}

TEST(Svg, Renders) {
  const auto rows = sample_rows();
  std::ostringstream a;
  write_sweep_svg(a, rows, 5);
  EXPECT_EQ(a.str().rfind("<svg", 0), 0u);
  EXPECT_NE(a.str().find("<polyline"), std::string::npos);
  std::vector<BellRegionRow> region{{0.0, 0.0, 2.8, true}, {1.0, 0.0, 0.0, false}};
  std::ostringstream b;
  write_bell_region_svg(b, region, 2, 1);
  EXPECT_NE(b.str().find("<rect"), std::string::npos);
  EXPECT_NE(b.str().find("</svg>"), std::string::npos);
}

TEST(Config, ParsesFlatText) {
  const auto kv = parse_config_text("# comment\nstatistics = boson\n\np-grid = 0:1:3   # trailing\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[1].first, "p_grid");
  EXPECT_EQ(kv[1].second, "0:1:3");
  const auto cfg = parse_sweep_config("statistics = boson\ntarget = 1_plus\n");
  EXPECT_EQ(cfg.statistics, Statistics::boson);
  EXPECT_EQ(cfg.target, Target::plus);
}

TEST(Config, ErrorsCarryLineNumbers) {
  try {
    parse_config_text("statistics = boson\nnonsense\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_sweep_config("bogus = 1\n"), Error);
}
