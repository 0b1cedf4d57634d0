// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ISLOCC_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Run r{-1, {}};
  if (p == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, SweepWritesCsv) {
  const auto r = run("sweep --indist-grid 0:1:2 --p-grid 0:1:3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("p,l,lprime,theta,statistics,indist,concurrence,eof,p_lr,bell\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
}

TEST(Cli, SweepIsByteIdentical) {
  const auto a = run("sweep --indist-grid 0:1:5 --p-grid 0:1:5");
  const auto b = run("sweep --indist-grid 0:1:5 --p-grid 0:1:5");
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const auto cfg = temp_file("islocc_cli_cfg.txt", "statistics = boson\np-grid = 0:1:2\nindist-grid = 1:1:1\n");
  const auto r = run("sweep --config " + cfg.string() + " --statistics fermion");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find(",fermion,"), std::string::npos);
  EXPECT_EQ(r.out.find(",boson,"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("sweep --statistics anyon").status, 2);
  EXPECT_EQ(run("sweep --p-grid 1:0:3").status, 2);
  EXPECT_EQ(run("sweep --no-such-flag").status, 2);
  EXPECT_EQ(run("").status, 2);
  const auto cfg = temp_file("islocc_cli_bad.txt", "colour = red\n");
  EXPECT_EQ(run("sweep --config " + cfg.string()).status, 2);
  EXPECT_EQ(run("threshold --constraint free").status, 2);
}

TEST(Cli, IoErrorsExitThree) {
  EXPECT_EQ(run("sweep --output /nonexistent-dir/out.csv").status, 3);
  EXPECT_EQ(run("sweep --config /nonexistent-dir/cfg.txt").status, 3);
}

TEST(Cli, OutputFileAndFormats) {
  const auto path = std::filesystem::temp_directory_path() / "islocc_cli_out.json";
  EXPECT_EQ(run("sweep --p-grid 0:1:2 --indist-grid 1:1:1 --format json --output " + path.string()).status, 0);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text.front(), '[');
  EXPECT_NE(text.find("\"concurrence\""), std::string::npos);
  EXPECT_EQ(run("bell-region --p-grid 0:1:3 --indist-grid 0:1:2 --format svg").out.rfind("<svg", 0), 0u);
}

TEST(Cli, Threshold) {
  const auto r = run("threshold");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("threshold = 0.76", 0), 0u);
  const auto none = run("threshold --target 1_plus");
  EXPECT_EQ(none.status, 0);
  EXPECT_EQ(none.out, "threshold = none\n");
}

TEST(Cli, VerifyPassesAndDetectsInjectedFault) {
  const auto ok = run("verify");
  EXPECT_EQ(ok.status, 0);
  EXPECT_NE(ok.out.find("all suites passed"), std::string::npos);
  const auto bad = run("verify --inject-fault");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("[FAIL] closed forms vs pipeline"), std::string::npos);
}
