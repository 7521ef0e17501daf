// Copyright 2026 The biasft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(BIASFT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// CSV data lines (no comments, no header).
std::vector<std::vector<std::string>> rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

std::string body(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out += line + "\n";
  }
  return out;
}

}  // namespace

TEST(Cli, SimulateZeroRates) {
  const auto r = run("simulate --gadget teleport --n 3 --k 3 --rates zero --trials 1e4");
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 1u);
  ASSERT_EQ(t[0].size(), 9u);
  EXPECT_EQ(t[0][0], "teleport");
  EXPECT_EQ(t[0][3], "10000");
  EXPECT_EQ(std::stod(t[0][5]), 0.0);
  EXPECT_EQ(std::stod(t[0][7]), 0.0);
  EXPECT_NE(r.out.find("# config: {"), std::string::npos);
}

TEST(Cli, SimulateIsReproducible) {
  const std::string args = "simulate --gadget cnot --n 3 --k 3 --rates table1 --trials 20000 --seed 4";
  const auto a = run(args);
  const auto b = run(args);
  const auto c = run(args + " --workers 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(body(a.out), body(c.out));
  const auto path = std::filesystem::temp_directory_path() / "biasft_cli_test.csv";
  ASSERT_EQ(run(args + " -o " + path.string()).code, 0);
  std::ifstream in(path);
  std::stringstream file;
  file << in.rdbuf();
  EXPECT_EQ(body(file.str()), body(a.out));
  std::filesystem::remove(path);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("simulate --gadget cnot --n 4 --k 3").code, 2);
  EXPECT_EQ(run("simulate --gadget cnot --n 3 --k 3 --rates /nonexistent.json").code, 2);
  EXPECT_EQ(run("simulate --gadget toffoli").code, 2);
  EXPECT_EQ(run("simulate --trials 0").code, 2);
  EXPECT_EQ(run("simulate --leak-policy sometimes").code, 2);
  EXPECT_EQ(run("bounds --n 7 --t 1 --eps 0.05 --bias -1").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, BoundsBreakEven) {
  const auto r = run("bounds --n 7 --t 1 --eps 0.05 --bias 1e3");
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_NEAR(std::stod(t[0][5]), 2.1875e-4, 1e-12);
  EXPECT_NEAR(std::stod(t[0][6]), 3.5e-4, 1e-12);
}

TEST(Cli, BoundsTableOneOptimum) {
  const auto r = run("bounds --rates table1 --optimize free");
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_GT(std::stoi(t[0][4]), std::stoi(t[0][3]));
  const auto o = run("optimize --rates table1");
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(rows(o.out), t);
}

TEST(Cli, BoundsSweepTwoCurves) {
  const auto r = run("bounds --bias 1e3 --bias 1e4 --eps-grid 1e-4:1e-3 --points 6 --c 3 --optimize n=k");
  ASSERT_EQ(r.code, 0);
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 12u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t[i][3], t[i][4]);
    if (i % 6) {
      EXPECT_EQ(t[i][1], t[i - 1][1]);
      EXPECT_GT(std::stod(t[i][7]), std::stod(t[i - 1][7]));
    }
  }
  EXPECT_NE(t[0][1], t[6][1]);
}

TEST(Cli, Channel) {
  auto r = run("channel --builtin cphase --input bell --restarts 0");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["norms"]["E_d"]["input_distance"].get<double>(), 4.73e-3, 0.15 * 4.73e-3);
  r = run("channel --builtin cphase --qubit A --restarts 0");
  ASSERT_EQ(r.code, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["norms"]["E_d_A"]["input_distance"].get<double>(), 1.96e-3, 0.15 * 1.96e-3);
  r = run("channel --amplitude-damping 3.5e-6 --restarts 1");
  ASSERT_EQ(r.code, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["other_rate"].get<double>(), 3.5e-6, 1e-15);
  EXPECT_EQ(run("channel --amplitude-damping 2").code, 2);
  EXPECT_EQ(run("channel --kraus /nonexistent.json").code, 2);
}

TEST(Cli, ValidateAndOracle) {
  EXPECT_EQ(run("validate --gadget cnot --n 3 --k 3").code, 0);
  EXPECT_EQ(run("validate --gadget cnot --n 3 --k 3 --pre-teleport").code, 0);
  const auto path = std::filesystem::temp_directory_path() / "biasft_cli_bad_circuit.txt";
  {
    std::ofstream out(path);
    out << "# qubit 0 A data\n# qubit 1 A data\nPREP 0\nPREP 1\nCZ 0 1\n";
  }
  const auto v = run("validate --circuit " + path.string());
  EXPECT_EQ(v.code, 3);
  EXPECT_NE(v.out.find("data-data"), std::string::npos) << v.out;
  std::filesystem::remove(path);
  const auto o = run("oracle --gadget teleport --n 3 --k 1 --weight 1 --rates table1");
  ASSERT_EQ(o.code, 0);
  EXPECT_GE(rows(o.out).size(), 2u);
}
