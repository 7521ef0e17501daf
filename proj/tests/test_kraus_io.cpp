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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "biasft/kraus_io.hpp"

using namespace biasft;
namespace ch = biasft::channel;

TEST(KrausIo, BuiltinRoundTrip) {
  const auto k = ch::builtin_cphase_kraus<double>();
  const auto back = kraus_from_json(nlohmann::json::parse(to_json(k).dump()));
  ASSERT_EQ(back.size(), k.size());
  EXPECT_EQ(back.layout(), k.layout());
  for (std::size_t i = 0; i < k.size(); ++i) {
    EXPECT_EQ(back.parts()[i].identity, k.parts()[i].identity);
    EXPECT_EQ(back.parts()[i].diagonal, k.parts()[i].diagonal);
    EXPECT_EQ(back.parts()[i].nondiagonal, k.parts()[i].nondiagonal);
    EXPECT_EQ(back.parts()[i].leakage, k.parts()[i].leakage);
  }
}

TEST(KrausIo, PlainNumbersAndFile) {
  const auto doc = nlohmann::json::parse(R"({
    "qubits": 1,
    "kraus": [
      {"terms": [{"tag": "identity", "matrix": [[0.9, 0], [0, 0.9]]}]},
      {"terms": [{"tag": "diagonal", "matrix": [[[0.1, 0.0], [0, 0]], [[0, 0], [-0.1, 0.0]]]}]}
    ]
  })");
  const auto k = kraus_from_json(doc);
  EXPECT_EQ(k.size(), 2u);
  EXPECT_FALSE(k.layout().flux);
  EXPECT_DOUBLE_EQ(k.parts()[1].diagonal(1, 1).real(), -0.1);
  const auto path = std::filesystem::temp_directory_path() / "biasft_kraus_io_test.json";
  {
    std::ofstream out(path);
    out << doc.dump();
  }
  EXPECT_EQ(load_kraus(path.string()).size(), 2u);
  std::filesystem::remove(path);
  EXPECT_THROW(load_kraus("/nonexistent/kraus.json"), std::invalid_argument);
}

TEST(KrausIo, Rejections) {
  auto bad_tag = nlohmann::json::parse(
      R"({"qubits": 1, "kraus": [{"terms": [{"tag": "coherent", "matrix": [[1, 0], [0, 1]]}]}]})");
  try {
    kraus_from_json(bad_tag);
    FAIL() << "accepted an unknown tag";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("unclassified"), std::string::npos);
  }
  auto wrong_dim = nlohmann::json::parse(
      R"({"qubits": 2, "kraus": [{"terms": [{"tag": "identity", "matrix": [[1, 0], [0, 1]]}]}]})");
  EXPECT_THROW(kraus_from_json(wrong_dim), std::invalid_argument);
  auto ragged = nlohmann::json::parse(
      R"({"qubits": 1, "kraus": [{"terms": [{"tag": "identity", "matrix": [[1, 0], [0]]}]}]})");
  EXPECT_THROW(kraus_from_json(ragged), std::invalid_argument);
  auto missing = nlohmann::json::parse(R"({"kraus": []})");
  EXPECT_THROW(kraus_from_json(missing), std::invalid_argument);
  auto empty = nlohmann::json::parse(R"({"qubits": 1, "kraus": []})");
  EXPECT_THROW(kraus_from_json(empty), std::invalid_argument);
  auto mislabelled = nlohmann::json::parse(
      R"({"qubits": 1, "kraus": [{"terms": [{"tag": "diagonal", "matrix": [[0, 1], [1, 0]]}]}]})");
  EXPECT_THROW(kraus_from_json(mislabelled), std::invalid_argument);
}
