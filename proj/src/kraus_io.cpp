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

#include "biasft/kraus_io.hpp"

#include <fstream>
#include <stdexcept>

namespace biasft {

using channel::Matrix;

nlohmann::json matrix_to_json(const Matrix<double>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix<double> matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix<double> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(i, c) = {e.get<double>(), 0.0};
      } else if (e.is_array() && e.size() == 2) {
        m(i, c) = {e[0].get<double>(), e[1].get<double>()};
      } else {
        throw std::invalid_argument("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

channel::ClassifiedKraus<double> kraus_from_json(const nlohmann::json& doc) {
  try {
    const channel::Layout layout{doc.at("qubits").get<int>(), doc.value("flux", false)};
    if (layout.qubits < 1 || layout.qubits > 4) throw std::invalid_argument("qubits must be in 1..4");
    channel::ClassifiedKraus<double> out(layout);
    for (const auto& op : doc.at("kraus")) {
      const std::size_t k = out.add_operator();
      for (const auto& term : op.at("terms")) {
        out.add_term(k, channel::parse_term_tag(term.at("tag").get<std::string>()),
                     matrix_from_json(term.at("matrix")));
      }
    }
    if (out.size() == 0) throw std::invalid_argument("Kraus document has no operators");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed Kraus document: ") + e.what());
  }
}

nlohmann::json to_json(const channel::ClassifiedKraus<double>& kraus) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& p : kraus.parts()) {
    nlohmann::json terms = nlohmann::json::array();
    auto put = [&](channel::TermTag tag, const Matrix<double>& m) {
      if (!m.isZero(0)) terms.push_back({{"tag", channel::to_string(tag)}, {"matrix", matrix_to_json(m)}});
    };
    put(channel::TermTag::Identity, p.identity);
    put(channel::TermTag::Diagonal, p.diagonal);
    put(channel::TermTag::Nondiagonal, p.nondiagonal);
    put(channel::TermTag::Leakage, p.leakage);
    ops.push_back({{"terms", terms}});
  }
  return {{"qubits", kraus.layout().qubits}, {"flux", kraus.layout().flux}, {"kraus", ops}};
}

channel::ClassifiedKraus<double> load_kraus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open Kraus file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("cannot parse Kraus file '" + path + "': " + e.what());
  }
  return kraus_from_json(doc);
}

}  // namespace biasft
