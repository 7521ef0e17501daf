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

#pragma once

#include <string>

#include "json.hpp"

#include "biasft/channel.hpp"

namespace biasft {

/// Kraus document:
///
///     {"qubits": 2, "flux": true,
///      "kraus": [{"terms": [{"tag": "identity", "matrix": [[[re, im], ...], ...]}, ...]}, ...]}
///
/// Tags are identity, diagonal, nondiagonal, leakage; each term is checked
/// against its tag when loaded.
channel::ClassifiedKraus<double> kraus_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const channel::ClassifiedKraus<double>& kraus);

channel::ClassifiedKraus<double> load_kraus(const std::string& path);

nlohmann::json matrix_to_json(const channel::Matrix<double>& m);
channel::Matrix<double> matrix_from_json(const nlohmann::json& j);

}  // namespace biasft
