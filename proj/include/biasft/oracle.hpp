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

#include <cstdint>
#include <vector>

#include "biasft/circuit.hpp"
#include "biasft/noise_model.hpp"
#include "biasft/pauli_frame.hpp"

namespace biasft {

struct OracleOptions {
  LeakPolicy leak_policy = LeakPolicy::RandomZ;
  /// Maximum number of propagated runs (patterns times leak-coin branches).
  std::uint64_t budget = 50'000'000;
};

/// Exact fault enumeration up to a total fault weight.
///
/// Fault sites are the independent random choices of the noise model: one
/// per prepared qubit, one per CPHASE operand, one for the correlated ZZ of a
/// CPHASE and one per measurement. A pattern picks a non-trivial outcome at a
/// set of distinct sites; its probability is the product of the chosen
/// outcome probabilities times the no-fault probability of every other site.
/// Random leakage choices are enumerated exhaustively with equal weight.
struct OracleResult {
  int max_weight = 0;
  /// Index j: total probability of weight-j patterns.
  std::vector<double> weight_probability;
  /// Index j: probability of weight-j patterns ending in a logical Z-bar
  /// error, resp. an X-bar/Y-bar error or leaked output.
  std::vector<double> z_by_weight;
  std::vector<double> x_by_weight;
  /// Index j: number of weight-j patterns that fail (leak-coin branches
  /// counted fractionally). A site whose rate is split over several fault
  /// kinds contributes one pattern per kind, so this is a count, not the
  /// coefficient of rate^j; use x_by_weight[j] / rate^j at small rate.
  std::vector<double> z_patterns;
  std::vector<double> x_patterns;
  /// Probability of a pattern heavier than max_weight.
  double tail = 0.0;
  std::uint64_t patterns = 0;
  std::size_t sites = 0;

  /// Probability mass of failing patterns up to max_weight; the exact
  /// failure probability lies in [eps_L(), eps_L() + tail].
  [[nodiscard]] double eps_L() const;
  [[nodiscard]] double epsp_L() const;
};

OracleResult brute_force_oracle(const Gadget& gadget, const ErrorRateTable& rates, int max_weight,
                                const OracleOptions& options = {});

}  // namespace biasft
