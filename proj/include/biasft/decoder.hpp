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
#include <span>
#include <stdexcept>
#include <string>

#include "biasft/circuit.hpp"
#include "biasft/noise_model.hpp"
#include "biasft/pauli_frame.hpp"

namespace biasft {

/// Raised when a run contradicts a property that must hold by construction.
/// The CLI maps it to exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Majority of an odd number of bits.
bool majority(std::span<const std::uint8_t> bits);

struct TrialResult {
  bool logical_z_error = false;
  bool logical_x_error = false;
  bool leaked_output = false;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

/// Majority deviation of every group.
std::vector<std::uint8_t> group_bits(const Gadget& gadget, const OutcomeRecord& outcomes);

/// Residual logical error on the output blocks. For each output block the
/// Z-bar error is the XOR of its Z-correction group bits with the majority
/// decision on the Z components of the (unleaked) block qubits, and the
/// X-bar error is the XOR of its X-correction group bits with the parity of
/// the X components. Flags are ORed over blocks.
TrialResult classify(const Gadget& gadget, const OutcomeRecord& outcomes, const PauliFrame& frame);

TrialResult run_trial(const Gadget& gadget, const ErrorRateTable& rates, std::uint64_t seed,
                      std::uint64_t trial, LeakPolicy policy = LeakPolicy::RandomZ);

struct RateEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sqrt(mean (1 - mean) / trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  static RateEstimate from_count(std::uint64_t failures, std::uint64_t trials, std::uint64_t seed);
};

struct EstimateOptions {
  unsigned workers = 1;
  LeakPolicy leak_policy = LeakPolicy::RandomZ;
};

/// eps_L counts logical Z-bar errors. epsp_L counts logical X-bar/Y-bar
/// errors and trials that end with a leaked output qubit.
struct LogicalRates {
  RateEstimate eps_L;
  RateEstimate epsp_L;
  std::uint64_t z_failures = 0;
  std::uint64_t x_failures = 0;
  std::uint64_t leaked_outputs = 0;
};

/// Monte Carlo over trials 0..trials-1. Each trial has its own keyed stream,
/// so the result does not depend on the number of workers.
/// Throws InvariantViolation if the gadget fails without noise.
LogicalRates estimate_logical_rates(const Gadget& gadget, const ErrorRateTable& rates,
                                    std::uint64_t trials, std::uint64_t seed,
                                    const EstimateOptions& options = {});

}  // namespace biasft
