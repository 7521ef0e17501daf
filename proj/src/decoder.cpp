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

#include "biasft/decoder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace biasft {

bool majority(std::span<const std::uint8_t> bits) {
  if (bits.empty() || bits.size() % 2 == 0) {
    throw std::invalid_argument("majority needs an odd number of bits, got " +
                                std::to_string(bits.size()));
  }
  std::size_t ones = 0;
  for (std::uint8_t b : bits) ones += b != 0;
  return 2 * ones > bits.size();
}

std::vector<std::uint8_t> group_bits(const Gadget& gadget, const OutcomeRecord& outcomes) {
  std::vector<std::uint8_t> out(gadget.groups.size(), 0);
  std::vector<std::uint8_t> scratch;
  for (std::size_t g = 0; g < gadget.groups.size(); ++g) {
    scratch.clear();
    for (std::size_t m : gadget.groups[g].measurements) scratch.push_back(outcomes.bits[m]);
    out[g] = majority(scratch);
  }
  return out;
}

TrialResult classify(const Gadget& gadget, const OutcomeRecord& outcomes, const PauliFrame& frame) {
  const auto bits = group_bits(gadget, outcomes);
  TrialResult r;
  for (const LogicalCorrection& corr : gadget.corrections) {
    const Block& block = gadget.blocks[corr.block];
    bool z = false;
    bool x = false;
    for (std::size_t g : corr.z_groups) z ^= bits[g] != 0;
    for (std::size_t g : corr.x_groups) x ^= bits[g] != 0;
    std::size_t z_weight = 0;
    for (QubitId q : block.qubits) {
      if (frame.leaked(q)) {
        r.leaked_output = true;
        continue;
      }
      z_weight += frame.has_z(q);
      x ^= frame.has_x(q);
    }
    z ^= 2 * z_weight > block.qubits.size();
    r.logical_z_error = r.logical_z_error || z;
    r.logical_x_error = r.logical_x_error || x;
  }
  return r;
}

TrialResult run_trial(const Gadget& gadget, const ErrorRateTable& rates, std::uint64_t seed,
                      std::uint64_t trial, LeakPolicy policy) {
  FrameSimulator sim(gadget.circuit, policy);
  sim.run_sampled(rates, seed, trial);
  return classify(gadget, sim.outcomes(), sim.frame());
}

RateEstimate RateEstimate::from_count(std::uint64_t failures, std::uint64_t trials,
                                      std::uint64_t seed) {
  RateEstimate e;
  e.trials = trials;
  e.seed = seed;
  if (trials == 0) return e;
  e.mean = static_cast<double>(failures) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  return e;
}

namespace {

struct Counts {
  std::uint64_t z = 0;
  std::uint64_t x_or_leak = 0;
  std::uint64_t x = 0;
  std::uint64_t leak = 0;
};

constexpr std::uint64_t kChunk = 4096;

}  // namespace

LogicalRates estimate_logical_rates(const Gadget& gadget, const ErrorRateTable& rates,
                                    std::uint64_t trials, std::uint64_t seed,
                                    const EstimateOptions& options) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  {
    FrameSimulator sim(gadget.circuit, options.leak_policy);
    sim.run([](std::size_t, std::vector<FaultEvent>&) {},
            [](std::size_t, std::uint64_t) { return false; });
    const TrialResult clean = classify(gadget, sim.outcomes(), sim.frame());
    if (clean != TrialResult{}) {
      throw InvariantViolation("gadget '" + gadget.name + "' reports a logical error without noise");
    }
  }

  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<Counts> per_chunk(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    FrameSimulator sim(gadget.circuit, options.leak_policy);
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      Counts counts;
      const std::uint64_t end = std::min(trials, (c + 1) * kChunk);
      for (std::uint64_t t = c * kChunk; t < end; ++t) {
        sim.run_sampled(rates, seed, t);
        const TrialResult r = classify(gadget, sim.outcomes(), sim.frame());
        counts.z += r.logical_z_error;
        counts.x += r.logical_x_error;
        counts.leak += r.leaked_output;
        counts.x_or_leak += r.logical_x_error || r.leaked_output;
      }
      per_chunk[c] = counts;
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(std::max(1u, options.workers), 1, chunks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  Counts total;
  for (const Counts& c : per_chunk) {
    total.z += c.z;
    total.x += c.x;
    total.leak += c.leak;
    total.x_or_leak += c.x_or_leak;
  }
  LogicalRates out;
  out.eps_L = RateEstimate::from_count(total.z, trials, seed);
  out.epsp_L = RateEstimate::from_count(total.x_or_leak, trials, seed);
  out.z_failures = total.z;
  out.x_failures = total.x;
  out.leaked_outputs = total.leak;
  return out;
}

}  // namespace biasft
