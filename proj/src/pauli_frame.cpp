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

#include "biasft/pauli_frame.hpp"

#include <algorithm>
#include <ostream>

namespace biasft {

char to_char(FrameState s) {
  switch (s) {
    case FrameState::I: return 'I';
    case FrameState::X: return 'X';
    case FrameState::Z: return 'Z';
    case FrameState::Y: return 'Y';
    case FrameState::Leaked: return 'L';
  }
  return '?';
}

std::string PauliFrame::digest() const {
  std::string s(states_.size(), 'I');
  for (std::size_t q = 0; q < states_.size(); ++q) s[q] = to_char(static_cast<FrameState>(states_[q]));
  return s;
}

std::string_view to_string(LeakPolicy p) {
  switch (p) {
    case LeakPolicy::RandomZ: return "random-z";
    case LeakPolicy::AlwaysZ: return "always-z";
    case LeakPolicy::NeverZ: return "never-z";
  }
  return "?";
}

LeakPolicy parse_leak_policy(std::string_view text) {
  if (text == "random-z") return LeakPolicy::RandomZ;
  if (text == "always-z") return LeakPolicy::AlwaysZ;
  if (text == "never-z") return LeakPolicy::NeverZ;
  throw std::invalid_argument("unknown leak policy '" + std::string(text) + "'");
}

namespace detail {

void write_trace_line(std::ostream& out, std::size_t location, const Operation& op,
                      std::span<const FaultEvent> faults, const PauliFrame& frame) {
  out << location << ' ';
  switch (op.kind) {
    case OperationKind::PrepPlus: out << "PREP " << op.q0; break;
    case OperationKind::Cphase: out << "CZ " << op.q0 << ' ' << op.q1; break;
    case OperationKind::MeasureX: out << "MEASX " << op.q0; break;
  }
  out << " faults=";
  if (faults.empty()) out << '-';
  for (std::size_t i = 0; i < faults.size(); ++i) {
    if (i) out << ',';
    out << to_string(faults[i].error) << faults[i].qubit;
  }
  out << " frame=" << frame.digest() << '\n';
}

}  // namespace detail

RunResult run_circuit(const Circuit& circuit, const ErrorRateTable& rates, std::uint64_t seed,
                      const RunOptions& options) {
  FrameSimulator sim(circuit, options.leak_policy);
  sim.run_sampled(rates, seed, options.trial, options.trace);
  return {sim.outcomes(), sim.frame()};
}

RunResult run_with_faults(const Circuit& circuit, std::span<const FaultEvent> faults,
                          std::uint64_t seed, const RunOptions& options) {
  FrameSimulator sim(circuit, options.leak_policy);
  std::vector<FaultEvent> sorted(faults.begin(), faults.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const FaultEvent& a, const FaultEvent& b) { return a.location < b.location; });
  for (const FaultEvent& f : sorted) {
    if (f.location >= circuit.size()) {
      throw std::invalid_argument("fault at location " + std::to_string(f.location) +
                                  " is outside the circuit");
    }
  }
  const KeyedStream stream = KeyedStream(seed).child(options.trial);
  std::size_t next = 0;
  sim.run(
      [&](std::size_t i, std::vector<FaultEvent>& out) {
        while (next < sorted.size() && sorted[next].location == i) out.push_back(sorted[next++]);
      },
      [&](std::size_t i, std::uint64_t counter) { return stream.child(i).coin(counter); },
      options.trace);
  return {sim.outcomes(), sim.frame()};
}

}  // namespace biasft
