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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biasft/circuit.hpp"
#include "biasft/noise_model.hpp"
#include "biasft/rng.hpp"

namespace biasft {

/// Per-qubit error state. Bit 0 is the X component, bit 1 the Z component;
/// Leaked is absorbing.
enum class FrameState : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3, Leaked = 4 };

char to_char(FrameState s);

/// Symbolic Pauli error on every qubit, global phase dropped.
class PauliFrame {
 public:
  PauliFrame() = default;
  explicit PauliFrame(std::size_t num_qubits) : states_(num_qubits, 0) {}

  [[nodiscard]] std::size_t size() const { return states_.size(); }
  [[nodiscard]] FrameState at(QubitId q) const { return static_cast<FrameState>(states_[q]); }
  [[nodiscard]] bool leaked(QubitId q) const { return states_[q] == kLeaked; }
  [[nodiscard]] bool has_x(QubitId q) const { return (states_[q] & (kLeaked | 1)) == 1; }
  [[nodiscard]] bool has_z(QubitId q) const { return (states_[q] & (kLeaked | 2)) == 2; }

  /// Multiplies a Pauli onto q. No effect on a leaked qubit.
  void apply(QubitId q, FrameState pauli) {
    if (states_[q] != kLeaked) states_[q] ^= static_cast<std::uint8_t>(pauli) & 3;
  }
  void leak(QubitId q) { states_[q] = kLeaked; }
  /// Fresh preparation or measurement replacement.
  void reset(QubitId q) { states_[q] = 0; }
  void clear() { std::fill(states_.begin(), states_.end(), std::uint8_t{0}); }
  void resize(std::size_t n) { states_.assign(n, 0); }

  /// One character per qubit: I X Y Z L.
  [[nodiscard]] std::string digest() const;

  friend bool operator==(const PauliFrame&, const PauliFrame&) = default;

 private:
  static constexpr std::uint8_t kLeaked = 4;
  std::vector<std::uint8_t> states_;
};

/// What a CPHASE does to an unleaked partner of a leaked qubit.
enum class LeakPolicy : std::uint8_t { RandomZ, AlwaysZ, NeverZ };

std::string_view to_string(LeakPolicy p);
LeakPolicy parse_leak_policy(std::string_view text);

/// Conjugates the frame through CZ(a, b): an X component on one qubit picks
/// up Z on the other. If exactly one operand is leaked, the other acquires Z
/// according to `policy`; `coin` is called only for RandomZ.
template <typename CoinFn>
void conjugate_through_cz(PauliFrame& frame, QubitId a, QubitId b, LeakPolicy policy,
                          CoinFn&& coin) {
  if (a == b) throw std::invalid_argument("conjugate_through_cz: operands must differ");
  const bool la = frame.leaked(a);
  const bool lb = frame.leaked(b);
  if (la || lb) {
    if (la && lb) return;
    const QubitId partner = la ? b : a;
    const bool flip = policy == LeakPolicy::AlwaysZ ||
                      (policy == LeakPolicy::RandomZ && coin());
    if (flip) frame.apply(partner, FrameState::Z);
    return;
  }
  const bool xa = frame.has_x(a);
  const bool xb = frame.has_x(b);
  if (xa) frame.apply(b, FrameState::Z);
  if (xb) frame.apply(a, FrameState::Z);
}

inline void conjugate_through_cz(PauliFrame& frame, QubitId a, QubitId b) {
  conjugate_through_cz(frame, a, b, LeakPolicy::NeverZ, [] { return false; });
}

struct MeasurementResult {
  bool bit = false;
  bool leaked_random = false;
};

/// X-basis measurement of q. A leaked qubit gives a uniformly random bit
/// (from `coin`); otherwise the ideal outcome is flipped by a Z component and
/// by a readout fault. The qubit is reset to I afterwards.
template <typename CoinFn>
MeasurementResult measure_x(PauliFrame& frame, QubitId q, bool ideal_outcome, bool flip_fault,
                            CoinFn&& coin) {
  MeasurementResult r;
  if (frame.leaked(q)) {
    r.bit = coin();
    r.leaked_random = true;
  } else {
    r.bit = ideal_outcome ^ frame.has_z(q) ^ flip_fault;
  }
  frame.reset(q);
  return r;
}

/// Measurement record indexed by location id. Entries for non-measurement
/// locations are zero. Bits are deviations from the noiseless reference run.
struct OutcomeRecord {
  std::vector<std::uint8_t> bits;
  std::vector<std::uint8_t> leaked_random;

  void resize(std::size_t n) {
    bits.assign(n, 0);
    leaked_random.assign(n, 0);
  }
};

struct RunResult {
  OutcomeRecord outcomes;
  PauliFrame frame;
};

struct RunOptions {
  std::uint64_t trial = 0;
  LeakPolicy leak_policy = LeakPolicy::RandomZ;
  std::ostream* trace = nullptr;
};

namespace detail {
constexpr std::uint64_t kCzCoinTag = std::uint64_t{2} << 40;
constexpr std::uint64_t kMeasureCoinTag = std::uint64_t{3} << 40;
void write_trace_line(std::ostream& out, std::size_t location, const Operation& op,
                      std::span<const FaultEvent> faults, const PauliFrame& frame);
}  // namespace detail

/// Reusable propagation state for one circuit. Construction validates the
/// circuit once; `run` can then be called for many trials.
class FrameSimulator {
 public:
  explicit FrameSimulator(const Circuit& circuit, LeakPolicy policy = LeakPolicy::RandomZ)
      : circuit_(&circuit), policy_(policy) {
    require_well_formed(circuit);
    frame_.resize(circuit.num_qubits());
    outcomes_.resize(circuit.size());
    faults_.reserve(8);
  }

  /// Propagates one trial.
  ///
  /// `fault_source(location_index, faults)` appends the faults for a location.
  /// `coin_source(location_index, counter)` returns the random bit used for a
  /// leakage-induced choice; `counter` distinguishes the choices at one
  /// location.
  template <typename FaultSource, typename CoinSource>
  void run(FaultSource&& fault_source, CoinSource&& coin_source, std::ostream* trace = nullptr) {
    frame_.clear();
    std::fill(outcomes_.bits.begin(), outcomes_.bits.end(), std::uint8_t{0});
    std::fill(outcomes_.leaked_random.begin(), outcomes_.leaked_random.end(), std::uint8_t{0});
    const auto ops = circuit_->operations();
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const Operation& op = ops[i];
      faults_.clear();
      fault_source(i, faults_);
      switch (op.kind) {
        case OperationKind::PrepPlus:
          frame_.reset(op.q0);
          inject();
          break;
        case OperationKind::Cphase:
          conjugate_through_cz(frame_, op.q0, op.q1, policy_, [&] {
            const QubitId partner = frame_.leaked(op.q0) ? op.q1 : op.q0;
            return coin_source(i, detail::kCzCoinTag | partner);
          });
          inject();
          break;
        case OperationKind::MeasureX: {
          bool flip = false;
          for (const FaultEvent& f : faults_) {
            if (f.error == FaultKind::MeasFlip) flip = !flip;
            else inject_one(f);
          }
          const auto r = measure_x(frame_, op.q0, false, flip,
                                   [&] { return coin_source(i, detail::kMeasureCoinTag | op.q0); });
          outcomes_.bits[i] = r.bit;
          outcomes_.leaked_random[i] = r.leaked_random;
          break;
        }
      }
      if (trace) detail::write_trace_line(*trace, i, op, faults_, frame_);
    }
  }

  /// Sampled-noise trial keyed by (seed, trial).
  void run_sampled(const ErrorRateTable& rates, std::uint64_t seed, std::uint64_t trial,
                   std::ostream* trace = nullptr) {
    const KeyedStream stream = KeyedStream(seed).child(trial);
    run(
        [&](std::size_t i, std::vector<FaultEvent>& out) {
          sample_faults(circuit_->location(i), rates, stream, out);
        },
        [&](std::size_t i, std::uint64_t counter) {
          return stream.child(i).coin(counter);
        },
        trace);
  }

  [[nodiscard]] const PauliFrame& frame() const { return frame_; }
  [[nodiscard]] const OutcomeRecord& outcomes() const { return outcomes_; }
  [[nodiscard]] const Circuit& circuit() const { return *circuit_; }
  [[nodiscard]] LeakPolicy policy() const { return policy_; }

 private:
  void inject() {
    for (const FaultEvent& f : faults_) inject_one(f);
  }

  void inject_one(const FaultEvent& f) {
    switch (f.error) {
      case FaultKind::Z: frame_.apply(f.qubit, FrameState::Z); break;
      case FaultKind::X: frame_.apply(f.qubit, FrameState::X); break;
      case FaultKind::Y: frame_.apply(f.qubit, FrameState::Y); break;
      case FaultKind::Leak: frame_.leak(f.qubit); break;
      case FaultKind::MeasFlip:
        throw std::invalid_argument("measurement flip fault on a non-measurement location");
    }
  }

  const Circuit* circuit_;
  LeakPolicy policy_;
  PauliFrame frame_;
  OutcomeRecord outcomes_;
  std::vector<FaultEvent> faults_;
};

/// Runs the circuit once with sampled faults. Deterministic in (seed, trial).
RunResult run_circuit(const Circuit& circuit, const ErrorRateTable& rates, std::uint64_t seed,
                      const RunOptions& options = {});

/// Runs the circuit with an explicit fault list (any order). Leakage-induced
/// random choices are drawn from the keyed stream of `seed`.
RunResult run_with_faults(const Circuit& circuit, std::span<const FaultEvent> faults,
                          std::uint64_t seed = 0, const RunOptions& options = {});

}  // namespace biasft
