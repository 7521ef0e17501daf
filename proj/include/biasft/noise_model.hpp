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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biasft/rng.hpp"
#include "json.hpp"

namespace biasft {

using QubitId = std::uint32_t;

/// Qubit family. CPHASE couplings exist only between A and B.
enum class Species : std::uint8_t { A, B };

enum class OperationKind : std::uint8_t { PrepPlus, Cphase, MeasureX };

std::string_view to_string(Species s);
std::string_view to_string(OperationKind k);
Species parse_species(std::string_view text);
OperationKind parse_operation_kind(std::string_view text);

/// Phase rate, rate of all other errors, and leakage rate for one operation
/// on one species.
struct Rates {
  double eps = 0.0;
  double eps_other = 0.0;
  double eps_leak = 0.0;

  [[nodiscard]] double total() const { return eps + eps_other + eps_leak; }
  friend bool operator==(const Rates&, const Rates&) = default;
};

/// Per-operation, per-species error rates.
///
/// Every entry satisfies 0 <= eps, eps_other, eps_leak and
/// eps + eps_other + eps_leak <= 1. For MeasureX only `eps` is used: it is
/// the probability that the reported outcome is flipped.
class ErrorRateTable {
 public:
  ErrorRateTable() = default;

  [[nodiscard]] const Rates& at(OperationKind kind, Species species) const {
    return entries_[index(kind, species)];
  }
  void set(OperationKind kind, Species species, const Rates& rates);

  /// Probability of a correlated Z(x)Z fault on a CPHASE, in addition to the
  /// per-qubit faults. Zero in the default table.
  [[nodiscard]] double cphase_zz() const { return cphase_zz_; }
  void set_cphase_zz(double p);

  /// eps / eps_other for the entry; infinity when eps_other is zero.
  [[nodiscard]] double bias(OperationKind kind, Species species) const;

  [[nodiscard]] bool all_zero() const;

  friend bool operator==(const ErrorRateTable&, const ErrorRateTable&) = default;

 private:
  static constexpr std::size_t index(OperationKind kind, Species species) {
    return static_cast<std::size_t>(kind) * 2 + static_cast<std::size_t>(species);
  }

  std::array<Rates, 6> entries_{};
  double cphase_zz_ = 0.0;
};

/// Default rate table for the elementary operations (name "table1").
ErrorRateTable default_rates();

ErrorRateTable zero_rates();

/// Uniform table: every operation and species gets phase rate `eps`, other
/// rate `eps / bias` and leakage `eps_leak`. Measurements get flip rate `eps`.
ErrorRateTable uniform_rates(double eps, double bias, double eps_leak = 0.0);

/// JSON schema: an array of {operation, species, eps, eps_other, eps_leak},
/// or an object {"entries": [...], "eps_zz": p}. Missing entries are zero.
nlohmann::json to_json(const ErrorRateTable& table);
ErrorRateTable rates_from_json(const nlohmann::json& doc);

/// Resolves "table1", "zero", or a path to a JSON rate document.
ErrorRateTable load_rates(const std::string& spec);

enum class FaultKind : std::uint8_t { Z, X, Y, Leak, MeasFlip };

std::string_view to_string(FaultKind f);

struct FaultEvent {
  std::size_t location = 0;
  QubitId qubit = 0;
  FaultKind error = FaultKind::Z;

  friend bool operator==(const FaultEvent&, const FaultEvent&) = default;
};

/// One circuit location as seen by the noise model.
struct Location {
  OperationKind kind = OperationKind::PrepPlus;
  std::array<QubitId, 2> qubits{};
  std::array<Species, 2> species{};
  std::size_t location_id = 0;

  [[nodiscard]] std::size_t arity() const { return kind == OperationKind::Cphase ? 2 : 1; }
};

/// Samples the faults at one location.
///
/// `trial` is the stream of the current trial; the draw for qubit q at this
/// location is keyed by (trial, location_id, q), so the result does not depend
/// on the order in which locations or trials are visited. Faults are appended
/// to `out`.
///
///  - PrepPlus: Z w.p. eps, Y w.p. eps_other, Leak w.p. eps_leak (exclusive).
///  - Cphase: per qubit independently Z w.p. eps, X and Y each w.p.
///    eps_other/2, Leak w.p. eps_leak; plus Z on both w.p. cphase_zz.
///  - MeasureX: MeasFlip w.p. eps.
void sample_faults(const Location& location, const ErrorRateTable& rates,
                   const KeyedStream& trial, std::vector<FaultEvent>& out);

std::vector<FaultEvent> sample_faults(const Location& location, const ErrorRateTable& rates,
                                      const KeyedStream& trial);

/// First-order (phase, other) rate pair.
struct RatePair {
  double eps = 0.0;
  double eps_other = 0.0;
};

/// Union-bound composition of independent locations: column sums.
RatePair compose_rates(std::span<const RatePair> op_rates);

}  // namespace biasft
