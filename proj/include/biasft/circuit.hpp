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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biasft/noise_model.hpp"

namespace biasft {

enum class Role : std::uint8_t { Data, Ancilla };

struct QubitInfo {
  Species species = Species::A;
  Role role = Role::Data;
};

struct Operation {
  OperationKind kind = OperationKind::PrepPlus;
  QubitId q0 = 0;
  QubitId q1 = 0;  // only meaningful for Cphase
  double angle = 0.0;  // MeasureX only; metadata, does not change the noise

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// Free-form annotation attached before operation `before`.
struct Annotation {
  std::size_t before = 0;
  std::string text;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Time-ordered list of |+> preparations, CPHASE gates and X measurements.
/// The location id of an operation is its index.
class Circuit {
 public:
  QubitId add_qubit(Species species, Role role);

  std::size_t prep(QubitId q);
  std::size_t cz(QubitId a, QubitId b);
  std::size_t measure_x(QubitId q, double angle = 0.0);
  std::size_t append(const Operation& op);
  void annotate(std::string text);

  [[nodiscard]] std::span<const QubitInfo> qubits() const { return qubits_; }
  [[nodiscard]] std::span<const Operation> operations() const { return ops_; }
  [[nodiscard]] std::span<const Annotation> annotations() const { return annotations_; }
  [[nodiscard]] std::size_t num_qubits() const { return qubits_.size(); }
  [[nodiscard]] std::size_t size() const { return ops_.size(); }
  [[nodiscard]] const Operation& operator[](std::size_t i) const { return ops_[i]; }

  [[nodiscard]] Location location(std::size_t i) const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::vector<QubitInfo> qubits_;
  std::vector<Operation> ops_;
  std::vector<Annotation> annotations_;
};

/// Structural problem with a circuit, pinned to the offending location.
struct CircuitDefect {
  std::size_t location = 0;
  std::string message;
};

/// Checks that every operation is executable: qubit ids in range, distinct
/// CPHASE operands, no operation on a measured qubit before it is prepared
/// again, no preparation of a qubit that is still live. Qubits whose first
/// operation is not a preparation are circuit inputs.
std::optional<CircuitDefect> find_defect(const Circuit& circuit);

/// Throws std::invalid_argument naming the location if the circuit has a defect.
void require_well_formed(const Circuit& circuit);

enum class BlockRole : std::uint8_t { Input, Intermediate, Output };

std::string_view to_string(BlockRole r);

/// A repetition-code block: logical Z is Z on every qubit, logical X is X on
/// any one qubit.
struct Block {
  std::string name;
  BlockRole role = BlockRole::Input;
  std::vector<QubitId> qubits;

  friend bool operator==(const Block&, const Block&) = default;
};

/// Measurements whose majority forms one logical outcome bit.
struct MajorityGroup {
  std::string name;
  std::vector<std::size_t> measurements;  // operation indices

  friend bool operator==(const MajorityGroup&, const MajorityGroup&) = default;
};

/// Logical Pauli correction pending on an output block: X-bar raised to the
/// XOR of the listed group bits, and likewise Z-bar. Corrections are tracked,
/// never applied.
struct LogicalCorrection {
  std::size_t block = 0;
  std::vector<std::size_t> x_groups;
  std::vector<std::size_t> z_groups;

  friend bool operator==(const LogicalCorrection&, const LogicalCorrection&) = default;
};

struct GadgetParams {
  int n = 1;
  int k = 1;
  double c = 3.0;

  [[nodiscard]] double t() const { return c * k; }
  friend bool operator==(const GadgetParams&, const GadgetParams&) = default;
};

/// Circuit plus the classical post-processing that turns its measurement
/// record into logical outcomes and pending corrections.
struct Gadget {
  std::string name;
  GadgetParams params;
  Circuit circuit;
  std::vector<Block> blocks;
  std::vector<MajorityGroup> groups;
  std::vector<LogicalCorrection> corrections;

  [[nodiscard]] std::optional<std::size_t> find_block(std::string_view name) const;
  [[nodiscard]] std::optional<std::size_t> find_group(std::string_view name) const;

  friend bool operator==(const Gadget&, const Gadget&) = default;
};

/// Line-oriented text format:
///
///     # qubit <id> <A|B> <data|ancilla>
///     # block <input|intermediate|output> <name> <qubit>...
///     # rep <r>                    (free annotations)
///     PREP q
///     CZ q1 q2
///     MEASX q [angle]
///     # group <name> <location>...
///     # correct <block> X <group>... Z <group>...
///
/// Location ids are 0-based operation indices; comment lines are not counted.
void write_text(std::ostream& out, const Gadget& gadget);
std::string to_text(const Gadget& gadget);
Gadget parse_text(std::istream& in);
Gadget parse_text(const std::string& text);

}  // namespace biasft
