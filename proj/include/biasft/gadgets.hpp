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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biasft/circuit.hpp"

namespace biasft {

/// Appends k sequential repetitions of an ancilla-mediated Z-parity
/// measurement over the union of `blocks`: a fresh species-B ancilla is
/// prepared in |+>, CPHASE-coupled to every listed qubit in the order given,
/// and measured in X. The returned group's majority is the parity bit of the
/// product of Z over all listed qubits.
MajorityGroup append_parity_measurement(Circuit& circuit,
                                        std::span<const std::vector<QubitId>> blocks, int k,
                                        std::string name);

/// Appends a transversal X measurement of `block`; the group's majority is
/// the logical X outcome.
MajorityGroup append_transversal_x(Circuit& circuit, const Block& block, std::string name);

/// Standalone parity measurement over unprepared input blocks of the given
/// sizes. Single group "parity", no corrections.
Gadget build_parity_measurement(std::span<const int> block_sizes, int k);

/// Logical identity by teleportation: input block "in" (n qubits, supplied
/// by the caller), output block "out" prepared qubitwise in |+>, Z-bar Z-bar
/// parity with k repetitions (group "zz"), transversal X on the input (group
/// "x"). Pending correction on "out": X-bar^zz Z-bar^x.
Gadget build_teleport_identity(int n, int k);

struct CnotOptions {
  /// Teleport both inputs to fresh blocks before the gate so that leakage
  /// cannot reach the gate from earlier gadgets.
  bool pre_teleport = false;
};

/// Logical CNOT from control block C to target block T onto fresh blocks C'
/// and T' (named "C'" and "T'"):
///
///   m1 = Z_C Z_C'            (k repetitions)
///   m2 = Z_T Z_C' Z_T'       (k repetitions)
///   m3 = X_C, m4 = X_T       (transversal, majority per block)
///
/// Pending corrections: C' gets X-bar^m1 Z-bar^(m3+m4), T' gets
/// X-bar^(m1+m2) Z-bar^m4.
Gadget build_logical_cnot(int n, int k, CnotOptions options = {});

/// "teleport" or "cnot".
Gadget build_gadget(std::string_view name, int n, int k, CnotOptions options = {});

void require_odd(int value, const char* what);

struct ScheduleViolation {
  std::size_t location = 0;
  std::string rule;
  std::string message;
};

/// Validates the scheduling rules of the encoded gadgets:
///  - the circuit is well formed ("malformed");
///  - data qubits are species A and ancillas species B ("role-species");
///  - CPHASE couples different species ("species");
///  - no CPHASE between two data qubits ("data-data");
///  - while an ancilla is live it meets data qubits from the most recently
///    prepared to the oldest, so output blocks interact with it before
///    input blocks ("leakage-order"). Data qubits prepared in one
///    uninterrupted run of preparations count as equally old.
/// Violations are returned in location order; empty means ok.
std::vector<ScheduleViolation> check_schedule(const Circuit& circuit);

/// check_schedule plus gadget bookkeeping: groups are odd-sized and refer to
/// measurements, corrections refer to existing blocks and groups.
std::vector<ScheduleViolation> check_schedule(const Gadget& gadget);

}  // namespace biasft
