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

#include "biasft/gadgets.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace biasft {

void require_odd(int value, const char* what) {
  if (value < 1 || value % 2 == 0) {
    throw std::invalid_argument(std::string(what) + " must be an odd integer >= 1, got " +
                                std::to_string(value));
  }
}

MajorityGroup append_parity_measurement(Circuit& circuit,
                                        std::span<const std::vector<QubitId>> blocks, int k,
                                        std::string name) {
  require_odd(k, "k");
  std::vector<QubitId> seen;
  for (const auto& b : blocks) {
    for (QubitId q : b) {
      if (std::find(seen.begin(), seen.end(), q) != seen.end()) {
        throw std::invalid_argument("parity measurement blocks must be disjoint");
      }
      seen.push_back(q);
    }
  }
  MajorityGroup group{std::move(name), {}};
  for (int r = 0; r < k; ++r) {
    circuit.annotate("rep " + std::to_string(r) + " " + group.name);
    const QubitId anc = circuit.add_qubit(Species::B, Role::Ancilla);
    circuit.prep(anc);
    for (const auto& b : blocks) {
      for (QubitId q : b) circuit.cz(anc, q);
    }
    group.measurements.push_back(circuit.measure_x(anc));
  }
  return group;
}

MajorityGroup append_transversal_x(Circuit& circuit, const Block& block, std::string name) {
  circuit.annotate("transversal-x " + block.name);
  MajorityGroup group{std::move(name), {}};
  for (QubitId q : block.qubits) group.measurements.push_back(circuit.measure_x(q));
  return group;
}

namespace {

Block add_block(Circuit& circuit, std::string name, BlockRole role, int n) {
  Block b{std::move(name), role, {}};
  for (int i = 0; i < n; ++i) b.qubits.push_back(circuit.add_qubit(Species::A, Role::Data));
  return b;
}

void prepare_block(Circuit& circuit, const Block& block) {
  circuit.annotate("prepare " + block.name);
  for (QubitId q : block.qubits) circuit.prep(q);
}

std::size_t add_group(Gadget& g, MajorityGroup group) {
  g.groups.push_back(std::move(group));
  return g.groups.size() - 1;
}

// Appends a teleportation of blocks[from] onto blocks[to] (already allocated,
// not yet prepared). Returns the (zz, x) group indices.
std::pair<std::size_t, std::size_t> append_teleport(Gadget& g, std::size_t from, std::size_t to,
                                                    const std::string& tag) {
  prepare_block(g.circuit, g.blocks[to]);
  const std::vector<std::vector<QubitId>> parity{g.blocks[to].qubits, g.blocks[from].qubits};
  const auto zz = add_group(g, append_parity_measurement(g.circuit, parity, g.params.k, tag + "zz"));
  const auto x = add_group(g, append_transversal_x(g.circuit, g.blocks[from], tag + "x"));
  return {zz, x};
}

}  // namespace

Gadget build_parity_measurement(std::span<const int> block_sizes, int k) {
  require_odd(k, "k");
  Gadget g;
  g.name = "parity";
  g.params.k = k;
  std::vector<std::vector<QubitId>> parity;
  for (std::size_t i = 0; i < block_sizes.size(); ++i) {
    if (block_sizes[i] < 1) throw std::invalid_argument("block sizes must be positive");
    g.blocks.push_back(add_block(g.circuit, "b" + std::to_string(i), BlockRole::Input, block_sizes[i]));
    parity.push_back(g.blocks.back().qubits);
  }
  g.params.n = block_sizes.empty() ? 0 : block_sizes[0];
  add_group(g, append_parity_measurement(g.circuit, parity, k, "parity"));
  return g;
}

Gadget build_teleport_identity(int n, int k) {
  require_odd(n, "n");
  require_odd(k, "k");
  Gadget g;
  g.name = "teleport";
  g.params = {n, k, GadgetParams{}.c};
  g.blocks.push_back(add_block(g.circuit, "in", BlockRole::Input, n));
  g.blocks.push_back(add_block(g.circuit, "out", BlockRole::Output, n));
  const auto [zz, x] = append_teleport(g, 0, 1, "");
  g.corrections.push_back({1, {zz}, {x}});
  return g;
}

Gadget build_logical_cnot(int n, int k, CnotOptions options) {
  require_odd(n, "n");
  require_odd(k, "k");
  Gadget g;
  g.name = options.pre_teleport ? "cnot-teleported" : "cnot";
  g.params = {n, k, GadgetParams{}.c};
  Circuit& c = g.circuit;
  g.blocks.push_back(add_block(c, "C", BlockRole::Input, n));
  g.blocks.push_back(add_block(c, "T", BlockRole::Input, n));
  std::size_t ctrl = 0;
  std::size_t targ = 1;
  // Pending corrections on the gate inputs, as (x groups, z groups).
  std::vector<std::size_t> cx, cz_, tx, tz;
  if (options.pre_teleport) {
    g.blocks.push_back(add_block(c, "C1", BlockRole::Intermediate, n));
    g.blocks.push_back(add_block(c, "T1", BlockRole::Intermediate, n));
    const auto [czz, cxm] = append_teleport(g, 0, 2, "tC_");
    const auto [tzz, txm] = append_teleport(g, 1, 3, "tT_");
    cx = {czz};
    cz_ = {cxm};
    tx = {tzz};
    tz = {txm};
    ctrl = 2;
    targ = 3;
  }
  const std::size_t out_c = g.blocks.size();
  g.blocks.push_back(add_block(c, "C'", BlockRole::Output, n));
  const std::size_t out_t = g.blocks.size();
  g.blocks.push_back(add_block(c, "T'", BlockRole::Output, n));
  prepare_block(c, g.blocks[out_c]);
  prepare_block(c, g.blocks[out_t]);

  const std::vector<std::vector<QubitId>> first{g.blocks[out_c].qubits, g.blocks[ctrl].qubits};
  const auto m1 = add_group(g, append_parity_measurement(c, first, k, "m1"));
  const std::vector<std::vector<QubitId>> second{g.blocks[out_c].qubits, g.blocks[out_t].qubits,
                                                 g.blocks[targ].qubits};
  const auto m2 = add_group(g, append_parity_measurement(c, second, k, "m2"));
  const auto m3 = add_group(g, append_transversal_x(c, g.blocks[ctrl], "m3"));
  const auto m4 = add_group(g, append_transversal_x(c, g.blocks[targ], "m4"));

  // A pending X-bar on the control becomes X-bar X-bar on the outputs, a
  // pending Z-bar on the target becomes Z-bar Z-bar.
  LogicalCorrection on_c{out_c, {m1}, {m3, m4}};
  LogicalCorrection on_t{out_t, {m1, m2}, {m4}};
  on_c.x_groups.insert(on_c.x_groups.end(), cx.begin(), cx.end());
  on_t.x_groups.insert(on_t.x_groups.end(), cx.begin(), cx.end());
  on_c.z_groups.insert(on_c.z_groups.end(), cz_.begin(), cz_.end());
  on_t.x_groups.insert(on_t.x_groups.end(), tx.begin(), tx.end());
  on_c.z_groups.insert(on_c.z_groups.end(), tz.begin(), tz.end());
  on_t.z_groups.insert(on_t.z_groups.end(), tz.begin(), tz.end());
  g.corrections.push_back(std::move(on_c));
  g.corrections.push_back(std::move(on_t));
  return g;
}

Gadget build_gadget(std::string_view name, int n, int k, CnotOptions options) {
  if (name == "teleport") return build_teleport_identity(n, k);
  if (name == "cnot") return build_logical_cnot(n, k, options);
  throw std::invalid_argument("unknown gadget '" + std::string(name) + "'");
}

std::vector<ScheduleViolation> check_schedule(const Circuit& circuit) {
  std::vector<ScheduleViolation> out;
  if (auto defect = find_defect(circuit)) {
    out.push_back({defect->location, "malformed", defect->message});
    return out;
  }
  const auto qubits = circuit.qubits();
  std::vector<bool> reported(qubits.size(), false);
  // Generation of each data qubit: data preparations in one uninterrupted
  // run share a generation, inputs are older than anything prepared here.
  constexpr long kInput = -1;
  std::vector<long> prepared_at(qubits.size(), kInput);
  long generation = 0;
  // Age of the most recently met data qubit for each live ancilla.
  constexpr long kNone = std::numeric_limits<long>::max();
  std::vector<long> last_age(qubits.size(), kNone);

  auto check_role = [&](std::size_t loc, QubitId q) {
    const QubitInfo& info = qubits[q];
    const Species want = info.role == Role::Data ? Species::A : Species::B;
    if (info.species != want && !reported[q]) {
      reported[q] = true;
      out.push_back({loc, "role-species",
                     std::string(info.role == Role::Data ? "data" : "ancilla") + " qubit " +
                         std::to_string(q) + " has species " +
                         std::string(to_string(info.species))});
    }
  };

  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Operation& op = circuit[i];
    switch (op.kind) {
      case OperationKind::PrepPlus:
        check_role(i, op.q0);
        if (qubits[op.q0].role == Role::Data) {
          prepared_at[op.q0] = generation;
        } else {
          generation = static_cast<long>(i) + 1;
        }
        last_age[op.q0] = kNone;
        break;
      case OperationKind::MeasureX:
        check_role(i, op.q0);
        generation = static_cast<long>(i) + 1;
        break;
      case OperationKind::Cphase: {
        generation = static_cast<long>(i) + 1;
        check_role(i, op.q0);
        check_role(i, op.q1);
        const QubitInfo& a = qubits[op.q0];
        const QubitInfo& b = qubits[op.q1];
        if (a.species == b.species) {
          out.push_back({i, "species",
                         "CPHASE between two species-" + std::string(to_string(a.species)) +
                             " qubits " + std::to_string(op.q0) + " and " + std::to_string(op.q1)});
        }
        if (a.role == Role::Data && b.role == Role::Data) {
          out.push_back({i, "data-data",
                         "CPHASE between data qubits " + std::to_string(op.q0) + " and " +
                             std::to_string(op.q1)});
        } else if (a.role != b.role) {
          const QubitId anc = a.role == Role::Ancilla ? op.q0 : op.q1;
          const QubitId data = a.role == Role::Ancilla ? op.q1 : op.q0;
          const long age = prepared_at[data];
          if (last_age[anc] != kNone && age > last_age[anc]) {
            out.push_back({i, "leakage-order",
                           "ancilla " + std::to_string(anc) + " meets newer data qubit " +
                               std::to_string(data) + " after an older one"});
          }
          last_age[anc] = age;
        }
        break;
      }
    }
  }
  return out;
}

std::vector<ScheduleViolation> check_schedule(const Gadget& gadget) {
  auto out = check_schedule(gadget.circuit);
  const Circuit& c = gadget.circuit;
  for (const MajorityGroup& g : gadget.groups) {
    const std::size_t at = g.measurements.empty() ? 0 : g.measurements.front();
    if (g.measurements.size() % 2 == 0) {
      out.push_back({at, "majority", "group " + g.name + " has an even number of measurements"});
    }
    for (std::size_t m : g.measurements) {
      if (m >= c.size() || c[m].kind != OperationKind::MeasureX) {
        out.push_back({at, "majority", "group " + g.name + " refers to a non-measurement"});
      }
    }
  }
  for (const LogicalCorrection& corr : gadget.corrections) {
    bool ok = corr.block < gadget.blocks.size();
    for (std::size_t g : corr.x_groups) ok = ok && g < gadget.groups.size();
    for (std::size_t g : corr.z_groups) ok = ok && g < gadget.groups.size();
    if (!ok) out.push_back({c.size(), "correction", "correction refers to a missing block or group"});
  }
  std::stable_sort(out.begin(), out.end(), [](const ScheduleViolation& a, const ScheduleViolation& b) {
    return a.location < b.location;
  });
  return out;
}

}  // namespace biasft
