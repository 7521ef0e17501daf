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

#include "biasft/circuit.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace biasft {

QubitId Circuit::add_qubit(Species species, Role role) {
  qubits_.push_back({species, role});
  return static_cast<QubitId>(qubits_.size() - 1);
}

std::size_t Circuit::prep(QubitId q) {
  return append({OperationKind::PrepPlus, q, q, 0.0});
}

std::size_t Circuit::cz(QubitId a, QubitId b) {
  return append({OperationKind::Cphase, a, b, 0.0});
}

std::size_t Circuit::measure_x(QubitId q, double angle) {
  return append({OperationKind::MeasureX, q, q, angle});
}

std::size_t Circuit::append(const Operation& op) {
  ops_.push_back(op);
  return ops_.size() - 1;
}

void Circuit::annotate(std::string text) {
  annotations_.push_back({ops_.size(), std::move(text)});
}

Location Circuit::location(std::size_t i) const {
  const Operation& op = ops_.at(i);
  Location loc;
  loc.kind = op.kind;
  loc.location_id = i;
  loc.qubits = {op.q0, op.kind == OperationKind::Cphase ? op.q1 : op.q0};
  loc.species = {qubits_.at(loc.qubits[0]).species, qubits_.at(loc.qubits[1]).species};
  return loc;
}

std::optional<CircuitDefect> find_defect(const Circuit& circuit) {
  enum class Life : std::uint8_t { Untouched, Live, Measured };
  std::vector<Life> life(circuit.num_qubits(), Life::Untouched);
  const auto n = static_cast<QubitId>(circuit.num_qubits());
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Operation& op = circuit[i];
    auto bad = [&](std::string msg) { return CircuitDefect{i, std::move(msg)}; };
    if (op.q0 >= n || (op.kind == OperationKind::Cphase && op.q1 >= n)) {
      return bad("qubit index out of range");
    }
    switch (op.kind) {
      case OperationKind::PrepPlus:
        if (life[op.q0] == Life::Live) return bad("preparation of live qubit " + std::to_string(op.q0));
        life[op.q0] = Life::Live;
        break;
      case OperationKind::Cphase:
        if (op.q0 == op.q1) return bad("CPHASE on a single qubit " + std::to_string(op.q0));
        for (QubitId q : {op.q0, op.q1}) {
          if (life[q] == Life::Measured) return bad("qubit " + std::to_string(q) + " used after measurement");
          life[q] = Life::Live;
        }
        break;
      case OperationKind::MeasureX:
        if (life[op.q0] == Life::Measured) {
          return bad("qubit " + std::to_string(op.q0) + " measured twice");
        }
        life[op.q0] = Life::Measured;
        break;
    }
  }
  return std::nullopt;
}

void require_well_formed(const Circuit& circuit) {
  if (auto defect = find_defect(circuit)) {
    throw std::invalid_argument("malformed circuit at location " +
                                std::to_string(defect->location) + ": " + defect->message);
  }
}

std::string_view to_string(BlockRole r) {
  switch (r) {
    case BlockRole::Input: return "input";
    case BlockRole::Intermediate: return "intermediate";
    case BlockRole::Output: return "output";
  }
  return "?";
}

std::optional<std::size_t> Gadget::find_block(std::string_view block_name) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].name == block_name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Gadget::find_group(std::string_view group_name) const {
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].name == group_name) return i;
  }
  return std::nullopt;
}

void write_text(std::ostream& out, const Gadget& gadget) {
  const Circuit& c = gadget.circuit;
  out << "# gadget " << gadget.name << " n=" << gadget.params.n << " k=" << gadget.params.k
      << "\n";
  for (std::size_t q = 0; q < c.num_qubits(); ++q) {
    out << "# qubit " << q << ' ' << to_string(c.qubits()[q].species) << ' '
        << (c.qubits()[q].role == Role::Data ? "data" : "ancilla") << '\n';
  }
  for (const Block& b : gadget.blocks) {
    out << "# block " << to_string(b.role) << ' ' << b.name;
    for (QubitId q : b.qubits) out << ' ' << q;
    out << '\n';
  }
  auto annotations = c.annotations();
  std::size_t next = 0;
  for (std::size_t i = 0; i <= c.size(); ++i) {
    while (next < annotations.size() && annotations[next].before == i) {
      out << "# " << annotations[next].text << '\n';
      ++next;
    }
    if (i == c.size()) break;
    const Operation& op = c[i];
    switch (op.kind) {
      case OperationKind::PrepPlus: out << "PREP " << op.q0; break;
      case OperationKind::Cphase: out << "CZ " << op.q0 << ' ' << op.q1; break;
      case OperationKind::MeasureX:
        out << "MEASX " << op.q0;
        if (op.angle != 0.0) out << ' ' << std::setprecision(17) << op.angle;
        break;
    }
    out << '\n';
  }
  for (const MajorityGroup& g : gadget.groups) {
    out << "# group " << g.name;
    for (std::size_t m : g.measurements) out << ' ' << m;
    out << '\n';
  }
  for (const LogicalCorrection& corr : gadget.corrections) {
    out << "# correct " << gadget.blocks.at(corr.block).name << " X";
    for (std::size_t g : corr.x_groups) out << ' ' << gadget.groups.at(g).name;
    out << " Z";
    for (std::size_t g : corr.z_groups) out << ' ' << gadget.groups.at(g).name;
    out << '\n';
  }
}

std::string to_text(const Gadget& gadget) {
  std::ostringstream out;
  write_text(out, gadget);
  return out.str();
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(std::move(w));
  return words;
}

template <typename T>
T parse_number(const std::string& word, std::size_t line_no) {
  T value{};
  const auto* first = word.data();
  const auto* last = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + word + "'");
  }
  return value;
}

}  // namespace

Gadget parse_text(std::istream& in) {
  Gadget gadget;
  gadget.name = "custom";
  Circuit& c = gadget.circuit;
  struct PendingCorrection {
    std::string block;
    std::vector<std::string> x, z;
    std::size_t line;
  };
  std::vector<PendingCorrection> pending;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
  };
  auto qubit = [&](const std::string& w) {
    const auto q = parse_number<QubitId>(w, line_no);
    if (q >= c.num_qubits()) fail("undeclared qubit " + w);
    return q;
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto words = split_words(line);
    if (words.empty()) continue;
    if (words[0][0] == '#') {
      if (words[0] != "#") words[0].erase(0, 1); else words.erase(words.begin());
      if (words.empty()) continue;
      const std::string& tag = words[0];
      if (tag == "qubit") {
        if (words.size() != 4) fail("expected '# qubit <id> <species> <role>'");
        if (parse_number<std::size_t>(words[1], line_no) != c.num_qubits()) {
          fail("qubits must be declared in order");
        }
        Role role = Role::Data;
        if (words[3] == "ancilla") role = Role::Ancilla;
        else if (words[3] != "data") fail("unknown role " + words[3]);
        c.add_qubit(parse_species(words[2]), role);
      } else if (tag == "block") {
        if (words.size() < 3) fail("expected '# block <role> <name> <qubits...>'");
        Block b;
        if (words[1] == "input") b.role = BlockRole::Input;
        else if (words[1] == "intermediate") b.role = BlockRole::Intermediate;
        else if (words[1] == "output") b.role = BlockRole::Output;
        else fail("unknown block role " + words[1]);
        b.name = words[2];
        for (std::size_t i = 3; i < words.size(); ++i) b.qubits.push_back(qubit(words[i]));
        gadget.blocks.push_back(std::move(b));
      } else if (tag == "group") {
        if (words.size() < 2) fail("expected '# group <name> <locations...>'");
        MajorityGroup g{words[1], {}};
        for (std::size_t i = 2; i < words.size(); ++i) {
          const auto loc = parse_number<std::size_t>(words[i], line_no);
          if (loc >= c.size() || c[loc].kind != OperationKind::MeasureX) {
            fail("group location " + words[i] + " is not a measurement");
          }
          g.measurements.push_back(loc);
        }
        gadget.groups.push_back(std::move(g));
      } else if (tag == "correct") {
        PendingCorrection p{words.size() > 1 ? words[1] : "", {}, {}, line_no};
        std::vector<std::string>* target = nullptr;
        for (std::size_t i = 2; i < words.size(); ++i) {
          if (words[i] == "X") target = &p.x;
          else if (words[i] == "Z") target = &p.z;
          else if (target) target->push_back(words[i]);
          else fail("expected X or Z in correction");
        }
        pending.push_back(std::move(p));
      } else if (tag == "gadget") {
        if (words.size() > 1) gadget.name = words[1];
        for (std::size_t i = 2; i < words.size(); ++i) {
          if (words[i].rfind("n=", 0) == 0) gadget.params.n = parse_number<int>(words[i].substr(2), line_no);
          if (words[i].rfind("k=", 0) == 0) gadget.params.k = parse_number<int>(words[i].substr(2), line_no);
        }
      } else {
        std::string text = words[0];
        for (std::size_t i = 1; i < words.size(); ++i) text += ' ' + words[i];
        c.annotate(std::move(text));
      }
      continue;
    }
    const std::string& op = words[0];
    if (op == "PREP") {
      if (words.size() != 2) fail("PREP takes one qubit");
      c.prep(qubit(words[1]));
    } else if (op == "CZ") {
      if (words.size() != 3) fail("CZ takes two qubits");
      c.cz(qubit(words[1]), qubit(words[2]));
    } else if (op == "MEASX") {
      if (words.size() != 2 && words.size() != 3) fail("MEASX takes a qubit and an optional angle");
      const QubitId q = qubit(words[1]);
      double angle = 0.0;
      if (words.size() == 3) {
        try {
          angle = std::stod(words[2]);
        } catch (const std::exception&) {
          fail("bad angle '" + words[2] + "'");
        }
      }
      c.measure_x(q, angle);
    } else {
      fail("unknown operation '" + op + "'");
    }
  }
  for (const PendingCorrection& p : pending) {
    line_no = p.line;
    LogicalCorrection corr;
    auto block = gadget.find_block(p.block);
    if (!block) fail("correction names unknown block '" + p.block + "'");
    corr.block = *block;
    for (const auto& name : p.x) {
      auto g = gadget.find_group(name);
      if (!g) fail("unknown group '" + name + "'");
      corr.x_groups.push_back(*g);
    }
    for (const auto& name : p.z) {
      auto g = gadget.find_group(name);
      if (!g) fail("unknown group '" + name + "'");
      corr.z_groups.push_back(*g);
    }
    gadget.corrections.push_back(std::move(corr));
  }
  return gadget;
}

Gadget parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_text(in);
}

}  // namespace biasft
