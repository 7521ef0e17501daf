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

#include "biasft/noise_model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace biasft {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(p));
  }
}

constexpr std::uint64_t kZzCounter = std::uint64_t{1} << 40;

}  // namespace

std::string_view to_string(Species s) { return s == Species::A ? "A" : "B"; }

std::string_view to_string(OperationKind k) {
  switch (k) {
    case OperationKind::PrepPlus: return "prep";
    case OperationKind::Cphase: return "cphase";
    case OperationKind::MeasureX: return "measx";
  }
  return "?";
}

std::string_view to_string(FaultKind f) {
  switch (f) {
    case FaultKind::Z: return "Z";
    case FaultKind::X: return "X";
    case FaultKind::Y: return "Y";
    case FaultKind::Leak: return "L";
    case FaultKind::MeasFlip: return "F";
  }
  return "?";
}

Species parse_species(std::string_view text) {
  if (text == "A" || text == "a") return Species::A;
  if (text == "B" || text == "b") return Species::B;
  throw std::invalid_argument("unknown species '" + std::string(text) + "'");
}

OperationKind parse_operation_kind(std::string_view text) {
  if (text == "prep" || text == "PrepPlus" || text == "PREP") return OperationKind::PrepPlus;
  if (text == "cphase" || text == "Cphase" || text == "CZ") return OperationKind::Cphase;
  if (text == "measx" || text == "MeasureX" || text == "MEASX") return OperationKind::MeasureX;
  throw std::invalid_argument("unknown operation '" + std::string(text) + "'");
}

void ErrorRateTable::set(OperationKind kind, Species species, const Rates& rates) {
  check_probability(rates.eps, "eps");
  check_probability(rates.eps_other, "eps_other");
  check_probability(rates.eps_leak, "eps_leak");
  if (rates.total() > 1.0 + 1e-12) {
    throw std::invalid_argument("eps + eps_other + eps_leak exceeds 1 for " +
                                std::string(to_string(kind)) + "(" +
                                std::string(to_string(species)) + ")");
  }
  entries_[index(kind, species)] = rates;
}

void ErrorRateTable::set_cphase_zz(double p) {
  check_probability(p, "eps_zz");
  cphase_zz_ = p;
}

double ErrorRateTable::bias(OperationKind kind, Species species) const {
  const Rates& r = at(kind, species);
  if (r.eps_other == 0.0) return std::numeric_limits<double>::infinity();
  return r.eps / r.eps_other;
}

bool ErrorRateTable::all_zero() const {
  for (const Rates& r : entries_) {
    if (r.total() != 0.0) return false;
  }
  return cphase_zz_ == 0.0;
}

ErrorRateTable default_rates() {
  ErrorRateTable t;
  t.set(OperationKind::Cphase, Species::A, {1.96e-3, 3.5e-6, 3.5e-6});
  t.set(OperationKind::Cphase, Species::B, {4.6e-3, 3.5e-6, 3.5e-6});
  t.set(OperationKind::PrepPlus, Species::A, {2.75e-3, 3.5e-7, 3.77e-7});
  t.set(OperationKind::PrepPlus, Species::B, {2.75e-3, 3.5e-7, 1.5e-5});
  t.set(OperationKind::MeasureX, Species::A, {1.83e-3, 0.0, 0.0});
  t.set(OperationKind::MeasureX, Species::B, {1.83e-3, 0.0, 0.0});
  return t;
}

ErrorRateTable zero_rates() { return ErrorRateTable{}; }

ErrorRateTable uniform_rates(double eps, double bias, double eps_leak) {
  if (!(bias > 0.0)) throw std::invalid_argument("bias must be positive");
  ErrorRateTable t;
  for (Species s : {Species::A, Species::B}) {
    t.set(OperationKind::Cphase, s, {eps, eps / bias, eps_leak});
    t.set(OperationKind::PrepPlus, s, {eps, eps / bias, eps_leak});
    t.set(OperationKind::MeasureX, s, {eps, 0.0, 0.0});
  }
  return t;
}

nlohmann::json to_json(const ErrorRateTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (OperationKind k : {OperationKind::PrepPlus, OperationKind::Cphase, OperationKind::MeasureX}) {
    for (Species s : {Species::A, Species::B}) {
      const Rates& r = table.at(k, s);
      entries.push_back({{"operation", to_string(k)},
                         {"species", to_string(s)},
                         {"eps", r.eps},
                         {"eps_other", r.eps_other},
                         {"eps_leak", r.eps_leak}});
    }
  }
  return {{"entries", entries}, {"eps_zz", table.cphase_zz()}};
}

ErrorRateTable rates_from_json(const nlohmann::json& doc) {
  const nlohmann::json* entries = &doc;
  ErrorRateTable table;
  if (doc.is_object()) {
    if (!doc.contains("entries")) throw std::invalid_argument("rate document has no 'entries'");
    entries = &doc.at("entries");
    if (doc.contains("eps_zz")) table.set_cphase_zz(doc.at("eps_zz").get<double>());
  }
  if (!entries->is_array()) throw std::invalid_argument("rate entries must be an array");
  for (const auto& e : *entries) {
    const auto kind = parse_operation_kind(e.at("operation").get<std::string>());
    const auto species = parse_species(e.at("species").get<std::string>());
    Rates r;
    r.eps = e.value("eps", 0.0);
    r.eps_other = e.value("eps_other", 0.0);
    r.eps_leak = e.value("eps_leak", 0.0);
    table.set(kind, species, r);
  }
  return table;
}

ErrorRateTable load_rates(const std::string& spec) {
  if (spec == "table1") return default_rates();
  if (spec == "zero") return zero_rates();
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot open rate table '" + spec + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("rate table '" + spec + "': " + e.what());
  }
  return rates_from_json(doc);
}

void sample_faults(const Location& location, const ErrorRateTable& rates,
                   const KeyedStream& trial, std::vector<FaultEvent>& out) {
  const KeyedStream stream = trial.child(location.location_id);
  switch (location.kind) {
    case OperationKind::PrepPlus: {
      const Rates& r = rates.at(OperationKind::PrepPlus, location.species[0]);
      if (r.total() == 0.0) return;
      const QubitId q = location.qubits[0];
      const double u = stream.uniform(q);
      if (u < r.eps) {
        out.push_back({location.location_id, q, FaultKind::Z});
      } else if (u < r.eps + r.eps_other) {
        // X acts trivially on |+>, so the non-phase error is realised as Y.
        out.push_back({location.location_id, q, FaultKind::Y});
      } else if (u < r.eps + r.eps_other + r.eps_leak) {
        out.push_back({location.location_id, q, FaultKind::Leak});
      }
      return;
    }
    case OperationKind::Cphase: {
      for (std::size_t i = 0; i < 2; ++i) {
        const Rates& r = rates.at(OperationKind::Cphase, location.species[i]);
        if (r.total() == 0.0) continue;
        const QubitId q = location.qubits[i];
        const double u = stream.uniform(q);
        const double half_other = 0.5 * r.eps_other;
        if (u < r.eps) {
          out.push_back({location.location_id, q, FaultKind::Z});
        } else if (u < r.eps + half_other) {
          out.push_back({location.location_id, q, FaultKind::X});
        } else if (u < r.eps + r.eps_other) {
          out.push_back({location.location_id, q, FaultKind::Y});
        } else if (u < r.eps + r.eps_other + r.eps_leak) {
          out.push_back({location.location_id, q, FaultKind::Leak});
        }
      }
      if (rates.cphase_zz() > 0.0 && stream.uniform(kZzCounter) < rates.cphase_zz()) {
        out.push_back({location.location_id, location.qubits[0], FaultKind::Z});
        out.push_back({location.location_id, location.qubits[1], FaultKind::Z});
      }
      return;
    }
    case OperationKind::MeasureX: {
      const Rates& r = rates.at(OperationKind::MeasureX, location.species[0]);
      if (r.eps == 0.0) return;
      const QubitId q = location.qubits[0];
      if (stream.uniform(q) < r.eps) {
        out.push_back({location.location_id, q, FaultKind::MeasFlip});
      }
      return;
    }
  }
}

std::vector<FaultEvent> sample_faults(const Location& location, const ErrorRateTable& rates,
                                      const KeyedStream& trial) {
  std::vector<FaultEvent> out;
  sample_faults(location, rates, trial, out);
  return out;
}

RatePair compose_rates(std::span<const RatePair> op_rates) {
  RatePair total;
  for (const RatePair& r : op_rates) {
    total.eps += r.eps;
    total.eps_other += r.eps_other;
  }
  return total;
}

}  // namespace biasft
