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

#include "biasft/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "biasft/decoder.hpp"

namespace biasft {

namespace {

struct Outcome {
  double p = 0.0;
  FaultKind kind = FaultKind::Z;
  bool both = false;  // correlated ZZ on both CPHASE operands
};

struct Site {
  std::size_t location = 0;
  QubitId q0 = 0;
  QubitId q1 = 0;
  double total = 0.0;
  std::vector<Outcome> outcomes;
};

void add_site(std::vector<Site>& sites, Site s) {
  std::erase_if(s.outcomes, [](const Outcome& o) { return o.p <= 0.0; });
  if (s.outcomes.empty()) return;
  s.total = 0.0;
  for (const Outcome& o : s.outcomes) s.total += o.p;
  if (s.total >= 1.0) throw std::invalid_argument("oracle needs every fault site below certainty");
  sites.push_back(std::move(s));
}

std::vector<Site> enumerate_sites(const Circuit& circuit, const ErrorRateTable& rates) {
  std::vector<Site> sites;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Location loc = circuit.location(i);
    switch (loc.kind) {
      case OperationKind::PrepPlus: {
        const Rates& r = rates.at(loc.kind, loc.species[0]);
        add_site(sites, {i, loc.qubits[0], 0, 0.0,
                         {{r.eps, FaultKind::Z}, {r.eps_other, FaultKind::Y}, {r.eps_leak, FaultKind::Leak}}});
        break;
      }
      case OperationKind::Cphase:
        for (std::size_t j = 0; j < 2; ++j) {
          const Rates& r = rates.at(loc.kind, loc.species[j]);
          add_site(sites, {i, loc.qubits[j], 0, 0.0,
                           {{r.eps, FaultKind::Z},
                            {0.5 * r.eps_other, FaultKind::X},
                            {0.5 * r.eps_other, FaultKind::Y},
                            {r.eps_leak, FaultKind::Leak}}});
        }
        add_site(sites, {i, loc.qubits[0], loc.qubits[1], 0.0, {{rates.cphase_zz(), FaultKind::Z, true}}});
        break;
      case OperationKind::MeasureX: {
        const Rates& r = rates.at(loc.kind, loc.species[0]);
        add_site(sites, {i, loc.qubits[0], 0, 0.0, {{r.eps, FaultKind::MeasFlip}}});
        break;
      }
    }
  }
  return sites;
}

class Enumerator {
 public:
  Enumerator(const Gadget& gadget, std::vector<Site> sites, int max_weight,
             const OracleOptions& options)
      : gadget_(gadget),
        sites_(std::move(sites)),
        sim_(gadget.circuit, options.leak_policy),
        budget_(options.budget) {
    result_.max_weight = max_weight;
    result_.sites = sites_.size();
    const auto w = static_cast<std::size_t>(max_weight) + 1;
    result_.weight_probability.assign(w, 0.0);
    result_.z_by_weight.assign(w, 0.0);
    result_.x_by_weight.assign(w, 0.0);
    result_.z_patterns.assign(w, 0.0);
    result_.x_patterns.assign(w, 0.0);
    base_ = 1.0;
    for (const Site& s : sites_) base_ *= 1.0 - s.total;
  }

  OracleResult run() {
    recurse(0, base_);
    double covered = 0.0;
    for (double p : result_.weight_probability) covered += p;
    result_.tail = std::max(0.0, 1.0 - covered);
    return result_;
  }

 private:
  void recurse(std::size_t first, double prob) {
    evaluate(prob);
    if (chosen_.size() == static_cast<std::size_t>(result_.max_weight)) return;
    for (std::size_t s = first; s < sites_.size(); ++s) {
      const Site& site = sites_[s];
      for (const Outcome& o : site.outcomes) {
        chosen_.push_back({s, &o});
        recurse(s + 1, prob * o.p / (1.0 - site.total));
        chosen_.pop_back();
      }
    }
  }

  void fill(std::size_t location, std::vector<FaultEvent>& out) const {
    for (const auto& [s, o] : chosen_) {
      const Site& site = sites_[s];
      if (site.location != location) continue;
      out.push_back({location, site.q0, o->kind});
      if (o->both) out.push_back({location, site.q1, o->kind});
    }
  }

  void evaluate(double prob) {
    const std::size_t weight = chosen_.size();
    ++result_.patterns;
    result_.weight_probability[weight] += prob;

    std::size_t coins = 0;
    auto faults = [&](std::size_t i, std::vector<FaultEvent>& out) { fill(i, out); };
    sim_.run(faults, [&](std::size_t, std::uint64_t) {
      ++coins;
      return false;
    });
    if (coins > 24) throw std::runtime_error("oracle: too many leakage branches in one pattern");
    const std::uint64_t branches = std::uint64_t{1} << coins;
    runs_ += branches;
    if (runs_ > budget_) {
      throw std::runtime_error("oracle enumeration budget of " + std::to_string(budget_) +
                               " runs exceeded");
    }
    double z = 0.0;
    double x = 0.0;
    if (coins == 0) {
      const TrialResult r = classify(gadget_, sim_.outcomes(), sim_.frame());
      z = r.logical_z_error;
      x = r.logical_x_error || r.leaked_output;
    }
    for (std::uint64_t mask = 0; coins > 0 && mask < branches; ++mask) {
      std::size_t used = 0;
      sim_.run(faults, [&](std::size_t, std::uint64_t) { return ((mask >> used++) & 1) != 0; });
      const TrialResult r = classify(gadget_, sim_.outcomes(), sim_.frame());
      z += r.logical_z_error;
      x += r.logical_x_error || r.leaked_output;
    }
    z /= static_cast<double>(branches);
    x /= static_cast<double>(branches);
    result_.z_by_weight[weight] += prob * z;
    result_.x_by_weight[weight] += prob * x;
    result_.z_patterns[weight] += z;
    result_.x_patterns[weight] += x;
  }

  const Gadget& gadget_;
  std::vector<Site> sites_;
  FrameSimulator sim_;
  std::uint64_t budget_;
  std::uint64_t runs_ = 0;
  double base_ = 1.0;
  std::vector<std::pair<std::size_t, const Outcome*>> chosen_;
  OracleResult result_;
};

}  // namespace

double OracleResult::eps_L() const {
  return std::accumulate(z_by_weight.begin(), z_by_weight.end(), 0.0);
}

double OracleResult::epsp_L() const {
  return std::accumulate(x_by_weight.begin(), x_by_weight.end(), 0.0);
}

OracleResult brute_force_oracle(const Gadget& gadget, const ErrorRateTable& rates, int max_weight,
                                const OracleOptions& options) {
  if (max_weight < 0) throw std::invalid_argument("fault weight must be >= 0");
  Enumerator e(gadget, enumerate_sites(gadget.circuit, rates), max_weight, options);
  return e.run();
}

}  // namespace biasft
