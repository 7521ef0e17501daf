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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "biasft/bounds.hpp"
#include "biasft/decoder.hpp"
#include "biasft/gadgets.hpp"
#include "biasft/oracle.hpp"

using namespace biasft;

namespace {

std::vector<std::uint8_t> bits(std::initializer_list<int> v) {
  std::vector<std::uint8_t> out;
  for (int b : v) out.push_back(static_cast<std::uint8_t>(b));
  return out;
}

std::size_t prep_of(const Circuit& c, QubitId q) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].kind == OperationKind::PrepPlus && c[i].q0 == q) return i;
  }
  return c.size();
}

// X on a fresh |+> is trivial, so X faults go after the last gate on q.
std::size_t last_touch(const Circuit& c, QubitId q) {
  std::size_t last = c.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool two = c[i].kind == OperationKind::Cphase;
    if (c[i].q0 == q || (two && c[i].q1 == q)) last = i;
  }
  return last;
}

TrialResult forced(const Gadget& g, const std::vector<FaultEvent>& f) {
  const auto r = run_with_faults(g.circuit, f);
  return classify(g, r.outcomes, r.frame);
}

}  // namespace

TEST(Majority, Examples) {
  EXPECT_TRUE(majority(bits({1, 1, 0})));
  EXPECT_FALSE(majority(bits({0})));
  EXPECT_FALSE(majority(bits({1, 0, 0, 0, 1})));
  EXPECT_TRUE(majority(bits({1})));
  EXPECT_THROW(majority(bits({1, 0})), std::invalid_argument);
  EXPECT_THROW(majority(bits({})), std::invalid_argument);
}

TEST(RunTrial, ZeroRatesClean) {
  for (const Gadget& g : {build_teleport_identity(3, 3), build_logical_cnot(3, 3)}) {
    for (std::uint64_t t = 0; t < 20; ++t) EXPECT_EQ(run_trial(g, zero_rates(), 1, t), TrialResult{});
  }
}

TEST(RunTrial, HalfBlockOfZIsLogicalZ) {
  for (const Gadget& g : {build_teleport_identity(3, 3), build_logical_cnot(3, 3)}) {
    for (const auto& block : g.blocks) {
      if (block.role != BlockRole::Output) continue;
      std::vector<FaultEvent> f;
      for (int j = 0; j < 2; ++j) f.push_back({prep_of(g.circuit, block.qubits[j]), block.qubits[j], FaultKind::Z});
      const auto t = forced(g, f);
      EXPECT_TRUE(t.logical_z_error) << g.name << " " << block.name;
      EXPECT_FALSE(t.logical_x_error);
    }
  }
}

TEST(RunTrial, SingleXIsLogicalX) {
  for (const Gadget& g : {build_teleport_identity(3, 3), build_logical_cnot(3, 3),
                          build_logical_cnot(3, 3, {true})}) {
    for (const auto& block : g.blocks) {
      if (block.role != BlockRole::Output) continue;
      for (QubitId q : block.qubits) {
        const auto t = forced(g, {{last_touch(g.circuit, q), q, FaultKind::Y}});
        EXPECT_TRUE(t.logical_x_error) << g.name << " " << block.name << " qubit " << q;
      }
    }
  }
}

TEST(RunTrial, LeakedOutputFlagged) {
  const Gadget g = build_teleport_identity(3, 1);
  const QubitId q = g.blocks[1].qubits[0];
  const auto t = forced(g, {{prep_of(g.circuit, q), q, FaultKind::Leak}});
  EXPECT_TRUE(t.leaked_output);
}

TEST(RunTrial, EvenGroupRejected) {
  Gadget g = build_teleport_identity(3, 3);
  g.groups[0].measurements.pop_back();
  EXPECT_THROW(run_trial(g, zero_rates(), 0, 0), std::invalid_argument);
  EXPECT_THROW(estimate_logical_rates(g, zero_rates(), 10, 0), std::invalid_argument);
}

TEST(Estimate, ZeroRatesExactlyZero) {
  const auto r = estimate_logical_rates(build_teleport_identity(3, 3), zero_rates(), 10'000, 5);
  EXPECT_EQ(r.eps_L.mean, 0.0);
  EXPECT_EQ(r.epsp_L.mean, 0.0);
  EXPECT_EQ(r.eps_L.trials, 10'000u);
  EXPECT_THROW(estimate_logical_rates(build_teleport_identity(3, 3), zero_rates(), 0, 5),
               std::invalid_argument);
}

TEST(Estimate, StdErrorFormula) {
  const auto e = RateEstimate::from_count(25, 100, 3);
  EXPECT_DOUBLE_EQ(e.mean, 0.25);
  EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(0.25 * 0.75 / 100));
  EXPECT_EQ(e.seed, 3u);
}

TEST(Estimate, ReadoutFlipMajority) {
  // Flips on the transversal readout pick the wrong Z-bar correction.
  const double p = 0.01;
  ErrorRateTable t;
  t.set(OperationKind::MeasureX, Species::A, {p, 0, 0});
  const Gadget g = build_teleport_identity(3, 1);
  const double exact = 3 * p * p - 2 * p * p * p;
  const auto oracle = brute_force_oracle(g, t, 3);
  EXPECT_NEAR(oracle.eps_L(), exact, 1e-15);
  EXPECT_NEAR(oracle.tail, 0.0, 1e-12);
  const auto r = estimate_logical_rates(g, t, 1'000'000, 17);
  EXPECT_NEAR(r.eps_L.mean, exact, 3 * r.eps_L.std_error);
  EXPECT_EQ(r.epsp_L.mean, 0.0);
}

TEST(Estimate, WorkerCountInvariant) {
  const Gadget g = build_logical_cnot(3, 3);
  const auto a = estimate_logical_rates(g, default_rates(), 30'000, 9, {1});
  const auto b = estimate_logical_rates(g, default_rates(), 30'000, 9, {3});
  EXPECT_EQ(a.z_failures, b.z_failures);
  EXPECT_EQ(a.x_failures, b.x_failures);
  EXPECT_EQ(a.leaked_outputs, b.leaked_outputs);
  const auto c = estimate_logical_rates(g, default_rates(), 30'000, 10, {1});
  EXPECT_NE(a.z_failures + 1000 * a.x_failures, c.z_failures + 1000 * c.x_failures);
}

TEST(Estimate, MonotoneInEachRate) {
  const Gadget g = build_teleport_identity(3, 3);
  const auto base = uniform_rates(4e-3, 50.0, 1e-4);
  const std::uint64_t trials = 200'000;
  const auto b = estimate_logical_rates(g, base, trials, 21);
  for (auto kind : {OperationKind::PrepPlus, OperationKind::Cphase, OperationKind::MeasureX}) {
    for (auto sp : {Species::A, Species::B}) {
      for (int which = 0; which < 3; ++which) {
        if (kind == OperationKind::MeasureX && which > 0) continue;
        ErrorRateTable t = base;
        Rates r = t.at(kind, sp);
        (which == 0 ? r.eps : which == 1 ? r.eps_other : r.eps_leak) *= 4;
        t.set(kind, sp, r);
        const auto h = estimate_logical_rates(g, t, trials, 21);
        const double tol_z = 3 * std::hypot(b.eps_L.std_error, h.eps_L.std_error);
        const double tol_x = 3 * std::hypot(b.epsp_L.std_error, h.epsp_L.std_error);
        EXPECT_GE(h.eps_L.mean, b.eps_L.mean - tol_z) << to_string(kind) << to_string(sp) << which;
        EXPECT_GE(h.epsp_L.mean, b.epsp_L.mean - tol_x) << to_string(kind) << to_string(sp) << which;
      }
    }
  }
}

TEST(Estimate, CnotFiveSevenBelowBound) {
  const auto bound = cnot_bound(GadgetParams{5, 7, 3.0}, default_rates());
  const auto r = estimate_logical_rates(build_logical_cnot(5, 7), default_rates(), 1'000'000, 1);
  EXPECT_LE(r.eps_L.mean, bound.eps_L);
  EXPECT_LE(r.epsp_L.mean, bound.epsp_L);
  EXPECT_GT(r.eps_L.mean, 0.0);
}

TEST(Estimate, BoundDominatesSimulationGrid) {
  const auto rates = default_rates();
  for (int n : {1, 3, 5}) {
    for (int k : {1, 3, 5}) {
      const auto bound = cnot_bound(GadgetParams{n, k, 3.0}, rates);
      const auto r = estimate_logical_rates(build_logical_cnot(n, k), rates, 100'000, 7);
      EXPECT_LE(r.eps_L.mean, bound.eps_L + 3 * r.eps_L.std_error) << n << "," << k;
      EXPECT_LE(r.epsp_L.mean, bound.epsp_L + 3 * r.epsp_L.std_error) << n << "," << k;
    }
  }
}
