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

#include "biasft/decoder.hpp"
#include "biasft/gadgets.hpp"
#include "biasft/oracle.hpp"

using namespace biasft;

TEST(Oracle, WeightZeroIsZero) {
  for (const Gadget& g : {build_teleport_identity(3, 3), build_logical_cnot(3, 1)}) {
    const auto r = brute_force_oracle(g, default_rates(), 0);
    EXPECT_EQ(r.eps_L(), 0.0);
    EXPECT_EQ(r.epsp_L(), 0.0);
    EXPECT_EQ(r.patterns, 1u);
    EXPECT_GT(r.tail, 0.0);
  }
}

TEST(Oracle, AncillaFaultsQuadraticCoefficient) {
  const double p = 1e-3;
  ErrorRateTable t;
  t.set(OperationKind::PrepPlus, Species::B, {p, 0, 0});
  const Gadget g = build_teleport_identity(3, 3);
  const auto w2 = brute_force_oracle(g, t, 2);
  EXPECT_EQ(w2.sites, 3u);
  EXPECT_DOUBLE_EQ(w2.x_patterns[1], 0.0);
  EXPECT_DOUBLE_EQ(w2.x_patterns[2], 3.0);
  EXPECT_DOUBLE_EQ(w2.z_patterns[2], 0.0);
  const auto w3 = brute_force_oracle(g, t, 3);
  EXPECT_NEAR(w3.epsp_L(), 3 * p * p * (1 - p) + p * p * p, 1e-18);
  EXPECT_NEAR(w3.tail, 0.0, 1e-12);
}

TEST(Oracle, PrepZLinearCoefficient) {
  const double p = 1e-2;
  ErrorRateTable t;
  t.set(OperationKind::PrepPlus, Species::A, {p, 0, 0});
  t.set(OperationKind::PrepPlus, Species::B, {p, 0, 0});
  const Gadget g = build_teleport_identity(3, 1);
  const auto o = brute_force_oracle(g, t, 3);
  // A single data Z is corrected; the lone parity ancilla is not.
  EXPECT_DOUBLE_EQ(o.z_patterns[1], 0.0);
  EXPECT_DOUBLE_EQ(o.x_patterns[1], 1.0);
  const auto mc = estimate_logical_rates(g, t, 400'000, 3);
  EXPECT_NEAR(mc.epsp_L.mean, o.epsp_L() + o.tail / 2, 3 * mc.epsp_L.std_error + o.tail / 2);
  EXPECT_NEAR(mc.eps_L.mean, o.eps_L() + o.tail / 2, 3 * mc.eps_L.std_error + o.tail / 2);
}

TEST(Oracle, WeightProbabilitiesSumToOne) {
  const Gadget g = build_teleport_identity(1, 1);
  const auto o = brute_force_oracle(g, uniform_rates(0.05, 5.0, 0.01), 30);
  double s = 0;
  for (double p : o.weight_probability) s += p;
  EXPECT_NEAR(s, 1.0, 1e-12);
  EXPECT_NEAR(o.tail, 0.0, 1e-12);
}

TEST(Oracle, ExactAgreesWithMonteCarloWithLeakage) {
  const Gadget g = build_teleport_identity(1, 1);
  const auto rates = uniform_rates(0.05, 5.0, 0.01);
  const auto o = brute_force_oracle(g, rates, 30);
  const auto mc = estimate_logical_rates(g, rates, 400'000, 8);
  EXPECT_NEAR(mc.eps_L.mean, o.eps_L(), 3 * mc.eps_L.std_error);
  EXPECT_NEAR(mc.epsp_L.mean, o.epsp_L(), 3 * mc.epsp_L.std_error);
}

TEST(Oracle, Errors) {
  ErrorRateTable certain;
  certain.set(OperationKind::PrepPlus, Species::A, {1.0, 0, 0});
  EXPECT_THROW(brute_force_oracle(build_teleport_identity(1, 1), certain, 1), std::invalid_argument);
  OracleOptions tiny;
  tiny.budget = 10;
  EXPECT_THROW(brute_force_oracle(build_logical_cnot(3, 3), default_rates(), 2, tiny), std::runtime_error);
}
