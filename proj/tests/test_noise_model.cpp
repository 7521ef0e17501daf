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
#include <map>
#include <vector>

#include "biasft/noise_model.hpp"

using namespace biasft;

namespace {

Location loc(OperationKind kind, Species s0, Species s1 = Species::A, std::size_t id = 0) {
  Location l;
  l.kind = kind;
  l.qubits = {0, 1};
  l.species = {s0, s1};
  l.location_id = id;
  return l;
}

double sigma(double p, double n) { return std::sqrt(p * (1 - p) / n); }

}  // namespace

TEST(DefaultRates, TableValues) {
  const auto t = default_rates();
  EXPECT_DOUBLE_EQ(t.at(OperationKind::Cphase, Species::A).eps, 1.96e-3);
  EXPECT_DOUBLE_EQ(t.at(OperationKind::Cphase, Species::B).eps, 4.6e-3);
  EXPECT_DOUBLE_EQ(t.at(OperationKind::PrepPlus, Species::B).eps_leak, 1.5e-5);
  EXPECT_DOUBLE_EQ(t.at(OperationKind::MeasureX, Species::A).eps, 1.83e-3);
  EXPECT_DOUBLE_EQ(t.cphase_zz(), 0.0);
  EXPECT_NEAR(t.bias(OperationKind::Cphase, Species::A), 560.0, 1e-9);
}

TEST(RateTable, RejectsInvalidProbabilities) {
  ErrorRateTable t;
  EXPECT_THROW(t.set(OperationKind::Cphase, Species::A, {-0.1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(t.set(OperationKind::Cphase, Species::A, {0.6, 0.5, 0}), std::invalid_argument);
  EXPECT_THROW(t.set_cphase_zz(1.5), std::invalid_argument);
  EXPECT_TRUE(zero_rates().all_zero());
  EXPECT_FALSE(default_rates().all_zero());
}

TEST(RateTable, JsonRoundTrip) {
  auto t = default_rates();
  t.set_cphase_zz(1e-4);
  EXPECT_EQ(rates_from_json(to_json(t)), t);
  EXPECT_EQ(load_rates("table1"), default_rates());
  EXPECT_EQ(load_rates("zero"), zero_rates());
  EXPECT_THROW(load_rates("/nonexistent/rates.json"), std::invalid_argument);
}

TEST(SampleFaults, ZeroRatesGiveNothing) {
  const KeyedStream s(7);
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    EXPECT_TRUE(sample_faults(loc(OperationKind::Cphase, Species::A, Species::B), zero_rates(), s.child(trial)).empty());
  }
}

TEST(SampleFaults, CertainLeak) {
  ErrorRateTable t;
  t.set(OperationKind::PrepPlus, Species::B, {0, 0, 1});
  const auto f = sample_faults(loc(OperationKind::PrepPlus, Species::B), t, KeyedStream(3));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].error, FaultKind::Leak);
}

TEST(SampleFaults, CphaseFrequenciesMatchTable) {
  const auto t = default_rates();
  const double n = 1e6;
  const KeyedStream s(11);
  std::map<FaultKind, double> a;
  std::map<FaultKind, double> b;
  const auto l = loc(OperationKind::Cphase, Species::A, Species::B, 5);
  std::vector<FaultEvent> buf;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) {
    buf.clear();
    sample_faults(l, t, s.child(i), buf);
    for (const auto& f : buf) (f.qubit == 0 ? a : b)[f.error] += 1;
  }
  const Rates ra = t.at(OperationKind::Cphase, Species::A);
  const Rates rb = t.at(OperationKind::Cphase, Species::B);
  EXPECT_NEAR(a[FaultKind::Z] / n, ra.eps, 3 * sigma(ra.eps, n));
  EXPECT_NEAR(b[FaultKind::Z] / n, rb.eps, 4 * sigma(rb.eps, n));
  EXPECT_NEAR((a[FaultKind::X] + a[FaultKind::Y]) / n, ra.eps_other, 4 * sigma(ra.eps_other, n));
  EXPECT_NEAR(a[FaultKind::Leak] / n, ra.eps_leak, 4 * sigma(ra.eps_leak, n));
  EXPECT_NEAR(b[FaultKind::Leak] / n, rb.eps_leak, 4 * sigma(rb.eps_leak, n));
}

TEST(SampleFaults, UniformTableEveryClass) {
  // Larger rates so every class is resolved at the 4 sigma level.
  const auto t = uniform_rates(0.02, 4.0, 0.01);
  const double n = 1e6;
  const KeyedStream s(12);
  std::map<FaultKind, double> prep;
  std::map<FaultKind, double> cz;
  double flips = 0;
  std::vector<FaultEvent> buf;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) {
    const KeyedStream trial = s.child(i);
    buf.clear();
    sample_faults(loc(OperationKind::PrepPlus, Species::A, Species::A, 0), t, trial, buf);
    EXPECT_LE(buf.size(), 1u);
    for (const auto& f : buf) prep[f.error] += 1;
    buf.clear();
    sample_faults(loc(OperationKind::Cphase, Species::A, Species::B, 1), t, trial, buf);
    for (const auto& f : buf) {
      if (f.qubit == 0) cz[f.error] += 1;
    }
    buf.clear();
    sample_faults(loc(OperationKind::MeasureX, Species::B, Species::A, 2), t, trial, buf);
    flips += static_cast<double>(buf.size());
  }
  const double eps = 0.02;
  const double other = 0.005;
  const double leak = 0.01;
  EXPECT_NEAR(prep[FaultKind::Z] / n, eps, 4 * sigma(eps, n));
  EXPECT_NEAR(prep[FaultKind::Y] / n, other, 4 * sigma(other, n));
  EXPECT_EQ(prep[FaultKind::X], 0.0);
  EXPECT_NEAR(prep[FaultKind::Leak] / n, leak, 4 * sigma(leak, n));
  EXPECT_NEAR(cz[FaultKind::Z] / n, eps, 4 * sigma(eps, n));
  EXPECT_NEAR(cz[FaultKind::X] / n, other / 2, 4 * sigma(other / 2, n));
  EXPECT_NEAR(cz[FaultKind::Y] / n, other / 2, 4 * sigma(other / 2, n));
  EXPECT_NEAR(cz[FaultKind::Leak] / n, leak, 4 * sigma(leak, n));
  EXPECT_NEAR(flips / n, eps, 4 * sigma(eps, n));
}

TEST(SampleFaults, CorrelatedZz) {
  ErrorRateTable t;
  t.set_cphase_zz(1.0);
  const auto f = sample_faults(loc(OperationKind::Cphase, Species::A, Species::B), t, KeyedStream(1));
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].error, FaultKind::Z);
  EXPECT_EQ(f[1].error, FaultKind::Z);
  EXPECT_NE(f[0].qubit, f[1].qubit);
}

TEST(SampleFaults, DeterministicPerKey) {
  const auto t = uniform_rates(0.3, 2.0, 0.1);
  const KeyedStream s(99);
  const auto l = loc(OperationKind::Cphase, Species::A, Species::B, 17);
  for (std::uint64_t i = 0; i < 200; ++i) {
    EXPECT_EQ(sample_faults(l, t, s.child(i)), sample_faults(l, t, KeyedStream(99).child(i)));
  }
  // Order of evaluation does not matter.
  std::vector<std::vector<FaultEvent>> fwd;
  for (std::uint64_t i = 0; i < 50; ++i) fwd.push_back(sample_faults(l, t, s.child(i)));
  for (std::uint64_t i = 50; i-- > 0;) EXPECT_EQ(sample_faults(l, t, s.child(i)), fwd[i]);
}

TEST(ComposeRates, Examples) {
  const std::vector<RatePair> first{{0.0045, 0}, {0.004, 0}, {0.004, 0}};
  EXPECT_NEAR(compose_rates(first).eps, 0.0125, 1e-15);
  const std::vector<RatePair> second{{0.0045, 0}, {0.0045, 0}, {0.0045, 0}, {0.003, 0},
                                     {0.003, 0},  {0.002, 0},  {0.002, 0}};
  EXPECT_NEAR(compose_rates(second).eps, 0.0235, 1e-15);
  EXPECT_EQ(compose_rates({}).eps, 0.0);
  EXPECT_EQ(compose_rates({}).eps_other, 0.0);
  const std::vector<RatePair> mixed{{0.001, 1e-6}, {0.002, 2e-6}};
  EXPECT_NEAR(compose_rates(mixed).eps_other, 3e-6, 1e-18);
}
