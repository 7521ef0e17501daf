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

#include "biasft/circuit.hpp"
#include "biasft/noise_model.hpp"

namespace biasft {

/// C(n, r) as a double.
double binomial(int n, int r);

/// Phase-type logical error of an n-qubit repetition block whose qubits
/// each see t locations with phase rate eps: C(n, (n+1)/2) (t eps)^((n+1)/2).
/// Requires odd n and t eps <= 1.
double eq1_logical_phase(int n, double t, double eps);

/// Other-type logical error: any single non-phase error is fatal, n t eps'.
double eq2_logical_other(int n, double t, double eps_other);

/// Uniform operating point: phase rate eps, other rate eps / bias, t = c k.
struct BiasPoint {
  double eps = 0.0;
  double bias = 1.0;
  double c = 3.0;
  int n = 1;
  int k = 1;
  double eps_leak = 0.0;

  [[nodiscard]] double eps_other() const { return eps / bias; }
  [[nodiscard]] double t() const { return c * k; }
};

struct BoundReport {
  double eps_L = 0.0;
  double epsp_L = 0.0;
  double total = 0.0;
};

/// Shorthand bound: eps_L from eq1 and eps'_L = eq2 + n t eps_leak.
BoundReport cnot_bound(const BiasPoint& point);

enum class Accounting {
  /// Four data blocks, each qubit with t = c k CPHASE locations, plus the
  /// two repeated parity measurements (on 2n and 3n qubits) decoded by
  /// majority over k ancillas.
  Blocks,
  /// Per-qubit sums over the locations of the constructed CNOT circuit.
  Locations,
};

/// Logical CNOT bound from a per-operation, per-species table.
///
/// Blocks accounting, with h = (n+1)/2, hk = (k+1)/2, t = c k:
///   eps_L  = 4 C(n,h) (t eps_cz,A)^h + sum_{m=2,3} k (leak_prep,B + m n leak_cz,B)
///   eps'_L = 4 n t (eps'_cz,A + leak_cz,A) + sum_{m=2,3} C(k,hk) p_m^hk
/// where p_m is the total fault probability of one ancilla coupled to m n
/// data qubits (preparation, CPHASEs and readout). A leaked ancilla
/// dephases the data it meets afterwards; a wrong parity majority puts a
/// wrong X-bar correction on the outputs.
BoundReport cnot_bound(const GadgetParams& params, const ErrorRateTable& rates,
                       Accounting accounting = Accounting::Blocks);

enum class NkConstraint { Equal, Free };

struct NkChoice {
  int n = 1;
  int k = 1;
  BoundReport bound;
};

/// Exhaustive search over odd n, k <= n_max minimising max(eps_L, eps'_L),
/// ties broken by total, then by smaller n and k.
NkChoice optimize_nk(const ErrorRateTable& rates, double c, int n_max, NkConstraint constraint);

/// Same search on the uniform table with phase rate eps and other rate
/// eps / bias on every operation.
NkChoice optimize_nk(double eps, double bias, double c, int n_max, NkConstraint constraint);

}  // namespace biasft
