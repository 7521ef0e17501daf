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

#include "biasft/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "biasft/gadgets.hpp"

namespace biasft {

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return std::round(out);
}

double eq1_logical_phase(int n, double t, double eps) {
  require_odd(n, "n");
  if (t * eps > 1.0) throw std::invalid_argument("t * eps must be <= 1");
  const int h = (n + 1) / 2;
  return binomial(n, h) * std::pow(t * eps, h);
}

double eq2_logical_other(int n, double t, double eps_other) { return n * t * eps_other; }

BoundReport cnot_bound(const BiasPoint& point) {
  if (!(point.bias > 0.0)) throw std::invalid_argument("bias must be positive");
  require_odd(point.n, "n");
  require_odd(point.k, "k");
  BoundReport r;
  r.eps_L = eq1_logical_phase(point.n, point.t(), point.eps);
  r.epsp_L = eq2_logical_other(point.n, point.t(), point.eps_other()) +
             point.n * point.t() * point.eps_leak;
  r.total = r.eps_L + r.epsp_L;
  return r;
}

namespace {

BoundReport blocks_bound(const GadgetParams& p, const ErrorRateTable& rates) {
  const int n = p.n;
  const int k = p.k;
  const int h = (n + 1) / 2;
  const int hk = (k + 1) / 2;
  const double t = p.t();
  const Rates& cz_a = rates.at(OperationKind::Cphase, Species::A);
  const Rates& cz_b = rates.at(OperationKind::Cphase, Species::B);
  const Rates& prep_b = rates.at(OperationKind::PrepPlus, Species::B);
  const Rates& meas_b = rates.at(OperationKind::MeasureX, Species::B);

  BoundReport r;
  r.eps_L = 4.0 * binomial(n, h) * std::pow(t * cz_a.eps, h);
  r.epsp_L = 4.0 * n * t * (cz_a.eps_other + cz_a.eps_leak);
  for (int m : {2, 3}) {
    const double p_anc = prep_b.total() + m * n * cz_b.total() + meas_b.eps;
    r.epsp_L += binomial(k, hk) * std::pow(p_anc, hk);
    r.eps_L += k * (prep_b.eps_leak + m * n * cz_b.eps_leak);
  }
  r.total = r.eps_L + r.epsp_L;
  return r;
}

BoundReport locations_bound(const GadgetParams& p, const ErrorRateTable& rates) {
  const Gadget g = build_logical_cnot(p.n, p.k);
  const Circuit& c = g.circuit;
  const auto qubits = c.qubits();
  std::vector<double> phase(c.num_qubits(), 0.0);
  std::vector<double> other(c.num_qubits(), 0.0);
  std::vector<double> leak(c.num_qubits(), 0.0);
  std::vector<double> any(c.num_qubits(), 0.0);
  auto add = [&](QubitId q, const Rates& r, bool readout) {
    phase[q] += r.eps;
    if (readout) {
      any[q] += r.eps;
      return;
    }
    other[q] += r.eps_other;
    leak[q] += r.eps_leak;
    any[q] += r.total();
  };
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Operation& op = c[i];
    switch (op.kind) {
      case OperationKind::PrepPlus:
        add(op.q0, rates.at(op.kind, qubits[op.q0].species), false);
        break;
      case OperationKind::Cphase:
        add(op.q0, rates.at(op.kind, qubits[op.q0].species), false);
        add(op.q1, rates.at(op.kind, qubits[op.q1].species), false);
        phase[op.q0] += rates.cphase_zz();
        phase[op.q1] += rates.cphase_zz();
        any[op.q0] += rates.cphase_zz();
        any[op.q1] += rates.cphase_zz();
        break;
      case OperationKind::MeasureX:
        add(op.q0, rates.at(op.kind, qubits[op.q0].species), true);
        break;
    }
  }
  BoundReport r;
  const int h = (p.n + 1) / 2;
  for (const Block& b : g.blocks) {
    double worst = 0.0;
    for (QubitId q : b.qubits) {
      worst = std::max(worst, phase[q]);
      r.epsp_L += other[q] + leak[q];
    }
    r.eps_L += binomial(p.n, h) * std::pow(std::min(1.0, worst), h);
  }
  const int hk = (p.k + 1) / 2;
  for (const MajorityGroup& grp : g.groups) {
    const QubitId first = c[grp.measurements.front()].q0;
    if (qubits[first].role != Role::Ancilla) continue;
    double worst = 0.0;
    for (std::size_t m : grp.measurements) {
      const QubitId a = c[m].q0;
      worst = std::max(worst, any[a]);
      r.eps_L += leak[a];
    }
    r.epsp_L += binomial(p.k, hk) * std::pow(std::min(1.0, worst), hk);
  }
  r.total = r.eps_L + r.epsp_L;
  return r;
}

}  // namespace

BoundReport cnot_bound(const GadgetParams& params, const ErrorRateTable& rates,
                       Accounting accounting) {
  require_odd(params.n, "n");
  require_odd(params.k, "k");
  if (!(params.c > 0.0)) throw std::invalid_argument("c must be positive");
  return accounting == Accounting::Blocks ? blocks_bound(params, rates)
                                          : locations_bound(params, rates);
}

NkChoice optimize_nk(const ErrorRateTable& rates, double c, int n_max, NkConstraint constraint) {
  require_odd(n_max, "n_max");
  NkChoice best;
  bool have = false;
  auto key = [](const NkChoice& x) {
    return std::make_tuple(std::max(x.bound.eps_L, x.bound.epsp_L), x.bound.total, x.n, x.k);
  };
  for (int n = 1; n <= n_max; n += 2) {
    for (int k = 1; k <= n_max; k += 2) {
      if (constraint == NkConstraint::Equal && k != n) continue;
      NkChoice cand{n, k, cnot_bound(GadgetParams{n, k, c}, rates)};
      if (!have || key(cand) < key(best)) {
        best = cand;
        have = true;
      }
    }
  }
  return best;
}

NkChoice optimize_nk(double eps, double bias, double c, int n_max, NkConstraint constraint) {
  if (!(bias > 0.0)) throw std::invalid_argument("bias must be positive");
  return optimize_nk(uniform_rates(eps, bias), c, n_max, constraint);
}

}  // namespace biasft
