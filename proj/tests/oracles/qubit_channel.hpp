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

// Brute-force diamond norm of a single-qubit Hermiticity-preserving map,
// by grid search over two-qubit pure inputs in Schmidt form.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using CMat = Eigen::MatrixXcd;

inline double hermitian_trace_norm(const CMat& h) {
  Eigen::SelfAdjointEigenSolver<CMat> eig((h + h.adjoint()) / 2.0);
  return eig.eigenvalues().cwiseAbs().sum();
}

/// max over sqrt(l)|0 u0> + sqrt(1-l)|1 u1> of ||(id x phi)(psi)||_tr, with
/// (u0, u1) the rotated basis at angles (theta, phi) on a grid.
template <typename Phi>
double one_qubit_diamond(Phi&& phi, int grid) {
  double best = 0;
  for (int a = 0; a <= grid; ++a) {
    const double l = static_cast<double>(a) / grid;
    for (int b = 0; b <= grid; ++b) {
      const double theta = std::numbers::pi * b / grid;
      for (int c = 0; c < grid; ++c) {
        const double ph = 2 * std::numbers::pi * c / grid;
        Eigen::Vector2cd u0(std::cos(theta / 2), std::polar(std::sin(theta / 2), ph));
        Eigen::Vector2cd u1(-std::polar(std::sin(theta / 2), -ph), std::cos(theta / 2));
        Eigen::VectorXcd psi(4);
        psi.head(2) = std::sqrt(l) * u0;
        psi.tail(2) = std::sqrt(1 - l) * u1;
        const CMat x = psi * psi.adjoint();
        CMat out = CMat::Zero(4, 4);
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = phi(CMat(x.block(2 * i, 2 * j, 2, 2)));
        }
        best = std::max(best, hermitian_trace_norm(out));
      }
    }
  }
  return best;
}

}  // namespace oracle
