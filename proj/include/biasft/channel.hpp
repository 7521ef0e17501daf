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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "biasft/rng.hpp"

namespace biasft::channel {

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

// --- Pauli helpers --------------------------------------------------------

template <typename Real>
Matrix<Real> pauli(char p) {
  using C = Complex<Real>;
  Matrix<Real> m = Matrix<Real>::Zero(2, 2);
  switch (p) {
    case 'I': m << C(1), C(0), C(0), C(1); break;
    case 'X': m << C(0), C(1), C(1), C(0); break;
    case 'Y': m << C(0), C(0, -1), C(0, 1), C(0); break;
    case 'Z': m << C(1), C(0), C(0), C(-1); break;
    default: throw std::invalid_argument(std::string("unknown Pauli '") + p + "'");
  }
  return m;
}

template <typename Real>
Matrix<Real> kron(const Matrix<Real>& a, const Matrix<Real>& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

/// Register of qubits, each either a bare two-level system or a flux (x)
/// transmission-line pair (4 levels, computational subspace spanned by
/// |S>|0> and |S>|1> with |S> = (|L> + |R>)/sqrt 2).
struct Layout {
  int qubits = 1;
  bool flux = false;

  [[nodiscard]] int per_qubit() const { return flux ? 4 : 2; }
  [[nodiscard]] Eigen::Index dim() const {
    Eigen::Index d = 1;
    for (int i = 0; i < qubits; ++i) d *= per_qubit();
    return d;
  }
  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Embeds a 2x2 operator on the computational (transmission-line) factor
/// of qubit `q`, identity elsewhere. Qubit 0 is the leftmost factor.
template <typename Real>
Matrix<Real> on_qubit(const Layout& layout, int q, const Matrix<Real>& op2, bool flux_factor = false) {
  Matrix<Real> out = Matrix<Real>::Identity(1, 1);
  const Matrix<Real> id2 = pauli<Real>('I');
  for (int i = 0; i < layout.qubits; ++i) {
    Matrix<Real> local;
    if (layout.flux) {
      local = flux_factor ? kron<Real>(i == q ? op2 : id2, id2) : kron<Real>(id2, i == q ? op2 : id2);
    } else {
      local = i == q ? op2 : id2;
    }
    out = kron<Real>(out, local);
  }
  return out;
}

/// Pauli string on the computational factors, e.g. "IZ" = I on qubit 0 and
/// Z on qubit 1.
template <typename Real>
Matrix<Real> pauli_string(const Layout& layout, std::string_view paulis) {
  if (static_cast<int>(paulis.size()) != layout.qubits) {
    throw std::invalid_argument("Pauli string length does not match the number of qubits");
  }
  Matrix<Real> out = Matrix<Real>::Identity(layout.dim(), layout.dim());
  for (int q = 0; q < layout.qubits; ++q) {
    if (paulis[q] != 'I') out = out * on_qubit<Real>(layout, q, pauli<Real>(paulis[q]));
  }
  return out;
}

/// Hilbert-Schmidt component of m along the (unitary, Hermitian) operator p.
template <typename Real>
Matrix<Real> project_onto(const Matrix<Real>& m, const Matrix<Real>& p) {
  const Complex<Real> coeff = (p.adjoint() * m).trace() / static_cast<Real>(m.rows());
  return coeff * p;
}

/// Encoded basis state |~b> of one qubit.
template <typename Real>
Vector<Real> basis_state(bool flux, int b) {
  Vector<Real> v = Vector<Real>::Zero(flux ? 4 : 2);
  if (flux) {
    const Real s = 1 / std::numbers::sqrt2_v<Real>;
    v(b) = s;      // |L>|b>
    v(2 + b) = s;  // |R>|b>
  } else {
    v(b) = 1;
  }
  return v;
}

template <typename Real>
Matrix<Real> projector(const Vector<Real>& v) {
  return v * v.adjoint();
}

/// |Phi0><Phi0| with |Phi0> = (|~0~0> + |~1~1>)/sqrt 2 on two qubits.
template <typename Real>
Matrix<Real> bell_input(bool flux) {
  const Vector<Real> v = (kron<Real>(basis_state<Real>(flux, 0), basis_state<Real>(flux, 0)) +
                          kron<Real>(basis_state<Real>(flux, 1), basis_state<Real>(flux, 1))) /
                         std::numbers::sqrt2_v<Real>;
  return projector<Real>(v);
}

/// Maximally entangled state on a d-dimensional reference (x) system.
template <typename Real>
Matrix<Real> maximally_entangled(Eigen::Index d) {
  Vector<Real> v = Vector<Real>::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = 1;
  v /= std::sqrt(static_cast<Real>(d));
  return projector<Real>(v);
}

// --- Kraus sets and maps ---------------------------------------------------

template <typename Real>
struct KrausSet {
  std::vector<Matrix<Real>> ops;

  [[nodiscard]] Eigen::Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }

  /// || sum_k M_k^dagger M_k - I ||_op.
  [[nodiscard]] Real completeness_defect() const {
    const Eigen::Index d = dim();
    Matrix<Real> s = Matrix<Real>::Zero(d, d);
    for (const auto& m : ops) s += m.adjoint() * m;
    s -= Matrix<Real>::Identity(d, d);
    if (d == 0) return 0;
    Eigen::JacobiSVD<Matrix<Real>> svd(s);
    return svd.singularValues()(0);
  }
};

template <typename Real>
Matrix<Real> apply_channel(const KrausSet<Real>& kraus, const Matrix<Real>& x) {
  const Eigen::Index d = kraus.dim();
  if (x.rows() != d || x.cols() != d) {
    throw std::invalid_argument("apply_channel: dimension mismatch (" + std::to_string(x.rows()) +
                                " vs " + std::to_string(d) + ")");
  }
  Matrix<Real> out = Matrix<Real>::Zero(d, d);
  for (const auto& m : kraus.ops) out += m * x * m.adjoint();
  return out;
}

/// Sum of singular values.
template <typename Real>
Real trace_norm(const Matrix<Real>& a) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Matrix<Real>> svd(a);
  return svd.singularValues().sum();
}

/// Linear map X -> sum_i w_i A_i X B_i^dagger on a d-dimensional system.
/// Differences of channels stay in this form, so the pieces of a channel
/// decomposition never need a d^2 x d^2 superoperator.
template <typename Real>
class SandwichMap {
 public:
  struct Term {
    Complex<Real> weight;
    Matrix<Real> left;
    Matrix<Real> right;
  };

  SandwichMap() = default;
  explicit SandwichMap(Eigen::Index dim) : dim_(dim) {}

  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }

  SandwichMap& add(Complex<Real> weight, const Matrix<Real>& left, const Matrix<Real>& right) {
    check(left);
    check(right);
    if (left.isZero(0) || right.isZero(0) || weight == Complex<Real>(0)) return *this;
    terms_.push_back({weight, left, right});
    return *this;
  }
  SandwichMap& add(Complex<Real> weight, const Matrix<Real>& kraus) { return add(weight, kraus, kraus); }
  SandwichMap& add(Complex<Real> weight, const KrausSet<Real>& kraus) {
    for (const auto& m : kraus.ops) add(weight, m);
    return *this;
  }
  SandwichMap& add(Complex<Real> weight, const SandwichMap& other) {
    for (const auto& t : other.terms_) add(weight * t.weight, t.left, t.right);
    return *this;
  }

  /// Applies the map to x. If x is larger than the system, it is read as an
  /// operator on reference (x) system and the map acts on the system factor.
  [[nodiscard]] Matrix<Real> apply(const Matrix<Real>& x) const {
    const Eigen::Index r = reference_dim(x);
    Matrix<Real> out = Matrix<Real>::Zero(x.rows(), x.cols());
    const Eigen::Index d = dim_;
    for (const Term& t : terms_) {
      for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
          out.block(i * d, j * d, d, d).noalias() +=
              t.weight * (t.left * x.block(i * d, j * d, d, d) * t.right.adjoint());
        }
      }
    }
    return out;
  }

  /// Adjoint with respect to the Hilbert-Schmidt inner product.
  [[nodiscard]] Matrix<Real> apply_adjoint(const Matrix<Real>& w) const {
    const Eigen::Index r = reference_dim(w);
    Matrix<Real> out = Matrix<Real>::Zero(w.rows(), w.cols());
    const Eigen::Index d = dim_;
    for (const Term& t : terms_) {
      for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
          out.block(i * d, j * d, d, d).noalias() +=
              std::conj(t.weight) * (t.left.adjoint() * w.block(i * d, j * d, d, d) * t.right);
        }
      }
    }
    return out;
  }

 private:
  void check(const Matrix<Real>& m) {
    if (dim_ == 0) dim_ = m.rows();
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw std::invalid_argument("SandwichMap: operator dimension mismatch");
    }
  }

  [[nodiscard]] Eigen::Index reference_dim(const Matrix<Real>& x) const {
    if (dim_ == 0 || x.rows() != x.cols() || x.rows() % dim_ != 0) {
      throw std::invalid_argument("SandwichMap: input of size " + std::to_string(x.rows()) +
                                  " does not fit a system of dimension " + std::to_string(dim_));
    }
    return x.rows() / dim_;
  }

  Eigen::Index dim_ = 0;
  std::vector<Term> terms_;
};

template <typename Real>
SandwichMap<Real> as_map(const KrausSet<Real>& kraus) {
  SandwichMap<Real> m(kraus.dim());
  m.add(Complex<Real>(1), kraus);
  return m;
}

/// ||(I_ref (x) E)(x)||_tr. The reference dimension is x.rows() / dim(E),
/// so an input on the bare system is also accepted.
template <typename Real>
Real input_distance(const SandwichMap<Real>& map, const Matrix<Real>& x) {
  return trace_norm<Real>(map.apply(x));
}

struct DiamondSearch {
  int restarts = 4;
  int ascent_steps = 20;
  std::uint64_t seed = 1;
};

template <typename Real>
struct DiamondEstimate {
  Real value = 0;
  Matrix<Real> input;
};

namespace detail {

template <typename Real>
Vector<Real> random_state(Eigen::Index n, const KeyedStream& stream) {
  Vector<Real> v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = static_cast<std::uint64_t>(2 * i);
    const Real u1 = static_cast<Real>(1.0 - stream.uniform(c));
    const Real u2 = static_cast<Real>(stream.uniform(c + 1));
    const Real r = std::sqrt(-2 * std::log(u1));
    const Real a = 2 * std::numbers::pi_v<Real> * u2;
    v(i) = Complex<Real>(r * std::cos(a), r * std::sin(a));
  }
  return v / v.norm();
}

/// Alternating ascent on ||(I (x) E)(psi psi^dagger)||_tr: fix the sign
/// operator W of the current output, then take psi as the top eigenvector
/// of (I (x) E^dagger)(W). Never decreases the objective.
template <typename Real>
DiamondEstimate<Real> ascend(const SandwichMap<Real>& map, Vector<Real> psi, int steps) {
  DiamondEstimate<Real> best;
  best.input = projector<Real>(psi);
  Matrix<Real> out = map.apply(best.input);
  best.value = trace_norm<Real>(out);
  for (int s = 0; s < steps; ++s) {
    const Matrix<Real> h = (out + out.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> eig(h);
    const auto& vals = eig.eigenvalues();
    Matrix<Real> w = eig.eigenvectors() *
                     vals.unaryExpr([](Real x) { return Complex<Real>(x >= 0 ? 1 : -1); }).asDiagonal() *
                     eig.eigenvectors().adjoint();
    Matrix<Real> g = map.apply_adjoint(w);
    g = (g + g.adjoint()).eval() / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix<Real>> top(g);
    psi = top.eigenvectors().col(g.rows() - 1);
    const Matrix<Real> x = projector<Real>(psi);
    out = map.apply(x);
    const Real value = trace_norm<Real>(out);
    if (value <= best.value * (1 + Real(1e-12))) {
      if (value > best.value) {
        best.value = value;
        best.input = x;
      }
      break;
    }
    best.value = value;
    best.input = x;
  }
  return best;
}

}  // namespace detail

/// Heuristic lower bound on ||E||_diamond: maximum of input_distance over
/// the given inputs, the maximally entangled input, and keyed random pure
/// inputs on a reference of the same dimension, each refined by ascent.
template <typename Real>
DiamondEstimate<Real> diamond_lower_bound(const SandwichMap<Real>& map,
                                          std::span<const Matrix<Real>> inputs = {},
                                          const DiamondSearch& search = {}) {
  DiamondEstimate<Real> best;
  const Eigen::Index d = map.dim();
  if (d == 0) return best;
  auto consider = [&](const Matrix<Real>& x) {
    const Real v = input_distance<Real>(map, x);
    if (v > best.value || best.input.size() == 0) {
      best.value = v;
      best.input = x;
    }
  };
  for (const auto& x : inputs) consider(x);
  consider(maximally_entangled<Real>(d));
  if (map.terms().empty()) return best;

  Vector<Real> omega = Vector<Real>::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) omega(i * d + i) = 1 / std::sqrt(static_cast<Real>(d));
  auto starts = std::vector<Vector<Real>>{omega};
  const KeyedStream root(search.seed);
  for (int r = 0; r < search.restarts; ++r) {
    starts.push_back(detail::random_state<Real>(d * d, root.child(static_cast<std::uint64_t>(r))));
  }
  for (const auto& psi : starts) {
    const auto e = detail::ascend<Real>(map, psi, search.ascent_steps);
    if (e.value > best.value) best = e;
  }
  return best;
}

/// Exact diamond norm of a completely positive map: ||sum K^dagger K||_op.
template <typename Real>
Real cp_diamond_norm(const KrausSet<Real>& kraus) {
  const Eigen::Index d = kraus.dim();
  Matrix<Real> s = Matrix<Real>::Zero(d, d);
  for (const auto& m : kraus.ops) s += m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> eig(s);
  return eig.eigenvalues().maxCoeff();
}

// --- Classified Kraus data and the channel decomposition -------------------

enum class TermTag { Identity, Diagonal, Nondiagonal, Leakage };

inline std::string_view to_string(TermTag t) {
  switch (t) {
    case TermTag::Identity: return "identity";
    case TermTag::Diagonal: return "diagonal";
    case TermTag::Nondiagonal: return "nondiagonal";
    case TermTag::Leakage: return "leakage";
  }
  return "?";
}

inline TermTag parse_term_tag(std::string_view s) {
  if (s == "identity") return TermTag::Identity;
  if (s == "diagonal") return TermTag::Diagonal;
  if (s == "nondiagonal") return TermTag::Nondiagonal;
  if (s == "leakage") return TermTag::Leakage;
  throw std::invalid_argument("unclassified Kraus term tag '" + std::string(s) + "'");
}

/// M_k = I_k + M_{k,d} + M_{k,nd} + M_{k,l}.
template <typename Real>
struct KrausParts {
  Matrix<Real> identity;
  Matrix<Real> diagonal;
  Matrix<Real> nondiagonal;
  Matrix<Real> leakage;

  [[nodiscard]] Matrix<Real> full() const { return identity + diagonal + nondiagonal + leakage; }
};

namespace detail {

/// Part of m that acts as the identity on every flux factor.
template <typename Real>
Matrix<Real> flux_identity_part(const Layout& layout, const Matrix<Real>& m) {
  if (!layout.flux) return m;
  Matrix<Real> cur = m;
  for (int q = 0; q < layout.qubits; ++q) {
    Matrix<Real> acc = Matrix<Real>::Zero(m.rows(), m.cols());
    for (char p : {'I', 'X', 'Y', 'Z'}) {
      const Matrix<Real> u = on_qubit<Real>(layout, q, pauli<Real>(p), true);
      acc += u * cur * u.adjoint();
    }
    cur = acc / Real(4);
  }
  return cur;
}

template <typename Real>
bool near(const Matrix<Real>& a, const Matrix<Real>& b, Real tol) {
  return (a - b).norm() <= tol * std::max<Real>(1, b.norm());
}

}  // namespace detail

template <typename Real>
class ClassifiedKraus {
 public:
  explicit ClassifiedKraus(Layout layout, std::size_t count = 0) : layout_(layout) {
    for (std::size_t i = 0; i < count; ++i) add_operator();
  }

  [[nodiscard]] const Layout& layout() const { return layout_; }
  [[nodiscard]] const std::vector<KrausParts<Real>>& parts() const { return parts_; }
  [[nodiscard]] std::size_t size() const { return parts_.size(); }

  std::size_t add_operator() {
    const Eigen::Index d = layout_.dim();
    const Matrix<Real> z = Matrix<Real>::Zero(d, d);
    parts_.push_back({z, z, z, z});
    return parts_.size() - 1;
  }

  /// Adds `m` to the `tag` part of operator k after checking that it has the
  /// structure the tag claims.
  void add_term(std::size_t k, TermTag tag, const Matrix<Real>& m, Real tol = Real(1e-9)) {
    const Eigen::Index d = layout_.dim();
    if (k >= parts_.size()) throw std::invalid_argument("Kraus index out of range");
    if (m.rows() != d || m.cols() != d) {
      throw std::invalid_argument("Kraus term has dimension " + std::to_string(m.rows()) +
                                  ", expected " + std::to_string(d));
    }
    const Matrix<Real> fid = detail::flux_identity_part<Real>(layout_, m);
    const std::string what = "Kraus term tagged '" + std::string(to_string(tag)) + "' ";
    switch (tag) {
      case TermTag::Identity: {
        const Matrix<Real> id = (m.trace() / static_cast<Real>(d)) * Matrix<Real>::Identity(d, d);
        if (!detail::near<Real>(m, id, tol)) throw std::invalid_argument(what + "is not a multiple of the identity");
        parts_[k].identity += m;
        break;
      }
      case TermTag::Diagonal: {
        if (!detail::near<Real>(m, fid, tol)) throw std::invalid_argument(what + "acts on the flux factor");
        Matrix<Real> diag = Matrix<Real>::Zero(d, d);
        diag.diagonal() = m.diagonal();
        if (!detail::near<Real>(m, diag, tol)) throw std::invalid_argument(what + "is not diagonal");
        parts_[k].diagonal += m;
        break;
      }
      case TermTag::Nondiagonal:
        if (!detail::near<Real>(m, fid, tol)) throw std::invalid_argument(what + "acts on the flux factor");
        parts_[k].nondiagonal += m;
        break;
      case TermTag::Leakage:
        if (!layout_.flux) throw std::invalid_argument(what + "needs a flux layout");
        if (fid.norm() > tol * std::max<Real>(1, m.norm())) {
          throw std::invalid_argument(what + "has a component that leaves the flux factor alone");
        }
        parts_[k].leakage += m;
        break;
    }
  }

  [[nodiscard]] KrausSet<Real> kraus_set() const {
    KrausSet<Real> out;
    for (const auto& p : parts_) out.ops.push_back(p.full());
    return out;
  }

 private:
  Layout layout_;
  std::vector<KrausParts<Real>> parts_;
};

/// Published CPHASE Kraus data: identity parts and phase-type parts on two
/// flux qubits (A first). Other parts are zero.
template <typename Real>
ClassifiedKraus<Real> builtin_cphase_kraus() {
  using C = Complex<Real>;
  const Layout layout{2, true};
  ClassifiedKraus<Real> k(layout, 4);
  const Eigen::Index d = layout.dim();
  const Matrix<Real> iz = pauli_string<Real>(layout, "IZ");
  const Matrix<Real> zi = pauli_string<Real>(layout, "ZI");
  const Matrix<Real> zz = pauli_string<Real>(layout, "ZZ");
  k.add_term(0, TermTag::Identity, std::polar(Real(0.9981), Real(1.2743)) * Matrix<Real>::Identity(d, d));
  k.add_term(0, TermTag::Diagonal, C(1.5e-4) * iz + C(1e-4, 3.5e-4) * zi - C(1.2e-4, 4.4e-4) * zz);
  k.add_term(1, TermTag::Diagonal, C(5.2e-2) * iz + C(9e-3) * zi - C(7e-3) * zz);
  k.add_term(2, TermTag::Diagonal, C(1.8e-3) * iz + C(1e-2) * zi + C(4.6e-4) * zz);
  k.add_term(3, TermTag::Diagonal, C(1e-4) * iz + C(7.4e-4, -1e-4) * zz);
  return k;
}

/// N = I_hat + E_d + E_nd + E_l, each as a sandwich map.
template <typename Real>
struct ChannelParts {
  SandwichMap<Real> full;
  SandwichMap<Real> identity;
  SandwichMap<Real> diagonal;
  SandwichMap<Real> nondiagonal;
  SandwichMap<Real> leakage;
};

template <typename Real>
ChannelParts<Real> split_channel(const ClassifiedKraus<Real>& kraus) {
  const Eigen::Index d = kraus.layout().dim();
  const Complex<Real> one(1);
  ChannelParts<Real> out{SandwichMap<Real>(d), SandwichMap<Real>(d), SandwichMap<Real>(d),
                         SandwichMap<Real>(d), SandwichMap<Real>(d)};
  for (const auto& p : kraus.parts()) {
    const Matrix<Real> a = p.identity;
    const Matrix<Real> b = a + p.diagonal;
    const Matrix<Real> c = b + p.nondiagonal;
    const Matrix<Real> f = c + p.leakage;
    out.full.add(one, f);
    out.identity.add(one, a);
    out.leakage.add(one, f).add(-one, c);
    out.nondiagonal.add(one, c).add(-one, b);
    out.diagonal.add(one, b).add(-one, a);
  }
  return out;
}

/// Phase-type part restricted to qubit q: the identity reference is widened
/// by the phase terms that act trivially on q, i.e. the components of
/// M_{k,d} along Z on one other qubit.
template <typename Real>
SandwichMap<Real> split_diagonal_on_qubit(const ClassifiedKraus<Real>& kraus, int q) {
  const Layout& layout = kraus.layout();
  if (q < 0 || q >= layout.qubits) throw std::invalid_argument("qubit index out of range");
  const Eigen::Index d = layout.dim();
  const Complex<Real> one(1);
  SandwichMap<Real> out(d);
  for (const auto& p : kraus.parts()) {
    Matrix<Real> trivial_on_q = Matrix<Real>::Zero(d, d);
    for (int other = 0; other < layout.qubits; ++other) {
      if (other == q) continue;
      std::string s(static_cast<std::size_t>(layout.qubits), 'I');
      s[static_cast<std::size_t>(other)] = 'Z';
      trivial_on_q += project_onto<Real>(p.diagonal, pauli_string<Real>(layout, s));
    }
    out.add(one, p.identity + p.diagonal).add(-one, p.identity + trivial_on_q);
  }
  return out;
}

// --- Amplitude damping and preparation rates -------------------------------

template <typename Real>
struct AmplitudeDamping {
  KrausSet<Real> kraus;   // {M0, M1}
  Real other_rate = 0;    // diamond norm of X -> M1 X M1^dagger
  Real phase_rate = 0;    // lower bound on ||M0 . M0^dagger - c id||_diamond
  Real c = 1;
};

template <typename Real>
AmplitudeDamping<Real> amplitude_damping(Real gamma, const DiamondSearch& search = {}) {
  if (!(gamma >= 0 && gamma <= 1)) {
    throw std::invalid_argument("amplitude damping needs 0 <= gamma <= 1");
  }
  using C = Complex<Real>;
  const Real s = std::sqrt(1 - gamma);
  const Matrix<Real> id = pauli<Real>('I');
  const Matrix<Real> z = pauli<Real>('Z');
  const Matrix<Real> x = pauli<Real>('X');
  AmplitudeDamping<Real> out;
  const Matrix<Real> m0 = C((1 + s) / 2) * id + C((1 - s) / 2) * z;
  const Matrix<Real> m1 = C(std::sqrt(gamma) / 2) * (x * (id - z));
  out.kraus.ops = {m0, m1};
  out.other_rate = cp_diamond_norm<Real>(KrausSet<Real>{{m1}});
  out.c = (1 + s) * (1 + s) / 4;
  SandwichMap<Real> phase(2);
  phase.add(C(1), m0).add(C(-out.c), id);
  out.phase_rate = diamond_lower_bound<Real>(phase, {}, search).value;
  return out;
}

/// Throws unless rho is Hermitian, positive semidefinite and of unit trace
/// (all to within tol).
template <typename Real>
void require_density(const Matrix<Real>& rho, Real tol = Real(1e-9)) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw std::invalid_argument("density matrix must be square");
  if ((rho - rho.adjoint()).norm() > tol) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex<Real>(1)) > tol) throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> eig((rho + rho.adjoint()) / Real(2));
  if (eig.eigenvalues().minCoeff() < -tol) throw std::invalid_argument("density matrix has a negative eigenvalue");
}

template <typename Real>
struct PrepRates {
  Real eps = 0;
  Real eps_leak = 0;
  Real c = 1;  // optimal weight of the ideal state
};

/// Golden-section minimisation of a unimodal function on [lo, hi].
template <typename Real, typename F>
Real golden_section_min(F&& f, Real lo, Real hi, Real tol) {
  const Real g = (std::sqrt(Real(5)) - 1) / 2;
  Real a = lo;
  Real b = hi;
  Real x1 = b - g * (b - a);
  Real x2 = a + g * (b - a);
  Real f1 = f(x1);
  Real f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return (a + b) / 2;
}

/// Rates of a prepared single flux qubit state rho (4x4, flux (x) trans):
/// eps_leak = ||eta_l||_tr with eta_l the part of rho outside
/// |S><S| (x) H_trans, and eps = min_c ||eta_d - c |~+><~+|||_tr.
template <typename Real>
PrepRates<Real> prep_error_rates(const Matrix<Real>& rho, Real tol = Real(1e-9)) {
  if (rho.rows() != 4) throw std::invalid_argument("preparation state must be 4x4 (flux x trans)");
  require_density<Real>(rho);
  Vector<Real> sflux(2);
  sflux << Complex<Real>(1 / std::numbers::sqrt2_v<Real>), Complex<Real>(1 / std::numbers::sqrt2_v<Real>);
  const Matrix<Real> p = kron<Real>(projector<Real>(sflux), pauli<Real>('I'));
  const Matrix<Real> eta_d = p * rho * p;
  const Matrix<Real> eta_l = rho - eta_d;
  const Vector<Real> plus = (basis_state<Real>(true, 0) + basis_state<Real>(true, 1)) / std::numbers::sqrt2_v<Real>;
  const Matrix<Real> ideal = projector<Real>(plus);
  auto dist = [&](Real c) { return trace_norm<Real>(eta_d - c * ideal); };
  PrepRates<Real> out;
  out.eps_leak = trace_norm<Real>(eta_l);
  out.c = golden_section_min<Real>(dist, Real(0), Real(1), tol);
  out.eps = dist(out.c);
  return out;
}

}  // namespace biasft::channel
