// Copyright 2026 The CAMPS Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "camps/tableau.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <unsupported/Eigen/KroneckerProduct>

#include "camps/errors.hpp"

namespace camps {

namespace {

std::uint8_t local_code(const PauliString& p, std::span<const std::size_t> sites) {
  std::uint8_t code = 0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    code |= static_cast<std::uint8_t>(static_cast<unsigned>(p.axis(sites[k])) << (2 * k));
  }
  return code;
}

void set_local_code(PauliString& p, std::span<const std::size_t> sites, std::uint8_t code) {
  for (std::size_t k = 0; k < sites.size(); ++k) {
    p.set_axis(sites[k], static_cast<PauliAxis>((code >> (2 * k)) & 3u));
  }
}

// Product of tableau rows representing the image of the local Pauli `code` on `sites`.
PauliString rows_product(const std::vector<PauliString>& rows_x, const std::vector<PauliString>& rows_z,
                         std::size_t n, std::span<const std::size_t> sites, std::uint8_t code, unsigned phase) {
  PauliString out(n);
  out.set_phase_power(phase);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const auto axis = static_cast<PauliAxis>((code >> (2 * k)) & 3u);
    switch (axis) {
      case PauliAxis::I: break;
      case PauliAxis::X: out *= rows_x[sites[k]]; break;
      case PauliAxis::Z: out *= rows_z[sites[k]]; break;
      case PauliAxis::Y:
        out *= rows_x[sites[k]];
        out *= rows_z[sites[k]];
        out.multiply_phase(1);
        break;
    }
  }
  return out;
}

PauliString conjugate_by_rows(const std::vector<PauliString>& rows_x, const std::vector<PauliString>& rows_z,
                              const PauliString& p) {
  PauliString out(p.num_qubits());
  out.set_phase_power(p.phase_power());
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    switch (p.axis(q)) {
      case PauliAxis::I: break;
      case PauliAxis::X: out *= rows_x[q]; break;
      case PauliAxis::Z: out *= rows_z[q]; break;
      case PauliAxis::Y:
        out *= rows_x[q];
        out *= rows_z[q];
        out.multiply_phase(1);
        break;
    }
  }
  return out;
}

PauliString conjugate_local(const PauliString& p, std::size_t arity,
                            const std::array<LocalClifford::Image, 16>& table) {
  if (p.num_qubits() != arity) {
    throw std::invalid_argument("LocalClifford: Pauli size does not match gate arity");
  }
  std::uint8_t code = 0;
  for (std::size_t k = 0; k < arity; ++k) {
    code |= static_cast<std::uint8_t>(static_cast<unsigned>(p.axis(k)) << (2 * k));
  }
  const auto image = table[code];
  PauliString out = PauliString::from_index(arity, image.code);
  out.set_phase_power(p.phase_power() + image.phase);
  return out;
}

}  // namespace

LocalClifford LocalClifford::from_matrix(const Eigen::MatrixXcd& u) {
  const auto dim = u.rows();
  if (u.cols() != dim || (dim != 2 && dim != 4)) {
    throw std::invalid_argument("LocalClifford::from_matrix: expected a 2x2 or 4x4 matrix");
  }
  if (!(u.adjoint() * u).isIdentity(1e-10)) {
    throw std::invalid_argument("LocalClifford::from_matrix: matrix is not unitary");
  }
  LocalClifford g;
  g.arity_ = dim == 2 ? 1 : 2;
  g.matrix_ = u;
  const std::size_t codes = std::size_t{1} << (2 * g.arity_);
  std::vector<Eigen::MatrixXcd> paulis;
  for (std::size_t c = 0; c < codes; ++c) {
    paulis.push_back(to_dense(PauliString::from_index(g.arity_, c)));
  }
  for (std::size_t c = 0; c < codes; ++c) {
    const Eigen::MatrixXcd image = u * paulis[c] * u.adjoint();
    bool found = false;
    for (std::size_t d = 0; d < codes && !found; ++d) {
      const cplx overlap = (paulis[d].adjoint() * image).trace() / static_cast<double>(dim);
      if (std::abs(overlap) < 0.5) continue;
      if (std::abs(std::abs(overlap.real()) - 1.0) > 1e-9 || std::abs(overlap.imag()) > 1e-9) {
        throw std::invalid_argument("LocalClifford::from_matrix: matrix is not Clifford");
      }
      const std::uint8_t phase = overlap.real() > 0 ? 0 : 2;
      g.forward_[c] = {static_cast<std::uint8_t>(d), phase};
      g.backward_[d] = {static_cast<std::uint8_t>(c), phase};
      found = true;
    }
    if (!found) {
      throw std::invalid_argument("LocalClifford::from_matrix: matrix is not Clifford");
    }
  }
  return g;
}

PauliString LocalClifford::conjugate_forward(const PauliString& p) const {
  return conjugate_local(p, arity_, forward_);
}

PauliString LocalClifford::conjugate_backward(const PauliString& p) const {
  return conjugate_local(p, arity_, backward_);
}

LocalClifford LocalClifford::inverse() const {
  LocalClifford g = *this;
  g.matrix_ = matrix_.adjoint();
  std::swap(g.forward_, g.backward_);
  return g;
}

LocalClifford LocalClifford::then_after(const LocalClifford& rhs) const {
  if (rhs.arity_ != arity_) {
    throw std::invalid_argument("LocalClifford::then_after: arity mismatch");
  }
  LocalClifford g;
  g.arity_ = arity_;
  g.matrix_ = matrix_ * rhs.matrix_;
  const std::size_t codes = std::size_t{1} << (2 * arity_);
  for (std::size_t c = 0; c < codes; ++c) {
    const Image inner = rhs.forward_[c];
    const Image outer = forward_[inner.code];
    g.forward_[c] = {outer.code, static_cast<std::uint8_t>((inner.phase + outer.phase) & 3u)};
    g.backward_[outer.code] = {static_cast<std::uint8_t>(c), g.forward_[c].phase};
  }
  return g;
}

std::uint32_t LocalClifford::canonical_key() const {
  std::uint32_t key = 0;
  for (std::size_t k = 0; k < 2 * arity_; ++k) {
    const Image im = forward_[std::size_t{1} << k];
    key = (key << 5) | (static_cast<std::uint32_t>(im.phase != 0) << 4) | im.code;
  }
  return key;
}

namespace gates {

namespace {
const cplx kI(0.0, 1.0);
Eigen::MatrixXcd mat2(cplx a, cplx b, cplx c, cplx d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

LocalClifford H() {
  const double r = 1.0 / std::sqrt(2.0);
  return LocalClifford::from_matrix(mat2(r, r, r, -r));
}
LocalClifford S() { return LocalClifford::from_matrix(mat2(1, 0, 0, kI)); }
LocalClifford S_dag() { return LocalClifford::from_matrix(mat2(1, 0, 0, -kI)); }
LocalClifford X() { return LocalClifford::from_matrix(mat2(0, 1, 1, 0)); }
LocalClifford Y() { return LocalClifford::from_matrix(mat2(0, -kI, kI, 0)); }
LocalClifford Z() { return LocalClifford::from_matrix(mat2(1, 0, 0, -1)); }
LocalClifford sqrt_X() {
  return LocalClifford::from_matrix(mat2(0.5 * (1.0 + kI), 0.5 * (1.0 - kI), 0.5 * (1.0 - kI), 0.5 * (1.0 + kI)));
}

LocalClifford CNOT() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1;
  m(3, 1) = 1;
  m(2, 2) = 1;
  m(1, 3) = 1;
  return LocalClifford::from_matrix(m);
}

LocalClifford CZ() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  m(3, 3) = -1;
  return LocalClifford::from_matrix(m);
}

LocalClifford SWAP() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1;
  m(2, 1) = 1;
  m(1, 2) = 1;
  m(3, 3) = 1;
  return LocalClifford::from_matrix(m);
}

}  // namespace gates

CliffordTableau::CliffordTableau(std::size_t n) : n_(n) {
  if (n == 0) {
    throw std::invalid_argument("CliffordTableau: need at least one qubit");
  }
  for (std::size_t j = 0; j < n; ++j) {
    fwd_x_.push_back(PauliString::single(n, j, PauliAxis::X));
    fwd_z_.push_back(PauliString::single(n, j, PauliAxis::Z));
  }
  inv_x_ = fwd_x_;
  inv_z_ = fwd_z_;
}

void CliffordTableau::check_sites(std::size_t arity, std::span<const std::size_t> sites) const {
  if (sites.size() != arity) {
    throw std::invalid_argument("CliffordTableau: gate arity does not match site count");
  }
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] >= n_) {
      throw std::out_of_range("CliffordTableau: site " + std::to_string(sites[k]) + " out of range");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (sites[l] == sites[k]) {
        throw std::invalid_argument("CliffordTableau: repeated site " + std::to_string(sites[k]));
      }
    }
  }
}

PauliString CliffordTableau::conjugate(const PauliString& p, Conjugation direction) const {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("CliffordTableau::conjugate: size mismatch");
  }
  return direction == Conjugation::forward ? conjugate_by_rows(fwd_x_, fwd_z_, p)
                                           : conjugate_by_rows(inv_x_, inv_z_, p);
}

void CliffordTableau::left_multiply(const LocalClifford& gate, std::span<const std::size_t> sites) {
  check_sites(gate.arity(), sites);
  // Forward rows: P -> G P G^dagger acts column-locally.
  auto conjugate_rows = [&](std::vector<PauliString>& rows) {
    for (auto& row : rows) {
      const auto image = gate.forward(local_code(row, sites));
      set_local_code(row, sites, image.code);
      row.multiply_phase(image.phase);
    }
  };
  conjugate_rows(fwd_x_);
  conjugate_rows(fwd_z_);
  // Inverse rows of the gate sites: C^dagger (G^dagger X_j G) C.
  std::vector<PauliString> new_x, new_z;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const auto bx = gate.backward(static_cast<std::uint8_t>(1u << (2 * k)));
    const auto bz = gate.backward(static_cast<std::uint8_t>(2u << (2 * k)));
    new_x.push_back(rows_product(inv_x_, inv_z_, n_, sites, bx.code, bx.phase));
    new_z.push_back(rows_product(inv_x_, inv_z_, n_, sites, bz.code, bz.phase));
  }
  for (std::size_t k = 0; k < sites.size(); ++k) {
    inv_x_[sites[k]] = std::move(new_x[k]);
    inv_z_[sites[k]] = std::move(new_z[k]);
  }
}

void CliffordTableau::right_multiply(const LocalClifford& gate, std::span<const std::size_t> sites) {
  check_sites(gate.arity(), sites);
  std::vector<PauliString> new_x, new_z;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const auto fx = gate.forward(static_cast<std::uint8_t>(1u << (2 * k)));
    const auto fz = gate.forward(static_cast<std::uint8_t>(2u << (2 * k)));
    new_x.push_back(rows_product(fwd_x_, fwd_z_, n_, sites, fx.code, fx.phase));
    new_z.push_back(rows_product(fwd_x_, fwd_z_, n_, sites, fz.code, fz.phase));
  }
  for (std::size_t k = 0; k < sites.size(); ++k) {
    fwd_x_[sites[k]] = std::move(new_x[k]);
    fwd_z_[sites[k]] = std::move(new_z[k]);
  }
  auto conjugate_rows = [&](std::vector<PauliString>& rows) {
    for (auto& row : rows) {
      const auto image = gate.backward(local_code(row, sites));
      set_local_code(row, sites, image.code);
      row.multiply_phase(image.phase);
    }
  };
  conjugate_rows(inv_x_);
  conjugate_rows(inv_z_);
}

CliffordTableau CliffordTableau::inverse() const {
  CliffordTableau out = *this;
  std::swap(out.fwd_x_, out.inv_x_);
  std::swap(out.fwd_z_, out.inv_z_);
  return out;
}

bool CliffordTableau::is_valid() const {
  for (std::size_t j = 0; j < n_; ++j) {
    if (!fwd_x_[j].is_hermitian() || !fwd_z_[j].is_hermitian()) return false;
    if (commutes(fwd_x_[j], fwd_z_[j])) return false;
    for (std::size_t k = j + 1; k < n_; ++k) {
      if (!commutes(fwd_x_[j], fwd_x_[k]) || !commutes(fwd_z_[j], fwd_z_[k]) ||
          !commutes(fwd_x_[j], fwd_z_[k]) || !commutes(fwd_z_[j], fwd_x_[k])) {
        return false;
      }
    }
  }
  for (std::size_t j = 0; j < n_; ++j) {
    if (conjugate_by_rows(fwd_x_, fwd_z_, inv_x_[j]) != PauliString::single(n_, j, PauliAxis::X)) return false;
    if (conjugate_by_rows(fwd_x_, fwd_z_, inv_z_[j]) != PauliString::single(n_, j, PauliAxis::Z)) return false;
  }
  return true;
}

std::string CliffordTableau::dump() const {
  std::ostringstream ss;
  for (const auto& row : fwd_x_) ss << row.str() << '\n';
  for (const auto& row : fwd_z_) ss << row.str() << '\n';
  return ss.str();
}

namespace {

std::vector<LocalClifford> breadth_first_closure(const std::vector<LocalClifford>& generators, std::size_t dim) {
  std::vector<LocalClifford> elements;
  std::unordered_map<std::uint32_t, std::size_t> seen;
  elements.push_back(LocalClifford::from_matrix(Eigen::MatrixXcd::Identity(dim, dim)));
  seen.emplace(elements.front().canonical_key(), 0);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& gen : generators) {
      LocalClifford next = gen.then_after(elements[head]);
      if (seen.emplace(next.canonical_key(), elements.size()).second) {
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

// Canonical key of left * right using only the conjugation tables.
std::uint32_t composed_key(const LocalClifford& left, const LocalClifford& right) {
  std::uint32_t key = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto inner = right.forward(static_cast<std::uint8_t>(1u << k));
    const auto outer = left.forward(inner.code);
    const bool negative = ((inner.phase + outer.phase) & 3u) != 0;
    key = (key << 5) | (static_cast<std::uint32_t>(negative) << 4) | outer.code;
  }
  return key;
}

struct TwoQubitGroup {
  std::vector<LocalClifford> elements;
  std::unordered_map<std::uint32_t, std::uint32_t> index_of_key;
  std::vector<TwoQubitCliffordId> representatives;
};

const TwoQubitGroup& two_qubit_group() {
  static const TwoQubitGroup group = [] {
    TwoQubitGroup g;
    const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
    auto on_first = [&](const LocalClifford& u) {
      return LocalClifford::from_matrix(Eigen::kroneckerProduct(id2, u.matrix()).eval());
    };
    auto on_second = [&](const LocalClifford& u) {
      return LocalClifford::from_matrix(Eigen::kroneckerProduct(u.matrix(), id2).eval());
    };
    const std::vector<LocalClifford> generators = {on_first(gates::H()), on_second(gates::H()),
                                                   on_first(gates::S()), on_second(gates::S()), gates::CNOT()};
    g.elements = breadth_first_closure(generators, 4);
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      g.index_of_key.emplace(g.elements[i].canonical_key(), static_cast<std::uint32_t>(i));
    }

    std::vector<LocalClifford> local_pairs;
    for (const auto& l2 : single_qubit_cliffords()) {
      for (const auto& l1 : single_qubit_cliffords()) {
        local_pairs.push_back(LocalClifford::from_matrix(Eigen::kroneckerProduct(l2.matrix(), l1.matrix()).eval()));
      }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> reps;  // (key, index)
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      const std::uint32_t own = g.elements[i].canonical_key();
      bool minimal = true;
      for (const auto& local : local_pairs) {
        if (composed_key(local, g.elements[i]) < own) {
          minimal = false;
          break;
        }
      }
      if (minimal) reps.emplace_back(own, static_cast<std::uint32_t>(i));
    }
    std::sort(reps.begin(), reps.end());
    for (const auto& [key, index] : reps) {
      g.representatives.push_back(TwoQubitCliffordId{index});
    }
    return g;
  }();
  return group;
}

}  // namespace

const std::vector<LocalClifford>& single_qubit_cliffords() {
  static const std::vector<LocalClifford> elements = breadth_first_closure({gates::H(), gates::S()}, 2);
  return elements;
}

const std::vector<LocalClifford>& two_qubit_cliffords() { return two_qubit_group().elements; }

const LocalClifford& two_qubit_clifford(TwoQubitCliffordId id) {
  const auto& elements = two_qubit_group().elements;
  if (id.index >= elements.size()) {
    throw std::out_of_range("two_qubit_clifford: id out of range");
  }
  return elements[id.index];
}

TwoQubitCliffordId find_two_qubit_clifford(const LocalClifford& gate) {
  if (gate.arity() != 2) {
    throw std::invalid_argument("find_two_qubit_clifford: gate is not two-qubit");
  }
  const auto& map = two_qubit_group().index_of_key;
  return TwoQubitCliffordId{map.at(gate.canonical_key())};
}

TwoQubitCliffordId random_two_qubit_clifford(Rng& rng) {
  return TwoQubitCliffordId{static_cast<std::uint32_t>(rng.below(kTwoQubitCliffordCount))};
}

const std::vector<TwoQubitCliffordId>& coset_representatives() { return two_qubit_group().representatives; }

std::vector<AppliedGate> apply_random_clifford_layer(CliffordTableau& tab, Rng& rng) {
  const std::size_t n = tab.num_qubits();
  if (n < 2) {
    throw std::invalid_argument("apply_random_clifford_layer: need at least two qubits");
  }
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<AppliedGate> applied;
  applied.reserve(2 * n * n);
  for (std::size_t g = 0; g < 2 * n * n; ++g) {
    std::size_t k = rng.below(pairs);
    std::size_t a = 0;
    while (k >= n - 1 - a) {
      k -= n - 1 - a;
      ++a;
    }
    const std::size_t b = a + 1 + k;
    const TwoQubitCliffordId id = random_two_qubit_clifford(rng);
    tab.left_multiply(two_qubit_clifford(id), {a, b});
    applied.push_back({id, a, b});
  }
  return applied;
}

Eigen::MatrixXcd clifford_to_dense(const CliffordTableau& tab) {
  const std::size_t n = tab.num_qubits();
  if (n > kMaxDenseMatrixQubits) {
    throw SizeLimitError("clifford_to_dense refused for " + std::to_string(n) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  // C|0...0> is the joint +1 eigenvector of the Z images; project a basis
  // vector with enough overlap onto it.
  StateVector phi;
  for (std::size_t k = 0; k < dim; ++k) {
    StateVector v = StateVector::Zero(static_cast<Eigen::Index>(dim));
    v[static_cast<Eigen::Index>(k)] = 1.0;
    for (std::size_t j = 0; j < n; ++j) v = 0.5 * (v + apply_pauli(tab.z_image(j), v));
    if (v.squaredNorm() * static_cast<double>(dim) > 0.5) {
      phi = v.normalized();
      break;
    }
  }
  // C|b> = C X^b C^dagger C|0> = prod_j X'_j^{b_j} |phi>.
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<StateVector> columns(dim);
  columns[0] = phi;
  for (std::size_t b = 1; b < dim; ++b) {
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(b));
    columns[b] = apply_pauli(tab.x_image(j), columns[b & (b - 1)]);
  }
  for (std::size_t b = 0; b < dim; ++b) u.col(static_cast<Eigen::Index>(b)) = columns[b];
  return u;
}

}  // namespace camps
