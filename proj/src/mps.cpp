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

#include "camps/mps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "camps/errors.hpp"

namespace camps {

namespace site_states {
Eigen::Vector2cd zero() { return {1.0, 0.0}; }
Eigen::Vector2cd one() { return {0.0, 1.0}; }
Eigen::Vector2cd plus() { return Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0); }
Eigen::Vector2cd y_plus() { return Eigen::Vector2cd(1.0, cplx(0.0, 1.0)) / std::sqrt(2.0); }
Eigen::Vector2cd t_state() { return Eigen::Vector2cd(1.0, std::polar(1.0, M_PI / 4)) / std::sqrt(2.0); }
}  // namespace site_states

std::size_t MPO::max_bond() const {
  std::size_t best = 1;
  for (const auto& w : sites) best = std::max(best, w.right);
  return best;
}

MPO MPO::identity(std::size_t n) { return product(std::vector<Eigen::Matrix2cd>(n, Eigen::Matrix2cd::Identity())); }

MPO MPO::product(const std::vector<Eigen::Matrix2cd>& ops) {
  MPO mpo;
  for (const auto& op : ops) {
    Tensor4 w(1, 1);
    w.add_block(0, 0, op);
    mpo.sites.push_back(std::move(w));
  }
  return mpo;
}

Eigen::MatrixXcd MPO::to_dense() const {
  const std::size_t n = sites.size();
  if (n > kMaxDenseMatrixQubits) {
    throw SizeLimitError("MPO::to_dense refused for " + std::to_string(n) + " sites");
  }
  // partial[w] is the operator on the first k sites in channel w.
  std::vector<Eigen::MatrixXcd> partial(1, Eigen::MatrixXcd::Identity(1, 1));
  for (std::size_t k = 0; k < n; ++k) {
    const Tensor4& w = sites[k];
    const auto d = partial[0].rows();
    std::vector<Eigen::MatrixXcd> next(w.right, Eigen::MatrixXcd::Zero(2 * d, 2 * d));
    for (std::size_t l = 0; l < w.left; ++l)
      for (std::size_t r = 0; r < w.right; ++r)
        for (std::size_t o = 0; o < 2; ++o)
          for (std::size_t i = 0; i < 2; ++i) {
            const cplx c = w(l, o, i, r);
            if (c == cplx(0.0)) continue;
            // New site is the most significant bit.
            next[r].block(static_cast<Eigen::Index>(o) * d, static_cast<Eigen::Index>(i) * d, d, d) += c * partial[l];
          }
    partial = std::move(next);
  }
  return partial[0];
}

MPS::MPS(std::size_t n, TruncationParams truncation) : truncation_(truncation) {
  if (n == 0) throw std::invalid_argument("MPS: need at least one site");
  tensors_.assign(n, Tensor3(1, 1));
  for (auto& t : tensors_) t(0, 0, 0) = 1.0;
}

MPS MPS::product_state(const std::vector<Eigen::Vector2cd>& sites, TruncationParams truncation) {
  MPS mps(sites.size(), truncation);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (std::abs(sites[i].norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("MPS::product_state: site " + std::to_string(i) + " is not normalized");
    }
    mps.tensors_[i](0, 0, 0) = sites[i][0];
    mps.tensors_[i](0, 1, 0) = sites[i][1];
  }
  return mps;
}

MPS MPS::from_statevector(const StateVector& v, TruncationParams truncation) {
  const auto dim = static_cast<std::size_t>(v.size());
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim || n == 0) {
    throw std::invalid_argument("MPS::from_statevector: dimension is not a power of two");
  }
  MPS mps(n, truncation);
  // rest(l, c) holds the remaining amplitudes; c = s_k + 2 * (higher sites).
  RowMatrix rest = v.normalized().transpose();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t left = static_cast<std::size_t>(rest.rows());
    const std::size_t cols = static_cast<std::size_t>(rest.cols()) / 2;
    RowMatrix m(static_cast<Eigen::Index>(left * 2), static_cast<Eigen::Index>(cols));
    for (std::size_t l = 0; l < left; ++l)
      for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t c = 0; c < cols; ++c)
          m(static_cast<Eigen::Index>(l * 2 + s), static_cast<Eigen::Index>(c)) =
              rest(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(s + 2 * c));
    SvdResult svd = truncated_svd(m, truncation);
    mps.discarded_ += svd.discarded;
    mps.tensors_[k] = Tensor3::from_left_matrix(svd.u, left);
    rest = svd.s.asDiagonal() * svd.vh;
  }
  mps.tensors_[n - 1] = Tensor3::from_right_matrix(rest, 1);
  mps.center_ = n - 1;
  mps.normalize();
  return mps;
}

void MPS::check_site(std::size_t site) const {
  if (site >= tensors_.size()) {
    throw std::out_of_range("MPS: site " + std::to_string(site) + " out of range");
  }
}

std::vector<std::size_t> MPS::bond_dims() const {
  std::vector<std::size_t> dims;
  for (std::size_t b = 0; b + 1 < tensors_.size(); ++b) dims.push_back(tensors_[b].right);
  return dims;
}

std::size_t MPS::max_bond() const {
  std::size_t best = 1;
  for (std::size_t b = 0; b + 1 < tensors_.size(); ++b) best = std::max(best, tensors_[b].right);
  return best;
}

void MPS::move_center(std::size_t site) {
  check_site(site);
  RowMatrix q, r;
  while (center_ < site) {
    Tensor3& a = tensors_[center_];
    thin_qr(a.as_left_matrix(), q, r);
    const std::size_t left = a.left;
    a = Tensor3::from_left_matrix(q, left);
    Tensor3& b = tensors_[center_ + 1];
    b = Tensor3::from_right_matrix(r * b.as_right_matrix(), b.right);
    ++center_;
  }
  while (center_ > site) {
    Tensor3& a = tensors_[center_];
    // LQ via QR of the adjoint: a = r^dagger q^dagger.
    thin_qr(a.as_right_matrix().adjoint(), q, r);
    const std::size_t right = a.right;
    a = Tensor3::from_right_matrix(q.adjoint(), right);
    Tensor3& b = tensors_[center_ - 1];
    b = Tensor3::from_left_matrix(b.as_left_matrix() * r.adjoint(), b.left);
    --center_;
  }
}

void MPS::apply_one_site_gate(const Eigen::Matrix2cd& u, std::size_t site) {
  check_site(site);
  Tensor3& t = tensors_[site];
  for (std::size_t l = 0; l < t.left; ++l)
    for (std::size_t r = 0; r < t.right; ++r) {
      const cplx a0 = t(l, 0, r), a1 = t(l, 1, r);
      t(l, 0, r) = u(0, 0) * a0 + u(0, 1) * a1;
      t(l, 1, r) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

RowMatrix two_site_block(const Tensor3& a, const Tensor3& b) { return a.as_left_matrix() * b.as_right_matrix(); }

void apply_gate_to_block(const Eigen::Matrix4cd& u, RowMatrix& block, std::size_t left, std::size_t right) {
  cplx in[4];
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t r = 0; r < right; ++r) {
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          in[a + 2 * b] = block(static_cast<Eigen::Index>(l * 2 + a), static_cast<Eigen::Index>(b * right + r));
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          const auto row = static_cast<Eigen::Index>(a + 2 * b);
          block(static_cast<Eigen::Index>(l * 2 + a), static_cast<Eigen::Index>(b * right + r)) =
              u(row, 0) * in[0] + u(row, 1) * in[1] + u(row, 2) * in[2] + u(row, 3) * in[3];
        }
    }
}

double MPS::apply_two_site_gate(const Eigen::Matrix4cd& u, std::size_t i, bool move_right) {
  if (i + 1 >= tensors_.size()) {
    throw std::out_of_range("MPS::apply_two_site_gate: bond " + std::to_string(i) + " out of range");
  }
  if (!(u.adjoint() * u).isIdentity(1e-10)) {
    throw std::invalid_argument("MPS::apply_two_site_gate: gate is not unitary");
  }
  // The two-site block is the orthogonality center when either site is.
  if (center_ < i) {
    move_center(i);
  } else if (center_ > i + 1) {
    move_center(i + 1);
  }
  const std::size_t left = tensors_[i].left;
  const std::size_t right = tensors_[i + 1].right;
  RowMatrix block = two_site_block(tensors_[i], tensors_[i + 1]);
  apply_gate_to_block(u, block, left, right);
  SvdResult svd = truncated_svd(block, truncation_);
  svd.s /= svd.s.norm();
  discarded_ += svd.discarded;
  if (move_right) {
    tensors_[i] = Tensor3::from_left_matrix(svd.u, left);
    tensors_[i + 1] = Tensor3::from_right_matrix(svd.s.asDiagonal() * svd.vh, right);
    center_ = i + 1;
  } else {
    tensors_[i] = Tensor3::from_left_matrix(svd.u * svd.s.asDiagonal(), left);
    tensors_[i + 1] = Tensor3::from_right_matrix(svd.vh, right);
    center_ = i;
  }
  return svd.discarded;
}

void MPS::apply_mpo(const MPO& op, bool normalize_after) {
  if (op.num_sites() != tensors_.size()) {
    throw std::invalid_argument("MPS::apply_mpo: site count mismatch");
  }
  for (std::size_t k = 0; k < tensors_.size(); ++k) {
    const Tensor3& a = tensors_[k];
    const Tensor4& w = op.sites[k];
    Tensor3 b(a.left * w.left, a.right * w.right);
    for (std::size_t l = 0; l < a.left; ++l)
      for (std::size_t wl = 0; wl < w.left; ++wl)
        for (std::size_t o = 0; o < 2; ++o)
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t wr = 0; wr < w.right; ++wr) {
              const cplx c = w(wl, o, i, wr);
              if (c == cplx(0.0)) continue;
              for (std::size_t r = 0; r < a.right; ++r) b(l * w.left + wl, o, r * w.right + wr) += c * a(l, i, r);
            }
    tensors_[k] = std::move(b);
  }
  // The contracted network has no canonical structure; QR steps from site 0 restore it.
  center_ = 0;
  truncate_sweep();
  if (normalize_after) normalize();
}

Eigen::VectorXd MPS::bond_spectrum(std::size_t bond) const {
  if (bond + 1 >= tensors_.size()) {
    throw std::out_of_range("MPS::bond_spectrum: bond " + std::to_string(bond) + " out of range");
  }
  MPS copy = *this;
  copy.move_center(bond);
  return singular_values(copy.tensors_[bond].as_left_matrix());
}

std::vector<double> MPS::entanglement_profile() const {
  std::vector<double> profile;
  if (tensors_.size() < 2) return profile;
  MPS copy = *this;
  copy.move_center(0);
  for (std::size_t b = 0; b + 1 < copy.tensors_.size(); ++b) {
    Tensor3& a = copy.tensors_[b];
    const SvdResult svd = thin_svd(a.as_left_matrix());
    profile.push_back(entropy_bits(svd.s));
    const std::size_t left = a.left;
    const RowMatrix sv = svd.s.asDiagonal() * svd.vh;
    a = Tensor3::from_left_matrix(svd.u, left);
    Tensor3& next = copy.tensors_[b + 1];
    next = Tensor3::from_right_matrix(sv * next.as_right_matrix(), next.right);
  }
  return profile;
}

double MPS::entanglement_entropy(std::size_t bond) const { return entropy_bits(bond_spectrum(bond)); }

double MPS::max_entanglement() const {
  double best = 0.0;
  for (double e : entanglement_profile()) best = std::max(best, e);
  return best;
}

double MPS::norm() const { return std::sqrt(std::max(0.0, overlap(*this).real())); }

void MPS::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw NumericalError("MPS::normalize: zero norm");
  for (auto& x : tensors_[center_].data) x /= nrm;
}

cplx MPS::overlap(const MPS& other) const {
  if (other.num_sites() != num_sites()) {
    throw std::invalid_argument("MPS::overlap: site count mismatch");
  }
  RowMatrix env = RowMatrix::Ones(1, 1);
  for (std::size_t k = 0; k < tensors_.size(); ++k) {
    const Tensor3& a = tensors_[k];
    const Tensor3& b = other.tensors_[k];
    RowMatrix next = RowMatrix::Zero(static_cast<Eigen::Index>(a.right), static_cast<Eigen::Index>(b.right));
    for (std::size_t s = 0; s < 2; ++s) next.noalias() += a.slice(s).adjoint() * env * b.slice(s);
    env = std::move(next);
  }
  return env(0, 0);
}

cplx MPS::expectation_product(const std::vector<Eigen::Matrix2cd>& ops) const {
  if (ops.size() != tensors_.size()) {
    throw std::invalid_argument("MPS::expectation_product: operator count mismatch");
  }
  RowMatrix env = RowMatrix::Ones(1, 1);
  for (std::size_t k = 0; k < tensors_.size(); ++k) {
    const Tensor3& a = tensors_[k];
    const RowMatrix t0 = env * a.slice(0);
    const RowMatrix t1 = env * a.slice(1);
    RowMatrix next = RowMatrix::Zero(static_cast<Eigen::Index>(a.right), static_cast<Eigen::Index>(a.right));
    for (std::size_t s = 0; s < 2; ++s) {
      const auto si = static_cast<Eigen::Index>(s);
      next.noalias() += a.slice(s).adjoint() * (ops[k](si, 0) * t0 + ops[k](si, 1) * t1);
    }
    env = std::move(next);
  }
  return env(0, 0);
}

double MPS::expectation(const PauliString& p) const {
  if (p.num_qubits() != tensors_.size()) {
    throw std::invalid_argument("MPS::expectation: size mismatch");
  }
  if (!p.is_hermitian()) {
    throw std::invalid_argument("MPS::expectation: Pauli string " + p.str() + " is not Hermitian");
  }
  std::vector<Eigen::Matrix2cd> ops;
  for (std::size_t q = 0; q < tensors_.size(); ++q) ops.push_back(axis_matrix(p.axis(q)));
  const cplx value = expectation_product(ops) / overlap(*this).real();
  return p.sign() * value.real();
}

StateVector MPS::to_statevector() const {
  const std::size_t n = tensors_.size();
  if (n > kMaxStatevectorSites) {
    throw SizeLimitError("MPS::to_statevector refused for " + std::to_string(n) + " sites");
  }
  RowMatrix psi = RowMatrix::Ones(1, 1);  // rows: basis index of the sites so far
  for (std::size_t k = 0; k < n; ++k) {
    const Tensor3& a = tensors_[k];
    const Eigen::Index rows = psi.rows();
    RowMatrix next(2 * rows, static_cast<Eigen::Index>(a.right));
    next.topRows(rows) = psi * a.slice(0);
    next.bottomRows(rows) = psi * a.slice(1);
    psi = std::move(next);
  }
  return psi.col(0);
}

void MPS::truncate_sweep() {
  move_center(tensors_.size() - 1);
  for (std::size_t k = tensors_.size() - 1; k > 0; --k) {
    Tensor3& a = tensors_[k];
    SvdResult svd = truncated_svd(a.as_right_matrix(), truncation_);
    discarded_ += svd.discarded;
    const std::size_t right = a.right;
    a = Tensor3::from_right_matrix(svd.vh, right);
    Tensor3& b = tensors_[k - 1];
    b = Tensor3::from_left_matrix(b.as_left_matrix() * (svd.u * svd.s.asDiagonal()), b.left);
  }
  center_ = 0;
}

void MPS::compress() {
  truncate_sweep();
  normalize();
}

void MPS::expand_bonds(std::size_t cap) {
  const std::size_t n = tensors_.size();
  move_center(0);
  for (std::size_t b = 0; b + 1 < n; ++b) {
    const std::size_t rows = tensors_[b].left * 2;
    const std::size_t right_capacity = (n - b - 1) >= 63 ? cap : (std::size_t{1} << (n - b - 1));
    const std::size_t target = std::min({cap, rows, right_capacity});
    Tensor3& a = tensors_[b];
    if (target <= a.right) {
      move_center(b + 1);
      continue;
    }
    // Complete the column space of a to `target` orthonormal columns; the
    // matching rows of the next tensor are zero.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a.as_left_matrix());
    const auto k = static_cast<Eigen::Index>(a.right);
    const RowMatrix q = qr.householderQ() * Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(rows),
                                                                        static_cast<Eigen::Index>(target));
    RowMatrix r = RowMatrix::Zero(static_cast<Eigen::Index>(target), k);
    r.topRows(k) = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const std::size_t left = a.left;
    a = Tensor3::from_left_matrix(q, left);
    Tensor3& next = tensors_[b + 1];
    next = Tensor3::from_right_matrix(r * next.as_right_matrix(), next.right);
    center_ = b + 1;
  }
}

}  // namespace camps
