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

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "camps/linalg.hpp"
#include "camps/pauli.hpp"

namespace camps {

/// Largest site count accepted by MPS::to_statevector.
inline constexpr std::size_t kMaxStatevectorSites = 20;

namespace site_states {
Eigen::Vector2cd zero();
Eigen::Vector2cd one();
Eigen::Vector2cd plus();
/// (|0> + i|1>)/sqrt(2), the +1 eigenstate of Y.
Eigen::Vector2cd y_plus();
/// T|+> = (|0> + e^{i pi/4}|1>)/sqrt(2).
Eigen::Vector2cd t_state();
}  // namespace site_states

/// Open-boundary matrix product operator, one Tensor4 per site.
struct MPO {
  std::vector<Tensor4> sites;

  std::size_t num_sites() const { return sites.size(); }
  std::size_t max_bond() const;
  static MPO identity(std::size_t n);
  /// Product operator o_0 (x) o_1 (x) ... with bond dimension 1.
  static MPO product(const std::vector<Eigen::Matrix2cd>& ops);
  /// Dense matrix (little-endian), for n <= kMaxDenseMatrixQubits.
  Eigen::MatrixXcd to_dense() const;
};

/// Open-boundary matrix product state of qubits with a tracked orthogonality
/// center.
///
/// Sites left of the center are left isometries and sites right of it are right
/// isometries. Public operations keep the norm at 1 unless stated otherwise.
/// Bond b (0-based) sits between sites b and b+1. Statevectors are
/// little-endian: site 0 is the least significant bit of the basis index.
class MPS {
 public:
  MPS() = default;
  /// |0...0> on n sites.
  explicit MPS(std::size_t n, TruncationParams truncation = {});

  static MPS product_state(const std::vector<Eigen::Vector2cd>& sites, TruncationParams truncation = {});
  static MPS from_statevector(const StateVector& v, TruncationParams truncation = {});

  std::size_t num_sites() const { return tensors_.size(); }
  std::size_t center() const { return center_; }
  const Tensor3& tensor(std::size_t i) const { return tensors_[i]; }
  const TruncationParams& truncation() const { return truncation_; }
  void set_truncation(TruncationParams t) { truncation_ = t; }
  /// Sum of discarded weights over all truncations so far.
  double discarded_weight() const { return discarded_; }

  std::size_t bond_dim(std::size_t bond) const { return tensors_[bond].right; }
  std::vector<std::size_t> bond_dims() const;
  std::size_t max_bond() const;

  /// Moves the orthogonality center with QR steps; the state is unchanged.
  void move_center(std::size_t site);

  void apply_one_site_gate(const Eigen::Matrix2cd& u, std::size_t site);
  /// Applies u on sites (i, i+1); u's basis index is s_i + 2 s_{i+1}.
  /// The center ends on i+1 (`move_right`) or i. Returns the discarded weight.
  double apply_two_site_gate(const Eigen::Matrix4cd& u, std::size_t i, bool move_right = true);
  /// Contracts an MPO exactly and recompresses with a two-directional sweep.
  void apply_mpo(const MPO& op, bool normalize);

  /// Schmidt values across `bond`.
  Eigen::VectorXd bond_spectrum(std::size_t bond) const;
  /// Entanglement entropy in bits across every bond.
  std::vector<double> entanglement_profile() const;
  double entanglement_entropy(std::size_t bond) const;
  double max_entanglement() const;

  double norm() const;
  void normalize();
  /// <this|other>.
  cplx overlap(const MPS& other) const;
  /// <this| o_0 (x) ... (x) o_{n-1} |this>.
  cplx expectation_product(const std::vector<Eigen::Matrix2cd>& ops) const;
  double expectation(const PauliString& p) const;

  StateVector to_statevector() const;

  /// Canonicalizes and truncates every bond under the current parameters.
  void compress();
  /// Pads bonds with orthonormal completions up to min(cap, 2^b, 2^(n-b)) so
  /// that local updates see the full tangent space. The state is unchanged.
  void expand_bonds(std::size_t cap);

  /// Low-level access used by the time-evolution code, which maintains the
  /// canonical-form bookkeeping itself.
  Tensor3& mutable_tensor(std::size_t i) { return tensors_[i]; }
  void set_center(std::size_t site) { center_ = site; }
  void add_discarded(double w) { discarded_ += w; }

 private:
  void check_site(std::size_t site) const;
  /// QR sweep to the right end, then truncating SVD sweep back to site 0.
  void truncate_sweep();

  std::vector<Tensor3> tensors_;
  std::size_t center_ = 0;
  TruncationParams truncation_;
  double discarded_ = 0.0;
};

/// Contracts two adjacent sites into a (left*2) x (2*right) matrix with rows
/// (l, s_i) and columns (s_{i+1}, r).
RowMatrix two_site_block(const Tensor3& a, const Tensor3& b);
/// Applies a 4x4 gate (index s_i + 2 s_{i+1}) to a two-site block in place.
void apply_gate_to_block(const Eigen::Matrix4cd& u, RowMatrix& block, std::size_t left, std::size_t right);

}  // namespace camps
