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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "camps/pauli.hpp"
#include "camps/rng.hpp"

namespace camps {

/// A one- or two-qubit Clifford gate with its dense matrix and its
/// conjugation action on local Pauli strings.
///
/// Local Pauli codes use two bits per site: bit 2k is x and bit 2k+1 is z of
/// the k-th gate site. Tables store the image code and a sign (0 or 2 as a
/// power of i) of U P U^dagger (forward) and U^dagger P U (backward).
class LocalClifford {
 public:
  struct Image {
    std::uint8_t code = 0;
    std::uint8_t phase = 0;  // 0 or 2
  };

  LocalClifford() = default;

  /// Builds the tables from a unitary. Throws if `u` is not Clifford.
  static LocalClifford from_matrix(const Eigen::MatrixXcd& u);

  std::size_t arity() const { return arity_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Image forward(std::uint8_t code) const { return forward_[code]; }
  Image backward(std::uint8_t code) const { return backward_[code]; }

  /// Image U P U^dagger of a Pauli string on `arity()` qubits.
  PauliString conjugate_forward(const PauliString& p) const;
  PauliString conjugate_backward(const PauliString& p) const;

  LocalClifford inverse() const;
  /// this * rhs (rhs acts first).
  LocalClifford then_after(const LocalClifford& rhs) const;

  /// Images of X_1, Z_1 (, X_2, Z_2) packed as 5 bits each: sign bit then code.
  std::uint32_t canonical_key() const;

 private:
  std::size_t arity_ = 0;
  Eigen::MatrixXcd matrix_;
  std::array<Image, 16> forward_{};
  std::array<Image, 16> backward_{};
};

namespace gates {
LocalClifford H();
LocalClifford S();
LocalClifford S_dag();
LocalClifford X();
LocalClifford Y();
LocalClifford Z();
LocalClifford sqrt_X();
/// Control on the first gate site.
LocalClifford CNOT();
LocalClifford CZ();
LocalClifford SWAP();
}  // namespace gates

enum class Conjugation { forward, backward };

/// A Clifford unitary C stored through the images C X_j C^dagger, C Z_j C^dagger
/// together with the images of the inverse, so both conjugation directions and
/// left/right gate multiplication cost O(n) row operations.
class CliffordTableau {
 public:
  CliffordTableau() = default;
  explicit CliffordTableau(std::size_t n);

  static CliffordTableau identity(std::size_t n) { return CliffordTableau(n); }

  std::size_t num_qubits() const { return n_; }
  const PauliString& x_image(std::size_t j) const { return fwd_x_[j]; }
  const PauliString& z_image(std::size_t j) const { return fwd_z_[j]; }

  /// forward: C p C^dagger; backward: C^dagger p C.
  PauliString conjugate(const PauliString& p, Conjugation direction) const;

  /// C <- G C with G acting on `sites` (ordered as the gate's sites).
  void left_multiply(const LocalClifford& gate, std::span<const std::size_t> sites);
  /// C <- C G.
  void right_multiply(const LocalClifford& gate, std::span<const std::size_t> sites);

  void left_multiply(const LocalClifford& gate, std::initializer_list<std::size_t> sites) {
    left_multiply(gate, std::span<const std::size_t>(sites.begin(), sites.size()));
  }
  void right_multiply(const LocalClifford& gate, std::initializer_list<std::size_t> sites) {
    right_multiply(gate, std::span<const std::size_t>(sites.begin(), sites.size()));
  }

  CliffordTableau inverse() const;
  /// Checks commutation relations of the images and that both halves agree.
  bool is_valid() const;

  bool operator==(const CliffordTableau& other) const {
    return n_ == other.n_ && fwd_x_ == other.fwd_x_ && fwd_z_ == other.fwd_z_;
  }

  /// 2n lines: x images then z images in PauliString text form.
  std::string dump() const;

 private:
  void check_sites(std::size_t arity, std::span<const std::size_t> sites) const;

  std::size_t n_ = 0;
  std::vector<PauliString> fwd_x_, fwd_z_;
  std::vector<PauliString> inv_x_, inv_z_;
};

/// Index into the enumeration of the two-qubit Clifford group modulo phase.
struct TwoQubitCliffordId {
  std::uint32_t index = 0;
  bool operator==(const TwoQubitCliffordId&) const = default;
};

inline constexpr std::size_t kTwoQubitCliffordCount = 11520;
inline constexpr std::size_t kSingleQubitCliffordCount = 24;
inline constexpr std::size_t kCosetCount = 20;

/// All 11520 two-qubit Cliffords in breadth-first order over {H1, H2, S1, S2, CNOT12}.
const std::vector<LocalClifford>& two_qubit_cliffords();
const LocalClifford& two_qubit_clifford(TwoQubitCliffordId id);
/// All 24 single-qubit Cliffords in breadth-first order over {H, S}.
const std::vector<LocalClifford>& single_qubit_cliffords();
/// Looks up the id of a two-qubit Clifford; throws if `gate` is not two-qubit.
TwoQubitCliffordId find_two_qubit_clifford(const LocalClifford& gate);

TwoQubitCliffordId random_two_qubit_clifford(Rng& rng);

/// One representative per left coset (C1 x C1) r, chosen as the element whose
/// canonical key is minimal within its coset; sorted by key.
const std::vector<TwoQubitCliffordId>& coset_representatives();

struct AppliedGate {
  TwoQubitCliffordId id;
  std::size_t a = 0;
  std::size_t b = 0;
};

/// Composes 2 n^2 uniformly random two-qubit Cliffords on uniformly random
/// unordered pairs onto `tab` (left multiplication) and returns them in order.
std::vector<AppliedGate> apply_random_clifford_layer(CliffordTableau& tab, Rng& rng);

/// A dense unitary realizing `tab` up to global phase (n <= kMaxDenseMatrixQubits).
Eigen::MatrixXcd clifford_to_dense(const CliffordTableau& tab);

}  // namespace camps
