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

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace camps {

using cplx = std::complex<double>;
using StateVector = Eigen::VectorXcd;

/// Largest qubit count accepted by the dense (2^n x 2^n) matrix helpers.
inline constexpr std::size_t kMaxDenseMatrixQubits = 12;

/// Single-site Pauli axis in the (x, z) bit encoding. Y is stored as x=z=1.
enum class PauliAxis : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

/// A signed N-qubit Pauli operator i^phase * P_1 (x) ... (x) P_n.
///
/// Each P_j is one of the Hermitian matrices I, X, Y, Z selected by the bit
/// pair (x_j, z_j); Y is the Hermitian Y (not XZ). The phase is tracked
/// exactly mod 4 so non-Hermitian intermediates (e.g. X*Z = -iY) stay exact.
/// Bits are packed into 64-bit words, site 0 in bit 0 of word 0.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on n qubits.
  explicit PauliString(std::size_t n);

  /// Parses "+XYZ", "-iYI", "IX" (implicit +). Accepts the unicode minus.
  static PauliString parse(std::string_view text);
  /// Single-site operator `axis` on `site` of an n-qubit register.
  static PauliString single(std::size_t n, std::size_t site, PauliAxis axis);
  /// Pauli string with the given per-site axes and phase +1.
  static PauliString from_axes(const std::vector<PauliAxis>& axes);
  /// Decodes the 4^n enumeration index (2 bits per site: bit0=x, bit1=z).
  static PauliString from_index(std::size_t n, std::uint64_t index);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_words() const { return x_.size(); }
  unsigned phase_power() const { return phase_; }
  bool is_hermitian() const { return (phase_ & 1u) == 0; }
  /// +1 or -1 for Hermitian strings.
  int sign() const;

  bool x(std::size_t site) const { return (x_[site >> 6] >> (site & 63)) & 1u; }
  bool z(std::size_t site) const { return (z_[site >> 6] >> (site & 63)) & 1u; }
  PauliAxis axis(std::size_t site) const;
  void set_axis(std::size_t site, PauliAxis axis);
  void set_phase_power(unsigned k) { phase_ = k & 3u; }

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

  bool is_identity() const;  // ignoring phase
  std::size_t weight() const;
  /// Sites with a non-identity factor, ascending.
  std::vector<std::size_t> support() const;

  /// In-place right multiplication: *this <- (*this) * rhs.
  PauliString& operator*=(const PauliString& rhs);
  /// Multiplies the phase by i^k.
  PauliString& multiply_phase(unsigned k) {
    phase_ = (phase_ + k) & 3u;
    return *this;
  }

  bool operator==(const PauliString& other) const = default;

  /// Text form: one of {+, -, +i, -i} then one of {I,X,Y,Z} per site.
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  unsigned phase_ = 0;
};

PauliString multiply(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

/// Dense 2^n x 2^n matrix (little-endian: site 0 is the least significant bit).
Eigen::MatrixXcd to_dense(const PauliString& p);

/// p|v> for a dense little-endian statevector.
StateVector apply_pauli(const PauliString& p, const StateVector& v);

/// <v|p|v> for Hermitian p and normalized v.
double expectation(const PauliString& p, const StateVector& v);

/// 2x2 matrix of a single-site axis.
Eigen::Matrix2cd axis_matrix(PauliAxis axis);

}  // namespace camps
