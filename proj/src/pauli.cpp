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

#include "camps/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "camps/errors.hpp"

namespace camps {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

void require_same_size(const PauliString& a, const PauliString& b, const char* what) {
  if (a.num_qubits() != b.num_qubits()) {
    std::ostringstream ss;
    ss << what << ": qubit count mismatch (" << a.num_qubits() << " vs " << b.num_qubits() << ")";
    throw std::invalid_argument(ss.str());
  }
}

}  // namespace

PauliString::PauliString(std::size_t n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliString PauliString::single(std::size_t n, std::size_t site, PauliAxis axis) {
  if (site >= n) {
    throw std::out_of_range("PauliString::single: site out of range");
  }
  PauliString p(n);
  p.set_axis(site, axis);
  return p;
}

PauliString PauliString::from_axes(const std::vector<PauliAxis>& axes) {
  PauliString p(axes.size());
  for (std::size_t q = 0; q < axes.size(); ++q) {
    p.set_axis(q, axes[q]);
  }
  return p;
}

PauliString PauliString::from_index(std::size_t n, std::uint64_t index) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) {
    p.set_axis(q, static_cast<PauliAxis>((index >> (2 * q)) & 3u));
  }
  return p;
}

PauliString PauliString::parse(std::string_view text) {
  unsigned phase = 0;
  std::size_t pos = 0;
  auto starts_with = [&](std::string_view prefix) { return text.substr(pos, prefix.size()) == prefix; };
  if (starts_with("+")) {
    pos += 1;
  } else if (starts_with("-")) {
    phase = 2;
    pos += 1;
  } else if (starts_with("\xE2\x88\x92")) {  // U+2212
    phase = 2;
    pos += 3;
  }
  if (starts_with("i")) {
    phase += 1;
    pos += 1;
  }
  std::vector<PauliAxis> axes;
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': case '_': axes.push_back(PauliAxis::I); break;
      case 'X': axes.push_back(PauliAxis::X); break;
      case 'Y': axes.push_back(PauliAxis::Y); break;
      case 'Z': axes.push_back(PauliAxis::Z); break;
      default:
        throw std::invalid_argument("PauliString::parse: unexpected character in '" + std::string(text) + "'");
    }
  }
  if (axes.empty()) {
    throw std::invalid_argument("PauliString::parse: no sites in '" + std::string(text) + "'");
  }
  PauliString p = from_axes(axes);
  p.phase_ = phase & 3u;
  return p;
}

int PauliString::sign() const {
  if (!is_hermitian()) {
    throw std::logic_error("PauliString::sign: phase is not real");
  }
  return phase_ == 0 ? 1 : -1;
}

PauliAxis PauliString::axis(std::size_t site) const {
  return static_cast<PauliAxis>(static_cast<unsigned>(x(site)) | (static_cast<unsigned>(z(site)) << 1));
}

void PauliString::set_axis(std::size_t site, PauliAxis axis) {
  const std::uint64_t bit = std::uint64_t{1} << (site & 63);
  const auto code = static_cast<unsigned>(axis);
  auto& xw = x_[site >> 6];
  auto& zw = z_[site >> 6];
  xw = (code & 1u) ? (xw | bit) : (xw & ~bit);
  zw = (code & 2u) ? (zw | bit) : (zw & ~bit);
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) return false;
  }
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    total += std::popcount(x_[w] | z_[w]);
  }
  return total;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> sites;
  for (std::size_t q = 0; q < n_; ++q) {
    if (x(q) || z(q)) sites.push_back(q);
  }
  return sites;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  require_same_size(*this, rhs, "multiply");
  // Per-site products contributing +i: XY, YZ, ZX; contributing -i: YX, ZY, XZ.
  int acc = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    const std::uint64_t x1 = x_[w], z1 = z_[w], x2 = rhs.x_[w], z2 = rhs.z_[w];
    const std::uint64_t a_x = x1 & ~z1, a_y = x1 & z1, a_z = ~x1 & z1;
    const std::uint64_t b_x = x2 & ~z2, b_y = x2 & z2, b_z = ~x2 & z2;
    const std::uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
    const std::uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
    acc += std::popcount(plus) - std::popcount(minus);
    x_[w] = x1 ^ x2;
    z_[w] = z1 ^ z2;
  }
  phase_ = static_cast<unsigned>(((static_cast<int>(phase_ + rhs.phase_) + acc) % 4 + 4) % 4);
  return *this;
}

std::string PauliString::str() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  static constexpr char kAxis[4] = {'I', 'X', 'Z', 'Y'};
  std::string out = kPrefix[phase_];
  out.reserve(out.size() + n_);
  for (std::size_t q = 0; q < n_; ++q) {
    out.push_back(kAxis[static_cast<unsigned>(axis(q))]);
  }
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  PauliString out = a;
  out *= b;
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b, "commutes");
  std::uint64_t parity = 0;
  const auto& ax = a.x_words();
  const auto& az = a.z_words();
  const auto& bx = b.x_words();
  const auto& bz = b.z_words();
  for (std::size_t w = 0; w < ax.size(); ++w) {
    parity ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
  }
  return (std::popcount(parity) & 1) == 0;
}

Eigen::Matrix2cd axis_matrix(PauliAxis axis) {
  Eigen::Matrix2cd m;
  switch (axis) {
    case PauliAxis::I: m << 1, 0, 0, 1; break;
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

namespace {

// p = i^(phase + #Y) X^x Z^z, so p|b> = i^(phase + #Y) (-1)^{popcount(z & b)} |b ^ x>.
struct DenseMasks {
  std::uint64_t x;
  std::uint64_t z;
  cplx prefactor;
};

DenseMasks dense_masks(const PauliString& p, std::size_t limit) {
  if (p.num_qubits() > limit) {
    throw SizeLimitError("dense Pauli action refused for " + std::to_string(p.num_qubits()) +
                         " qubits (limit " + std::to_string(limit) + ")");
  }
  const std::uint64_t x = p.num_words() ? p.x_words()[0] : 0;
  const std::uint64_t z = p.num_words() ? p.z_words()[0] : 0;
  static const cplx kIPow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  const unsigned k = (p.phase_power() + static_cast<unsigned>(std::popcount(x & z))) & 3u;
  return {x, z, kIPow[k]};
}

}  // namespace

Eigen::MatrixXcd to_dense(const PauliString& p) {
  const DenseMasks m = dense_masks(p, kMaxDenseMatrixQubits);
  const std::size_t dim = std::size_t{1} << p.num_qubits();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const double s = (std::popcount(m.z & b) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(b ^ m.x), static_cast<Eigen::Index>(b)) = m.prefactor * s;
  }
  return out;
}

StateVector apply_pauli(const PauliString& p, const StateVector& v) {
  const DenseMasks m = dense_masks(p, 30);
  const std::size_t dim = std::size_t{1} << p.num_qubits();
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw std::invalid_argument("apply_pauli: statevector dimension mismatch");
  }
  StateVector out(v.size());
  for (std::size_t b = 0; b < dim; ++b) {
    const double s = (std::popcount(m.z & b) & 1) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(b ^ m.x)] = m.prefactor * s * v[static_cast<Eigen::Index>(b)];
  }
  return out;
}

double expectation(const PauliString& p, const StateVector& v) {
  if (!p.is_hermitian()) {
    throw std::invalid_argument("expectation: Pauli string " + p.str() + " is not Hermitian");
  }
  if (std::abs(v.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("expectation: statevector is not normalized");
  }
  const cplx value = v.dot(apply_pauli(p, v));  // conjugates the first argument
  if (std::abs(value.imag()) > 1e-10) {
    throw NumericalError("expectation: imaginary residue " + std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace camps
