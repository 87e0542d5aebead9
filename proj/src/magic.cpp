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

#include "camps/magic.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "camps/errors.hpp"

namespace camps {

namespace {

void walsh_hadamard(std::vector<cplx>& f) {
  for (std::size_t h = 1; h < f.size(); h <<= 1) {
    for (std::size_t i = 0; i < f.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx a = f[j], b = f[j + h];
        f[j] = a + b;
        f[j + h] = a - b;
      }
    }
  }
}

}  // namespace

SreResult sre2_exact(const StateVector& v) {
  const auto dim = static_cast<std::size_t>(v.size());
  if (dim == 0 || (dim & (dim - 1)) != 0) throw std::invalid_argument("sre2_exact: length is not a power of two");
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  if (n > kMaxSreExactQubits) {
    throw SizeLimitError("sre2_exact refused for " + std::to_string(n) + " qubits (limit " +
                         std::to_string(kMaxSreExactQubits) + ")");
  }
  if (std::abs(v.squaredNorm() - 1.0) > 1e-8) throw std::invalid_argument("sre2_exact: state is not normalized");

  // For a fixed X mask a, <X^a Z^z> over all z is the Walsh-Hadamard
  // transform of conj(v[c ^ a]) v[c]. Signs and factors of i drop out of |.|^4.
  double total = 0.0;
  std::vector<cplx> f(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t c = 0; c < dim; ++c) {
      f[c] = std::conj(v[static_cast<Eigen::Index>(c ^ a)]) * v[static_cast<Eigen::Index>(c)];
    }
    walsh_hadamard(f);
    for (const cplx& e : f) {
      const double p = std::norm(e);
      total += p * p;
    }
  }
  return {std::max(0.0, static_cast<double>(n) - std::log2(total)), SreMethod::exact_enumeration, n};
}

SreResult sre2_product(const MPS& mps) {
  double value = 0.0;
  for (std::size_t i = 0; i < mps.num_sites(); ++i) {
    const Tensor3& t = mps.tensor(i);
    if (t.left != 1 || t.right != 1) {
      throw std::invalid_argument("sre2_product: bond dimension > 1 at site " + std::to_string(i) +
                                  "; use the exact path");
    }
    const cplx a0 = t(0, 0, 0), a1 = t(0, 1, 0);
    const double norm2 = std::norm(a0) + std::norm(a1);
    const cplx coherence = 2.0 * std::conj(a0) * a1 / norm2;
    const double rx = coherence.real(), ry = coherence.imag(), rz = (std::norm(a0) - std::norm(a1)) / norm2;
    value += 1.0 - std::log2(1.0 + std::pow(rx, 4) + std::pow(ry, 4) + std::pow(rz, 4));
  }
  return {std::max(0.0, value), SreMethod::product_additivity, mps.num_sites()};
}

SreResult sre2_camps(const CampsState& state) {
  if (state.mps.max_bond() == 1) return sre2_product(state.mps);
  const std::size_t n = state.num_qubits();
  if (n <= kMaxSreExactQubits) return sre2_exact(state.mps.to_statevector());
  throw SizeLimitError("sre2_camps: MPS part is entangled and n = " + std::to_string(n) +
                       " exceeds the exact limit of " + std::to_string(kMaxSreExactQubits) +
                       "; SRE is only available for product MPS at this size");
}

}  // namespace camps
