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

#include <cstddef>

#include "camps/engine.hpp"
#include "camps/mps.hpp"

namespace camps {

/// Largest qubit count accepted by the exact 4^n enumeration.
inline constexpr std::size_t kMaxSreExactQubits = 10;

enum class SreMethod { exact_enumeration, product_additivity };

/// Stabilizer 2-Renyi entropy in bits.
struct SreResult {
  double value = 0.0;
  SreMethod method = SreMethod::exact_enumeration;
  std::size_t n = 0;
};

/// M_2 = n - log2 sum_P <P>^4 over all 4^n unsigned Pauli strings.
SreResult sre2_exact(const StateVector& v);
/// Sum of single-site values; every bond must have dimension 1.
SreResult sre2_product(const MPS& mps);
/// SRE of C|mps>, which equals the SRE of |mps> by Clifford invariance.
SreResult sre2_camps(const CampsState& state);

}  // namespace camps
