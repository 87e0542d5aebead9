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
#include <limits>
#include <utility>
#include <vector>

namespace camps {

/// Probability that a (k+1)-th logical |T> can be encoded on n qubits given k
/// already encoded: 1 - (4^k - 1) 2^(n-k) / (4^n - 1). Evaluated with exact
/// rationals. Requires k <= n.
double encode_success_prob(std::size_t k, std::size_t n);

/// Pr(t) for t = 0..n: the number of T gates after which the state is still
/// Clifford-disentanglable.
struct DisentanglableDistribution {
  std::size_t n = 0;
  std::vector<double> probs;

  double mean() const;
  double stddev() const;
};

DisentanglableDistribution disentanglable_dist(std::size_t n);

inline constexpr std::size_t kInfiniteOrder = std::numeric_limits<std::size_t>::max();

/// (a; q)_order = prod_{k<order} (1 - a q^k). For kInfiniteOrder the product
/// stops once a factor differs from 1 by less than 1e-16 (requires |q| < 1).
double q_pochhammer(double a, double q, std::size_t order);

/// Large-n limit Pr(n - t = j) = (1/2;1/2)_inf 2^-j / (1/2;1/2)_j.
double asymptotic_pr(std::size_t j);

/// (mean, standard deviation) of n - t under asymptotic_pr.
std::pair<double, double> asymptotic_moments();

}  // namespace camps
