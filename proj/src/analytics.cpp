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

#include "camps/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace camps {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_rational success_rational(std::size_t k, std::size_t n) {
  const cpp_int four_k = cpp_int(1) << (2 * k);
  const cpp_int four_n = cpp_int(1) << (2 * n);
  const cpp_int two_nk = cpp_int(1) << (n - k);
  return cpp_rational(1) - cpp_rational((four_k - 1) * two_nk, four_n - 1);
}

}  // namespace

double encode_success_prob(std::size_t k, std::size_t n) {
  if (n == 0) throw std::invalid_argument("encode_success_prob: n must be positive");
  if (k > n) {
    throw std::invalid_argument("encode_success_prob: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  }
  return success_rational(k, n).convert_to<double>();
}

double DisentanglableDistribution::mean() const {
  double m = 0.0;
  for (std::size_t t = 0; t < probs.size(); ++t) m += static_cast<double>(t) * probs[t];
  return m;
}

double DisentanglableDistribution::stddev() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t t = 0; t < probs.size(); ++t) v += (static_cast<double>(t) - m) * (static_cast<double>(t) - m) * probs[t];
  return std::sqrt(v);
}

DisentanglableDistribution disentanglable_dist(std::size_t n) {
  if (n == 0) throw std::invalid_argument("disentanglable_dist: n must be positive");
  DisentanglableDistribution d;
  d.n = n;
  d.probs.resize(n + 1);
  // p_{k} = encode_success_prob(k - 1, n); p_{n+1} = 0.
  cpp_rational survive = 1;
  for (std::size_t t = 0; t <= n; ++t) {
    const cpp_rational next = success_rational(t, n);
    d.probs[t] = (survive * (1 - next)).convert_to<double>();
    survive *= next;
  }
  return d;
}

double q_pochhammer(double a, double q, std::size_t order) {
  if (order == kInfiniteOrder && !(std::abs(q) < 1.0)) {
    throw std::invalid_argument("q_pochhammer: the infinite product needs |q| < 1");
  }
  double result = 1.0, qk = 1.0;
  for (std::size_t k = 0; k < order; ++k) {
    const double term = a * qk;
    if (order == kInfiniteOrder && std::abs(term) < 1e-16) break;
    result *= 1.0 - term;
    qk *= q;
  }
  return result;
}

double asymptotic_pr(std::size_t j) {
  static const double inf = q_pochhammer(0.5, 0.5, kInfiniteOrder);
  return inf * std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(j, 2000))) / q_pochhammer(0.5, 0.5, j);
}

std::pair<double, double> asymptotic_moments() {
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0;; ++j) {
    const double p = asymptotic_pr(j);
    m0 += p;
    m1 += static_cast<double>(j) * p;
    m2 += static_cast<double>(j) * static_cast<double>(j) * p;
    if (j > 8 && static_cast<double>(j * j) * p < 1e-18) break;
  }
  const double mean = m1 / m0;
  return {mean, std::sqrt(m2 / m0 - mean * mean)};
}

}  // namespace camps
