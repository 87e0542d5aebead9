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

#include <random>

#include "camps/errors.hpp"
#include "gtest/gtest.h"
#include "oracle.hpp"

using namespace camps;

namespace {

// Direct evaluation of the definition with dense Pauli matrices.
double brute_force_sre(const Eigen::VectorXcd& v, std::size_t n) {
  double total = 0.0;
  std::vector<int> axes(n, 0);
  for (std::size_t index = 0; index < (std::size_t{1} << (2 * n)); ++index) {
    for (std::size_t q = 0; q < n; ++q) axes[q] = static_cast<int>((index >> (2 * q)) & 3u);
    const double e = v.dot(oracle::pauli_dense(axes, 0) * v).real();
    total += e * e * e * e;
  }
  return static_cast<double>(n) - std::log2(total);
}

const double kMT = 2.0 - std::log2(3.0);

}  // namespace

TEST(magic, examples) {
  for (std::size_t n = 1; n <= 4; ++n) {
    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(std::size_t{1} << n);
    zero[0] = 1.0;
    EXPECT_NEAR(sre2_exact(zero).value, 0.0, 1e-12);
  }
  EXPECT_NEAR(sre2_exact(site_states::t_state()).value, 0.4150375, 1e-7);
  EXPECT_NEAR(sre2_exact(site_states::t_state()).value, kMT, 1e-12);
  Eigen::Vector2cd sqrt_t(1.0, std::polar(1.0, M_PI / 8));
  sqrt_t /= std::sqrt(2.0);
  EXPECT_NEAR(sre2_exact(sqrt_t).value, 3.0 - std::log2(7.0), 1e-12);
  EXPECT_NEAR(sre2_exact(sqrt_t).value, 0.1926451, 1e-7);
}

TEST(magic, enumeration_matches_brute_force) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 3; ++n) {
    const Eigen::VectorXcd v = oracle::random_state(n, rng);
    EXPECT_NEAR(sre2_exact(v).value, brute_force_sre(v, n), 1e-10);
  }
}

TEST(magic, product_path) {
  std::vector<Eigen::Vector2cd> sites(5, site_states::zero());
  EXPECT_NEAR(sre2_product(MPS::product_state(sites)).value, 0.0, 1e-14);
  for (std::size_t t = 0; t <= 5; ++t) {
    if (t > 0) sites[t - 1] = site_states::t_state();
    const SreResult r = sre2_product(MPS::product_state(sites));
    EXPECT_EQ(r.method, SreMethod::product_additivity);
    EXPECT_NEAR(r.value, static_cast<double>(t) * 0.4150375, 1e-6);
  }
  const std::vector<Eigen::Vector2cd> ttt(3, site_states::t_state());
  const MPS m = MPS::product_state(ttt);
  EXPECT_NEAR(sre2_product(m).value, sre2_exact(m.to_statevector()).value, 1e-10);

  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  EXPECT_THROW(sre2_product(MPS::from_statevector(bell)), std::invalid_argument);
}

TEST(magic, refusals) {
  Eigen::VectorXcd big = Eigen::VectorXcd::Zero(std::size_t{1} << 11);
  big[0] = 1.0;
  EXPECT_THROW(sre2_exact(big), SizeLimitError);
  Eigen::VectorXcd unnormalized = Eigen::VectorXcd::Zero(4);
  unnormalized[0] = 2.0;
  EXPECT_THROW(sre2_exact(unnormalized), std::invalid_argument);
}

TEST(magic, clifford_invariance) {
  std::mt19937_64 gen(13);
  for (std::size_t n = 2; n <= 6; ++n) {
    const Eigen::VectorXcd v = oracle::random_state(n, gen);
    CliffordTableau tab(n);
    Rng rng(n);
    apply_random_clifford_layer(tab, rng);
    const Eigen::VectorXcd w = clifford_to_dense(tab) * v;
    EXPECT_NEAR(sre2_exact(w).value, sre2_exact(v).value, 1e-9) << "n=" << n;
  }
}

TEST(magic, additivity) {
  std::mt19937_64 gen(17);
  for (std::size_t na = 1; na <= 4; ++na) {
    for (std::size_t nb = 1; na + nb <= 8; nb += 2) {
      const Eigen::VectorXcd a = oracle::random_state(na, gen), b = oracle::random_state(nb, gen);
      const Eigen::VectorXcd ab = oracle::kron_sites({a, b});
      EXPECT_NEAR(sre2_exact(ab).value, sre2_exact(a).value + sre2_exact(b).value, 1e-9);
    }
  }
}

TEST(magic, zero_on_all_two_qubit_stabilizer_states) {
  // Orbit of |00> under the two-qubit Clifford group, deduplicated as rays.
  std::vector<Eigen::Vector4cd> states;
  for (const LocalClifford& c : two_qubit_cliffords()) {
    const Eigen::Vector4cd v = c.matrix().col(0);
    bool seen = false;
    for (const auto& s : states) seen = seen || std::abs(std::abs(s.dot(v)) - 1.0) < 1e-9;
    if (!seen) states.push_back(v);
  }
  ASSERT_EQ(states.size(), 60u);
  for (const auto& s : states) EXPECT_NEAR(sre2_exact(s).value, 0.0, 1e-12);
}

TEST(magic, zero_on_random_stabilizer_states) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      CliffordTableau tab(n);
      if (n >= 2) {
        Rng rng(seed);
        apply_random_clifford_layer(tab, rng);
      }
      Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(std::size_t{1} << n);
      zero[0] = 1.0;
      const SreResult r = sre2_exact(clifford_to_dense(tab) * zero);
      EXPECT_NEAR(r.value, 0.0, 1e-10);
      EXPECT_GE(r.value, -1e-10);
    }
  }
}

TEST(magic, bounds) {
  std::mt19937_64 gen(19);
  for (std::size_t n = 1; n <= 6; ++n) {
    const SreResult r = sre2_exact(oracle::random_state(n, gen));
    EXPECT_GE(r.value, -1e-10);
    EXPECT_LE(r.value, static_cast<double>(n) * std::log2(3.0) + 1e-10);
  }
}

TEST(magic, camps_paths) {
  CampsState fresh(6);
  Rng rng(3);
  apply_clifford_layer(fresh, rng);
  EXPECT_NEAR(sre2_camps(fresh).value, 0.0, 1e-12);

  std::mt19937_64 gen(29);
  CampsState s(MPS::from_statevector(oracle::random_state(6, gen), {64, 0.0}));
  apply_clifford_layer(s, rng);
  const SreResult r = sre2_camps(s);
  EXPECT_EQ(r.method, SreMethod::exact_enumeration);
  EXPECT_NEAR(r.value, sre2_exact(s.to_statevector()).value, 1e-9);

  CampsState wide(MPS::from_statevector(oracle::random_state(11, gen), {64, 0.0}));
  EXPECT_THROW(sre2_camps(wide), SizeLimitError);
}
