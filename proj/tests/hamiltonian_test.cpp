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

#include "camps/hamiltonian.hpp"

#include <random>

#include "camps/errors.hpp"
#include "gtest/gtest.h"
#include "oracle.hpp"

using namespace camps;

namespace {

QuenchConfig quench(std::size_t n, double hx) {
  QuenchConfig cfg;
  cfg.n = n;
  cfg.h_x = hx;
  return cfg;
}

// Ising Hamiltonian assembled from Kronecker products.
Eigen::MatrixXcd dense_ising(std::size_t n, double j, double hx, double hz) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  auto op = [&](std::vector<std::pair<std::size_t, int>> factors) {
    std::vector<Eigen::MatrixXcd> ops(n, Eigen::MatrixXcd::Identity(2, 2));
    for (auto [site, axis] : factors) ops[site] = oracle::pauli2(axis);
    return oracle::kron_sites(ops);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) h += j * op({{i, 1}, {i + 1, 1}});
  for (std::size_t i = 0; i < n; ++i) h += hx * op({{i, 1}}) + hz * op({{i, 2}});
  return h;
}

// exp(-i H t) v through the eigendecomposition.
Eigen::VectorXcd dense_evolve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& v, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phases = (es.eigenvalues().cast<oracle::cplx>() * oracle::cplx(0, -t)).array().exp();
  return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * v));
}

Eigen::VectorXcd y_plus_dense(std::size_t n) {
  return oracle::kron_sites(std::vector<Eigen::MatrixXcd>(n, Eigen::MatrixXcd(site_states::y_plus())));
}

MPS y_plus_mps(std::size_t n, TruncationParams trunc) {
  return MPS::product_state(std::vector<Eigen::Vector2cd>(n, site_states::y_plus()), trunc);
}

CliffordTableau random_tableau(std::size_t n, std::uint64_t seed) {
  CliffordTableau tab(n);
  Rng rng(seed);
  apply_random_clifford_layer(tab, rng);
  return tab;
}

}  // namespace

TEST(hamiltonian, ising_terms) {
  QuenchConfig cfg = quench(2, 0.3);
  const PauliSumHamiltonian h = ising_hamiltonian(cfg);
  ASSERT_EQ(h.terms.size(), 5u);
  const char* expected[] = {"+XX", "+XI", "+IX", "+ZI", "+IZ"};
  const double coeffs[] = {1.0, 0.3, 0.3, 0.5, 0.5};
  for (std::size_t t = 0; t < 5; ++t) {
    EXPECT_EQ(h.terms[t].pauli.str(), expected[t]);
    EXPECT_EQ(h.terms[t].coeff, coeffs[t]);
  }
  EXPECT_EQ(ising_hamiltonian(quench(16, 0.3)).terms.size(), 47u);
  EXPECT_TRUE(ising_hamiltonian(quench(3, 0.3)).to_dense().isApprox(dense_ising(3, 1.0, 0.3, 0.5), 1e-14));
  EXPECT_THROW(ising_hamiltonian(quench(1, 0.3)), std::invalid_argument);
}

TEST(hamiltonian, conjugation) {
  const PauliSumHamiltonian h = ising_hamiltonian(quench(2, 0.3));
  const PauliSumHamiltonian same = conjugate_hamiltonian(h, CliffordTableau::identity(2));
  for (std::size_t t = 0; t < h.terms.size(); ++t) {
    EXPECT_EQ(same.terms[t].pauli, h.terms[t].pauli);
    EXPECT_EQ(same.terms[t].coeff, h.terms[t].coeff);
  }
  CliffordTableau had(2);
  had.left_multiply(gates::H(), {0});
  const PauliSumHamiltonian hh = conjugate_hamiltonian(h, had);
  EXPECT_EQ(hh.terms[0].pauli.str(), "+ZX");
  EXPECT_EQ(hh.terms[1].pauli.str(), "+ZI");
  EXPECT_EQ(hh.terms[3].pauli.str(), "+XI");
  EXPECT_EQ(hh.terms[1].coeff, 0.3);
  EXPECT_EQ(hh.terms[3].coeff, 0.5);

  const std::size_t n = 4;
  const PauliSumHamiltonian h4 = ising_hamiltonian(quench(n, 0.3));
  const CliffordTableau tab = random_tableau(n, 3);
  const Eigen::MatrixXcd u = clifford_to_dense(tab);
  const PauliSumHamiltonian conj = conjugate_hamiltonian(h4, tab);
  EXPECT_EQ(conj.terms.size(), h4.terms.size());
  EXPECT_TRUE(conj.to_dense().isApprox(u.adjoint() * dense_ising(n, 1.0, 0.3, 0.5) * u, 1e-12));
}

TEST(hamiltonian, conjugation_preserves_spectrum) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const PauliSumHamiltonian h = ising_hamiltonian(quench(n, 0.7));
    const PauliSumHamiltonian c = conjugate_hamiltonian(h, random_tableau(n, n));
    const Eigen::VectorXd a = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h.to_dense()).eigenvalues();
    const Eigen::VectorXd b = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(c.to_dense()).eigenvalues();
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(hamiltonian, mpo_compilation) {
  const PauliSumHamiltonian ising = ising_hamiltonian(quench(8, 0.3));
  const MPO compressed = pauli_sum_to_mpo(ising);
  EXPECT_LE(compressed.max_bond(), 4u);
  EXPECT_TRUE(compressed.to_dense().isApprox(dense_ising(8, 1.0, 0.3, 0.5), 1e-10));

  const PauliSumHamiltonian conj = conjugate_hamiltonian(ising, random_tableau(8, 5));
  const MPO raw = pauli_sum_to_mpo(conj, false);
  EXPECT_LE(raw.max_bond(), 24u);
  EXPECT_LE(raw.max_bond(), conj.terms.size());
  const Eigen::MatrixXcd dense = conj.to_dense();
  EXPECT_TRUE(raw.to_dense().isApprox(dense, 1e-12));
  const MPO small = pauli_sum_to_mpo(conj);
  EXPECT_LE(small.max_bond(), raw.max_bond());
  EXPECT_TRUE(small.to_dense().isApprox(dense, 1e-10));

  // Random signed sums including identity terms.
  std::mt19937_64 gen(7);
  PauliSumHamiltonian random{5, {}};
  for (int t = 0; t < 12; ++t) {
    PauliString p(5);
    for (std::size_t q = 0; q < 5; ++q) p.set_axis(q, static_cast<PauliAxis>(gen() % 4));
    if (t == 3) p = PauliString(5);
    p.set_phase_power(2 * static_cast<unsigned>(gen() % 2));
    random.terms.push_back({std::uniform_real_distribution<double>(-1, 1)(gen), p});
  }
  EXPECT_TRUE(pauli_sum_to_mpo(random, false).to_dense().isApprox(random.to_dense(), 1e-12));
  EXPECT_TRUE(pauli_sum_to_mpo(random).to_dense().isApprox(random.to_dense(), 1e-10));
}

TEST(hamiltonian, mpo_action_on_y_plus) {
  const std::size_t n = 4;
  const MPO op = pauli_sum_to_mpo(ising_hamiltonian(quench(n, 0.3)));
  MPS mps = y_plus_mps(n, {64, 0.0});
  mps.apply_mpo(op, false);
  const Eigen::VectorXcd expected = dense_ising(n, 1.0, 0.3, 0.5) * y_plus_dense(n);
  EXPECT_NEAR((mps.to_statevector() - expected).norm(), 0.0, 1e-10);
}

TEST(hamiltonian, energy_of_y_plus_vanishes) {
  for (double j : {1.0, -0.4}) {
    for (double hx : {0.0, 0.3, 1.1}) {
      QuenchConfig cfg = quench(6, hx);
      cfg.J = j;
      const MPO op = pauli_sum_to_mpo(ising_hamiltonian(cfg));
      EXPECT_NEAR(std::abs(mpo_expectation(y_plus_mps(6, {}), op)), 0.0, 1e-12);
    }
  }
}

TEST(hamiltonian, exact_evolve) {
  const std::size_t n = 6;
  const PauliSumHamiltonian h = ising_hamiltonian(quench(n, 0.3));
  std::mt19937_64 gen(11);
  const Eigen::VectorXcd v = oracle::random_state(n, gen);
  EXPECT_EQ(exact_evolve(v, h, 0.0), v);
  const Eigen::VectorXcd a = exact_evolve(v, h, 1.3);
  EXPECT_NEAR(a.norm(), 1.0, 1e-10);
  EXPECT_NEAR((a - dense_evolve(dense_ising(n, 1.0, 0.3, 0.5), v, 1.3)).norm(), 0.0, 1e-9);
  const Eigen::VectorXcd b = exact_evolve(exact_evolve(v, h, 0.4), h, 0.9);
  EXPECT_NEAR((a - b).norm(), 0.0, 1e-8);
  PauliSumHamiltonian big = ising_hamiltonian(quench(13, 0.3));
  EXPECT_THROW(exact_evolve(Eigen::VectorXcd::Zero(2), big, 1.0), SizeLimitError);
}

TEST(hamiltonian, tdvp_zero_operator_is_identity) {
  std::mt19937_64 gen(13);
  MPS mps = MPS::from_statevector(oracle::random_state(5, gen), {64, 0.0});
  const StateVector before = mps.to_statevector();
  const MPO zero = pauli_sum_to_mpo(PauliSumHamiltonian{5, {}});
  tdvp_step(mps, zero, 0.1, TdvpVariant::two_site);
  EXPECT_NEAR((mps.to_statevector() - before).norm(), 0.0, 1e-10);
  tdvp_step(mps, zero, 0.1, TdvpVariant::one_site);
  EXPECT_NEAR((mps.to_statevector() - before).norm(), 0.0, 1e-10);
}

TEST(hamiltonian, two_site_tdvp_matches_dense) {
  const std::size_t n = 8;
  const QuenchConfig cfg = quench(n, 0.3);
  const MPO op = pauli_sum_to_mpo(ising_hamiltonian(cfg));
  MPS mps = y_plus_mps(n, {16, 0.0});
  const double dt = 0.02;
  double max_drift = 0.0;
  for (int step = 0; step < 100; ++step) {
    tdvp_step(mps, op, dt, TdvpVariant::two_site);
    max_drift = std::max(max_drift, std::abs(mpo_expectation(mps, op).real()));
    ASSERT_NEAR(mps.norm(), 1.0, 1e-8);
  }
  const Eigen::VectorXcd expected = dense_evolve(dense_ising(n, 1.0, 0.3, 0.5), y_plus_dense(n), 2.0);
  EXPECT_GE(oracle::fidelity(mps.to_statevector(), expected), 1.0 - 1e-4);
  EXPECT_LE(max_drift, 1e-6);
}

TEST(hamiltonian, one_site_tdvp_with_padded_bonds_matches_dense) {
  const std::size_t n = 6;
  const PauliSumHamiltonian h = ising_hamiltonian(quench(n, 0.3));
  const MPO op = pauli_sum_to_mpo(h);
  MPS mps = y_plus_mps(n, {8, 0.0});
  mps.expand_bonds(8);
  const auto dims = mps.bond_dims();
  for (int step = 0; step < 50; ++step) tdvp_step(mps, op, 0.02, TdvpVariant::one_site);
  EXPECT_EQ(mps.bond_dims(), dims);
  EXPECT_NEAR(mps.norm(), 1.0, 1e-8);
  EXPECT_GE(oracle::fidelity(mps.to_statevector(), exact_evolve(y_plus_dense(n), h, 1.0)), 1.0 - 1e-4);
}

TEST(hamiltonian, tdvp_handles_nonlocal_terms_with_padded_bonds) {
  const std::size_t n = 6;
  const PauliSumHamiltonian h = conjugate_hamiltonian(ising_hamiltonian(quench(n, 0.3)), random_tableau(n, 9));
  const MPO op = pauli_sum_to_mpo(h);
  MPS mps = y_plus_mps(n, {8, 0.0});
  for (int step = 0; step < 25; ++step) {
    mps.expand_bonds(8);
    tdvp_step(mps, op, 0.02, TdvpVariant::two_site);
  }
  EXPECT_GE(oracle::fidelity(mps.to_statevector(), exact_evolve(y_plus_dense(n), h, 0.5)), 1.0 - 1e-4);
}

TEST(hamiltonian, backprop_inverts_matchgate_evolution) {
  QuenchConfig cfg = quench(6, 0.0);
  cfg.dt = 0.02;
  cfg.t_max = 1.0;
  cfg.svd_cutoff = 1e-14;
  const auto points = matchgate_backprop_ee(cfg, 0.005);
  ASSERT_EQ(points.size(), 51u);
  for (const auto& p : points) EXPECT_LE(p.max_ee_backprop, 1e-4) << "t=" << p.time;
  EXPECT_GT(points.back().max_ee_raw, 0.1);
}

TEST(hamiltonian, backprop_trotter_convergence) {
  QuenchConfig cfg = quench(6, 0.3);
  cfg.dt = 0.05;
  cfg.t_max = 1.0;
  cfg.svd_cutoff = 1e-14;
  const auto coarse = matchgate_backprop_ee(cfg, 0.01);
  const auto fine = matchgate_backprop_ee(cfg, 0.005);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    EXPECT_NEAR(coarse[i].max_ee_backprop, fine[i].max_ee_backprop, 1e-3);
    EXPECT_LE(fine[i].max_ee_backprop, fine[i].max_ee_raw + 1e-9) << "t=" << fine[i].time;
  }
}

TEST(hamiltonian, camps_evolution_tracks_exact_state) {
  QuenchConfig cfg = quench(6, 0.3);
  cfg.dt = 0.05;
  cfg.t_max = 2.0;
  cfg.svd_cutoff = 1e-12;
  cfg.trotter_dt = 0.0;
  const PauliSumHamiltonian h = ising_hamiltonian(cfg);
  const Eigen::VectorXcd v0 = y_plus_dense(cfg.n);
  double worst = 1.0;
  const auto records = evolve_camps(cfg, [&](const QuenchRecord& rec, const CampsState& camps, const MPS& plain) {
    const Eigen::VectorXcd exact = exact_evolve(v0, h, rec.time);
    const Eigen::VectorXcd physical = camps.to_statevector();
    worst = std::min(worst, oracle::fidelity(physical, exact));
    EXPECT_NEAR(oracle::max_bipartite_entropy(physical, cfg.n), oracle::max_bipartite_entropy(plain.to_statevector(), cfg.n),
                1e-3);
    EXPECT_NEAR(rec.max_ee_state, oracle::max_bipartite_entropy(plain.to_statevector(), cfg.n), 1e-9);
  });
  EXPECT_GE(worst, 1.0 - 1e-3);
  ASSERT_EQ(records.size(), 41u);
  EXPECT_EQ(records[0].max_ee_mps, 0.0);
  EXPECT_EQ(records[0].max_ee_state, 0.0);
  EXPECT_NEAR(*records[0].sre_density, 0.0, 1e-12);
  EXPECT_GT(records[1].max_ee_mps, 0.0);
  EXPECT_LE(records[1].max_ee_mps, records[1].max_ee_state + 1e-6);
  // Pointwise the MPS part can briefly exceed the physical entropy once an
  // earlier frame choice spreads H; on average it stays below.
  double mps_area = 0.0, state_area = 0.0;
  for (const auto& rec : records) {
    mps_area += rec.max_ee_mps;
    state_area += rec.max_ee_state;
    EXPECT_NEAR(rec.energy, 0.0, 1e-6);
  }
  EXPECT_LT(mps_area, state_area);
}

TEST(hamiltonian, config_validation) {
  QuenchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.dt = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = QuenchConfig();
  cfg.t_max = 0.01;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = QuenchConfig();
  cfg.trotter_dt = 0.03;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = QuenchConfig();
  EXPECT_EQ(cfg.num_steps(), 40u);
}
