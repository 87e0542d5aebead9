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

#include "camps/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "camps/magic.hpp"
#include "camps/parallel.hpp"

namespace camps {

CampsState::CampsState(std::size_t n, TruncationParams truncation)
    : tableau(CliffordTableau::identity(n)), mps(n, truncation) {}

CampsState::CampsState(MPS m) : tableau(CliffordTableau::identity(m.num_sites())), mps(std::move(m)) {}

StateVector CampsState::to_statevector() const { return clifford_to_dense(tableau) * mps.to_statevector(); }

void apply_clifford(CampsState& state, const LocalClifford& gate, std::span<const std::size_t> sites) {
  state.tableau.left_multiply(gate, sites);
}

void apply_clifford(CampsState& state, const LocalClifford& gate, std::initializer_list<std::size_t> sites) {
  state.tableau.left_multiply(gate, sites);
}

std::vector<AppliedGate> apply_clifford_layer(CampsState& state, Rng& rng) {
  return apply_random_clifford_layer(state.tableau, rng);
}

MPO phase_gate_mpo(const PauliString& p, double phi) {
  if (!p.is_hermitian()) throw std::invalid_argument("phase_gate_mpo: Pauli string must be Hermitian");
  const std::size_t n = p.num_qubits();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const cplx c = std::cos(phi), s = cplx(0.0, std::sin(phi)) * static_cast<double>(p.sign());

  MPO op = MPO::identity(n);
  const std::vector<std::size_t> support = p.support();
  if (support.empty()) {
    op.sites[0] = Tensor4();
    op.sites[0].add_block(0, 0, (c + s) * id);
    return op;
  }
  const std::size_t lo = support.front(), hi = support.back();
  if (lo == hi) {
    op.sites[lo] = Tensor4();
    op.sites[lo].add_block(0, 0, c * id + s * axis_matrix(p.axis(lo)));
    return op;
  }
  // Channel 0 carries c * I, channel 1 carries s * P.
  for (std::size_t k = lo; k <= hi; ++k) {
    const Eigen::Matrix2cd pk = axis_matrix(p.axis(k));
    if (k == lo) {
      Tensor4 t(1, 2);
      t.add_block(0, 0, c * id);
      t.add_block(0, 1, s * pk);
      op.sites[k] = t;
    } else if (k == hi) {
      Tensor4 t(2, 1);
      t.add_block(0, 0, id);
      t.add_block(1, 0, pk);
      op.sites[k] = t;
    } else {
      Tensor4 t(2, 2);
      t.add_block(0, 0, id);
      t.add_block(1, 1, pk);
      op.sites[k] = t;
    }
  }
  return op;
}

std::optional<DisentangleReport> apply_phase_gate(CampsState& state, const PhaseGateSpec& gate,
                                                  bool disentangle_after, const DisentangleOptions& options) {
  const std::size_t n = state.num_qubits();
  if (gate.site >= n) throw std::out_of_range("apply_phase_gate: site out of range");
  if (!(gate.phi > -M_PI && gate.phi <= M_PI)) throw std::invalid_argument("apply_phase_gate: phi outside (-pi, pi]");
  const PauliString p = PauliString::single(n, gate.site, gate.axis);
  const PauliString conjugated = state.tableau.conjugate(p, Conjugation::backward);
  state.mps.apply_mpo(phase_gate_mpo(conjugated, gate.phi), true);
  if (!disentangle_after) return std::nullopt;
  return greedy_disentangle(state, options);
}

namespace {

const std::vector<Eigen::Matrix4cd>& representative_matrices() {
  static const std::vector<Eigen::Matrix4cd> mats = [] {
    std::vector<Eigen::Matrix4cd> out;
    for (TwoQubitCliffordId id : coset_representatives()) out.emplace_back(two_qubit_clifford(id).matrix());
    return out;
  }();
  return mats;
}

// Trials every representative on (i, i+1); commits the best one if it lowers
// the bond entropy by more than tol. Returns the representative index or -1.
int disentangle_pair(MPS& mps, std::size_t i, bool move_right, double tol) {
  mps.move_center(move_right ? i : i + 1);
  const Tensor3& a = mps.tensor(i);
  const Tensor3& b = mps.tensor(i + 1);
  const RowMatrix block = two_site_block(a, b);
  const double current = entropy_bits(singular_values(block));
  if (current <= tol) return -1;

  const auto& mats = representative_matrices();
  int best = -1;
  double best_ee = current;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    RowMatrix trial = block;
    apply_gate_to_block(mats[k], trial, a.left, b.right);
    const double ee = entropy_bits(singular_values(trial));
    if (ee < best_ee) {
      best_ee = ee;
      best = static_cast<int>(k);
    }
  }
  if (best < 0 || best_ee >= current - tol) return -1;
  mps.apply_two_site_gate(mats[static_cast<std::size_t>(best)], i, move_right);
  return best;
}

}  // namespace

DisentangleReport greedy_disentangle(CampsState& state, const DisentangleOptions& options) {
  DisentangleReport report;
  MPS& mps = state.mps;
  const std::size_t n = mps.num_sites();
  report.ee_before = mps.max_entanglement();
  if (n < 2) {
    report.sweeps_used = 1;
    report.ee_after = report.ee_before;
    return report;
  }

  const auto& reps = coset_representatives();
  std::vector<std::pair<std::size_t, bool>> order;
  for (std::size_t sweep = 0; sweep < std::max<std::size_t>(options.max_sweeps, 1); ++sweep) {
    order.clear();
    if (options.schedule == SweepSchedule::back_and_forth) {
      for (std::size_t i = 0; i + 1 < n; ++i) order.emplace_back(i, true);
      for (std::size_t i = n - 2; i-- > 0;) order.emplace_back(i, false);
    } else {
      Rng rng(options.seed, 0, sweep);
      std::vector<std::size_t> pairs(n - 1);
      std::iota(pairs.begin(), pairs.end(), 0);
      for (std::size_t k = pairs.size(); k > 1; --k) std::swap(pairs[k - 1], pairs[rng.below(k)]);
      for (std::size_t i : pairs) order.emplace_back(i, true);
    }

    bool accepted = false;
    for (const auto& [i, right] : order) {
      const int k = disentangle_pair(mps, i, right, options.tol);
      if (k < 0) continue;
      const TwoQubitCliffordId id = reps[static_cast<std::size_t>(k)];
      report.gates_accepted.push_back({i, static_cast<std::size_t>(k), id});
      // |psi> = C V^dagger (V |mps>).
      state.tableau.right_multiply(two_qubit_clifford(id).inverse(), {i, i + 1});
      accepted = true;
    }
    ++report.sweeps_used;
    if (!accepted) break;
  }
  if (!report.gates_accepted.empty()) mps.compress();
  report.ee_after = mps.max_entanglement();
  return report;
}

double expectation_pauli(const CampsState& state, const PauliString& p) {
  if (!p.is_hermitian()) throw std::invalid_argument("expectation_pauli: Pauli string must be Hermitian");
  return state.mps.expectation(state.tableau.conjugate(p, Conjugation::backward));
}

namespace {

CircuitStepRecord make_record(const CampsState& state, const DopedCircuitConfig& cfg, std::size_t instance,
                              std::size_t step, std::size_t sweeps) {
  CircuitStepRecord rec;
  rec.instance = instance;
  rec.step = step;
  rec.max_ee_mps = state.mps.max_entanglement();
  rec.bond_dims = state.mps.bond_dims();
  rec.max_bond = state.mps.max_bond();
  rec.sweeps = sweeps;
  if (state.mps.max_bond() == 1 || cfg.n <= kMaxSreExactQubits) {
    rec.sre_density = sre2_camps(state).value / static_cast<double>(cfg.n);
  }
  if (cfg.track_state) {
    rec.max_ee_state = MPS::from_statevector(state.to_statevector(), {std::size_t{1} << 12, 0.0}).max_entanglement();
  }
  return rec;
}

}  // namespace

CircuitInstanceResult run_doped_instance(const DopedCircuitConfig& cfg, std::size_t instance) {
  if (cfg.n < 2) throw std::invalid_argument("run_doped_instance: n must be at least 2");
  CircuitInstanceResult result;
  result.instance = instance;
  CampsState state(cfg.n, cfg.truncation);
  result.steps.push_back(make_record(state, cfg, instance, 0, 0));
  bool failed = false;
  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    Rng rng(cfg.seed, instance, step);
    apply_clifford_layer(state, rng);
    DisentangleOptions opts = cfg.disentangle;
    opts.seed = mix64(cfg.seed ^ mix64(instance)) ^ step;
    const auto report = apply_phase_gate(state, cfg.gate, true, opts);
    result.steps.push_back(make_record(state, cfg, instance, step, report->sweeps_used));
    if (!failed && result.steps.back().max_ee_mps > kDisentangledThreshold) {
      failed = true;
      result.t_star = step - 1;
    }
  }
  if (!failed) result.t_star = cfg.steps;
  return result;
}

std::vector<CircuitInstanceResult> run_doped_circuit(const DopedCircuitConfig& cfg) {
  std::vector<CircuitInstanceResult> results(cfg.instances);
  parallel_for(cfg.instances, cfg.threads, [&](std::size_t i) { results[i] = run_doped_instance(cfg, i); });
  return results;
}

}  // namespace camps
