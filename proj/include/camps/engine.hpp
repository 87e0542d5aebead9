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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "camps/mps.hpp"
#include "camps/pauli.hpp"
#include "camps/rng.hpp"
#include "camps/tableau.hpp"

namespace camps {

/// |psi> = C |mps>.
struct CampsState {
  CliffordTableau tableau;
  MPS mps;

  CampsState() = default;
  /// C = I over |0...0>.
  explicit CampsState(std::size_t n, TruncationParams truncation = {});
  /// C = I over the given MPS.
  explicit CampsState(MPS m);

  std::size_t num_qubits() const { return mps.num_sites(); }
  /// Dense C * |mps> (up to global phase), for n <= kMaxDenseMatrixQubits.
  StateVector to_statevector() const;
};

/// exp(i phi P) for a single-site Pauli P.
struct PhaseGateSpec {
  double phi = 0.0;
  PauliAxis axis = PauliAxis::Z;
  std::size_t site = 0;

  /// T = diag(1, e^{i pi/4}) up to phase.
  static PhaseGateSpec t(std::size_t site = 0) { return {-M_PI / 8, PauliAxis::Z, site}; }
  /// sqrt(T) = diag(1, e^{i pi/8}) up to phase.
  static PhaseGateSpec sqrt_t(std::size_t site = 0) { return {-M_PI / 16, PauliAxis::Z, site}; }
};

enum class SweepSchedule {
  /// Pairs (0,1), ..., (n-2,n-1), then back down to (0,1).
  back_and_forth,
  /// A fresh random permutation of the pairs on every sweep.
  random_order,
};

struct DisentangleOptions {
  double tol = 1e-10;
  std::size_t max_sweeps = 100;
  SweepSchedule schedule = SweepSchedule::back_and_forth;
  /// Seed for SweepSchedule::random_order.
  std::uint64_t seed = 0;
};

struct AcceptedGate {
  /// Left site of the pair (pair, pair+1).
  std::size_t pair = 0;
  /// Index into coset_representatives().
  std::size_t representative = 0;
  TwoQubitCliffordId id;
};

struct DisentangleReport {
  std::size_t sweeps_used = 0;
  std::vector<AcceptedGate> gates_accepted;
  double ee_before = 0.0;
  double ee_after = 0.0;
};

/// C <- V C. The MPS is untouched.
void apply_clifford(CampsState& state, const LocalClifford& gate, std::span<const std::size_t> sites);
void apply_clifford(CampsState& state, const LocalClifford& gate, std::initializer_list<std::size_t> sites);

/// The operator cos(phi) I + i sin(phi) p as an MPO. Bond dimension is 2
/// across bonds inside the support of p and 1 elsewhere.
MPO phase_gate_mpo(const PauliString& p, double phi);

/// Absorbs exp(i phi P) as C (cos phi + i sin phi C^dagger P C) and optionally
/// runs the disentangler afterwards.
std::optional<DisentangleReport> apply_phase_gate(CampsState& state, const PhaseGateSpec& gate,
                                                  bool disentangle_after, const DisentangleOptions& options = {});

/// Greedy two-qubit Clifford sweeps over adjacent pairs. Accepted gates act
/// on the MPS immediately and are folded into C so |psi> is unchanged.
DisentangleReport greedy_disentangle(CampsState& state, const DisentangleOptions& options = {});

/// <psi|p|psi> = <mps|C^dagger p C|mps> for Hermitian p.
double expectation_pauli(const CampsState& state, const PauliString& p);

/// Applies a random layer of 2 n^2 two-qubit Cliffords to C.
std::vector<AppliedGate> apply_clifford_layer(CampsState& state, Rng& rng);

struct DopedCircuitConfig {
  std::size_t n = 8;
  std::size_t steps = 12;
  PhaseGateSpec gate = PhaseGateSpec::t();
  std::size_t instances = 1;
  std::uint64_t seed = 0;
  TruncationParams truncation{256, 1e-12};
  DisentangleOptions disentangle;
  /// Also records the max EE of the physical state C|mps> (dense, n <= 12).
  bool track_state = false;
  std::size_t threads = 1;
};

/// Threshold above which a post-disentangle state counts as entangled.
inline constexpr double kDisentangledThreshold = 1e-8;

struct CircuitStepRecord {
  std::size_t instance = 0;
  /// 1-based count of phase gates applied so far.
  std::size_t step = 0;
  double max_ee_mps = 0.0;
  std::optional<double> max_ee_state;
  std::optional<double> sre_density;
  std::size_t max_bond = 1;
  std::vector<std::size_t> bond_dims;
  std::size_t sweeps = 0;
};

struct CircuitInstanceResult {
  std::size_t instance = 0;
  std::vector<CircuitStepRecord> steps;
  /// Last step whose state is still fully disentangled (0 if the first fails,
  /// `steps` if none fails).
  std::size_t t_star = 0;
};

/// Runs one doped-circuit instance. The RNG stream for step s is keyed by
/// (seed, instance, s), so results do not depend on scheduling.
CircuitInstanceResult run_doped_instance(const DopedCircuitConfig& cfg, std::size_t instance);

/// All instances, in instance order, using up to cfg.threads workers.
std::vector<CircuitInstanceResult> run_doped_circuit(const DopedCircuitConfig& cfg);

}  // namespace camps
