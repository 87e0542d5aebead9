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
#include <functional>
#include <optional>
#include <vector>

#include "camps/engine.hpp"
#include "camps/linalg.hpp"
#include "camps/mps.hpp"
#include "camps/pauli.hpp"
#include "camps/tableau.hpp"

namespace camps {

struct PauliTerm {
  double coeff = 0.0;
  /// Hermitian; a -1 sign is allowed and multiplies coeff.
  PauliString pauli;
};

struct PauliSumHamiltonian {
  std::size_t n = 0;
  std::vector<PauliTerm> terms;

  /// H|v> on a dense statevector.
  StateVector apply(const StateVector& v) const;
  Eigen::MatrixXcd to_dense() const;
  /// Sum of |coeff|, an upper bound on the operator norm.
  double norm_bound() const;
};

enum class TdvpVariant { one_site, two_site };

struct QuenchConfig {
  std::size_t n = 8;
  double J = 1.0;
  double h_x = 0.3;
  double h_z = 0.5;
  double dt = 0.05;
  double t_max = 2.0;
  std::size_t chi_max = 256;
  double svd_cutoff = 1e-10;
  /// Run the disentangler every this many steps; 0 disables it.
  std::size_t disentangle_every = 1;
  TdvpVariant variant = TdvpVariant::two_site;
  /// Trotter step of the matchgate back-propagation; 0 disables it.
  double trotter_dt = 0.005;
  DisentangleOptions disentangle;
  KrylovOptions krylov;

  /// Throws std::invalid_argument on inconsistent values.
  void validate() const;
  std::size_t num_steps() const;
};

/// H = J sum X_i X_{i+1} + h_x sum X_i + h_z sum Z_i, open boundary, 3n-1 terms
/// (XX bonds, then X fields, then Z fields).
PauliSumHamiltonian ising_hamiltonian(const QuenchConfig& cfg);

/// Term-wise C^dagger H C.
PauliSumHamiltonian conjugate_hamiltonian(const PauliSumHamiltonian& h, const CliffordTableau& c);

/// Exact MPO of the sum. Bond channels are created per bond only as needed
/// ("not started", "finished", and one per term spanning the bond), so the
/// bond dimension never exceeds the number of terms. With `compress`, the MPO
/// is SVD-compressed dropping singular values below 1e-12 of the largest.
MPO pauli_sum_to_mpo(const PauliSumHamiltonian& h, bool compress = true);

/// SVD compression of an MPO, dropping singular values below
/// relative_cutoff times the largest at each bond.
MPO compress_mpo(MPO op, double relative_cutoff = 1e-12);

/// <mps|op|mps> / <mps|mps>.
cplx mpo_expectation(const MPS& mps, const MPO& op);

/// One symmetric TDVP step of exp(-i op dt): a left-to-right half step then a
/// right-to-left half step. Local exponentials use Lanczos. The two-site
/// variant truncates with the MPS's parameters; the one-site variant keeps
/// bond dimensions fixed.
void tdvp_step(MPS& mps, const MPO& op, double dt, TdvpVariant variant, const KrylovOptions& krylov = {});

/// Largest qubit count accepted by exact_evolve.
inline constexpr std::size_t kMaxExactEvolveQubits = 12;

/// exp(-i H t) v by Lanczos with substeps.
StateVector exact_evolve(const StateVector& v, const PauliSumHamiltonian& h, double t);

/// Applies a second-order Trotterization of exp(+i Hbar t), Hbar = J sum XX +
/// h_z sum Z, to a copy of `psi` and returns the copy.
MPS matchgate_backprop(const MPS& psi, const QuenchConfig& cfg, double t, double trotter_dt);

struct QuenchRecord {
  std::size_t step = 0;
  double time = 0.0;
  /// Max EE of the CAMPS MPS part after disentangling.
  double max_ee_mps = 0.0;
  /// Max EE of the physical state (plain MPS branch).
  double max_ee_state = 0.0;
  std::optional<double> max_ee_backprop;
  std::optional<double> sre_density;
  std::size_t max_bond = 1;
  std::vector<std::size_t> bond_dims;
  std::size_t sweeps = 0;
  /// <H> on the plain branch.
  double energy = 0.0;
};

/// Called after every step with the record, the CAMPS state and the plain branch.
using QuenchObserver = std::function<void(const QuenchRecord&, const CampsState&, const MPS&)>;

/// Quench from |y+>^n. Each step conjugates H through the current Clifford
/// frame, advances the CAMPS MPS by one TDVP step, and periodically
/// disentangles. A plain MPS branch is advanced alongside to record the
/// physical entanglement and, if enabled, the matchgate back-propagated one.
std::vector<QuenchRecord> evolve_camps(const QuenchConfig& cfg, const QuenchObserver& observer = {});

struct BackpropPoint {
  double time = 0.0;
  double max_ee_raw = 0.0;
  double max_ee_backprop = 0.0;
};

/// Plain-MPS trajectory with the back-propagated entanglement at every step.
std::vector<BackpropPoint> matchgate_backprop_ee(const QuenchConfig& cfg, double trotter_dt);

}  // namespace camps
