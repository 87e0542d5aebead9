# Copyright 2026 The CAMPS Simulator Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Clifford-augmented matrix product state simulator."""

from ._camps import (
    CampsState,
    CliffordTableau,
    NumericalError,
    PauliAxis,
    PauliString,
    PhaseGate,
    SizeLimitError,
    __version__,
    asymptotic_moments,
    asymptotic_pr,
    disentanglable_dist,
    encode_success_prob,
    evolve_ising,
    ising_matrix,
    q_pochhammer,
    run_doped_circuit,
    sre2_exact,
)

__all__ = [
    "CampsState",
    "CliffordTableau",
    "NumericalError",
    "PauliAxis",
    "PauliString",
    "PhaseGate",
    "SizeLimitError",
    "asymptotic_moments",
    "asymptotic_pr",
    "disentanglable_dist",
    "encode_success_prob",
    "evolve_ising",
    "ising_matrix",
    "q_pochhammer",
    "run_doped_circuit",
    "sre2_exact",
]
