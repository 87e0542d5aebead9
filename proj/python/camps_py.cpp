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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "camps/analytics.hpp"
#include "camps/engine.hpp"
#include "camps/errors.hpp"
#include "camps/hamiltonian.hpp"
#include "camps/magic.hpp"

namespace py = pybind11;
using namespace camps;

namespace {

PhaseGateSpec gate_from_kind(const std::string& kind, std::size_t site) {
  if (kind == "t") return PhaseGateSpec::t(site);
  if (kind == "sqrt_t") return PhaseGateSpec::sqrt_t(site);
  throw std::invalid_argument("gate must be 't' or 'sqrt_t'; use PhaseGate for arbitrary angles");
}

py::dict report_to_dict(const DisentangleReport& r) {
  py::list gates;
  for (const auto& g : r.gates_accepted) gates.append(py::make_tuple(g.pair, g.representative));
  py::dict d;
  d["sweeps"] = r.sweeps_used;
  d["gates"] = gates;
  d["ee_before"] = r.ee_before;
  d["ee_after"] = r.ee_after;
  return d;
}

}  // namespace

PYBIND11_MODULE(_camps, m) {
  m.doc() = "Clifford-augmented matrix product state simulator";
  m.attr("__version__") = CAMPS_VERSION;

  py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<PauliAxis>(m, "PauliAxis")
      .value("I", PauliAxis::I)
      .value("X", PauliAxis::X)
      .value("Y", PauliAxis::Y)
      .value("Z", PauliAxis::Z);

  py::class_<PauliString>(m, "PauliString")
      .def(py::init(&PauliString::parse), py::arg("text"))
      .def_property_readonly("num_qubits", &PauliString::num_qubits)
      .def_property_readonly("weight", &PauliString::weight)
      .def("support", &PauliString::support)
      .def("commutes", [](const PauliString& a, const PauliString& b) { return commutes(a, b); })
      .def("to_dense", [](const PauliString& p) { return to_dense(p); })
      .def("__mul__", [](const PauliString& a, const PauliString& b) { return multiply(a, b); })
      .def("__eq__", [](const PauliString& a, const PauliString& b) { return a == b; })
      .def("__str__", &PauliString::str)
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.str() + "')"; });

  py::class_<CliffordTableau>(m, "CliffordTableau")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_property_readonly("num_qubits", &CliffordTableau::num_qubits)
      .def("forward", [](const CliffordTableau& c, const PauliString& p) { return c.conjugate(p, Conjugation::forward); })
      .def("backward", [](const CliffordTableau& c, const PauliString& p) { return c.conjugate(p, Conjugation::backward); })
      .def("inverse", &CliffordTableau::inverse)
      .def("is_valid", &CliffordTableau::is_valid)
      .def("to_dense", [](const CliffordTableau& c) { return clifford_to_dense(c); })
      .def("__str__", &CliffordTableau::dump);

  py::class_<PhaseGateSpec>(m, "PhaseGate")
      .def(py::init([](double phi, PauliAxis axis, std::size_t site) { return PhaseGateSpec{phi, axis, site}; }),
           py::arg("phi"), py::arg("axis") = PauliAxis::Z, py::arg("site") = 0)
      .def_readwrite("phi", &PhaseGateSpec::phi)
      .def_readwrite("axis", &PhaseGateSpec::axis)
      .def_readwrite("site", &PhaseGateSpec::site)
      .def_static("t", &PhaseGateSpec::t, py::arg("site") = 0)
      .def_static("sqrt_t", &PhaseGateSpec::sqrt_t, py::arg("site") = 0);

  py::class_<CampsState>(m, "CampsState")
      .def(py::init([](std::size_t n, std::size_t chi_max, double cutoff) {
             return CampsState(n, TruncationParams{chi_max, cutoff});
           }),
           py::arg("n"), py::arg("chi_max") = 256, py::arg("svd_cutoff") = 1e-12)
      .def_property_readonly("num_qubits", &CampsState::num_qubits)
      .def_property_readonly("tableau", [](const CampsState& s) { return s.tableau; })
      .def_property_readonly("bond_dims", [](const CampsState& s) { return s.mps.bond_dims(); })
      .def_property_readonly("max_bond", [](const CampsState& s) { return s.mps.max_bond(); })
      .def("entanglement_profile", [](const CampsState& s) { return s.mps.entanglement_profile(); })
      .def("max_entanglement", [](const CampsState& s) { return s.mps.max_entanglement(); })
      .def("mps_statevector", [](const CampsState& s) { return s.mps.to_statevector(); })
      .def("statevector", &CampsState::to_statevector)
      .def(
          "apply_clifford_layer",
          [](CampsState& s, std::uint64_t seed, std::uint64_t instance, std::uint64_t step) {
            Rng rng(seed, instance, step);
            return apply_clifford_layer(s, rng).size();
          },
          py::arg("seed"), py::arg("instance") = 0, py::arg("step") = 0,
          "Applies a random layer of 2 n^2 two-qubit Cliffords; returns the gate count.")
      .def(
          "apply_phase_gate",
          [](CampsState& s, const PhaseGateSpec& g, bool disentangle) -> py::object {
            const auto report = apply_phase_gate(s, g, disentangle);
            return report ? py::object(report_to_dict(*report)) : py::none();
          },
          py::arg("gate"), py::arg("disentangle") = true)
      .def(
          "apply_gate",
          [](CampsState& s, const std::string& kind, std::size_t site, bool disentangle) -> py::object {
            const auto report = apply_phase_gate(s, gate_from_kind(kind, site), disentangle);
            return report ? py::object(report_to_dict(*report)) : py::none();
          },
          py::arg("kind"), py::arg("site") = 0, py::arg("disentangle") = true)
      .def(
          "disentangle", [](CampsState& s, double tol) { return report_to_dict(greedy_disentangle(s, {tol})); },
          py::arg("tol") = 1e-10)
      .def("expectation", [](const CampsState& s, const PauliString& p) { return expectation_pauli(s, p); })
      .def("sre", [](const CampsState& s) { return sre2_camps(s).value; });

  m.def(
      "sre2_exact", [](const Eigen::VectorXcd& v) { return sre2_exact(v).value; }, py::arg("statevector"),
      "Stabilizer 2-Renyi entropy in bits of a normalized statevector (n <= 10).");

  m.def("encode_success_prob", &encode_success_prob, py::arg("k"), py::arg("n"));
  m.def(
      "disentanglable_dist", [](std::size_t n) { return disentanglable_dist(n).probs; }, py::arg("n"));
  m.def(
      "q_pochhammer",
      [](double a, double q, std::optional<std::size_t> order) { return q_pochhammer(a, q, order.value_or(kInfiniteOrder)); },
      py::arg("a"), py::arg("q"), py::arg("order") = py::none());
  m.def("asymptotic_pr", &asymptotic_pr, py::arg("j"));
  m.def("asymptotic_moments", &asymptotic_moments);

  m.def(
      "run_doped_circuit",
      [](std::size_t n, std::size_t steps, const std::string& gate, std::size_t instances, std::uint64_t seed,
         std::size_t threads, bool track_state) {
        DopedCircuitConfig cfg;
        cfg.n = n;
        cfg.steps = steps;
        cfg.gate = gate_from_kind(gate, 0);
        cfg.instances = instances;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.track_state = track_state;
        std::vector<CircuitInstanceResult> results;
        {
          py::gil_scoped_release release;
          results = run_doped_circuit(cfg);
        }
        py::list out;
        for (const auto& inst : results) {
          py::list steps_out;
          for (const auto& r : inst.steps) {
            py::dict d;
            d["step"] = r.step;
            d["max_ee_mps"] = r.max_ee_mps;
            d["max_ee_state"] = r.max_ee_state ? py::cast(*r.max_ee_state) : py::none();
            d["sre_density"] = r.sre_density ? py::cast(*r.sre_density) : py::none();
            d["max_bond"] = r.max_bond;
            d["sweeps"] = r.sweeps;
            steps_out.append(d);
          }
          py::dict d;
          d["instance"] = inst.instance;
          d["t_star"] = inst.t_star;
          d["steps"] = steps_out;
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("steps"), py::arg("gate") = "t", py::arg("instances") = 1, py::arg("seed") = 0,
      py::arg("threads") = 1, py::arg("track_state") = false);

  m.def(
      "evolve_ising",
      [](std::size_t n, double J, double hx, double hz, double dt, double t_max, std::size_t chi_max,
         double trotter_dt) {
        QuenchConfig cfg;
        cfg.n = n;
        cfg.J = J;
        cfg.h_x = hx;
        cfg.h_z = hz;
        cfg.dt = dt;
        cfg.t_max = t_max;
        cfg.chi_max = chi_max;
        cfg.trotter_dt = trotter_dt;
        std::vector<QuenchRecord> records;
        {
          py::gil_scoped_release release;
          records = evolve_camps(cfg);
        }
        py::list out;
        for (const auto& r : records) {
          py::dict d;
          d["time"] = r.time;
          d["max_ee_mps"] = r.max_ee_mps;
          d["max_ee_state"] = r.max_ee_state;
          d["max_ee_backprop"] = r.max_ee_backprop ? py::cast(*r.max_ee_backprop) : py::none();
          d["sre_density"] = r.sre_density ? py::cast(*r.sre_density) : py::none();
          d["max_bond"] = r.max_bond;
          d["energy"] = r.energy;
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("J") = 1.0, py::arg("hx") = 0.3, py::arg("hz") = 0.5, py::arg("dt") = 0.05,
      py::arg("t_max") = 2.0, py::arg("chi_max") = 256, py::arg("trotter_dt") = 0.005,
      "Ising quench from |y+>^n; one record per time step.");

  m.def(
      "ising_matrix",
      [](std::size_t n, double J, double hx, double hz) {
        QuenchConfig cfg;
        cfg.n = n;
        cfg.J = J;
        cfg.h_x = hx;
        cfg.h_z = hz;
        return ising_hamiltonian(cfg).to_dense();
      },
      py::arg("n"), py::arg("J") = 1.0, py::arg("hx") = 0.3, py::arg("hz") = 0.5);
}
