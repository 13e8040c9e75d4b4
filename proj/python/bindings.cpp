// Copyright 2026 The spacetime-qlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

#include "stq/channels.hpp"
#include "stq/cv_wigner.hpp"
#include "stq/gaussian.hpp"
#include "stq/histories.hpp"
#include "stq/linalg.hpp"
#include "stq/otoc.hpp"
#include "stq/pdm.hpp"
#include "stq/process_matrix.hpp"
#include "stq/timecrystal.hpp"

namespace py = pybind11;
using namespace stq;

namespace {

PauliString to_pauli(const py::object& o) {
  if (py::isinstance<py::str>(o)) return PauliString::from_label(o.cast<std::string>());
  return PauliString(o.cast<std::vector<int>>());
}

py::dict table_dict(const ProbabilityTable& t, int ma, int mb, int ka, int kb) {
  py::dict d;
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y)
      for (int a = 0; a < ka; ++a)
        for (int b = 0; b < kb; ++b) d[py::make_tuple(x, y, a, b)] = t.at(x, y, a, b);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spacetime quantum correlation toolkit";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<PostselectionError>(m, "PostselectionError", base.ptr());

  // operator algebra
  m.def("pauli", &pauli, py::arg("index"));
  m.def("pauli_operator", [](const py::object& p) { return pauli_operator(to_pauli(p)); },
        py::arg("paulis"));
  m.def("tensor", &tensor);
  m.def("partial_trace",
        [](const CMatrix& mat, const std::vector<int>& dims, const std::vector<int>& keep) {
          DimensionVector dv;
          dv.dims = dims;
          return partial_trace(mat, dv, keep);
        },
        py::arg("m"), py::arg("dims"), py::arg("keep"));
  m.def("hermitian_eigenvalues", &hermitian_eigenvalues, py::arg("m"),
        py::arg("tol") = kTol);
  m.def("trace_norm", &trace_norm);
  m.def("haar_random_unitary", &haar_random_unitary, py::arg("d"), py::arg("seed"));
  m.def("random_density_matrix", &random_density_matrix, py::arg("d"), py::arg("seed"));

  // channels
  py::class_<KrausChannel>(m, "KrausChannel")
      .def(py::init<std::vector<CMatrix>, double>(), py::arg("operators"),
           py::arg("tol") = kTol)
      .def("apply", &KrausChannel::apply)
      .def_property_readonly("in_dim", &KrausChannel::in_dim)
      .def_property_readonly("out_dim", &KrausChannel::out_dim)
      .def_property_readonly("operators", &KrausChannel::operators);
  m.def("identity_channel", &identity_channel);
  m.def("unitary_channel", &unitary_channel);
  m.def("depolarizing", &depolarizing, py::arg("p"));
  m.def("dephasing", &dephasing, py::arg("lam"));
  m.def("random_channel", &random_channel, py::arg("d"), py::arg("n_env"), py::arg("seed"));
  m.def("compose", &compose, py::arg("first"), py::arg("second"));
  py::class_<ChoiOperator>(m, "ChoiOperator")
      .def(py::init<CMatrix, int, int>(), py::arg("matrix"), py::arg("d_out"),
           py::arg("d_in"))
      .def_readonly("matrix", &ChoiOperator::matrix)
      .def_readonly("d_out", &ChoiOperator::d_out)
      .def_readonly("d_in", &ChoiOperator::d_in);
  py::class_<ChoiCheck>(m, "ChoiCheck")
      .def_readonly("tp", &ChoiCheck::tp)
      .def_readonly("hermitian_preserving", &ChoiCheck::hermitian_preserving)
      .def_readonly("cp", &ChoiCheck::cp);
  m.def("choi_of_channel", &choi_of_channel);
  m.def("apply_choi", &apply_choi);
  m.def("channel_of_choi", &channel_of_choi);
  m.def("check_choi", &check_choi, py::arg("choi"), py::arg("tol") = 1e-8);

  // pseudo-density matrices
  py::class_<TemporalProcess>(m, "TemporalProcess")
      .def(py::init([](CMatrix initial, std::vector<KrausChannel> steps) {
             return TemporalProcess{std::move(initial), std::move(steps)};
           }),
           py::arg("initial"), py::arg("steps"))
      .def_readonly("initial", &TemporalProcess::initial)
      .def_readonly("steps", &TemporalProcess::steps);
  py::class_<PDM>(m, "PDM")
      .def_readonly("n_events", &PDM::n_events)
      .def_readonly("qubits_per_event", &PDM::qubits_per_event)
      .def_readonly("matrix", &PDM::matrix);
  py::class_<CorrelationTriple>(m, "CorrelationTriple")
      .def_readonly("t11", &CorrelationTriple::t11)
      .def_readonly("t22", &CorrelationTriple::t22)
      .def_readonly("t33", &CorrelationTriple::t33);
  py::class_<TetrahedronMembership>(m, "TetrahedronMembership")
      .def_readonly("in_spatial", &TetrahedronMembership::in_spatial)
      .def_readonly("in_temporal", &TetrahedronMembership::in_temporal);
  m.def("build_pdm", &build_pdm);
  m.def("event_correlation",
        [](const TemporalProcess& p, const py::object& s) {
          return event_correlation(p, to_pauli(s));
        },
        py::arg("process"), py::arg("paulis"));
  m.def("causality_monotone", &causality_monotone);
  m.def("tetrahedron_point", &tetrahedron_point);
  m.def("classify", &classify, py::arg("triple"), py::arg("slack") = 1e-9);
  m.def("ctc_probability", &ctc_probability, py::arg("u_sa"), py::arg("rho_s"),
        py::arg("d"));

  // Gaussian states
  py::class_<GaussianState>(m, "GaussianState")
      .def_readonly("n_modes", &GaussianState::n_modes)
      .def_readonly("mean", &GaussianState::mean)
      .def_readonly("cov", &GaussianState::cov);
  py::class_<SpacetimeGaussian>(m, "SpacetimeGaussian")
      .def_readonly("n_modes", &SpacetimeGaussian::n_modes)
      .def_readonly("mean", &SpacetimeGaussian::mean)
      .def_readonly("cov", &SpacetimeGaussian::cov);
  py::class_<GaussianStep>(m, "GaussianStep")
      .def(py::init([](Eigen::Matrix2d s, Eigen::Matrix2d n) {
             return GaussianStep{s, n};
           }),
           py::arg("symplectic") = Eigen::Matrix2d::Identity().eval(),
           py::arg("noise") = Eigen::Matrix2d::Zero().eval());
  m.def("vacuum", &vacuum, py::arg("n_modes") = 1);
  m.def("thermal", &thermal, py::arg("nbar"));
  m.def("two_mode_squeezed", &two_mode_squeezed, py::arg("r"));
  m.def("temporal_gaussian", &temporal_gaussian, py::arg("initial"), py::arg("step"));
  m.def("uncertainty_ok", &uncertainty_ok, py::arg("cov"), py::arg("tol") = 1e-9);
  m.def("partial_transpose_gaussian", &partial_transpose_gaussian, py::arg("cov"),
        py::arg("mode"));

  // CV spacetime Wigner function
  py::class_<WignerGrid>(m, "WignerGrid")
      .def(py::init([](double r, int n) { return WignerGrid{r, n}; }),
           py::arg("radius") = 5.0, py::arg("points") = 64);
  m.def("fock_state", &fock_state, py::arg("n"), py::arg("n_max"));
  m.def("coherent_state", &coherent_state, py::arg("alpha"), py::arg("n_max"));
  m.def("full_dephasing", &full_dephasing, py::arg("d"));
  m.def("spacetime_wigner_point", &spacetime_wigner_point, py::arg("rho"),
        py::arg("channel"), py::arg("alpha"), py::arg("beta"), py::arg("n_max"));
  m.def("wigner_normalization_check", &wigner_normalization_check, py::arg("rho"),
        py::arg("channel"), py::arg("grid"), py::arg("n_max"));

  // process matrices and causal games
  py::class_<ProcessMatrix>(m, "ProcessMatrix")
      .def_readonly("w", &ProcessMatrix::w);
  py::class_<ProcessDiagnostics>(m, "ProcessDiagnostics")
      .def_readonly("psd", &ProcessDiagnostics::psd)
      .def_readonly("trace_ok", &ProcessDiagnostics::trace_ok)
      .def_readonly("fixed_point", &ProcessDiagnostics::fixed_point)
      .def_readonly("min_eigenvalue", &ProcessDiagnostics::min_eigenvalue)
      .def_property_readonly("valid", &ProcessDiagnostics::valid);
  py::class_<GameScores>(m, "GameScores")
      .def_readonly("gyni", &GameScores::gyni)
      .def_readonly("lgyni", &GameScores::lgyni);
  py::class_<Instrument>(m, "Instrument");
  m.def("gyni_process", &gyni_process);
  m.def("gyni_operations", &gyni_operations);
  m.def("sequential_process", &sequential_process, py::arg("rho"), py::arg("channel"));
  m.def("is_valid_process",
        [](const ProcessMatrix& w) { return is_valid_process(w); });
  m.def("probability_table",
        [](const ProcessMatrix& w, const Instrument& a, const Instrument& b) {
          return table_dict(probability_table(w, a, b), int(a.ops.size()),
                            int(b.ops.size()), int(a.ops[0].size()),
                            int(b.ops[0].size()));
        });
  m.def("gyni_demo", &gyni_demo);
  m.def("pdm_gyni_demo", &pdm_gyni_demo);
  m.def("count_causal_vertices", &count_causal_vertices, py::arg("m_a"), py::arg("m_b"),
        py::arg("k_a"), py::arg("k_b"));

  // decoherence functionals
  py::class_<HistoryFamily>(m, "HistoryFamily")
      .def_readonly("initial", &HistoryFamily::initial);
  py::class_<Consistency>(m, "Consistency")
      .def_readonly("weak", &Consistency::weak)
      .def_readonly("strong", &Consistency::strong);
  m.def("pauli_history_family", &pauli_history_family, py::arg("rho"),
        py::arg("unitaries"), py::arg("sigmas"));
  m.def("decoherence_matrix",
        [](const HistoryFamily& f) { return full_decoherence_functional(f).entries; });
  m.def("is_consistent",
        [](const HistoryFamily& f, double tol) { return is_consistent(f, tol); },
        py::arg("family"), py::arg("tol") = 1e-10);
  m.def("pdm_correlation_from_df", &pdm_correlation_from_df);

  // OTOCs and the final-state model
  m.def("otoc_direct",
        [](CMatrix v, CMatrix w, CMatrix u, CMatrix rho) {
          return otoc_direct({std::move(v), std::move(w), std::move(u), std::move(rho)});
        },
        py::arg("v"), py::arg("w"), py::arg("u"), py::arg("rho"));
  m.def("otoc_via_pdm",
        [](const CMatrix& a, const CMatrix& b, const CMatrix& u, const CMatrix& rho) {
          return otoc_via_pdm(a, b, u, rho).value;
        },
        py::arg("a"), py::arg("b"), py::arg("u"), py::arg("rho"));
  m.def("final_state_fidelity",
        [](const CVector& psi, const CMatrix& s) {
          return final_state_conditional_output(psi, s).fidelity;
        },
        py::arg("psi"), py::arg("s"));
  m.def("harmonic_pdm_correlation", &harmonic_pdm_correlation, py::arg("m"),
        py::arg("omega"), py::arg("tau"));
  m.def("harmonic_pi_correlation", &harmonic_pi_correlation, py::arg("omega"),
        py::arg("tau"));

  // temporal order and time crystals
  m.def("channel_decay_series",
        [](const CMatrix& rho, const KrausChannel& ch, const CMatrix& obs, int n) {
          return channel_decay_series(rho, ch, obs, n).values;
        },
        py::arg("rho"), py::arg("channel"), py::arg("obs"), py::arg("n_max"));
  m.def("symmetrization_series",
        [](double p, int n) { return symmetrization_series(p, n).values; },
        py::arg("p"), py::arg("n_max"));
  m.def("phase_flip_code_series",
        [](double p, int n) {
          const auto s = phase_flip_code_series(p, n);
          return py::make_tuple(s.xx.values, s.zz.values);
        },
        py::arg("p"), py::arg("n_max"));
  m.def("floquet_correlation_series",
        [](int length, double epsilon, std::uint64_t seed, int site, int periods,
           bool free_spins) {
          FloquetChainSpec s;
          s.length = length;
          s.epsilon = epsilon;
          s.seed = seed;
          if (free_spins) s.couplings.assign(std::max(length - 1, 0), 0.0);
          return floquet_correlation_series(s, site, periods).values;
        },
        py::arg("length"), py::arg("epsilon"), py::arg("seed"), py::arg("site"),
        py::arg("periods"), py::arg("free_spins") = false);
  m.def("subharmonic_peak",
        [](const std::vector<double>& values) {
          CorrelationSeries s;
          s.values = values;
          const auto p = subharmonic_peak(s);
          return py::make_tuple(p.peak_freq, p.peak_weight, p.split);
        });
}
