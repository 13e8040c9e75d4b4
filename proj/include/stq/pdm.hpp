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

#pragma once

#include <array>
#include <vector>

#include "stq/channels.hpp"
#include "stq/linalg.hpp"

namespace stq {

// A system of m qubits observed at steps.size() + 1 times, with one channel
// per gap. Every qubit at every time is an event; event index e refers to
// qubit e % m at time e / m.
struct TemporalProcess {
  CMatrix initial;
  std::vector<KrausChannel> steps;

  int n_times() const { return static_cast<int>(steps.size()) + 1; }
  int qubits_per_time() const;
  int n_events() const { return n_times() * qubits_per_time(); }
  // Throws unless the state is a qubit density matrix and all channels map
  // that space to itself.
  void validate(double tol = kTol) const;
};

// Pseudo-density matrix over n_events events of qubits_per_event qubits.
struct PDM {
  int n_events = 0;
  int qubits_per_event = 1;
  CMatrix matrix;
};

struct CorrelationTriple {
  double t11 = 0.0;
  double t22 = 0.0;
  double t33 = 0.0;
};

struct TetrahedronMembership {
  bool in_spatial = false;
  bool in_temporal = false;
};

class PostselectionError : public Error {
 public:
  explicit PostselectionError(const std::string& message) : Error(message) {}
};

// Lueders projectors (I + alpha sigma)/2 for alpha = +1, -1.
std::array<CMatrix, 2> pauli_projectors(const CMatrix& sigma);

// Expectation of the product of measurement outcomes. At each time the Pauli
// string restricted to that time's qubits is measured as one +-1 observable
// (identity strings are not measured); channels act between times.
double event_correlation(const TemporalProcess& proc, const PauliString& paulis);
// Probability of every outcome sequence of the same cascade; outcome bit t is
// set when time t returned -1.
std::vector<double> event_outcome_probabilities(
    const TemporalProcess& proc, const PauliString& paulis);

PDM build_pdm(const TemporalProcess& proc);
// Tr[(O_1 (x) ... (x) O_k) R] for observables with eigenvalues +-1.
double expectation_from_pdm(const PDM& r, const std::vector<CMatrix>& ops);
CMatrix marginal(const PDM& r, int event);
// ||R||_1 - 1, clamped at zero.
double causality_monotone(const PDM& r);

CorrelationTriple correlation_triple(const PDM& r);
CorrelationTriple tetrahedron_point(const TemporalProcess& proc);
TetrahedronMembership classify(const CorrelationTriple& t, double slack = 1e-9);

// Two-event correlation conditioned on a final projector eta applied after
// the second measurement.
double postselected_correlation(
    const CMatrix& rho, const KrausChannel& ch, const PauliString& i,
    const PauliString& j, const CMatrix& eta);
double postselection_probability(
    const CMatrix& rho, const KrausChannel& ch, const PauliString& i,
    const PauliString& j, const CMatrix& eta);
PDM build_postselected_pdm(
    const CMatrix& rho, const KrausChannel& ch, const CMatrix& eta);

// Success probability of the postselected closed timelike curve built from
// U_SA: (1/d^2) Tr[C rho C^dag] with C = Tr_A U_SA.
double ctc_probability(const CMatrix& u_sa, const CMatrix& rho_s, int d);
// Same quantity by evolving rho_S (x) |Phi><Phi|_AB and projecting AB onto
// |Phi>.
double ctc_probability_explicit(const CMatrix& u_sa, const CMatrix& rho_s, int d);

// <sigma_a(t_1), sigma_b(t_N)> for N = 1..n_max with ch applied N-1 times.
std::vector<double> repeated_channel_correlations(
    const CMatrix& rho, const KrausChannel& ch, const CMatrix& sigma_a,
    const CMatrix& sigma_b, int n_max);

}  // namespace stq
