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

#include <cstdint>
#include <vector>

#include "stq/channels.hpp"
#include "stq/linalg.hpp"
#include "stq/pdm.hpp"

namespace stq {

// Subsystem order is A_I, A_O, B_I, B_O; global past and future are trivial.
struct ProcessDims {
  int a_in = 2;
  int a_out = 2;
  int b_in = 2;
  int b_out = 2;

  DimensionVector as_vector() const { return {a_in, a_out, b_in, b_out}; }
  long total() const { return long(a_in) * a_out * b_in * b_out; }
};

struct ProcessMatrix {
  ProcessDims dims;
  CMatrix w;
};

// Local operations in the input-first Choi representation
// C = sum_ij |i><j| (x) M(|i><j|) on X_I (x) X_O. ops[x][a] is the operation
// for input x and outcome a.
struct Instrument {
  int d_in = 2;
  int d_out = 2;
  std::vector<std::vector<CMatrix>> ops;

  int n_inputs() const { return static_cast<int>(ops.size()); }
  int n_outcomes() const {
    return ops.empty() ? 0 : static_cast<int>(ops[0].size());
  }
  // max over inputs of |sum_a Tr_out ops[x][a] - I|.
  double completeness_deviation() const;
};

struct ProcessDiagnostics {
  bool psd = false;
  bool trace_ok = false;
  bool fixed_point = false;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  double expected_trace = 0.0;
  double projector_residual = 0.0;

  bool valid() const { return psd && trace_ok && fixed_point; }
};

// p(a, b | x, y) stored with a running fastest.
class ProbabilityTable {
 public:
  ProbabilityTable(int m_a, int m_b, int k_a, int k_b);

  int m_a() const { return m_a_; }
  int m_b() const { return m_b_; }
  int k_a() const { return k_a_; }
  int k_b() const { return k_b_; }
  double& at(int x, int y, int a, int b) { return p_[index(x, y, a, b)]; }
  double at(int x, int y, int a, int b) const { return p_[index(x, y, a, b)]; }
  const std::vector<double>& values() const { return p_; }
  // max over (x, y) of |sum_ab p - 1|.
  double normalization_deviation() const;

  bool operator<(const ProbabilityTable& o) const { return p_ < o.p_; }

 private:
  std::size_t index(int x, int y, int a, int b) const;
  int m_a_, m_b_, k_a_, k_b_;
  std::vector<double> p_;
};

struct GameScores {
  double gyni = 0.0;
  double lgyni = 0.0;
};

// (I_X / d_X) (x) Tr_X W for every subsystem X listed.
CMatrix trace_and_replace(
    const CMatrix& w, const DimensionVector& dims,
    const std::vector<int>& subsystems);
ProcessMatrix lv_project(const ProcessMatrix& w);
// The projector with the thesis's duplicated A_I A_O B_O term, kept only to
// show that it is not idempotent.
ProcessMatrix lv_project_as_printed(const ProcessMatrix& w);
ProcessDiagnostics is_valid_process(
    const ProcessMatrix& w, double psd_tol = 1e-9, double trace_tol = 1e-8,
    double fixed_tol = 1e-8);

// Input-first Choi matrix of a CP map.
CMatrix cj_of_map(const KrausMap& m);
// W = rho^{A_I} (x) C_E^{A_O B_I} (x) I^{B_O}: Alice's output reaches Bob
// through E.
ProcessMatrix sequential_process(const CMatrix& rho, const KrausChannel& e);
// Projective measurement of sigma followed by re-preparation of the
// eigenstate: outcome 0 is +1, outcome 1 is -1.
Instrument pauli_instrument(const CMatrix& sigma);
// Outcome uniformly random, output maximally mixed.
Instrument uniform_noise_instrument(int n_inputs, int n_outcomes, int d);

double process_correlation(
    const ProcessMatrix& w, const Instrument& a, const Instrument& b, int x,
    int y, int a_out, int b_out);
ProbabilityTable probability_table(
    const ProcessMatrix& w, const Instrument& a, const Instrument& b);

double gyni_score(const ProbabilityTable& p, double tol = 1e-8);
double lgyni_score(const ProbabilityTable& p, double tol = 1e-8);

std::uint64_t count_causal_vertices(int m_a, int m_b, int k_a, int k_b);
// Deterministic one-way-signalling strategies in either order, deduplicated.
std::vector<ProbabilityTable> enumerate_causal_vertices(
    int m_a, int m_b, int k_a, int k_b);

// W = [I + (Z Z Z I + Z I X X)/sqrt 2] / 4.
ProcessMatrix gyni_process();
// x = 0: identity channel with outcome 1; x = 1: measure Z with outcome a
// and prepare |0>.
Instrument gyni_operations();
// The thesis's printed x = 1 operations (measure Z, output I/2).
Instrument gyni_operations_as_printed();
GameScores gyni_demo();

// Four-event PDM of a qubit process, R = 2^-4 sum_s <s> s with Pauli
// correlations <s> = Tr[W^T s] / (d_AO d_BO).
PDM process_pdm(const ProcessMatrix& w);
// p(a, b | x, y) = d_AO d_BO Tr[R (A (x) B)] from a process PDM.
ProbabilityTable pdm_probability_table(
    const PDM& r, const ProcessDims& dims, const Instrument& a,
    const Instrument& b);
GameScores pdm_gyni_scores(const Instrument& a, const Instrument& b);
GameScores pdm_gyni_demo();

}  // namespace stq
