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

#include "stq/linalg.hpp"

namespace stq {

struct OtocSpec {
  CMatrix v;
  CMatrix w;
  CMatrix u;
  CMatrix rho;
};

struct OtocResult {
  Complex value;
  // Applications of U or U^dag used by the evaluation.
  int evolutions = 0;
};

struct FinalStateResult {
  // Postselection probability with the normalized projector onto |Phi>.
  double probability = 0.0;
  // The same with the supernormalized <BH| = N <Phi|.
  double supernormalized_weight = 0.0;
  CVector out_state;
  double fidelity = 0.0;
};

// Tr[rho V U^dag W U V^dag U^dag W^dag U]
Complex otoc_direct(const OtocSpec& s);
OtocResult otoc_direct_counted(const OtocSpec& s);
// Tr[A U^dag B U A rho A^dag U^dag B^dag U A^dag] for a projector A,
// evaluated as the forward-backward branch A -> U -> B -> U^dag -> A of a
// three-event cascade.
OtocResult otoc_via_pdm(
    const CMatrix& a, const CMatrix& b, const CMatrix& u, const CMatrix& rho);

// Final-state toy model on M (x) in (x) out, each of dimension N: start from
// |psi>_M |Phi>_{in,out} and project M (x) in onto (S^dag (x) I)|Phi>, the
// normalized final state <BH| / N. The out factor is left in S|psi>.
FinalStateResult final_state_conditional_output(
    const CVector& psi, const CMatrix& s);
// The same with a unitary v applied on the out factor before projection.
FinalStateResult final_state_conditional_output(
    const CVector& psi, const CMatrix& s, const CMatrix& v_out);
// Tr[A P U A rho A U^dag P] with A = I (x) I (x) |chi><chi|_out and P the
// normalized final-state projector.
double final_state_probe(
    const CVector& psi, const CMatrix& s, const CVector& chi);
// Commutator norm ||[A, P]|| of the probe and the projector.
double final_state_probe_commutator(
    const CVector& psi, const CMatrix& s, const CVector& chi);

// hbar = 1.
double harmonic_pdm_correlation(double m, double omega, double tau);
double harmonic_pi_correlation(double omega, double tau);
// int int q1 q2 |K(q2, q1)|^2 dq1 dq2 with the Euclidean propagator
// K = sqrt(m w / (2 pi sinh w tau)) exp(-m w [(q1^2 + q2^2) cosh - 2 q1 q2]
// / (2 sinh)), by the trapezoid rule on a rotated grid. Equals 2 x the PDM
// form.
double harmonic_kernel_moment(
    double m, double omega, double tau, int points = 401);
// The same moment after normalizing |K|^2 to a probability density.
double harmonic_normalized_kernel_moment(
    double m, double omega, double tau, int points = 401);

}  // namespace stq
