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

#include "stq/channels.hpp"
#include "stq/linalg.hpp"

namespace stq {

// Operator on the Fock space truncated to photon numbers 0..n_max-1.
struct FockOperator {
  int n_max = 0;
  CMatrix matrix;
};

// Odd (eigenvalue -1) and even (+1) eigenprojectors of D(a) P D(a)^dag.
struct ParityProjectors {
  CMatrix odd;
  CMatrix even;
};

// Square integration grid [-radius, radius]^2 per complex variable,
// sampled at cell midpoints.
struct WignerGrid {
  double radius = 5.0;
  int points = 64;
};

CMatrix annihilation(int n_max);
CMatrix fock_state(int n, int n_max);
CVector coherent_state(Complex alpha, int n_max);
// exp(alpha a^dag - alpha^* a) on the truncated space.
CMatrix displacement(Complex alpha, int n_max);
// T(alpha) = 2 D(alpha) (-1)^{a^dag a} D(alpha)^dag
FockOperator displaced_parity(Complex alpha, int n_max);
// Matrix elements of the untruncated operators, restricted to n_max levels.
CMatrix displacement_exact(Complex alpha, int n_max);
FockOperator displaced_parity_exact(Complex alpha, int n_max);
ParityProjectors displaced_parity_projectors(Complex alpha, int n_max);

// W(alpha, beta) = 2 sum_i (-1)^i Tr{T(beta) E[Pi_i rho Pi_i]}; the complex
// variant returns the trace before taking the real part.
double spacetime_wigner_point(
    const CMatrix& rho, const KrausChannel& ch, Complex alpha, Complex beta,
    int n_max);
Complex spacetime_wigner_point_complex(
    const CMatrix& rho, const KrausChannel& ch, Complex alpha, Complex beta,
    int n_max);

// Two modes at one time: Tr[(T(alpha) (x) T(beta)) rho_12].
double spatial_wigner_point(
    const CMatrix& rho12, Complex alpha, Complex beta, int n_max);
// Same value from the two displaced-parity measurements done as a cascade on
// the two modes.
double spatial_wigner_point_cascade(
    const CMatrix& rho12, Complex alpha, Complex beta, int n_max);

// Midpoint-rule value of pi^-2 int int W d^2alpha d^2beta.
double wigner_normalization_check(
    const CMatrix& rho, const KrausChannel& ch, const WignerGrid& grid,
    int n_max);
double spatial_wigner_normalization(
    const CMatrix& rho12, const WignerGrid& grid, int n_max);

}  // namespace stq
