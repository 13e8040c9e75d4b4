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

#include <vector>

#include "stq/linalg.hpp"

namespace stq {

// Quadrature ordering is (q_1, p_1, ..., q_N, p_N). Covariances use
// sigma_ij = 2<{x_i, x_j}> - 2<x_i><x_j>, so the vacuum has sigma = I.
struct GaussianState {
  int n_modes = 0;
  RVector mean;
  RMatrix cov;
};

// Two-time state of one mode, events ordered (q(t1), p(t1), q(t2), p(t2)).
// The covariance need not satisfy the uncertainty relation.
struct SpacetimeGaussian {
  int n_modes = 0;
  RVector mean;
  RMatrix cov;
};

// One-mode evolution x -> S x plus additive Gaussian noise (in covariance
// units) between the two times.
struct GaussianStep {
  Eigen::Matrix2d symplectic = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d noise = Eigen::Matrix2d::Zero();
};

RMatrix symplectic_form(int n_modes);
bool is_symplectic(const Eigen::Matrix2d& s, double tol = 1e-10);

GaussianState vacuum(int n_modes);
GaussianState thermal(double nbar);
GaussianState two_mode_squeezed(double r);

// min eigenvalue of sigma + i Omega >= -tol.
bool uncertainty_ok(const RMatrix& cov, double tol = 1e-9);
double uncertainty_min_eigenvalue(const RMatrix& cov);

// Spacetime covariance at finite measurement resolution s (outcome noise
// variance 1/(2s) per quadrature measurement).
SpacetimeGaussian temporal_gaussian_at_resolution(
    const GaussianState& initial, const GaussianStep& step, double s);
// s -> infinity limit by Richardson extrapolation over s in {1e2, 1e3, 1e4}.
SpacetimeGaussian temporal_gaussian(
    const GaussianState& initial, const GaussianStep& step);

// Closed forms for identity evolution of the vacuum and of a thermal state
// with nbar = sinh^2 r.
RMatrix sigma_vacuum_two_time();
RMatrix sigma_thermal_two_time(double r);

// q -> q, p -> -p on one mode.
RMatrix partial_transpose_gaussian(const RMatrix& cov, int mode);

// chi(xi) = exp[-1/4 xi^T (Omega sigma Omega^T) xi - i (Omega d)^T xi]
Complex characteristic_function(
    const RVector& mean, const RMatrix& cov, const RVector& xi);

}  // namespace stq
