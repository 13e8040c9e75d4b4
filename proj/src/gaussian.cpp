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

#include "stq/gaussian.hpp"

#include <array>
#include <cmath>

namespace stq {

RMatrix symplectic_form(int n_modes) {
  RMatrix omega = RMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

bool is_symplectic(const Eigen::Matrix2d& s, double tol) {
  return std::abs(s.determinant() - 1.0) <= tol;
}

GaussianState vacuum(int n_modes) {
  if (n_modes < 1) throw DomainError("mode count must be positive");
  return {n_modes, RVector::Zero(2 * n_modes),
          RMatrix::Identity(2 * n_modes, 2 * n_modes)};
}

GaussianState thermal(double nbar) {
  if (!(nbar >= 0.0)) throw DomainError("nbar must be nonnegative");
  return {1, RVector::Zero(2), (2.0 * nbar + 1.0) * RMatrix::Identity(2, 2)};
}

GaussianState two_mode_squeezed(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  RMatrix cov(4, 4);
  cov << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
  return {2, RVector::Zero(4), cov};
}

double uncertainty_min_eigenvalue(const RMatrix& cov) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) {
    throw DimensionError("covariance must be square with even dimension");
  }
  const int n = static_cast<int>(cov.rows()) / 2;
  CMatrix h = cov.cast<Complex>() + Complex(0.0, 1.0) *
                                        symplectic_form(n).cast<Complex>();
  return min_eigenvalue(h);
}

bool uncertainty_ok(const RMatrix& cov, double tol) {
  return uncertainty_min_eigenvalue(cov) >= -tol;
}

namespace {

void check_step(const GaussianState& initial, const GaussianStep& step) {
  if (initial.n_modes != 1 || initial.mean.size() != 2 ||
      initial.cov.rows() != 2) {
    throw DimensionError("temporal Gaussian states need a single mode");
  }
  if (!is_symplectic(step.symplectic)) {
    throw PreconditionError("evolution matrix is not symplectic");
  }
}

}  // namespace

SpacetimeGaussian temporal_gaussian_at_resolution(
    const GaussianState& initial, const GaussianStep& step, double s) {
  check_step(initial, step);
  if (!(s > 0.0)) throw DomainError("resolution must be positive");
  // Work in variance units V = sigma / 2 with [q, p] = i.
  const Eigen::Vector2d d = initial.mean;
  const Eigen::Matrix2d v0 = 0.5 * initial.cov;
  const Eigen::Matrix2d& sm = step.symplectic;
  const double noise = 1.0 / (2.0 * s);

  SpacetimeGaussian out;
  out.n_modes = 2;
  out.mean = RVector(4);
  out.mean << d, sm * d;
  out.cov = RMatrix::Zero(4, 4);
  out.cov.block<2, 2>(0, 0) = initial.cov;
  out.cov.block<2, 2>(2, 2) =
      sm * initial.cov * sm.transpose() + step.noise;

  for (int a = 0; a < 2; ++a) {
    // Outcome m1 ~ N(d_a, V_aa + noise); the Gaussian Kraus update shifts
    // the mean by V e_a (m1 - d_a) / (V_aa + noise).
    const double var_m1 = v0(a, a) + noise;
    const Eigen::Vector2d gain = v0.col(a) / var_m1;
    for (int b = 0; b < 2; ++b) {
      // E[m1 m2] = E[m1 (S d')_b] with d' the conditional mean.
      const double e12 =
          d(a) * (sm * d)(b) + (sm * gain)(b) * var_m1;
      const double c = 2.0 * e12 - 2.0 * d(a) * (sm * d)(b);
      out.cov(a, 2 + b) = c;
      out.cov(2 + b, a) = c;
    }
  }
  return out;
}

SpacetimeGaussian temporal_gaussian(
    const GaussianState& initial, const GaussianStep& step) {
  const std::array<double, 3> s = {1e2, 1e3, 1e4};
  std::array<SpacetimeGaussian, 3> g;
  for (int k = 0; k < 3; ++k) {
    g[k] = temporal_gaussian_at_resolution(initial, step, s[k]);
  }
  // Neville extrapolation to h = 1/s -> 0 with a quadratic in h.
  const double h0 = 1.0 / s[0], h1 = 1.0 / s[1], h2 = 1.0 / s[2];
  const double w0 = h1 * h2 / ((h0 - h1) * (h0 - h2));
  const double w1 = h0 * h2 / ((h1 - h0) * (h1 - h2));
  const double w2 = h0 * h1 / ((h2 - h0) * (h2 - h1));
  SpacetimeGaussian out = g[2];
  out.cov = w0 * g[0].cov + w1 * g[1].cov + w2 * g[2].cov;
  out.mean = w0 * g[0].mean + w1 * g[1].mean + w2 * g[2].mean;
  return out;
}

RMatrix sigma_vacuum_two_time() {
  RMatrix s(4, 4);
  s << 1, 0, 1, 0,
       0, 1, 0, 1,
       1, 0, 1, 0,
       0, 1, 0, 1;
  return s;
}

RMatrix sigma_thermal_two_time(double r) {
  return std::cosh(2.0 * r) * sigma_vacuum_two_time();
}

RMatrix partial_transpose_gaussian(const RMatrix& cov, int mode) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0) {
    throw DimensionError("covariance must be square with even dimension");
  }
  if (mode < 0 || 2 * mode >= cov.rows()) {
    throw DimensionError("mode index out of range");
  }
  RMatrix out = cov;
  const int p = 2 * mode + 1;
  out.row(p) *= -1.0;
  out.col(p) *= -1.0;
  return out;
}

Complex characteristic_function(
    const RVector& mean, const RMatrix& cov, const RVector& xi) {
  if (cov.rows() != cov.cols() || cov.rows() % 2 != 0 ||
      mean.size() != cov.rows()) {
    throw DimensionError("mean and covariance sizes do not match");
  }
  if (xi.size() != cov.rows()) {
    throw DimensionError("argument length does not match the state");
  }
  const RMatrix omega = symplectic_form(static_cast<int>(cov.rows()) / 2);
  const double quad = xi.dot(omega * cov * omega.transpose() * xi);
  const double lin = (omega * mean).dot(xi);
  return std::exp(Complex(-0.25 * quad, -lin));
}

}  // namespace stq
