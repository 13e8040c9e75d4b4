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

#include <cmath>

#include "stq/gaussian.hpp"
#include "test_util.hpp"

namespace stq::test {
namespace {

double rmax_diff(const RMatrix& a, const RMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return r;
}

Eigen::Matrix2d squeezer(double r) {
  Eigen::Matrix2d s;
  s << std::exp(-r), 0, 0, std::exp(r);
  return s;
}

TEST_CASE("symplectic form") {
  const RMatrix omega = symplectic_form(2);
  CHECK(omega(0, 1) == 1.0);
  CHECK(omega(1, 0) == -1.0);
  CHECK(omega(2, 3) == 1.0);
  CHECK(rmax_diff(omega * omega, -RMatrix::Identity(4, 4)) == 0.0);
  CHECK(is_symplectic(rotation(0.3)));
  CHECK(is_symplectic(squeezer(0.7)));
  CHECK_FALSE(is_symplectic(2.0 * Eigen::Matrix2d::Identity()));
}

TEST_CASE("standard states satisfy the uncertainty relation") {
  CHECK(uncertainty_ok(vacuum(1).cov));
  CHECK(uncertainty_ok(vacuum(3).cov));
  CHECK(uncertainty_min_eigenvalue(vacuum(1).cov) == doctest::Approx(0.0));
  CHECK(uncertainty_ok(thermal(2.0).cov));
  CHECK(uncertainty_min_eigenvalue(thermal(2.0).cov) == doctest::Approx(4.0));
  CHECK(uncertainty_ok(two_mode_squeezed(0.8).cov));
  CHECK_FALSE(uncertainty_ok(0.5 * RMatrix::Identity(2, 2)));
  CHECK_THROWS_AS(vacuum(0), DomainError);
  CHECK_THROWS_AS(thermal(-1.0), DomainError);
  CHECK_THROWS_AS(uncertainty_ok(RMatrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("two-mode squeezed vacuum has an entangled partial transpose") {
  const double r = 0.6;
  const RMatrix pt = partial_transpose_gaussian(two_mode_squeezed(r).cov, 1);
  CHECK_FALSE(uncertainty_ok(pt));
  CHECK(uncertainty_min_eigenvalue(pt) < -0.1);
  CHECK(uncertainty_ok(partial_transpose_gaussian(vacuum(2).cov, 0)));
  CHECK_THROWS_AS(partial_transpose_gaussian(vacuum(2).cov, 2), DimensionError);
}

TEST_CASE("vacuum under identity evolution") {
  const auto g = temporal_gaussian(vacuum(1), GaussianStep{});
  CHECK(g.n_modes == 2);
  CHECK(rmax_diff(g.cov, sigma_vacuum_two_time()) <= 1e-12);
  CHECK(g.mean.norm() == 0.0);
  CHECK_FALSE(uncertainty_ok(g.cov));
}

TEST_CASE("thermal two-time covariance") {
  for (double r : {0.0, 0.3, 1.1}) {
    const double nbar = std::sinh(r) * std::sinh(r);
    const auto g = temporal_gaussian(thermal(nbar), GaussianStep{});
    CHECK(rmax_diff(g.cov, sigma_thermal_two_time(r)) <= 1e-10);
  }
}

TEST_CASE("cross covariance is independent of the resolution") {
  GaussianStep step;
  step.symplectic = rotation(0.4) * squeezer(0.3);
  step.noise = 0.2 * Eigen::Matrix2d::Identity();
  GaussianState init = thermal(0.5);
  init.mean << 0.3, -1.2;
  const auto a = temporal_gaussian_at_resolution(init, step, 10.0);
  const auto b = temporal_gaussian_at_resolution(init, step, 1e5);
  CHECK(rmax_diff(a.cov, b.cov) <= 1e-12);
  const auto c = temporal_gaussian(init, step);
  CHECK(rmax_diff(c.cov, b.cov) <= 1e-10);
  CHECK((c.mean.tail(2) - step.symplectic * init.mean).norm() <= 1e-12);
  // Oracle: sigma_12 = sigma_1 S^T, sigma_22 = S sigma_1 S^T + N.
  const RMatrix s1 = init.cov;
  CHECK(rmax_diff(c.cov.block(0, 2, 2, 2), s1 * step.symplectic.transpose()) <=
        1e-12);
  CHECK(rmax_diff(c.cov.block(2, 2, 2, 2),
                  step.symplectic * s1 * step.symplectic.transpose() +
                      step.noise) <= 1e-12);
}

TEST_CASE("temporal Gaussian input validation") {
  GaussianStep bad;
  bad.symplectic = 2.0 * Eigen::Matrix2d::Identity();
  CHECK_THROWS_AS(temporal_gaussian(vacuum(1), bad), PreconditionError);
  CHECK_THROWS_AS(temporal_gaussian(vacuum(2), GaussianStep{}), DimensionError);
  CHECK_THROWS_AS(temporal_gaussian_at_resolution(vacuum(1), GaussianStep{}, 0.0),
                  DomainError);
}

TEST_CASE("rotating evolution keeps a non-physical temporal covariance") {
  for (double theta : {0.1, 0.7, 1.3}) {
    GaussianStep step;
    step.symplectic = rotation(theta);
    const auto g = temporal_gaussian(vacuum(1), step);
    CHECK(g.cov.isApprox(g.cov.transpose()));
    CHECK_FALSE(uncertainty_ok(g.cov));
  }
}

TEST_CASE("characteristic function") {
  const auto v = vacuum(1);
  RVector xi(2);
  xi << 0.0, 0.0;
  CHECK(std::abs(characteristic_function(v.mean, v.cov, xi) - 1.0) <= 1e-15);
  xi << 0.6, -0.8;
  CHECK(std::abs(characteristic_function(v.mean, v.cov, xi)) ==
        doctest::Approx(std::exp(-0.25)));
  RVector d(2);
  d << 1.0, 2.0;
  const Complex chi = characteristic_function(d, v.cov, xi);
  const RMatrix omega = symplectic_form(1);
  CHECK(std::arg(chi) == doctest::Approx(-(omega * d).dot(xi)));
  CHECK_THROWS_AS(characteristic_function(d, v.cov, RVector::Zero(4)),
                  DimensionError);
}

}  // namespace
}  // namespace stq::test
