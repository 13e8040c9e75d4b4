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

#include "stq/cv_wigner.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace stq {

namespace {

void check_n(int n_max) {
  if (n_max < 2) throw DomainError("n_max must be at least 2");
}

CMatrix parity(int n_max) {
  CMatrix p = CMatrix::Zero(n_max, n_max);
  for (int n = 0; n < n_max; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return p;
}

// Tr[(A (x) B) rho] without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b, const CMatrix& rho) {
  const long da = a.rows();
  const long db = b.rows();
  Complex s = 0.0;
  for (long i = 0; i < da; ++i) {
    for (long ip = 0; ip < da; ++ip) {
      const Complex aij = a(ip, i);
      if (aij == Complex(0.0)) continue;
      const auto block = rho.block(i * db, ip * db, db, db);
      s += aij * (b.transpose().cwiseProduct(block)).sum();
    }
  }
  return s;
}

// sum over the grid of T(beta) dA / pi, using exact matrix elements.
CMatrix grid_sum_of_t(const WignerGrid& grid, int n_max) {
  const double h = 2.0 * grid.radius / grid.points;
  CMatrix s = CMatrix::Zero(n_max, n_max);
  for (int i = 0; i < grid.points; ++i) {
    const double x = -grid.radius + (i + 0.5) * h;
    for (int j = 0; j < grid.points; ++j) {
      const double y = -grid.radius + (j + 0.5) * h;
      s += displaced_parity_exact(Complex(x, y), n_max).matrix;
    }
  }
  return s * (h * h / M_PI);
}

// sum_i (-1)^i Pi_i rho Pi_i over odd (i=1) and even (i=2) projectors.
CMatrix signed_parity_update(const ParityProjectors& pi, const CMatrix& rho) {
  return pi.even * rho * pi.even - pi.odd * rho * pi.odd;
}

}  // namespace

CMatrix annihilation(int n_max) {
  check_n(n_max);
  CMatrix a = CMatrix::Zero(n_max, n_max);
  for (int n = 1; n < n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

CMatrix fock_state(int n, int n_max) {
  check_n(n_max);
  if (n < 0 || n >= n_max) throw DomainError("Fock index out of range");
  return ket_bra(n_max, n, n);
}

CVector coherent_state(Complex alpha, int n_max) {
  check_n(n_max);
  CVector v(n_max);
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < n_max; ++n) {
    v(n) = c;
    c *= alpha / std::sqrt(double(n + 1));
  }
  return v;
}

CMatrix displacement(Complex alpha, int n_max) {
  const CMatrix a = annihilation(n_max);
  const CMatrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

CMatrix displacement_exact(Complex alpha, int n_max) {
  check_n(n_max);
  const double x = std::norm(alpha);
  const double r = std::abs(alpha);
  const Complex ph = r > 0.0 ? alpha / r : Complex(1.0);
  CMatrix d = CMatrix::Zero(n_max, n_max);
  for (int m = 0; m < n_max; ++m) {
    for (int n = 0; n < n_max; ++n) {
      const int k = std::abs(m - n);
      const int lo = std::min(m, n);
      if (r == 0.0) {
        if (k == 0) d(m, n) = 1.0;
        continue;
      }
      // Generalized Laguerre L_lo^(k)(x) by upward recurrence.
      double l0 = 1.0;
      double l1 = 1.0 + k - x;
      double lag = l0;
      if (lo > 0) {
        for (int j = 1; j < lo; ++j) {
          const double l2 = ((2.0 * j + 1.0 + k - x) * l1 - (j + k) * l0) / (j + 1);
          l0 = l1;
          l1 = l2;
        }
        lag = l1;
      }
      const double pre = std::exp(
          0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0)) +
          k * std::log(r) - 0.5 * x);
      const Complex phase =
          m >= n ? std::pow(ph, k) : std::pow(-std::conj(ph), k);
      d(m, n) = pre * lag * phase;
    }
  }
  return d;
}

FockOperator displaced_parity_exact(Complex alpha, int n_max) {
  // D(a) P D(a)^dag = D(2a) P on the full space.
  CMatrix t = 2.0 * displacement_exact(2.0 * alpha, n_max) * parity(n_max);
  return {n_max, 0.5 * (t + t.adjoint())};
}

FockOperator displaced_parity(Complex alpha, int n_max) {
  const CMatrix d = displacement(alpha, n_max);
  return {n_max, 2.0 * d * parity(n_max) * d.adjoint()};
}

ParityProjectors displaced_parity_projectors(Complex alpha, int n_max) {
  const CMatrix u = 0.5 * displaced_parity(alpha, n_max).matrix;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (u + u.adjoint()));
  ParityProjectors pi{CMatrix::Zero(n_max, n_max), CMatrix::Zero(n_max, n_max)};
  for (int k = 0; k < n_max; ++k) {
    const CVector v = es.eigenvectors().col(k);
    if (es.eigenvalues()(k) < 0.0) {
      pi.odd += v * v.adjoint();
    } else {
      pi.even += v * v.adjoint();
    }
  }
  return pi;
}

Complex spacetime_wigner_point_complex(
    const CMatrix& rho, const KrausChannel& ch, Complex alpha, Complex beta,
    int n_max) {
  if (rho.rows() != n_max || ch.in_dim() != n_max || ch.out_dim() != n_max) {
    throw DimensionError("state and channel must live on the Fock space");
  }
  const auto pi = displaced_parity_projectors(alpha, n_max);
  const CMatrix mid = ch.apply(signed_parity_update(pi, rho));
  return 2.0 * (displaced_parity(beta, n_max).matrix * mid).trace();
}

double spacetime_wigner_point(
    const CMatrix& rho, const KrausChannel& ch, Complex alpha, Complex beta,
    int n_max) {
  return spacetime_wigner_point_complex(rho, ch, alpha, beta, n_max).real();
}

double spatial_wigner_point(
    const CMatrix& rho12, Complex alpha, Complex beta, int n_max) {
  if (rho12.rows() != long(n_max) * n_max) {
    throw DimensionError("two-mode state has wrong dimension");
  }
  const CMatrix ta = displaced_parity(alpha, n_max).matrix;
  const CMatrix tb = displaced_parity(beta, n_max).matrix;
  return trace_product(ta, tb, rho12).real();
}

double spatial_wigner_point_cascade(
    const CMatrix& rho12, Complex alpha, Complex beta, int n_max) {
  if (rho12.rows() != long(n_max) * n_max) {
    throw DimensionError("two-mode state has wrong dimension");
  }
  const auto pa = displaced_parity_projectors(alpha, n_max);
  const auto pb = displaced_parity_projectors(beta, n_max);
  const CMatrix* ops_a[2] = {&pa.odd, &pa.even};
  const CMatrix* ops_b[2] = {&pb.odd, &pb.even};
  // Outcome values are -2 (odd) and +2 (even).
  double w = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double value = (i ? 2.0 : -2.0) * (j ? 2.0 : -2.0);
      w += value * trace_product(*ops_a[i], *ops_b[j], rho12).real();
    }
  }
  return w;
}

double wigner_normalization_check(
    const CMatrix& rho, const KrausChannel& ch, const WignerGrid& grid,
    int n_max) {
  if (grid.points < 1 || !(grid.radius > 0.0)) {
    throw DomainError("grid needs positive radius and point count");
  }
  if (rho.rows() != n_max || ch.in_dim() != n_max || ch.out_dim() != n_max) {
    throw DimensionError("state and channel must live on the Fock space");
  }
  // Both integrals are linear in T once the cascade is written as the
  // Jordan product (Pi_e rho Pi_e - Pi_o rho Pi_o) = {T(alpha), rho} / 4.
  const CMatrix sg = grid_sum_of_t(grid, n_max);
  const CMatrix mid = ch.apply(0.25 * (sg * rho + rho * sg));
  return 2.0 * (sg * mid).trace().real();
}

double spatial_wigner_normalization(
    const CMatrix& rho12, const WignerGrid& grid, int n_max) {
  if (rho12.rows() != long(n_max) * n_max) {
    throw DimensionError("two-mode state has wrong dimension");
  }
  const CMatrix s = grid_sum_of_t(grid, n_max);
  return trace_product(s, s, rho12).real();
}

}  // namespace stq
