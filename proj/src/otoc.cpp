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

#include "stq/otoc.hpp"

#include <cmath>

namespace stq {

namespace {

void check_otoc(const OtocSpec& s) {
  const long d = s.rho.rows();
  if (s.v.rows() != d || s.w.rows() != d || s.u.rows() != d ||
      s.v.cols() != d || s.w.cols() != d || s.u.cols() != d) {
    throw DimensionError("OTOC operators have mismatched dimensions");
  }
  if (!is_unitary(s.u, 1e-10)) throw PreconditionError("U is not unitary");
}

// |Phi> = sum_i |ii> / sqrt(N)
CVector max_entangled_vector(int n) {
  CVector v = CVector::Zero(long(n) * n);
  for (int i = 0; i < n; ++i) v(long(i) * n + i) = 1.0 / std::sqrt(double(n));
  return v;
}

struct FinalStateSetup {
  CVector state;      // |psi>_M |Phi>_{in,out}
  CMatrix projector;  // P (x) I_out
};

FinalStateSetup final_state_setup(const CVector& psi, const CMatrix& s) {
  const int n = static_cast<int>(psi.size());
  if (s.rows() != n || s.cols() != n) {
    throw DimensionError("S must act on the state's space");
  }
  if (!is_unitary(s, 1e-10)) throw PreconditionError("S is not unitary");
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw PreconditionError("state vector is not normalized");
  }
  const CVector phi = max_entangled_vector(n);
  const CVector chi = tensor(s.adjoint(), identity(n)) * phi;
  return {tensor(psi, phi), tensor(projector(chi), identity(n))};
}

}  // namespace

OtocResult otoc_direct_counted(const OtocSpec& s) {
  check_otoc(s);
  const CMatrix ud = s.u.adjoint();
  // W(t) = U^dag W U, built twice as in the textbook evaluation.
  const CMatrix wt = ud * s.w * s.u;
  const CMatrix wt_dag = ud * s.w.adjoint() * s.u;
  const CMatrix prod = s.v * wt * s.v.adjoint() * wt_dag;
  return {(s.rho * prod).trace(), 4};
}

Complex otoc_direct(const OtocSpec& s) { return otoc_direct_counted(s).value; }

OtocResult otoc_via_pdm(
    const CMatrix& a, const CMatrix& b, const CMatrix& u, const CMatrix& rho) {
  check_otoc({a, b, u, rho});
  const long d = rho.rows();
  if ((a * a.adjoint() - a).cwiseAbs().maxCoeff() > 1e-10) {
    throw PreconditionError("A must satisfy A A^dag = A");
  }
  if ((rho - identity(d) / double(d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw PreconditionError("rho must be the maximally mixed state");
  }
  // Event 1: A; forward evolution; event 2: B; backward evolution; event 3:
  // A again, closing the trace.
  CMatrix x = a * rho * a.adjoint();
  x = u * x * u.adjoint();
  x = b * x * b.adjoint();
  x = u.adjoint() * x * u;
  return {(a * x * a.adjoint()).trace(), 2};
}

FinalStateResult final_state_conditional_output(
    const CVector& psi, const CMatrix& s) {
  return final_state_conditional_output(
      psi, s, identity(static_cast<int>(psi.size())));
}

FinalStateResult final_state_conditional_output(
    const CVector& psi, const CMatrix& s, const CMatrix& v_out) {
  const int n = static_cast<int>(psi.size());
  if (v_out.rows() != n || !is_unitary(v_out, 1e-10)) {
    throw PreconditionError("out-factor operator is not a unitary");
  }
  const auto setup = final_state_setup(psi, s);
  const CVector evolved =
      tensor(identity(long(n) * n), v_out) * setup.state;
  const CVector projected = setup.projector * evolved;
  FinalStateResult r;
  r.probability = projected.squaredNorm();
  r.supernormalized_weight = r.probability * double(n) * n;
  // Conditional out state: project onto the unique M (x) in component.
  const CVector phi = max_entangled_vector(n);
  const CVector chi = tensor(s.adjoint(), identity(n)) * phi;
  CVector out = CVector::Zero(n);
  for (long mi = 0; mi < long(n) * n; ++mi) {
    for (int o = 0; o < n; ++o) {
      out(o) += std::conj(chi(mi)) * evolved(mi * n + o);
    }
  }
  r.out_state = out / out.norm();
  const CVector target = v_out * s * psi;
  r.fidelity = std::norm(target.dot(r.out_state));
  return r;
}

double final_state_probe(
    const CVector& psi, const CMatrix& s, const CVector& chi) {
  const int n = static_cast<int>(psi.size());
  if (chi.size() != n) throw DimensionError("probe state has wrong dimension");
  const auto setup = final_state_setup(psi, s);
  const CMatrix a = tensor(identity(long(n) * n), projector(chi / chi.norm()));
  const CMatrix rho = projector(setup.state);
  const CMatrix& p = setup.projector;
  // U acts on M only and is absorbed into the projector.
  return (a * p * (a * rho * a) * p).trace().real();
}

double final_state_probe_commutator(
    const CVector& psi, const CMatrix& s, const CVector& chi) {
  const int n = static_cast<int>(psi.size());
  const auto setup = final_state_setup(psi, s);
  const CMatrix a = tensor(identity(long(n) * n), projector(chi / chi.norm()));
  return operator_norm(a * setup.projector - setup.projector * a);
}

namespace {

void check_positive(double m, double omega, double tau) {
  if (!(m > 0.0 && omega > 0.0 && tau > 0.0)) {
    throw DomainError("m, omega and tau must be positive");
  }
}

struct KernelMoments {
  double mass = 0.0;
  double moment = 0.0;
};

KernelMoments kernel_moments(double m, double omega, double tau, int points) {
  check_positive(m, omega, tau);
  if (points < 16) throw DomainError("too few quadrature points");
  const double sh = std::sinh(omega * tau);
  const double ch = std::cosh(omega * tau);
  const double pref = m * omega / (2.0 * M_PI * sh);
  const double k = m * omega / sh;
  // Rotated frame u = (q1 + q2)/sqrt2, v = (q1 - q2)/sqrt2; the grids span
  // twelve standard deviations of each direction.
  const double su = 1.0 / std::sqrt(2.0 * k * (ch - 1.0));
  const double sv = 1.0 / std::sqrt(2.0 * k * (ch + 1.0));
  const double lu = 12.0 * su, lv = 12.0 * sv;
  const double hu = 2.0 * lu / (points - 1), hv = 2.0 * lv / (points - 1);
  KernelMoments r;
  for (int i = 0; i < points; ++i) {
    const double u = -lu + i * hu;
    for (int j = 0; j < points; ++j) {
      const double v = -lv + j * hv;
      const double q1 = (u + v) / std::sqrt(2.0);
      const double q2 = (u - v) / std::sqrt(2.0);
      const double dens =
          pref * std::exp(-k * ((q1 * q1 + q2 * q2) * ch - 2.0 * q1 * q2));
      r.mass += dens;
      r.moment += q1 * q2 * dens;
    }
  }
  r.mass *= hu * hv;
  r.moment *= hu * hv;
  return r;
}

}  // namespace

double harmonic_pdm_correlation(double m, double omega, double tau) {
  check_positive(m, omega, tau);
  const double sh = std::sinh(omega * tau);
  return 1.0 / (8.0 * m * omega * sh * sh);
}

double harmonic_pi_correlation(double omega, double tau) {
  check_positive(1.0, omega, tau);
  return 1.0 / (2.0 * omega * std::tanh(0.5 * omega * tau));
}

double harmonic_kernel_moment(double m, double omega, double tau, int points) {
  return kernel_moments(m, omega, tau, points).moment;
}

double harmonic_normalized_kernel_moment(
    double m, double omega, double tau, int points) {
  const auto r = kernel_moments(m, omega, tau, points);
  return r.moment / r.mass;
}

}  // namespace stq
