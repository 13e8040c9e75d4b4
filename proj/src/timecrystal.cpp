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

#include "stq/timecrystal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stq/pdm.hpp"

namespace stq {

CorrelationSeries channel_decay_series(
    const CMatrix& rho, const KrausChannel& ch, const CMatrix& obs,
    int n_max) {
  if (rho.rows() != 2 || ch.in_dim() != 2 || ch.out_dim() != 2) {
    throw DimensionError("decay series needs a single qubit");
  }
  CorrelationSeries s;
  s.values = repeated_channel_correlations(rho, ch, obs, obs, n_max);
  s.first_index = 1;
  return s;
}

double kraus_norm_bound(const KrausChannel& ch) {
  double g = 0.0;
  for (const auto& k : ch.operators()) g = std::max(g, operator_norm(k));
  return g;
}

bool general_decay_bound_check(const KrausChannel& ch, int n) {
  if (n < 0) throw DomainError("round count must be nonnegative");
  const double gamma = kraus_norm_bound(ch);
  if (gamma >= 1.0) {
    throw PreconditionError("Kraus operators are not bounded by gamma < 1");
  }
  const CMatrix plus = 0.5 * (identity(2) + pauli(1));
  const auto c =
      repeated_channel_correlations(plus, ch, pauli(1), pauli(1), n + 1);
  return std::abs(c[n]) <= std::pow(gamma, 2 * n) + 1e-10;
}

namespace {

CorrelationSeries symmetrization_recurrence(double shrink, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  CorrelationSeries s;
  double a = 1.0;
  s.values.push_back(a);
  for (int n = 2; n <= n_max; ++n) {
    const double r = a * shrink;
    a = 4.0 * r / (3.0 + r * r);
    s.values.push_back(a);
  }
  return s;
}

}  // namespace

CorrelationSeries symmetrization_series(double p, int n_max) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
  auto s = symmetrization_recurrence(1.0 - p, n_max);
  s.label["p"] = p;
  return s;
}

CorrelationSeries dephasing_symmetrization_series(double lambda, int n_max) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("lambda must lie in [0,1]");
  }
  auto s = symmetrization_recurrence(std::sqrt(1.0 - lambda), n_max);
  s.label["lambda"] = lambda;
  return s;
}

CMatrix symmetrize_copies(const CMatrix& rho_a, const CMatrix& rho_b) {
  if (rho_a.rows() != 2 || rho_b.rows() != 2) {
    throw DimensionError("symmetrization acts on qubit copies");
  }
  const CMatrix sym = 0.5 * (identity(4) + swap_operator(2));
  const CMatrix joint = sym * tensor(rho_a, rho_b) * sym;
  const double p = joint.trace().real();
  if (p <= 1e-15) throw PreconditionError("symmetric projection vanishes");
  return partial_trace(joint / p, DimensionVector{2, 2}, {0});
}

double phase_flip_logical_error(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
  return 3.0 * p * p - 2.0 * p * p * p;
}

PhaseFlipSeries phase_flip_code_series(double p, int n_max) {
  const double q = phase_flip_logical_error(p);
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  PhaseFlipSeries out;
  // Probability that the logical state has not been flipped after N - 1
  // rounds, propagated as a two-state Markov chain.
  double keep = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) keep = keep * (1.0 - q) + (1.0 - keep) * q;
    out.zz.values.push_back(2.0 * keep - 1.0);
    out.xx.values.push_back(1.0);
  }
  out.xx.label["p"] = out.zz.label["p"] = p;
  return out;
}

FloquetParameters floquet_parameters(const FloquetChainSpec& spec) {
  const int l = spec.length;
  if (l < 2) throw DomainError("chain length must be at least 2");
  if (l > 12) throw DomainError("chain length above 12 is not supported");
  std::mt19937_64 rng(spec.seed);
  FloquetParameters p;
  p.couplings = spec.couplings;
  p.fields_z = spec.fields_z;
  p.fields_x = spec.fields_x;
  if (p.couplings.empty()) {
    std::uniform_real_distribution<double> dj(spec.j_min, spec.j_max);
    for (int i = 0; i + 1 < l; ++i) p.couplings.push_back(dj(rng));
  }
  if (p.fields_z.empty()) {
    std::uniform_real_distribution<double> dh(spec.hz_min, spec.hz_max);
    for (int i = 0; i < l; ++i) p.fields_z.push_back(dh(rng));
  }
  if (p.fields_x.empty()) p.fields_x.assign(l, spec.hx);
  if (static_cast<int>(p.couplings.size()) != l - 1 ||
      static_cast<int>(p.fields_z.size()) != l ||
      static_cast<int>(p.fields_x.size()) != l) {
    throw DimensionError("coupling or field list has wrong length");
  }
  for (const auto* v : {&p.couplings, &p.fields_z, &p.fields_x}) {
    for (double x : *v) {
      if (!std::isfinite(x)) throw DomainError("parameters must be finite");
    }
  }
  return p;
}

namespace {

// Diagonal of the z-part of H2 in the computational basis; spin i is bit
// (L - 1 - i) of the index, so site 0 is the leftmost factor.
RVector ising_diagonal(const FloquetParameters& p, int l) {
  const long d = 1L << l;
  RVector diag(d);
  for (long s = 0; s < d; ++s) {
    double e = 0.0;
    auto z = [&](int i) { return ((s >> (l - 1 - i)) & 1L) ? -1.0 : 1.0; };
    for (int i = 0; i + 1 < l; ++i) e += p.couplings[i] * z(i) * z(i + 1);
    for (int i = 0; i < l; ++i) e += p.fields_z[i] * z(i);
    diag(s) = e;
  }
  return diag;
}

bool has_transverse_field(const FloquetParameters& p) {
  return std::any_of(p.fields_x.begin(), p.fields_x.end(),
                     [](double h) { return h != 0.0; });
}

// exp(-i H2 t2) as a dense matrix.
CMatrix second_half(const FloquetParameters& p, int l, double t2) {
  const RVector diag = ising_diagonal(p, l);
  const long d = diag.size();
  if (!has_transverse_field(p)) {
    CMatrix u = CMatrix::Zero(d, d);
    for (long s = 0; s < d; ++s) u(s, s) = std::exp(Complex(0.0, -diag(s) * t2));
    return u;
  }
  CMatrix h = CMatrix::Zero(d, d);
  for (long s = 0; s < d; ++s) h(s, s) = diag(s);
  for (int i = 0; i < l; ++i) {
    const long mask = 1L << (l - 1 - i);
    for (long s = 0; s < d; ++s) h(s ^ mask, s) += p.fields_x[i];
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CMatrix& v = es.eigenvectors();
  CVector phases(d);
  for (long k = 0; k < d; ++k) {
    phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k) * t2));
  }
  return v * phases.asDiagonal() * v.adjoint();
}

// exp(-i theta sigma^x) applied to every site of a state vector.
void apply_drive(CVector& psi, int l, double theta) {
  const Complex c = std::cos(theta);
  const Complex s = Complex(0.0, -std::sin(theta));
  const long d = psi.size();
  for (int i = 0; i < l; ++i) {
    const long mask = 1L << (l - 1 - i);
    for (long k = 0; k < d; ++k) {
      if (k & mask) continue;
      const Complex a = psi(k), b = psi(k | mask);
      psi(k) = c * a + s * b;
      psi(k | mask) = s * a + c * b;
    }
  }
}

}  // namespace

CMatrix floquet_unitary(const FloquetChainSpec& spec) {
  const auto p = floquet_parameters(spec);
  const int l = spec.length;
  const double theta = (spec.g - spec.epsilon) * spec.t1;
  const CMatrix rx = std::cos(theta) * identity(2) -
                     Complex(0.0, std::sin(theta)) * pauli(1);
  CMatrix u1 = CMatrix::Identity(1, 1);
  for (int i = 0; i < l; ++i) u1 = tensor(u1, rx);
  return second_half(p, l, spec.t2) * u1;
}

CorrelationSeries floquet_correlation_series(
    const FloquetChainSpec& spec, int site, int n_periods,
    std::uint64_t initial_bits) {
  const auto p = floquet_parameters(spec);
  const int l = spec.length;
  if (site < 0 || site >= l) throw DimensionError("site out of range");
  if (n_periods < 1) throw DomainError("need at least one period");
  const long d = 1L << l;
  if (initial_bits >= static_cast<std::uint64_t>(d)) {
    throw DomainError("initial bit string out of range");
  }
  const double theta = (spec.g - spec.epsilon) * spec.t1;
  const bool diagonal = !has_transverse_field(p);
  const RVector diag = ising_diagonal(p, l);
  const CMatrix u2 = diagonal ? CMatrix() : second_half(p, l, spec.t2);
  CVector phases;
  if (diagonal) {
    phases.resize(d);
    for (long s = 0; s < d; ++s) {
      phases(s) = std::exp(Complex(0.0, -diag(s) * spec.t2));
    }
  }
  const long mask = 1L << (l - 1 - site);
  // The first measurement leaves the basis state intact, so the correlation
  // is s_site <psi_n| sigma^z_site |psi_n>.
  const double s0 = (initial_bits & mask) ? -1.0 : 1.0;
  CVector psi = CVector::Zero(d);
  psi(static_cast<long>(initial_bits)) = 1.0;
  CorrelationSeries out;
  out.first_index = 0;
  for (int n = 0; n < n_periods; ++n) {
    double z = 0.0;
    for (long k = 0; k < d; ++k) {
      z += ((k & mask) ? -1.0 : 1.0) * std::norm(psi(k));
    }
    out.values.push_back(s0 * z);
    apply_drive(psi, l, theta);
    if (diagonal) {
      psi = psi.cwiseProduct(phases);
    } else {
      psi = u2 * psi;
    }
  }
  out.label["L"] = l;
  out.label["epsilon"] = spec.epsilon;
  out.label["seed"] = static_cast<double>(spec.seed);
  out.label["site"] = site;
  return out;
}

SpectralPeak subharmonic_peak(const CorrelationSeries& series) {
  const auto& v = series.values;
  const long m = static_cast<long>(v.size());
  if (m < 16) throw DomainError("series needs at least 16 entries");
  std::vector<double> power(m);
  double total = 0.0;
  for (long k = 0; k < m; ++k) {
    Complex f = 0.0;
    for (long n = 0; n < m; ++n) {
      const double ang = -2.0 * M_PI * double(k) * double(n) / double(m);
      f += v[n] * Complex(std::cos(ang), std::sin(ang));
    }
    power[k] = std::norm(f);
    total += power[k];
  }
  std::vector<long> order(m);
  for (long k = 0; k < m; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](long a, long b) { return power[a] > power[b]; });
  const long k1 = order[0], k2 = order[1];
  const double f1 = double(k1) / m, f2 = double(k2) / m;
  SpectralPeak r;
  r.peak_freq = std::min(f1, 1.0 - f1);
  r.peak_weight = total > 0.0 ? power[k1] / total : 0.0;
  const bool at_half = (2 * k1 == m);
  const bool opposite = (f1 - 0.5) * (f2 - 0.5) < 0.0;
  const bool in_band = f1 > 0.25 && f1 < 0.75 && f2 > 0.25 && f2 < 0.75;
  const double ratio =
      power[k2] > 0.0 ? power[k1] / power[k2] : INFINITY;
  r.split = !at_half && opposite && in_band && ratio < 2.0;
  return r;
}

bool long_range_order_in_time(
    const CorrelationSeries& series, int window, double threshold) {
  const int m = static_cast<int>(series.values.size());
  if (window < 1 || window > m) {
    throw DomainError("window must lie between 1 and the series length");
  }
  double lo = INFINITY;
  for (int k = m - window; k < m; ++k) {
    lo = std::min(lo, std::abs(series.values[k]));
  }
  return lo >= threshold;
}

bool flip_condition_check(
    const std::vector<CMatrix>& kraus, int n_qubits, double tol) {
  if (n_qubits < 1 || n_qubits > 12) {
    throw DomainError("qubit count must lie in [1, 12]");
  }
  const long d = 1L << n_qubits;
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw DimensionError("Kraus operator has wrong dimension");
    }
  }
  for (long s = 0; s < d; ++s) {
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto& k : kraus) out += k.col(s) * k.col(s).adjoint();
    const long flipped = (d - 1) ^ s;
    if ((out - ket_bra(static_cast<int>(d), flipped, flipped))
            .cwiseAbs()
            .maxCoeff() > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace stq
