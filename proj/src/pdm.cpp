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

#include "stq/pdm.hpp"

#include <cmath>
#include <functional>

namespace stq {

namespace {

int qubit_count(long d) {
  int m = 0;
  while ((1L << m) < d) ++m;
  if ((1L << m) != d) throw DimensionError("dimension is not a power of two");
  return m;
}

// Pauli operator of the qubits [t*m, (t+1)*m) of a string.
PauliString slice(const PauliString& p, int t, int m) {
  return PauliString(std::vector<int>(
      p.indices.begin() + t * m, p.indices.begin() + (t + 1) * m));
}

// sum_alpha alpha P^alpha X P^alpha, the signed Lueders update.
CMatrix signed_update(const CMatrix& x, const CMatrix& sigma) {
  return 0.5 * (sigma * x + x * sigma);
}

}  // namespace

int TemporalProcess::qubits_per_time() const {
  return qubit_count(initial.rows());
}

void TemporalProcess::validate(double tol) const {
  if (initial.rows() != initial.cols()) {
    throw DimensionError("initial state is not square");
  }
  qubits_per_time();
  if (!is_density_matrix(initial, tol)) {
    throw PreconditionError("initial state is not a density matrix");
  }
  for (const auto& ch : steps) {
    if (ch.in_dim() != initial.rows() || ch.out_dim() != initial.rows()) {
      throw DimensionError("channel dimensions do not chain");
    }
  }
}

std::array<CMatrix, 2> pauli_projectors(const CMatrix& sigma) {
  const CMatrix id = identity(sigma.rows());
  return {0.5 * (id + sigma), 0.5 * (id - sigma)};
}

double event_correlation(const TemporalProcess& proc, const PauliString& paulis) {
  proc.validate();
  const int m = proc.qubits_per_time();
  if (paulis.size() != proc.n_events()) {
    throw DimensionError("Pauli string length must equal the event count");
  }
  // By linearity the signed sum over outcome branches propagates as one
  // operator: Y -> sum_alpha alpha P Y P, then the channel.
  CMatrix y = proc.initial;
  for (int t = 0; t < proc.n_times(); ++t) {
    if (t > 0) y = proc.steps[t - 1].apply(y);
    const PauliString s = slice(paulis, t, m);
    if (!s.is_identity()) y = signed_update(y, pauli_operator(s));
  }
  return y.trace().real();
}

std::vector<double> event_outcome_probabilities(
    const TemporalProcess& proc, const PauliString& paulis) {
  proc.validate();
  const int m = proc.qubits_per_time();
  const int n = proc.n_times();
  if (paulis.size() != proc.n_events()) {
    throw DimensionError("Pauli string length must equal the event count");
  }
  std::vector<std::array<CMatrix, 2>> proj;
  for (int t = 0; t < n; ++t) {
    proj.push_back(pauli_projectors(pauli_operator(slice(paulis, t, m))));
  }
  std::vector<double> probs(1UL << n, 0.0);
  for (unsigned long bits = 0; bits < probs.size(); ++bits) {
    CMatrix x = proc.initial;
    for (int t = 0; t < n; ++t) {
      if (t > 0) x = proc.steps[t - 1].apply(x);
      const CMatrix& p = proj[t][(bits >> t) & 1UL];
      x = p * x * p;
    }
    probs[bits] = x.trace().real();
  }
  return probs;
}

PDM build_pdm(const TemporalProcess& proc) {
  proc.validate();
  const int n = proc.n_events();
  const auto strings = all_pauli_strings(n);
  const double norm = std::pow(2.0, -n);
  // Recursive pairwise summation keeps the result independent of how the
  // string sweep is partitioned.
  std::function<CMatrix(std::size_t, std::size_t)> sum =
      [&](std::size_t lo, std::size_t hi) -> CMatrix {
    if (hi - lo == 1) {
      const double c = event_correlation(proc, strings[lo]);
      return (norm * c) * pauli_operator(strings[lo]);
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return sum(lo, mid) + sum(mid, hi);
  };
  return PDM{n, 1, sum(0, strings.size())};
}

double expectation_from_pdm(const PDM& r, const std::vector<CMatrix>& ops) {
  for (const auto& o : ops) {
    if (!is_hermitian(o, 1e-10) ||
        (o * o - identity(o.rows())).cwiseAbs().maxCoeff() > 1e-10) {
      throw PreconditionError("observable must have eigenvalues +-1");
    }
  }
  CMatrix op = tensor_all(ops);
  if (op.rows() != r.matrix.rows()) {
    throw DimensionError("observables do not match the PDM dimension");
  }
  return (op * r.matrix).trace().real();
}

CMatrix marginal(const PDM& r, int event) {
  if (event < 0 || event >= r.n_events) {
    throw DimensionError("event index out of range");
  }
  const int q = r.qubits_per_event;
  std::vector<int> keep;
  for (int k = 0; k < q; ++k) keep.push_back(event * q + k);
  return partial_trace(
      r.matrix, DimensionVector::qubits(r.n_events * q), keep);
}

double causality_monotone(const PDM& r) {
  double norm = 0.0;
  if (is_hermitian(r.matrix, 1e-10)) {
    const RVector ev = hermitian_eigenvalues(r.matrix, 1e-10);
    norm = ev.cwiseAbs().sum();
  } else {
    norm = trace_norm(r.matrix);
  }
  return std::max(norm - 1.0, 0.0);
}

CorrelationTriple correlation_triple(const PDM& r) {
  if (r.matrix.rows() != 4) {
    throw DimensionError("correlation triple needs exactly two qubit events");
  }
  auto t = [&](int k) {
    return (tensor(pauli(k), pauli(k)) * r.matrix).trace().real();
  };
  return {t(1), t(2), t(3)};
}

CorrelationTriple tetrahedron_point(const TemporalProcess& proc) {
  proc.validate();
  if (proc.n_events() != 2) {
    throw DimensionError("tetrahedron point needs exactly two qubit events");
  }
  CorrelationTriple c;
  c.t11 = event_correlation(proc, {1, 1});
  c.t22 = event_correlation(proc, {2, 2});
  c.t33 = event_correlation(proc, {3, 3});
  return c;
}

namespace {

bool in_hull(
    const CorrelationTriple& t, const std::array<Eigen::Vector3d, 4>& v,
    double slack) {
  Eigen::Matrix4d a;
  Eigen::Vector4d b(t.t11, t.t22, t.t33, 1.0);
  for (int k = 0; k < 4; ++k) a.col(k) << v[k], 1.0;
  const Eigen::Vector4d lambda = a.fullPivLu().solve(b);
  return (lambda.array() >= -slack).all();
}

}  // namespace

TetrahedronMembership classify(const CorrelationTriple& t, double slack) {
  static const std::array<Eigen::Vector3d, 4> kSpatial = {
      Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(-1, 1, 1),
      Eigen::Vector3d(1, -1, 1), Eigen::Vector3d(1, 1, -1)};
  static const std::array<Eigen::Vector3d, 4> kTemporal = {
      Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(-1, -1, 1),
      Eigen::Vector3d(-1, 1, -1), Eigen::Vector3d(1, -1, -1)};
  return {in_hull(t, kSpatial, slack), in_hull(t, kTemporal, slack)};
}

namespace {

struct PostselectedSums {
  double signed_sum = 0.0;
  double total = 0.0;
};

PostselectedSums postselected_sums(
    const CMatrix& rho, const KrausChannel& ch, const PauliString& i,
    const PauliString& j, const CMatrix& eta) {
  if (rho.rows() != ch.in_dim()) {
    throw DimensionError("state does not match channel input");
  }
  if (eta.rows() != ch.out_dim() || eta.cols() != ch.out_dim()) {
    throw DimensionError("postselection projector has wrong dimension");
  }
  if (!is_hermitian(eta, 1e-10) || min_eigenvalue(eta) < -1e-10) {
    throw PreconditionError("postselection operator must be PSD");
  }
  const CMatrix si = pauli_operator(i);
  const CMatrix sj = pauli_operator(j);
  if (si.rows() != rho.rows() || sj.rows() != ch.out_dim()) {
    throw DimensionError("Pauli strings do not match event dimensions");
  }
  const auto pi = pauli_projectors(si);
  const auto pj = pauli_projectors(sj);
  PostselectedSums s;
  for (int a = 0; a < 2; ++a) {
    const CMatrix mid = ch.apply(pi[a] * rho * pi[a]);
    for (int b = 0; b < 2; ++b) {
      const double p = (eta * pj[b] * mid * pj[b]).trace().real();
      const double sign = (a == b) ? 1.0 : -1.0;
      s.signed_sum += sign * p;
      s.total += p;
    }
  }
  return s;
}

}  // namespace

double postselection_probability(
    const CMatrix& rho, const KrausChannel& ch, const PauliString& i,
    const PauliString& j, const CMatrix& eta) {
  return postselected_sums(rho, ch, i, j, eta).total;
}

double postselected_correlation(
    const CMatrix& rho, const KrausChannel& ch, const PauliString& i,
    const PauliString& j, const CMatrix& eta) {
  const auto s = postselected_sums(rho, ch, i, j, eta);
  if (s.total <= 1e-14) {
    throw PostselectionError("postselection has zero probability");
  }
  return s.signed_sum / s.total;
}

PDM build_postselected_pdm(
    const CMatrix& rho, const KrausChannel& ch, const CMatrix& eta) {
  const int m_in = qubit_count(rho.rows());
  const int m_out = qubit_count(ch.out_dim());
  const auto si = all_pauli_strings(m_in);
  const auto sj = all_pauli_strings(m_out);
  std::vector<CMatrix> terms;
  for (const auto& a : si) {
    for (const auto& b : sj) {
      const double c = postselected_correlation(rho, ch, a, b, eta);
      terms.push_back(c * tensor(pauli_operator(a), pauli_operator(b)));
    }
  }
  CMatrix r = pairwise_sum(terms) * std::pow(2.0, -(m_in + m_out));
  if (m_in == m_out) return PDM{2, m_in, r};
  return PDM{m_in + m_out, 1, r};
}

double ctc_probability(const CMatrix& u_sa, const CMatrix& rho_s, int d) {
  if (d < 1 || u_sa.rows() != rho_s.rows() * d) {
    throw DimensionError("U_SA does not match rho_S and d");
  }
  if (!is_unitary(u_sa, 1e-10)) throw PreconditionError("U_SA is not unitary");
  const int ds = static_cast<int>(rho_s.rows());
  const CMatrix c = partial_trace(u_sa, DimensionVector{ds, d}, {0});
  return (c * rho_s * c.adjoint()).trace().real() / (double(d) * d);
}

double ctc_probability_explicit(
    const CMatrix& u_sa, const CMatrix& rho_s, int d) {
  if (d < 1 || u_sa.rows() != rho_s.rows() * d) {
    throw DimensionError("U_SA does not match rho_S and d");
  }
  if (!is_unitary(u_sa, 1e-10)) throw PreconditionError("U_SA is not unitary");
  const int ds = static_cast<int>(rho_s.rows());
  const CMatrix phi = max_entangled_projector(d) / double(d);
  const CMatrix u = tensor(u_sa, identity(d));
  const CMatrix state = u * tensor(rho_s, phi) * u.adjoint();
  const CMatrix proj = tensor(identity(ds), phi);
  return (proj * state).trace().real();
}

std::vector<double> repeated_channel_correlations(
    const CMatrix& rho, const KrausChannel& ch, const CMatrix& sigma_a,
    const CMatrix& sigma_b, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (ch.in_dim() != rho.rows() || ch.out_dim() != rho.rows() ||
      sigma_a.rows() != rho.rows() || sigma_b.rows() != rho.rows()) {
    throw DimensionError("operator dimensions do not match");
  }
  std::vector<double> out;
  CMatrix y = signed_update(rho, sigma_a);
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) y = ch.apply(y);
    out.push_back((sigma_b * y).trace().real());
  }
  return out;
}

}  // namespace stq
