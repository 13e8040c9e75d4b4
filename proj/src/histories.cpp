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

#include "stq/histories.hpp"

#include <cmath>

namespace stq {

void HistoryFamily::validate(double tol) const {
  if (projector_sets.empty()) throw DimensionError("no times in family");
  const long d = initial.rows();
  if (!is_density_matrix(initial, tol)) {
    throw PreconditionError("initial state is not a density matrix");
  }
  if (static_cast<int>(unitaries.size()) != n_times() - 1) {
    throw DimensionError("need one unitary per gap between times");
  }
  for (const auto& u : unitaries) {
    if (u.rows() != d || !is_unitary(u, tol)) {
      throw PreconditionError("gap operator is not a unitary of the system");
    }
  }
  for (const auto& set : projector_sets) {
    if (set.empty()) throw DimensionError("empty projector set");
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t a = 0; a < set.size(); ++a) {
      if (set[a].rows() != d || set[a].cols() != d) {
        throw DimensionError("projector has wrong dimension");
      }
      for (std::size_t b = 0; b < set.size(); ++b) {
        const CMatrix expect = (a == b) ? set[a] : CMatrix::Zero(d, d);
        if ((set[a] * set[b] - expect).cwiseAbs().maxCoeff() > tol) {
          throw PreconditionError("projectors are not mutually exclusive");
        }
      }
      sum += set[a];
    }
    if ((sum - identity(d)).cwiseAbs().maxCoeff() > tol) {
      throw PreconditionError("projectors are not exhaustive");
    }
  }
}

std::vector<History> HistoryFamily::histories() const {
  std::vector<History> out;
  History h(n_times(), 0);
  while (true) {
    out.push_back(h);
    int t = n_times() - 1;
    while (t >= 0 &&
           ++h[t] == static_cast<int>(projector_sets[t].size())) {
      h[t--] = 0;
    }
    if (t < 0) return out;
  }
}

namespace {

CMatrix class_operator(const HistoryFamily& f, const History& h) {
  if (static_cast<int>(h.size()) != f.n_times()) {
    throw DimensionError("history length does not match the family");
  }
  CMatrix c = identity(f.initial.rows());
  for (int t = 0; t < f.n_times(); ++t) {
    const int label = h[t];
    if (label < 0 || label >= static_cast<int>(f.projector_sets[t].size())) {
      throw DimensionError("history label out of range");
    }
    if (t > 0) c = f.unitaries[t - 1] * c;
    c = f.projector_sets[t][label] * c;
  }
  return c;
}

}  // namespace

Complex decoherence_functional(
    const HistoryFamily& f, const History& h, const History& h_prime) {
  f.validate();
  const CMatrix c = class_operator(f, h);
  const CMatrix cp = class_operator(f, h_prime);
  return (c * f.initial * cp.adjoint()).trace();
}

DecoherenceFunctional full_decoherence_functional(const HistoryFamily& f) {
  f.validate();
  DecoherenceFunctional d;
  d.labels = f.histories();
  const long n = static_cast<long>(d.labels.size());
  std::vector<CMatrix> branches;
  branches.reserve(n);
  for (const auto& h : d.labels) {
    branches.push_back(class_operator(f, h) * f.initial);
  }
  std::vector<CMatrix> ops;
  ops.reserve(n);
  for (const auto& h : d.labels) ops.push_back(class_operator(f, h));
  d.entries = CMatrix::Zero(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      d.entries(i, j) = (branches[i] * ops[j].adjoint()).trace();
    }
  }
  return d;
}

Consistency is_consistent(const DecoherenceFunctional& d, double tol) {
  Consistency c{true, true};
  for (long i = 0; i < d.entries.rows(); ++i) {
    for (long j = 0; j < d.entries.cols(); ++j) {
      if (i == j) continue;
      if (std::abs(d.entries(i, j).real()) >= tol) c.weak = false;
      if (std::abs(d.entries(i, j)) >= tol) c.strong = false;
    }
  }
  return c;
}

Consistency is_consistent(const HistoryFamily& f, double tol) {
  return is_consistent(full_decoherence_functional(f), tol);
}

namespace {

// coarse[t][fine label] -> coarse label
std::vector<std::vector<int>> label_maps(
    const std::vector<std::vector<std::vector<int>>>& partitions,
    const std::vector<int>& fine_counts) {
  if (partitions.size() != fine_counts.size()) {
    throw DimensionError("need one partition per time");
  }
  std::vector<std::vector<int>> maps;
  for (std::size_t t = 0; t < partitions.size(); ++t) {
    std::vector<int> m(fine_counts[t], -1);
    for (std::size_t k = 0; k < partitions[t].size(); ++k) {
      for (int fine : partitions[t][k]) {
        if (fine < 0 || fine >= fine_counts[t] || m[fine] != -1) {
          throw DomainError("partition is not a partition of the labels");
        }
        m[fine] = static_cast<int>(k);
      }
    }
    for (int v : m) {
      if (v < 0) throw DomainError("partition misses a label");
    }
    maps.push_back(std::move(m));
  }
  return maps;
}

}  // namespace

DecoherenceFunctional coarse_grain(
    const DecoherenceFunctional& d,
    const std::vector<std::vector<std::vector<int>>>& partitions) {
  if (d.labels.empty()) throw DimensionError("empty decoherence functional");
  std::vector<int> fine_counts(d.labels[0].size(), 0);
  for (const auto& h : d.labels) {
    for (std::size_t t = 0; t < h.size(); ++t) {
      fine_counts[t] = std::max(fine_counts[t], h[t] + 1);
    }
  }
  const auto maps = label_maps(partitions, fine_counts);
  // Coarse histories in the same slowest-first order.
  DecoherenceFunctional out;
  History h(partitions.size(), 0);
  while (true) {
    out.labels.push_back(h);
    int t = static_cast<int>(h.size()) - 1;
    while (t >= 0 && ++h[t] == static_cast<int>(partitions[t].size())) {
      h[t--] = 0;
    }
    if (t < 0) break;
  }
  auto coarse_index = [&](const History& fine) {
    long idx = 0;
    for (std::size_t t = 0; t < fine.size(); ++t) {
      idx = idx * static_cast<long>(partitions[t].size()) + maps[t][fine[t]];
    }
    return idx;
  };
  const long n = static_cast<long>(out.labels.size());
  out.entries = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < d.labels.size(); ++i) {
    const long ci = coarse_index(d.labels[i]);
    for (std::size_t j = 0; j < d.labels.size(); ++j) {
      out.entries(ci, coarse_index(d.labels[j])) += d.entries(i, j);
    }
  }
  return out;
}

HistoryFamily coarse_grain_family(
    const HistoryFamily& f,
    const std::vector<std::vector<std::vector<int>>>& partitions) {
  std::vector<int> counts;
  for (const auto& s : f.projector_sets) {
    counts.push_back(static_cast<int>(s.size()));
  }
  label_maps(partitions, counts);
  HistoryFamily out{f.initial, {}, f.unitaries};
  const long d = f.initial.rows();
  for (std::size_t t = 0; t < partitions.size(); ++t) {
    std::vector<CMatrix> set;
    for (const auto& group : partitions[t]) {
      CMatrix p = CMatrix::Zero(d, d);
      for (int fine : group) p += f.projector_sets[t][fine];
      set.push_back(p);
    }
    out.projector_sets.push_back(std::move(set));
  }
  return out;
}

HistoryFamily pauli_history_family(
    const CMatrix& rho, const std::vector<CMatrix>& unitaries,
    const std::vector<CMatrix>& sigmas) {
  HistoryFamily f{rho, {}, unitaries};
  for (const auto& s : sigmas) {
    const auto p = pauli_projectors(s);
    f.projector_sets.push_back({p[0], p[1]});
  }
  f.validate();
  return f;
}

double pdm_correlation_from_df(const HistoryFamily& f) {
  f.validate();
  for (const auto& set : f.projector_sets) {
    if (set.size() != 2) {
      throw PreconditionError("each time needs a two-outcome +-1 family");
    }
  }
  double s = 0.0;
  for (const auto& h : f.histories()) {
    double sign = 1.0;
    for (int label : h) sign *= (label == 0) ? 1.0 : -1.0;
    s += sign * decoherence_functional(f, h, h).real();
  }
  return s;
}

std::vector<std::vector<std::vector<double>>> signalling_game_probability(
    const std::vector<CMatrix>& tau, const KrausInstrument& phi,
    const KrausChannel& memory,
    const std::vector<std::vector<CMatrix>>& psi) {
  if (phi.empty() || tau.empty()) throw DimensionError("empty game");
  const int d_in = phi[0].in_dim;
  CMatrix total = CMatrix::Zero(d_in, d_in);
  for (const auto& k : phi) {
    if (k.in_dim != d_in || k.out_dim != memory.in_dim()) {
      throw DimensionError("instrument does not chain into the memory");
    }
    total += k.completeness();
  }
  if ((total - identity(d_in)).cwiseAbs().maxCoeff() > 1e-10) {
    throw PreconditionError("instrument is incomplete");
  }
  if (psi.size() != phi.size()) {
    throw DimensionError("need one final POVM per outcome a");
  }
  const int d_mem = memory.out_dim();
  for (const auto& povm : psi) {
    CMatrix s = CMatrix::Zero(d_mem, d_mem);
    for (const auto& e : povm) {
      if (e.rows() != d_mem) throw DimensionError("POVM has wrong dimension");
      if (!is_hermitian(e, 1e-10) || min_eigenvalue(e) < -1e-10) {
        throw PreconditionError("POVM element is not PSD");
      }
      s += e;
    }
    if ((s - identity(d_mem)).cwiseAbs().maxCoeff() > 1e-10) {
      throw PreconditionError("POVM is incomplete");
    }
  }
  std::vector<std::vector<std::vector<double>>> p(tau.size());
  for (std::size_t x = 0; x < tau.size(); ++x) {
    if (tau[x].rows() != d_in) throw DimensionError("tau has wrong dimension");
    for (std::size_t a = 0; a < phi.size(); ++a) {
      const CMatrix out = memory.apply(phi[a].apply(tau[x]));
      std::vector<double> row;
      for (const auto& e : psi[a]) row.push_back((out * e).trace().real());
      p[x].push_back(std::move(row));
    }
  }
  return p;
}

}  // namespace stq
