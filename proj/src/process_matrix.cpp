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

#include "stq/process_matrix.hpp"

#include <cmath>
#include <functional>
#include <set>

namespace stq {

namespace {

CMatrix trace_and_replace_one(
    const CMatrix& w, const DimensionVector& dims, int k) {
  long stride = 1;
  for (int j = dims.size() - 1; j > k; --j) stride *= dims[j];
  const long dk = dims[k];
  const long d = dims.total();
  CMatrix out = CMatrix::Zero(d, d);
  for (long i = 0; i < d; ++i) {
    const long ik = (i / stride) % dk;
    const long i0 = i - ik * stride;
    for (long j = 0; j < d; ++j) {
      const long jk = (j / stride) % dk;
      if (ik != jk) continue;
      const long j0 = j - jk * stride;
      Complex s = 0.0;
      for (long m = 0; m < dk; ++m) s += w(i0 + m * stride, j0 + m * stride);
      out(i, j) = s / double(dk);
    }
  }
  return out;
}

struct ProjectorTerm {
  double sign;
  std::vector<int> subsystems;
};

// Subsystems: 0 = A_I, 1 = A_O, 2 = B_I, 3 = B_O.
const std::vector<ProjectorTerm>& lv_terms() {
  static const std::vector<ProjectorTerm> kTerms = {
      {+1, {1}},    {+1, {3}},       {-1, {1, 3}},    {-1, {0, 1}},
      {+1, {0, 1, 3}}, {-1, {2, 3}}, {+1, {1, 2, 3}}};
  return kTerms;
}

const std::vector<ProjectorTerm>& lv_terms_as_printed() {
  static const std::vector<ProjectorTerm> kTerms = {
      {+1, {1}},    {+1, {3}},       {-1, {1, 3}},    {-1, {0, 1}},
      {+1, {0, 1, 3}}, {-1, {2, 3}}, {+1, {0, 1, 3}}};
  return kTerms;
}

ProcessMatrix apply_terms(
    const ProcessMatrix& w, const std::vector<ProjectorTerm>& terms) {
  if (w.w.rows() != w.dims.total() || w.w.cols() != w.dims.total()) {
    throw DimensionError("process matrix does not match its dimensions");
  }
  const auto dims = w.dims.as_vector();
  CMatrix out = CMatrix::Zero(w.w.rows(), w.w.cols());
  for (const auto& t : terms) {
    out += t.sign * trace_and_replace(w.w, dims, t.subsystems);
  }
  return {w.dims, out};
}

void check_instruments(
    const ProcessMatrix& w, const Instrument& a, const Instrument& b) {
  if (a.d_in != w.dims.a_in || a.d_out != w.dims.a_out ||
      b.d_in != w.dims.b_in || b.d_out != w.dims.b_out) {
    throw DimensionError("instrument dimensions do not match the process");
  }
  for (const Instrument* ins : {&a, &b}) {
    for (const auto& row : ins->ops) {
      if (static_cast<int>(row.size()) != ins->n_outcomes()) {
        throw DimensionError("instrument has ragged outcome lists");
      }
      for (const auto& op : row) {
        if (op.rows() != long(ins->d_in) * ins->d_out) {
          throw DimensionError("instrument operator has wrong dimension");
        }
      }
    }
  }
}

CMatrix diag_projector(int d, int i) { return ket_bra(d, i, i); }

}  // namespace

double Instrument::completeness_deviation() const {
  double worst = 0.0;
  for (const auto& row : ops) {
    CMatrix s = CMatrix::Zero(d_in, d_in);
    for (const auto& op : row) {
      s += partial_trace(op, DimensionVector{d_in, d_out}, {0});
    }
    worst = std::max(worst, (s - identity(d_in)).cwiseAbs().maxCoeff());
  }
  return worst;
}

ProbabilityTable::ProbabilityTable(int m_a, int m_b, int k_a, int k_b)
    : m_a_(m_a), m_b_(m_b), k_a_(k_a), k_b_(k_b) {
  if (m_a < 1 || m_b < 1 || k_a < 1 || k_b < 1) {
    throw DomainError("table sizes must be positive");
  }
  p_.assign(std::size_t(m_a) * m_b * k_a * k_b, 0.0);
}

std::size_t ProbabilityTable::index(int x, int y, int a, int b) const {
  if (x < 0 || x >= m_a_ || y < 0 || y >= m_b_ || a < 0 || a >= k_a_ ||
      b < 0 || b >= k_b_) {
    throw DimensionError("probability table index out of range");
  }
  return ((std::size_t(x) * m_b_ + y) * k_b_ + b) * k_a_ + a;
}

double ProbabilityTable::normalization_deviation() const {
  double worst = 0.0;
  for (int x = 0; x < m_a_; ++x) {
    for (int y = 0; y < m_b_; ++y) {
      double s = 0.0;
      for (int a = 0; a < k_a_; ++a) {
        for (int b = 0; b < k_b_; ++b) s += at(x, y, a, b);
      }
      worst = std::max(worst, std::abs(s - 1.0));
    }
  }
  return worst;
}

CMatrix trace_and_replace(
    const CMatrix& w, const DimensionVector& dims,
    const std::vector<int>& subsystems) {
  if (w.rows() != dims.total() || w.cols() != dims.total()) {
    throw DimensionError("matrix does not match subsystem dimensions");
  }
  CMatrix out = w;
  for (int k : subsystems) {
    if (k < 0 || k >= dims.size()) {
      throw DimensionError("subsystem index out of range");
    }
    out = trace_and_replace_one(out, dims, k);
  }
  return out;
}

ProcessMatrix lv_project(const ProcessMatrix& w) {
  return apply_terms(w, lv_terms());
}

ProcessMatrix lv_project_as_printed(const ProcessMatrix& w) {
  return apply_terms(w, lv_terms_as_printed());
}

ProcessDiagnostics is_valid_process(
    const ProcessMatrix& w, double psd_tol, double trace_tol,
    double fixed_tol) {
  ProcessDiagnostics d;
  d.min_eigenvalue = min_eigenvalue(w.w);
  d.psd = is_hermitian(w.w, 1e-10) && d.min_eigenvalue >= -psd_tol;
  d.trace = w.w.trace().real();
  d.expected_trace = double(w.dims.a_out) * w.dims.b_out;
  d.trace_ok = std::abs(d.trace - d.expected_trace) <= trace_tol;
  d.projector_residual =
      (lv_project(w).w - w.w).cwiseAbs().maxCoeff();
  d.fixed_point = d.projector_residual <= fixed_tol;
  return d;
}

CMatrix cj_of_map(const KrausMap& m) {
  const int di = m.in_dim;
  CMatrix c = CMatrix::Zero(long(di) * m.out_dim, long(di) * m.out_dim);
  for (int i = 0; i < di; ++i) {
    for (int j = 0; j < di; ++j) {
      c += tensor(ket_bra(di, i, j), m.apply(ket_bra(di, i, j)));
    }
  }
  return c;
}

ProcessMatrix sequential_process(const CMatrix& rho, const KrausChannel& e) {
  if (!is_density_matrix(rho, 1e-10)) {
    throw PreconditionError("initial state is not a density matrix");
  }
  ProcessDims dims{static_cast<int>(rho.rows()), e.in_dim(), e.out_dim(),
                   e.out_dim()};
  CMatrix w = tensor_all(
      {rho, cj_of_map(e.as_map()), identity(e.out_dim())});
  return {dims, w};
}

Instrument pauli_instrument(const CMatrix& sigma) {
  const auto p = pauli_projectors(sigma);
  const int d = static_cast<int>(sigma.rows());
  Instrument ins{d, d, {{}}};
  for (int a = 0; a < 2; ++a) {
    ins.ops[0].push_back(cj_of_map(KrausMap(d, d, {p[a]})));
  }
  return ins;
}

Instrument uniform_noise_instrument(int n_inputs, int n_outcomes, int d) {
  if (n_inputs < 1 || n_outcomes < 1 || d < 1) {
    throw DomainError("instrument sizes must be positive");
  }
  const CMatrix op = identity(long(d) * d) / (double(d) * n_outcomes);
  Instrument ins{d, d, {}};
  ins.ops.assign(n_inputs, std::vector<CMatrix>(n_outcomes, op));
  return ins;
}

double process_correlation(
    const ProcessMatrix& w, const Instrument& a, const Instrument& b, int x,
    int y, int a_out, int b_out) {
  check_instruments(w, a, b);
  if (x < 0 || x >= a.n_inputs() || y < 0 || y >= b.n_inputs() ||
      a_out < 0 || a_out >= a.n_outcomes() || b_out < 0 ||
      b_out >= b.n_outcomes()) {
    throw DimensionError("input or outcome index out of range");
  }
  const CMatrix ab = tensor(a.ops[x][a_out], b.ops[y][b_out]);
  return (w.w.transpose() * ab).trace().real();
}

ProbabilityTable probability_table(
    const ProcessMatrix& w, const Instrument& a, const Instrument& b) {
  check_instruments(w, a, b);
  ProbabilityTable t(a.n_inputs(), b.n_inputs(), a.n_outcomes(),
                     b.n_outcomes());
  for (int x = 0; x < a.n_inputs(); ++x) {
    for (int y = 0; y < b.n_inputs(); ++y) {
      for (int i = 0; i < a.n_outcomes(); ++i) {
        for (int j = 0; j < b.n_outcomes(); ++j) {
          t.at(x, y, i, j) = process_correlation(w, a, b, x, y, i, j);
        }
      }
    }
  }
  return t;
}

namespace {

void check_binary_game(const ProbabilityTable& p, double tol) {
  if (p.m_a() != 2 || p.m_b() != 2 || p.k_a() != 2 || p.k_b() != 2) {
    throw DimensionError("GYNI games need binary inputs and outputs");
  }
  if (p.normalization_deviation() > tol) {
    throw PreconditionError("probability table is not normalized");
  }
}

}  // namespace

double gyni_score(const ProbabilityTable& p, double tol) {
  check_binary_game(p, tol);
  double s = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) s += p.at(x, y, y, x);
  }
  return 0.25 * s;
}

double lgyni_score(const ProbabilityTable& p, double tol) {
  check_binary_game(p, tol);
  double s = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          if (x * (a ^ y) == 0 && y * (b ^ x) == 0) s += p.at(x, y, a, b);
        }
      }
    }
  }
  return 0.25 * s;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) {
      throw DomainError("vertex count overflows 64 bits");
    }
    r *= base;
  }
  return r;
}

// Calls f for every function {0..n-1} -> {0..k-1}, given as a digit list.
void for_each_function(
    int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> digits(n, 0);
  while (true) {
    f(digits);
    int i = 0;
    while (i < n && ++digits[i] == k) digits[i++] = 0;
    if (i == n) return;
  }
}

}  // namespace

std::uint64_t count_causal_vertices(int m_a, int m_b, int k_a, int k_b) {
  if (m_a < 1 || m_b < 1 || k_a < 1 || k_b < 1) {
    throw DomainError("input and output counts must be positive");
  }
  const std::uint64_t ab = checked_pow(k_a, m_a) *
                           checked_pow(k_b, std::uint64_t(m_a) * m_b);
  const std::uint64_t ba = checked_pow(k_a, std::uint64_t(m_a) * m_b) *
                           checked_pow(k_b, m_b);
  const std::uint64_t both = checked_pow(k_a, m_a) * checked_pow(k_b, m_b);
  return ab + ba - both;
}

std::vector<ProbabilityTable> enumerate_causal_vertices(
    int m_a, int m_b, int k_a, int k_b) {
  if (count_causal_vertices(m_a, m_b, k_a, k_b) > 5000000) {
    throw DomainError("too many vertices to enumerate");
  }
  std::set<ProbabilityTable> found;
  // Alice first: a = f(x), b = g(x, y).
  for_each_function(m_a, k_a, [&](const std::vector<int>& f) {
    for_each_function(m_a * m_b, k_b, [&](const std::vector<int>& g) {
      ProbabilityTable t(m_a, m_b, k_a, k_b);
      for (int x = 0; x < m_a; ++x) {
        for (int y = 0; y < m_b; ++y) t.at(x, y, f[x], g[x * m_b + y]) = 1.0;
      }
      found.insert(t);
    });
  });
  // Bob first: b = h(y), a = k(x, y).
  for_each_function(m_b, k_b, [&](const std::vector<int>& h) {
    for_each_function(m_a * m_b, k_a, [&](const std::vector<int>& k) {
      ProbabilityTable t(m_a, m_b, k_a, k_b);
      for (int x = 0; x < m_a; ++x) {
        for (int y = 0; y < m_b; ++y) t.at(x, y, k[x * m_b + y], h[y]) = 1.0;
      }
      found.insert(t);
    });
  });
  return {found.begin(), found.end()};
}

ProcessMatrix gyni_process() {
  const CMatrix i = pauli(0), x = pauli(1), z = pauli(3);
  const CMatrix w =
      0.25 * (identity(16) +
              (tensor_all({z, z, z, i}) + tensor_all({z, i, x, x})) /
                  std::sqrt(2.0));
  return {ProcessDims{2, 2, 2, 2}, w};
}

Instrument gyni_operations() {
  Instrument ins{2, 2, {}};
  ins.ops.push_back({CMatrix::Zero(4, 4), max_entangled_projector(2)});
  ins.ops.push_back({tensor(diag_projector(2, 0), diag_projector(2, 0)),
                     tensor(diag_projector(2, 1), diag_projector(2, 0))});
  return ins;
}

Instrument gyni_operations_as_printed() {
  Instrument ins{2, 2, {}};
  ins.ops.push_back({CMatrix::Zero(4, 4), max_entangled_projector(2)});
  ins.ops.push_back({0.5 * tensor(diag_projector(2, 0), identity(2)),
                     0.5 * tensor(diag_projector(2, 1), identity(2))});
  return ins;
}

GameScores gyni_demo() {
  const auto w = gyni_process();
  const auto ops = gyni_operations();
  const auto t = probability_table(w, ops, ops);
  return {gyni_score(t), lgyni_score(t)};
}

PDM process_pdm(const ProcessMatrix& w) {
  const auto& d = w.dims;
  if (d.a_in != 2 || d.a_out != 2 || d.b_in != 2 || d.b_out != 2) {
    throw DimensionError("process PDM needs qubit subsystems");
  }
  const double norm = double(d.a_out) * d.b_out;
  const CMatrix wt = w.w.transpose();
  std::vector<CMatrix> terms;
  for (const auto& s : all_pauli_strings(4)) {
    const CMatrix op = pauli_operator(s);
    const double c = (wt * op).trace().real() / norm;
    terms.push_back(c * op);
  }
  return PDM{4, 1, pairwise_sum(terms) / 16.0};
}

ProbabilityTable pdm_probability_table(
    const PDM& r, const ProcessDims& dims, const Instrument& a,
    const Instrument& b) {
  if (r.matrix.rows() != dims.total()) {
    throw DimensionError("PDM does not match the process dimensions");
  }
  ProcessMatrix shell{dims, CMatrix::Zero(dims.total(), dims.total())};
  check_instruments(shell, a, b);
  const double norm = double(dims.a_out) * dims.b_out;
  ProbabilityTable t(a.n_inputs(), b.n_inputs(), a.n_outcomes(),
                     b.n_outcomes());
  for (int x = 0; x < a.n_inputs(); ++x) {
    for (int y = 0; y < b.n_inputs(); ++y) {
      for (int i = 0; i < a.n_outcomes(); ++i) {
        for (int j = 0; j < b.n_outcomes(); ++j) {
          const CMatrix ab = tensor(a.ops[x][i], b.ops[y][j]);
          t.at(x, y, i, j) = norm * (r.matrix * ab).trace().real();
        }
      }
    }
  }
  return t;
}

GameScores pdm_gyni_scores(const Instrument& a, const Instrument& b) {
  const auto w = gyni_process();
  const auto t = pdm_probability_table(process_pdm(w), w.dims, a, b);
  return {gyni_score(t), lgyni_score(t)};
}

GameScores pdm_gyni_demo() {
  const auto ops = gyni_operations();
  return pdm_gyni_scores(ops, ops);
}

}  // namespace stq
