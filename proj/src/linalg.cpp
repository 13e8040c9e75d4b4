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

#include "stq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace stq {

namespace {

void check_dims(const CMatrix& m, const DimensionVector& dims) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  for (int d : dims.dims) {
    if (d < 1) throw DimensionError("subsystem dimension must be positive");
  }
  if (dims.total() != m.rows()) {
    throw DimensionError("subsystem dimensions do not match matrix size");
  }
}

void check_index(int k, const DimensionVector& dims) {
  if (k < 0 || k >= dims.size()) {
    throw DimensionError("subsystem index out of range");
  }
}

// Strides of each factor in a row-major multi-index.
std::vector<long> strides_of(const DimensionVector& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int k = dims.size() - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

Complex standard_normal_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double re = n(rng);
  double im = n(rng);
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

}  // namespace

long DimensionVector::total() const {
  long t = 1;
  for (int d : dims) t *= d;
  return t;
}

bool PauliString::is_identity() const {
  return std::all_of(
      indices.begin(), indices.end(), [](int i) { return i == 0; });
}

std::string PauliString::label() const {
  static const char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  for (int i : indices) s += kNames[i];
  return s;
}

PauliString PauliString::from_label(const std::string& s) {
  PauliString p;
  for (char c : s) {
    switch (c) {
      case 'I': case 'i': case '0': p.indices.push_back(0); break;
      case 'X': case 'x': case '1': p.indices.push_back(1); break;
      case 'Y': case 'y': case '2': p.indices.push_back(2); break;
      case 'Z': case 'z': case '3': p.indices.push_back(3); break;
      default: throw DomainError(std::string("bad Pauli label: ") + c);
    }
  }
  return p;
}

CMatrix identity(long d) { return CMatrix::Identity(d, d); }

CMatrix pauli(int index) {
  CMatrix m = CMatrix::Zero(2, 2);
  const Complex i(0.0, 1.0);
  switch (index) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw DomainError("Pauli index must be in {0,1,2,3}");
  }
  return m;
}

CMatrix pauli_operator(const PauliString& p) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int i : p.indices) out = tensor(out, pauli(i));
  return out;
}

std::vector<PauliString> all_pauli_strings(int n) {
  std::vector<PauliString> out;
  long count = 1L << (2 * n);
  out.reserve(count);
  for (long c = 0; c < count; ++c) {
    PauliString p;
    p.indices.resize(n);
    long r = c;
    for (int k = n - 1; k >= 0; --k) {
      p.indices[k] = static_cast<int>(r % 4);
      r /= 4;
    }
    out.push_back(std::move(p));
  }
  return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix tensor_all(const std::vector<CMatrix>& factors) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

CMatrix permute_subsystems(
    const CMatrix& m, const DimensionVector& dims,
    const std::vector<int>& perm) {
  check_dims(m, dims);
  const int n = dims.size();
  if (static_cast<int>(perm.size()) != n) {
    throw DimensionError("permutation length mismatch");
  }
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    check_index(p, dims);
    if (seen[p]++) throw DimensionError("permutation repeats an index");
  }
  DimensionVector out_dims;
  for (int p : perm) out_dims.dims.push_back(dims[p]);
  const auto in_strides = strides_of(dims);
  const long d = dims.total();
  // map[i] = input index for output index i.
  std::vector<long> map(d);
  std::vector<int> digit(n, 0);
  for (long i = 0; i < d; ++i) {
    long src = 0;
    for (int k = 0; k < n; ++k) src += digit[k] * in_strides[perm[k]];
    map[i] = src;
    for (int k = n - 1; k >= 0; --k) {
      if (++digit[k] < out_dims[k]) break;
      digit[k] = 0;
    }
  }
  CMatrix out(d, d);
  for (long j = 0; j < d; ++j) {
    for (long i = 0; i < d; ++i) out(i, j) = m(map[i], map[j]);
  }
  return out;
}

CMatrix partial_trace(
    const CMatrix& m, const DimensionVector& dims,
    const std::vector<int>& keep) {
  check_dims(m, dims);
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw DimensionError("repeated subsystem in keep set");
  }
  for (int k : kept) check_index(k, dims);
  std::vector<int> perm = kept;
  long d_keep = 1;
  for (int k : kept) d_keep *= dims[k];
  for (int k = 0; k < dims.size(); ++k) {
    if (!std::binary_search(kept.begin(), kept.end(), k)) perm.push_back(k);
  }
  const long d_tr = dims.total() / d_keep;
  CMatrix p = permute_subsystems(m, dims, perm);
  CMatrix out = CMatrix::Zero(d_keep, d_keep);
  for (long a = 0; a < d_keep; ++a) {
    for (long b = 0; b < d_keep; ++b) {
      Complex s = 0.0;
      for (long c = 0; c < d_tr; ++c) s += p(a * d_tr + c, b * d_tr + c);
      out(a, b) = s;
    }
  }
  return out;
}

CMatrix partial_transpose(
    const CMatrix& m, const DimensionVector& dims, int subsystem) {
  check_dims(m, dims);
  check_index(subsystem, dims);
  const auto strides = strides_of(dims);
  const long st = strides[subsystem];
  const long dk = dims[subsystem];
  const long d = dims.total();
  CMatrix out(d, d);
  for (long i = 0; i < d; ++i) {
    const long ik = (i / st) % dk;
    for (long j = 0; j < d; ++j) {
      const long jk = (j / st) % dk;
      const long i2 = i + (jk - ik) * st;
      const long j2 = j + (ik - jk) * st;
      out(i, j) = m(i2, j2);
    }
  }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff() <= tol;
}

bool is_density_matrix(const CMatrix& rho, double tol) {
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  return min_eigenvalue(rho) >= -tol;
}

RVector hermitian_eigenvalues(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (!is_hermitian(m, tol)) {
    throw PreconditionError("hermitian_eigenvalues: matrix is not Hermitian");
  }
  CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  RVector ev = es.eigenvalues();
  std::stable_sort(ev.data(), ev.data() + ev.size());
  return ev;
}

double min_eigenvalue(const CMatrix& m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double trace_norm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double operator_norm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

CMatrix haar_random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw DomainError("dimension must be positive");
  std::mt19937_64 rng(seed);
  CMatrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = standard_normal_complex(rng);
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    const double a = std::abs(rk);
    q.col(k) *= (a > 0.0) ? rk / a : Complex(1.0);
  }
  return q;
}

CMatrix random_density_matrix(int d, std::uint64_t seed) {
  CMatrix u = haar_random_unitary(d * d, seed);
  CVector psi = u.col(0);
  CMatrix big = projector(psi);
  return partial_trace(big, DimensionVector{d, d}, {0});
}

CMatrix random_hermitian(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = standard_normal_complex(rng);
  }
  return 0.5 * (z + z.adjoint());
}

CVector random_state_vector(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = standard_normal_complex(rng);
  return v / v.norm();
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CMatrix ket_bra(int d, int i, int j) {
  CMatrix m = CMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

CMatrix swap_operator(int d) {
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  }
  return s;
}

CMatrix max_entangled_projector(int d) {
  CMatrix m = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = 1.0;
  }
  return m;
}

CMatrix pairwise_sum(const std::vector<CMatrix>& terms) {
  if (terms.empty()) throw DimensionError("pairwise_sum of empty list");
  std::vector<CMatrix> level = terms;
  while (level.size() > 1) {
    std::vector<CMatrix> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(level[i] + level[i + 1]);
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

double pairwise_sum(const std::vector<double>& terms) {
  if (terms.empty()) return 0.0;
  std::vector<double> level = terms;
  while (level.size() > 1) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(level[i] + level[i + 1]);
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

}  // namespace stq
