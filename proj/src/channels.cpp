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

#include "stq/channels.hpp"

#include <cmath>

namespace stq {

KrausMap::KrausMap(int in, int out, std::vector<CMatrix> ops)
    : in_dim(in), out_dim(out), operators(std::move(ops)) {
  if (operators.empty()) throw DimensionError("empty Kraus family");
  for (const auto& k : operators) {
    if (k.rows() != out_dim || k.cols() != in_dim) {
      throw DimensionError("Kraus operator has wrong shape");
    }
  }
}

CMatrix KrausMap::apply(const CMatrix& rho) const {
  if (rho.rows() != in_dim || rho.cols() != in_dim) {
    throw DimensionError("state dimension does not match map input");
  }
  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  for (const auto& k : operators) out.noalias() += k * rho * k.adjoint();
  return out;
}

CMatrix KrausMap::completeness() const {
  CMatrix s = CMatrix::Zero(in_dim, in_dim);
  for (const auto& k : operators) s.noalias() += k.adjoint() * k;
  return s;
}

KrausChannel::KrausChannel(std::vector<CMatrix> ops, double tol) {
  if (ops.empty()) throw DimensionError("empty Kraus family");
  const int in = static_cast<int>(ops[0].cols());
  const int out = static_cast<int>(ops[0].rows());
  map_ = KrausMap(in, out, std::move(ops));
  double dev = (map_.completeness() - identity(map_.in_dim))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > tol) {
    throw PreconditionError("Kraus operators are not trace preserving");
  }
}

KrausChannel identity_channel(int d) {
  if (d < 1) throw DomainError("dimension must be positive");
  return KrausChannel({identity(d)});
}

KrausChannel unitary_channel(const CMatrix& u) {
  if (!is_unitary(u)) throw PreconditionError("operator is not unitary");
  return KrausChannel({u});
}

KrausChannel depolarizing(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
  const double a = std::sqrt(1.0 - 0.75 * p);
  const double b = std::sqrt(0.25 * p);
  return KrausChannel({a * pauli(0), b * pauli(1), b * pauli(2), b * pauli(3)});
}

KrausChannel dephasing(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("lambda must lie in [0,1]");
  }
  const double s = std::sqrt(1.0 - lambda);
  return KrausChannel(
      {std::sqrt(0.5 * (1.0 + s)) * pauli(0),
       std::sqrt(0.5 * (1.0 - s)) * pauli(3)});
}

KrausChannel full_dephasing(int d) {
  if (d < 1) throw DomainError("dimension must be positive");
  std::vector<CMatrix> ops;
  for (int n = 0; n < d; ++n) ops.push_back(ket_bra(d, n, n));
  return KrausChannel(std::move(ops));
}

KrausChannel random_channel(int d, int n_env, std::uint64_t seed) {
  if (d < 1 || n_env < 1) throw DomainError("dimensions must be positive");
  // V = U (I (x) |0>_env): the columns of U with environment index 0.
  CMatrix u = haar_random_unitary(d * n_env, seed);
  std::vector<CMatrix> ops;
  for (int e = 0; e < n_env; ++e) {
    CMatrix k(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) k(i, j) = u(i * n_env + e, j * n_env);
    }
    ops.push_back(k);
  }
  return KrausChannel(std::move(ops));
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.out_dim() != second.in_dim()) {
    throw DimensionError("channels do not chain");
  }
  std::vector<CMatrix> ops;
  for (const auto& b : second.operators()) {
    for (const auto& a : first.operators()) ops.push_back(b * a);
  }
  return KrausChannel(std::move(ops), 1e-9);
}

CMatrix lindblad_dephasing_evolve(
    const CMatrix& rho, double omega, double gamma, double t) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw DimensionError("lindblad_dephasing_evolve needs a 2x2 matrix");
  }
  CMatrix out = rho;
  const Complex f = std::exp(Complex(-gamma * t, -omega * t));
  out(0, 1) = rho(0, 1) * f;
  out(1, 0) = rho(1, 0) * std::conj(f);
  return out;
}

ChoiOperator choi_of_map(const KrausMap& m) {
  const int di = m.in_dim;
  const int dout = m.out_dim;
  ChoiOperator c{CMatrix::Zero(dout * di, dout * di), dout, di};
  for (int i = 0; i < di; ++i) {
    for (int j = 0; j < di; ++j) {
      c.matrix += tensor(m.apply(ket_bra(di, i, j)), ket_bra(di, i, j));
    }
  }
  return c;
}

ChoiOperator choi_of_channel(const KrausChannel& ch) {
  return choi_of_map(ch.as_map());
}

CMatrix apply_choi(const ChoiOperator& c, const CMatrix& x) {
  if (x.rows() != c.d_in || x.cols() != c.d_in) {
    throw DimensionError("operator does not match Choi input dimension");
  }
  CMatrix prod = tensor(identity(c.d_out), x.transpose()) * c.matrix;
  return partial_trace(prod, DimensionVector{c.d_out, c.d_in}, {0});
}

std::function<CMatrix(const CMatrix&)> channel_of_choi(const ChoiOperator& c) {
  return [c](const CMatrix& x) { return apply_choi(c, x); };
}

ChoiCheck check_choi(const ChoiOperator& c, double tol) {
  ChoiCheck r;
  CMatrix tr_out =
      partial_trace(c.matrix, DimensionVector{c.d_out, c.d_in}, {1});
  r.tp = (tr_out - identity(c.d_in)).cwiseAbs().maxCoeff() <= tol;
  r.hermitian_preserving = is_hermitian(c.matrix, tol);
  r.cp = r.hermitian_preserving && min_eigenvalue(c.matrix) >= -tol;
  return r;
}

Eigen::Vector3d bloch_vector(const CMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw DimensionError("Bloch vector needs a 2x2 matrix");
  }
  Eigen::Vector3d r;
  for (int k = 1; k <= 3; ++k) r(k - 1) = (pauli(k) * rho).trace().real();
  return r;
}

}  // namespace stq
