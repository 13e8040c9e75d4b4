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

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stq/linalg.hpp"

namespace stq {

// A completely positive map rho -> sum_k K rho K^dag. No trace condition.
struct KrausMap {
  int in_dim = 0;
  int out_dim = 0;
  std::vector<CMatrix> operators;

  KrausMap() = default;
  KrausMap(int in, int out, std::vector<CMatrix> ops);

  CMatrix apply(const CMatrix& rho) const;
  // sum_k K^dag K, equal to the identity for trace-preserving maps.
  CMatrix completeness() const;
};

// Trace-preserving Kraus family; the constructor enforces
// sum_k K^dag K = I within tolerance.
class KrausChannel {
 public:
  KrausChannel() = default;
  explicit KrausChannel(std::vector<CMatrix> ops, double tol = kTol);

  int in_dim() const { return map_.in_dim; }
  int out_dim() const { return map_.out_dim; }
  const std::vector<CMatrix>& operators() const { return map_.operators; }
  const KrausMap& as_map() const { return map_; }

  CMatrix apply(const CMatrix& rho) const { return map_.apply(rho); }

 private:
  KrausMap map_;
};

KrausChannel identity_channel(int d);
KrausChannel unitary_channel(const CMatrix& u);
// rho -> (1-p) rho + p I/2
KrausChannel depolarizing(double p);
// Bloch vector (x, y, z) -> (x sqrt(1-lambda), y sqrt(1-lambda), z)
KrausChannel dephasing(double lambda);
// Fock-basis dephasing on a d-level system: rho -> diag(rho).
KrausChannel full_dephasing(int d);
// Stinespring dilation of a Haar unitary with an n_env-level environment.
KrausChannel random_channel(int d, int n_env, std::uint64_t seed);
// Apply first, then second.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

// Closed-form solution of the qubit dephasing master equation with
// H = omega Z / 2 and dephasing rate gamma.
CMatrix lindblad_dephasing_evolve(
    const CMatrix& rho, double omega, double gamma, double t);

// Choi matrix M = (Mcal (x) I)(|I>><<I|) on H_out (x) H_in, output factor
// first, with |I>> = sum_n |n>|n> unnormalized.
struct ChoiOperator {
  CMatrix matrix;
  int d_out = 0;
  int d_in = 0;
};

struct ChoiCheck {
  bool tp = false;
  bool hermitian_preserving = false;
  bool cp = false;
};

ChoiOperator choi_of_channel(const KrausChannel& ch);
ChoiOperator choi_of_map(const KrausMap& m);
// Mcal(X) = Tr_in[(I (x) X^T) M]
CMatrix apply_choi(const ChoiOperator& c, const CMatrix& x);
std::function<CMatrix(const CMatrix&)> channel_of_choi(const ChoiOperator& c);
ChoiCheck check_choi(const ChoiOperator& c, double tol = 1e-8);

// Bloch vector (Tr X rho, Tr Y rho, Tr Z rho) of a qubit operator.
Eigen::Vector3d bloch_vector(const CMatrix& rho);

}  // namespace stq
