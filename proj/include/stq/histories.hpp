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

#include <vector>

#include "stq/channels.hpp"
#include "stq/linalg.hpp"
#include "stq/pdm.hpp"

namespace stq {

// A history assigns one projector label per time.
using History = std::vector<int>;

// Projective histories at n times with Schroedinger-picture unitaries
// between successive times.
struct HistoryFamily {
  CMatrix initial;
  std::vector<std::vector<CMatrix>> projector_sets;
  std::vector<CMatrix> unitaries;

  int n_times() const { return static_cast<int>(projector_sets.size()); }
  // Throws unless every set is exhaustive and mutually exclusive and the
  // unitaries chain.
  void validate(double tol = kTol) const;
  // Every label tuple, with the label at time 0 varying slowest.
  std::vector<History> histories() const;
};

// D[i][j] for histories i, j in the order of HistoryFamily::histories().
struct DecoherenceFunctional {
  std::vector<History> labels;
  CMatrix entries;
};

struct Consistency {
  bool weak = false;
  bool strong = false;
};

// Class operator C_alpha = P^n U ... U P^1, D = Tr[C_alpha rho C_alpha'^dag].
Complex decoherence_functional(
    const HistoryFamily& f, const History& h, const History& h_prime);
DecoherenceFunctional full_decoherence_functional(const HistoryFamily& f);
Consistency is_consistent(const HistoryFamily& f, double tol = 1e-10);
Consistency is_consistent(const DecoherenceFunctional& d, double tol = 1e-10);

// Merge labels per time: partitions[t][k] lists the fine labels forming
// coarse label k.
DecoherenceFunctional coarse_grain(
    const DecoherenceFunctional& d,
    const std::vector<std::vector<std::vector<int>>>& partitions);
HistoryFamily coarse_grain_family(
    const HistoryFamily& f,
    const std::vector<std::vector<std::vector<int>>>& partitions);

// Projectors {(I + sigma_t)/2, (I - sigma_t)/2} at each time.
HistoryFamily pauli_history_family(
    const CMatrix& rho, const std::vector<CMatrix>& unitaries,
    const std::vector<CMatrix>& sigmas);
// sum over histories of alpha_1 ... alpha_n D([alpha],[alpha]) with label 0
// read as +1 and label 1 as -1.
double pdm_correlation_from_df(const HistoryFamily& f);

// One Kraus family per outcome a; together they form a channel.
using KrausInstrument = std::vector<KrausMap>;

// p(a, b | x) = Tr[(N o Phi^a)(tau^x) Psi^{b|a}], indexed [x][a][b].
std::vector<std::vector<std::vector<double>>> signalling_game_probability(
    const std::vector<CMatrix>& tau, const KrausInstrument& phi,
    const KrausChannel& memory,
    const std::vector<std::vector<CMatrix>>& psi);

}  // namespace stq
