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
#include <map>
#include <string>
#include <vector>

#include "stq/channels.hpp"
#include "stq/linalg.hpp"

namespace stq {

struct CorrelationSeries {
  // values[k] belongs to index first_index + k (N or period count).
  std::vector<double> values;
  int first_index = 1;
  std::map<std::string, double> label;
};

// H1 = (g - epsilon) sum_i sigma^x_i over t1, then
// H2 = sum_i J_i sigma^z_i sigma^z_{i+1} + h^z_i sigma^z_i + h^x_i sigma^x_i
// over t2, on an open chain. Empty coupling or field lists are filled from
// the disorder intervals with the given seed.
struct FloquetChainSpec {
  int length = 8;
  double epsilon = 0.0;
  double g = M_PI / 2.0;
  std::vector<double> couplings;
  std::vector<double> fields_z;
  std::vector<double> fields_x;
  double j_min = 0.1, j_max = 0.3;
  double hz_min = 0.0, hz_max = 1.0;
  double hx = 0.0;
  std::uint64_t seed = 0;
  double t1 = 1.0;
  double t2 = 1.0;
};

struct SpectralPeak {
  double peak_freq = 0.0;
  double peak_weight = 0.0;
  bool split = false;
};

// Entry N is <obs(t_1), obs(t_N)> with the channel applied N - 1 times.
CorrelationSeries channel_decay_series(
    const CMatrix& rho, const KrausChannel& ch, const CMatrix& obs, int n_max);
// max_k ||E_k|| over the Kraus operators.
double kraus_norm_bound(const KrausChannel& ch);
// |<X(t_1), X(t_{n+1})>| <= gamma^{2n} on |+>.
bool general_decay_bound_check(const KrausChannel& ch, int n);

// a_{n+1} = 4 a_n (1-p) / (3 + a_n^2 (1-p)^2), a_1 = 1.
CorrelationSeries symmetrization_series(double p, int n_max);
// Same protocol under dephasing(lambda) with b = sqrt(1 - lambda).
CorrelationSeries dephasing_symmetrization_series(double lambda, int n_max);
// Two noisy copies of the Bloch vector, conditioned on the symmetric
// subspace and reduced to one qubit; the brute-force step behind the
// recurrences.
CMatrix symmetrize_copies(const CMatrix& rho_a, const CMatrix& rho_b);

struct PhaseFlipSeries {
  CorrelationSeries xx;
  CorrelationSeries zz;
};
// Logical flip probability per round: 3p^2 - 2p^3.
double phase_flip_logical_error(double p);
PhaseFlipSeries phase_flip_code_series(double p, int n_max);

// Resolved couplings and fields for a spec.
struct FloquetParameters {
  std::vector<double> couplings;
  std::vector<double> fields_z;
  std::vector<double> fields_x;
};
FloquetParameters floquet_parameters(const FloquetChainSpec& spec);
CMatrix floquet_unitary(const FloquetChainSpec& spec);
// Entry n = <sigma^z_site(0), sigma^z_site(nT)> for the z-basis product
// state given by bits (bit i set means spin i down), n = 0..n_periods-1.
CorrelationSeries floquet_correlation_series(
    const FloquetChainSpec& spec, int site, int n_periods,
    std::uint64_t initial_bits = 0);

// Full DFT of the series. peak_freq is folded into [0, 1/2] cycles per
// period. split is set when the strongest bin is not at 1/2 and the two
// strongest bins lie on opposite sides of 1/2 inside (1/4, 3/4) with power
// ratio below 2.
SpectralPeak subharmonic_peak(const CorrelationSeries& series);
bool long_range_order_in_time(
    const CorrelationSeries& series, int window, double threshold);

// Magnitude-level flip condition sum_k E_k |s><s| E_k^dag = |-s><-s| for
// every single-qubit z-basis product state on n qubits.
bool flip_condition_check(const std::vector<CMatrix>& kraus, int n_qubits,
                          double tol = 1e-10);

}  // namespace stq
