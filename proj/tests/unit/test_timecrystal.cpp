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

#include <cmath>

#include "stq/pdm.hpp"
#include "stq/timecrystal.hpp"
#include "test_util.hpp"

namespace stq::test {
namespace {

CorrelationSeries alternating(int n) {
  CorrelationSeries s;
  for (int k = 0; k < n; ++k) s.values.push_back(k % 2 == 0 ? 1.0 : -1.0);
  return s;
}

TEST_CASE("depolarizing and dephasing decay") {
  for (double p : {0.05, 0.1, 0.3}) {
    const auto s = channel_decay_series(plus_state(), depolarizing(p), pauli(1), 25);
    REQUIRE(s.values.size() == 25);
    for (int n = 1; n <= 25; ++n) {
      CHECK(std::abs(s.values[n - 1] - std::pow(1.0 - p, n - 1)) <= 1e-10);
    }
  }
  for (double lambda : {0.1, 0.5}) {
    const auto s = channel_decay_series(identity(2) / 2.0, dephasing(lambda),
                                        pauli(1), 20);
    for (int n = 1; n <= 20; ++n) {
      CHECK(std::abs(s.values[n - 1] - std::pow(std::sqrt(1.0 - lambda), n - 1)) <=
            1e-10);
    }
  }
  const auto id = channel_decay_series(random_density_matrix(2, 1),
                                       identity_channel(2), pauli(3), 10);
  for (double v : id.values) CHECK(std::abs(v - 1.0) <= 1e-12);
  CHECK_THROWS_AS(channel_decay_series(identity(4) / 4.0, identity_channel(4),
                                       identity(4), 3),
                  DimensionError);
}

TEST_CASE("unital channels follow the Bloch contraction") {
  const CMatrix u = haar_random_unitary(2, 3);
  const auto ch = compose(depolarizing(0.2), unitary_channel(u));
  const auto s = channel_decay_series(identity(2) / 2.0, ch, pauli(3), 8);
  // The channel acts on Bloch vectors as 0.8 R with R the rotation by u.
  RMatrix r(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r(i, j) = 0.5 * (pauli(i + 1) * u * pauli(j + 1) * u.adjoint()).trace().real();
    }
  }
  RMatrix m = RMatrix::Identity(3, 3);
  for (int n = 1; n <= 8; ++n) {
    CHECK(std::abs(s.values[n - 1] - m(2, 2)) <= 1e-10);
    m = 0.8 * r * m;
  }
}

TEST_CASE("general decay bound") {
  const auto dep = depolarizing(0.5);
  CHECK(kraus_norm_bound(dep) < 1.0);
  for (int n = 0; n <= 10; ++n) {
    CHECK(general_decay_bound_check(dep, n));
    CHECK(general_decay_bound_check(dephasing(0.96), n));
  }
  CHECK_THROWS_AS(general_decay_bound_check(identity_channel(2), 1),
                  PreconditionError);
  CHECK_THROWS_AS(general_decay_bound_check(dep, -1), DomainError);
}

TEST_CASE("symmetrization recurrence") {
  const auto s = symmetrization_series(0.2, 200);
  CHECK(std::abs(s.values.back() - std::sqrt(0.2) / 0.8) <= 1e-6);
  for (double v : symmetrization_series(0.0, 30).values) CHECK(v == 1.0);
  const auto half = symmetrization_series(0.5, 40);
  for (int n = 2; n <= 40; ++n) {
    CHECK(half.values[n - 1] >= std::pow(0.5, n - 1));
  }
  CHECK(half.values.back() <= 1e-3);
  CHECK_THROWS_AS(symmetrization_series(1.5, 3), DomainError);
  CHECK_THROWS_AS(symmetrization_series(0.1, 0), DomainError);
}

TEST_CASE("symmetrization recurrence matches two-copy simulation") {
  for (double p : {0.1, 0.2, 0.5}) {
    const auto s = symmetrization_series(p, 6);
    CMatrix rho = plus_state();
    for (int n = 1; n <= 6; ++n) {
      CHECK(std::abs((pauli(1) * rho).trace().real() - s.values[n - 1]) <= 1e-8);
      const CMatrix noisy = depolarizing(p).apply(rho);
      rho = symmetrize_copies(noisy, noisy);
    }
  }
  const auto d = dephasing_symmetrization_series(0.3, 6);
  CMatrix rho = plus_state();
  for (int n = 1; n <= 6; ++n) {
    CHECK(std::abs((pauli(1) * rho).trace().real() - d.values[n - 1]) <= 1e-8);
    const CMatrix noisy = dephasing(0.3).apply(rho);
    rho = symmetrize_copies(noisy, noisy);
  }
}

TEST_CASE("symmetrize copies") {
  CHECK(max_abs_diff(symmetrize_copies(ket0(), ket0()), ket0()) <= 1e-15);
  CHECK(max_abs_diff(symmetrize_copies(ket0(), ket1()), identity(2) / 2.0) <= 1e-15);
  CHECK_THROWS_AS(symmetrize_copies(identity(4), ket0()), DimensionError);
}

TEST_CASE("phase-flip code") {
  CHECK(phase_flip_logical_error(0.0) == 0.0);
  CHECK(phase_flip_logical_error(0.5) == doctest::Approx(0.5));
  const auto z = phase_flip_code_series(0.0, 10);
  for (double v : z.zz.values) CHECK(v == 1.0);
  for (double p : {0.01, 0.05, 0.2}) {
    const auto s = phase_flip_code_series(p, 10);
    const double q = phase_flip_logical_error(p);
    for (int n = 1; n <= 10; ++n) {
      CHECK(s.xx.values[n - 1] == 1.0);
      CHECK(std::abs(s.zz.values[n - 1] - std::pow(1.0 - 2.0 * q, n - 1)) <= 1e-12);
    }
  }
  const double q = phase_flip_logical_error(0.05);
  const auto s = phase_flip_code_series(0.05, 10);
  for (int n = 1; n <= 10; ++n) {
    const double k = n - 1;
    const double first = 1.0 - 2.0 * k * q;
    CHECK(std::abs(s.zz.values[n - 1] - first) <= 0.5 * k * (k - 1) * 4.0 * q * q + 1e-15);
  }
  CHECK_THROWS_AS(phase_flip_code_series(-0.1, 3), DomainError);
}

TEST_CASE("Floquet parameters") {
  FloquetChainSpec spec;
  spec.seed = 4;
  const auto p = floquet_parameters(spec);
  CHECK(p.couplings.size() == 7);
  CHECK(p.fields_z.size() == 8);
  for (double j : p.couplings) CHECK((j >= 0.1 && j <= 0.3));
  for (double h : p.fields_z) CHECK((h >= 0.0 && h <= 1.0));
  const auto again = floquet_parameters(spec);
  CHECK(again.couplings == p.couplings);
  spec.length = 13;
  CHECK_THROWS_AS(floquet_parameters(spec), DomainError);
  spec.length = 4;
  spec.couplings = {0.1, 0.2};
  CHECK_THROWS_AS(floquet_parameters(spec), DimensionError);
}

TEST_CASE("Floquet unitary") {
  FloquetChainSpec spec;
  spec.length = 4;
  spec.epsilon = 0.05;
  spec.seed = 2;
  const CMatrix u = floquet_unitary(spec);
  CHECK(is_unitary(u, 1e-10));
  spec.hx = 0.2;
  CHECK(is_unitary(floquet_unitary(spec), 1e-10));
  // L=2, J=0, h=0, eps=0: U = (-i X) (x) (-i X).
  FloquetChainSpec bare;
  bare.length = 2;
  bare.couplings = {0.0};
  bare.fields_z = {0.0, 0.0};
  CHECK(max_abs_diff(floquet_unitary(bare), -tensor(pauli(1), pauli(1))) <= 1e-12);
}

TEST_CASE("Floquet series agrees with the PDM cascade") {
  for (double hx : {0.0, 0.3}) {
    FloquetChainSpec spec;
    spec.length = 3;
    spec.epsilon = 0.1;
    spec.hx = hx;
    spec.seed = 9;
    const std::uint64_t bits = 0b101;
    const auto series = floquet_correlation_series(spec, 1, 4, bits);
    const CMatrix u = floquet_unitary(spec);
    CMatrix rho = CMatrix::Zero(8, 8);
    rho(bits, bits) = 1.0;
    for (int n = 1; n < 4; ++n) {
      TemporalProcess proc{rho, std::vector<KrausChannel>(n, unitary_channel(u))};
      // Z on site 1 at the first and last time, identity elsewhere.
      std::vector<int> idx(3 * (n + 1), 0);
      idx[1] = 3;
      idx[3 * n + 1] = 3;
      const double c = event_correlation(proc, PauliString(idx));
      CHECK(std::abs(series.values[n] - c) <= 1e-10);
    }
    CHECK(series.values[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("clean Floquet chain keeps even-period correlations") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    FloquetChainSpec spec;
    spec.seed = seed;
    const auto s = floquet_correlation_series(spec, 3, 40, 0b10110010);
    for (std::size_t n = 0; n < s.values.size(); ++n) {
      CHECK(std::abs(std::abs(s.values[n]) - 1.0) <= 1e-10);
      if (n % 2 == 0) CHECK(s.values[n] == doctest::Approx(1.0));
    }
  }
  FloquetChainSpec free;
  free.couplings.assign(7, 0.0);
  free.seed = 1;
  const auto f = floquet_correlation_series(free, 0, 3);
  CHECK(f.values[1] == doctest::Approx(-1.0));
}

TEST_CASE("interacting chain keeps its alternation") {
  FloquetChainSpec spec;
  spec.epsilon = 0.05;
  spec.seed = 1;
  const auto s = floquet_correlation_series(spec, 4, 20);
  for (std::size_t n = 0; n < s.values.size(); ++n) {
    CHECK(std::abs(s.values[n]) >= 0.5);
    CHECK(std::abs(s.values[n]) <= 1.0 + 1e-9);
    CHECK(s.values[n] * (n % 2 == 0 ? 1.0 : -1.0) > 0.0);
  }
}

TEST_CASE("subharmonic peak") {
  const auto alt = subharmonic_peak(alternating(64));
  CHECK(alt.peak_freq == doctest::Approx(0.5));
  CHECK(alt.peak_weight == doctest::Approx(1.0));
  CHECK_FALSE(alt.split);
  CorrelationSeries beat;
  for (int n = 0; n < 256; ++n) beat.values.push_back(std::cos(2.0 * M_PI * 0.45 * n));
  const auto b = subharmonic_peak(beat);
  CHECK(b.split);
  CHECK(b.peak_freq == doctest::Approx(0.45).epsilon(0.01));
  CorrelationSeries constant;
  constant.values.assign(32, 1.0);
  CHECK_FALSE(subharmonic_peak(constant).split);
  CHECK_THROWS_AS(subharmonic_peak(alternating(8)), DomainError);

  FloquetChainSpec spec;
  spec.epsilon = 0.05;
  spec.seed = 0;
  CHECK_FALSE(subharmonic_peak(floquet_correlation_series(spec, 2, 512)).split);
  spec.couplings.assign(7, 0.0);
  CHECK(subharmonic_peak(floquet_correlation_series(spec, 2, 512)).split);
}

TEST_CASE("long-range order in time") {
  const auto id = channel_decay_series(plus_state(), identity_channel(2), pauli(1), 40);
  CHECK(long_range_order_in_time(id, 10, 0.99));
  const auto dep = channel_decay_series(plus_state(), depolarizing(0.1), pauli(1), 40);
  CHECK_FALSE(long_range_order_in_time(dep, 11, 0.05));
  CHECK(long_range_order_in_time(symmetrization_series(0.2, 60), 20, 0.5));
  CHECK_THROWS_AS(long_range_order_in_time(dep, 41, 0.1), DomainError);
}

TEST_CASE("flip condition") {
  CHECK(flip_condition_check({tensor(pauli(1), pauli(1))}, 2));
  CHECK_FALSE(flip_condition_check({identity(4)}, 2));
  const CMatrix x = pauli(1);
  CHECK(flip_condition_check({std::sqrt(0.5) * x, std::sqrt(0.5) * x * pauli(3)}, 1));
  CHECK_FALSE(flip_condition_check({std::sqrt(0.5) * x, std::sqrt(0.5) * identity(2)}, 1));
  CHECK_THROWS_AS(flip_condition_check({x}, 2), DimensionError);
}

}  // namespace
}  // namespace stq::test
