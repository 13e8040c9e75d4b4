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
#include "test_util.hpp"

namespace stq::test {
namespace {

TemporalProcess two_time(const CMatrix& rho, const KrausChannel& ch) {
  return TemporalProcess{rho, {ch}};
}

// Oracle: explicit sum over outcome branches.
double branch_sum(const TemporalProcess& proc, const PauliString& p) {
  const auto probs = event_outcome_probabilities(proc, p);
  double s = 0.0;
  for (std::size_t bits = 0; bits < probs.size(); ++bits) {
    double sign = 1.0;
    for (int t = 0; t < proc.n_times(); ++t) {
      if ((bits >> t) & 1U) sign = -sign;
    }
    s += sign * probs[bits];
  }
  return s;
}

TEST_CASE("two-time correlations of |0>") {
  const auto proc = two_time(ket0(), identity_channel(2));
  CHECK(event_correlation(proc, {3, 3}) == doctest::Approx(1.0));
  CHECK(event_correlation(proc, {3, 0}) == doctest::Approx(1.0));
  CHECK(event_correlation(proc, {0, 3}) == doctest::Approx(1.0));
  CHECK(event_correlation(proc, {0, 0}) == doctest::Approx(1.0));
  CHECK(std::abs(event_correlation(proc, {1, 2})) <= 1e-15);
  CHECK(event_correlation(proc, {1, 1}) == doctest::Approx(1.0));
  CHECK(event_correlation(proc, {2, 2}) == doctest::Approx(1.0));
  CHECK(std::abs(event_correlation(proc, {1, 0})) <= 1e-15);
  CHECK_THROWS_AS(event_correlation(proc, {3}), DimensionError);
}

TEST_CASE("maximally mixed state through a Hadamard") {
  const auto proc = two_time(identity(2) / 2.0, unitary_channel(hadamard()));
  CHECK(event_correlation(proc, {3, 1}) == doctest::Approx(1.0));
  CHECK(event_correlation(proc, {1, 3}) == doctest::Approx(1.0));
  CHECK(event_correlation(proc, {2, 2}) == doctest::Approx(-1.0));
}

TEST_CASE("signed cascade equals the explicit branch sum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TemporalProcess proc{random_density_matrix(2, seed),
                         {random_channel(2, 2, 10 + seed),
                          random_channel(2, 3, 20 + seed)}};
    for (const auto& p : all_pauli_strings(3)) {
      CHECK(std::abs(event_correlation(proc, p) - branch_sum(proc, p)) <=
            1e-12);
    }
  }
}

TEST_CASE("unitary two-time correlation formula") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix u = haar_random_unitary(2, seed);
    const auto proc = two_time(identity(2) / 2.0, unitary_channel(u));
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        const double expect =
            0.5 * (pauli(j) * u * pauli(i) * u.adjoint()).trace().real();
        CHECK(std::abs(event_correlation(proc, {i, j}) - expect) <= 1e-12);
      }
    }
  }
}

TEST_CASE("build_pdm reproduces the two-time |0> matrix") {
  const PDM r = build_pdm(two_time(ket0(), identity_channel(2)));
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(0, 0) = 1.0;
  expect(1, 2) = expect(2, 1) = 0.5;
  CHECK(max_abs_diff(r.matrix, expect) <= 1e-12);
  CHECK(r.n_events == 2);
}

TEST_CASE("build_pdm of the maximally mixed state is half the SWAP") {
  const PDM r = build_pdm(two_time(identity(2) / 2.0, identity_channel(2)));
  CHECK(max_abs_diff(r.matrix, swap_operator(2) / 2.0) <= 1e-12);
}

TEST_CASE("spacelike product PDM is the density matrix") {
  const CMatrix ra = random_density_matrix(2, 1);
  const CMatrix rb = random_density_matrix(2, 2);
  TemporalProcess proc{tensor(ra, rb), {}};
  const PDM r = build_pdm(proc);
  CHECK(max_abs_diff(r.matrix, tensor(ra, rb)) <= 1e-12);
  CHECK(min_eigenvalue(r.matrix) >= -1e-12);
  CHECK(max_abs_diff(marginal(r, 1), rb) <= 1e-12);
  CHECK(causality_monotone(r) <= 1e-12);
}

TEST_CASE("PDM expectations match event correlations for all strings") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    TemporalProcess proc{random_density_matrix(2, seed),
                         {random_channel(2, 2, 30 + seed),
                          random_channel(2, 2, 40 + seed)}};
    const PDM r = build_pdm(proc);
    CHECK(is_hermitian(r.matrix, 1e-10));
    CHECK(std::abs(r.matrix.trace() - 1.0) <= 1e-10);
    for (const auto& p : all_pauli_strings(3)) {
      std::vector<CMatrix> ops;
      for (int i : p.indices) ops.push_back(pauli(i));
      CHECK(std::abs(expectation_from_pdm(r, ops) - event_correlation(proc, p)) <=
            1e-10);
    }
    CHECK(max_abs_diff(marginal(r, 0), proc.initial) <= 1e-10);
  }
}

TEST_CASE("random processes give Hermitian unit-trace PDMs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto proc = two_time(random_density_matrix(2, seed),
                               random_channel(2, 3, 500 + seed));
    const PDM r = build_pdm(proc);
    CHECK(is_hermitian(r.matrix, 1e-10));
    CHECK(std::abs(r.matrix.trace() - 1.0) <= 1e-10);
  }
}

TEST_CASE("two-qubit system over two times") {
  TemporalProcess proc{random_density_matrix(4, 3),
                       {unitary_channel(haar_random_unitary(4, 4))}};
  const PDM r = build_pdm(proc);
  CHECK(r.n_events == 4);
  CHECK(max_abs_diff(partial_trace(r.matrix, DimensionVector::qubits(4), {0, 1}),
                     proc.initial) <= 1e-10);
  CHECK(std::abs(expectation_from_pdm(
                     r, {pauli(1), pauli(3), pauli(2), pauli(0)}) -
                 event_correlation(proc, {1, 3, 2, 0})) <= 1e-10);
}

TEST_CASE("expectation_from_pdm") {
  const PDM s{2, 1, swap_operator(2) / 2.0};
  CHECK(expectation_from_pdm(s, {pauli(1), pauli(1)}) == doctest::Approx(1.0));
  const PDM r = build_pdm(two_time(ket0(), identity_channel(2)));
  CHECK(expectation_from_pdm(r, {pauli(3), pauli(0)}) == doctest::Approx(1.0));
  CHECK(expectation_from_pdm(r, {pauli(0), pauli(0)}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(expectation_from_pdm(r, {pauli(3)}), DimensionError);
  CHECK_THROWS_AS(expectation_from_pdm(r, {ket0(), pauli(0)}),
                  PreconditionError);
}

TEST_CASE("marginals") {
  const PDM r = build_pdm(two_time(ket0(), identity_channel(2)));
  CHECK(max_abs_diff(marginal(r, 0), ket0()) <= 1e-12);
  CHECK(max_abs_diff(marginal(r, 1), ket0()) <= 1e-12);
  const PDM s = build_pdm(two_time(identity(2) / 2.0, identity_channel(2)));
  CHECK(max_abs_diff(marginal(s, 0), identity(2) / 2.0) <= 1e-12);
  CHECK(max_abs_diff(marginal(s, 1), identity(2) / 2.0) <= 1e-12);
  CHECK_THROWS_AS(marginal(s, 2), DimensionError);
}

TEST_CASE("intermediate marginals for unital channels") {
  TemporalProcess proc{random_density_matrix(2, 8),
                       {depolarizing(0.3), unitary_channel(haar_random_unitary(2, 9))}};
  const PDM r = build_pdm(proc);
  const CMatrix rho1 = proc.steps[0].apply(proc.initial);
  CHECK(max_abs_diff(marginal(r, 1), rho1) <= 1e-10);
}

TEST_CASE("causality monotone") {
  CHECK(causality_monotone(PDM{1, 1, random_density_matrix(2, 1)}) <= 1e-12);
  CHECK(causality_monotone(build_pdm(two_time(ket0(), identity_channel(2)))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(causality_monotone(build_pdm(
            two_time(identity(2) / 2.0, identity_channel(2)))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const double f = causality_monotone(
      build_pdm(two_time(identity(2) / 2.0, depolarizing(0.5))));
  CHECK(f > 0.0);
  CHECK(f < 1.0);
}

TEST_CASE("causality monotone is invariant under local unitaries") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PDM r = build_pdm(two_time(random_density_matrix(2, seed),
                                     random_channel(2, 2, 60 + seed)));
    const CMatrix u = tensor(haar_random_unitary(2, 70 + seed),
                             haar_random_unitary(2, 80 + seed));
    const PDM rotated{2, 1, u * r.matrix * u.adjoint()};
    CHECK(std::abs(causality_monotone(rotated) - causality_monotone(r)) <=
          1e-10);
  }
}

TEST_CASE("correlation tetrahedra") {
  const auto t = tetrahedron_point(two_time(identity(2) / 2.0, identity_channel(2)));
  CHECK(t.t11 == doctest::Approx(1.0));
  CHECK(t.t22 == doctest::Approx(1.0));
  CHECK(t.t33 == doctest::Approx(1.0));
  auto c = classify(t);
  CHECK(c.in_temporal);
  CHECK_FALSE(c.in_spatial);

  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const auto s = tetrahedron_point(TemporalProcess{projector(phi), {}});
  CHECK(s.t11 == doctest::Approx(1.0));
  CHECK(s.t22 == doctest::Approx(-1.0));
  CHECK(s.t33 == doctest::Approx(1.0));
  c = classify(s);
  CHECK(c.in_spatial);
  CHECK_FALSE(c.in_temporal);

  const auto z = tetrahedron_point(two_time(identity(2) / 2.0, depolarizing(1.0)));
  c = classify(z);
  CHECK(c.in_spatial);
  CHECK(c.in_temporal);

  CHECK_THROWS_AS(
      tetrahedron_point(TemporalProcess{ket0(), {identity_channel(2),
                                                 identity_channel(2)}}),
      DimensionError);
}

TEST_CASE("unitary processes land in the temporal tetrahedron") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto t = tetrahedron_point(two_time(
        random_density_matrix(2, seed),
        unitary_channel(haar_random_unitary(2, 900 + seed))));
    CHECK(classify(t).in_temporal);
  }
}

TEST_CASE("postselected correlations") {
  const auto ch = random_channel(2, 2, 5);
  const CMatrix rho = random_density_matrix(2, 6);
  const auto proc = two_time(rho, ch);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(std::abs(postselected_correlation(rho, ch, {i}, {j}, identity(2)) -
                     event_correlation(proc, {i, j})) <= 1e-12);
    }
  }
  CHECK(postselected_correlation(ket0(), identity_channel(2), {3}, {3}, ket0()) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(
      postselected_correlation(ket0(), identity_channel(2), {3}, {3}, ket1()),
      PostselectionError);
  const PDM r = build_postselected_pdm(rho, ch, identity(2));
  CHECK(max_abs_diff(r.matrix, build_pdm(proc).matrix) <= 1e-12);
  const PDM post = build_postselected_pdm(rho, ch, plus_state());
  CHECK(std::abs(post.matrix.trace() - 1.0) <= 1e-12);
  CHECK(is_hermitian(post.matrix));
}

TEST_CASE("postselected CTC probability") {
  const CMatrix rho = random_density_matrix(2, 1);
  CHECK(ctc_probability(identity(4), rho, 2) == doctest::Approx(1.0));
  CHECK(ctc_probability(swap_operator(2), rho, 2) == doctest::Approx(0.25));
  CHECK(ctc_probability(swap_operator(3), random_density_matrix(3, 2), 3) ==
        doctest::Approx(1.0 / 9.0));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int ds = 2 + static_cast<int>(seed % 2);
    const int d = 2 + static_cast<int>((seed / 2) % 2);
    const CMatrix u = haar_random_unitary(ds * d, seed);
    const CMatrix r = random_density_matrix(ds, 100 + seed);
    CHECK(std::abs(ctc_probability(u, r, d) -
                   ctc_probability_explicit(u, r, d)) <= 1e-10);
  }
  CHECK_THROWS_AS(ctc_probability(2.0 * identity(4), rho, 2),
                  PreconditionError);
}

TEST_CASE("repeated channel correlations") {
  const auto c = repeated_channel_correlations(
      plus_state(), depolarizing(0.2), pauli(1), pauli(1), 5);
  for (int n = 1; n <= 5; ++n) {
    CHECK(std::abs(c[n - 1] - std::pow(0.8, n - 1)) <= 1e-12);
  }
  TemporalProcess proc{random_density_matrix(2, 4),
                       {dephasing(0.4), dephasing(0.4), dephasing(0.4)}};
  const auto r = repeated_channel_correlations(
      proc.initial, dephasing(0.4), pauli(2), pauli(1), 4);
  CHECK(std::abs(r[3] - event_correlation(proc, {2, 0, 0, 1})) <= 1e-12);
}

}  // namespace
}  // namespace stq::test
