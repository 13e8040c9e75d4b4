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
#include "stq/process_matrix.hpp"
#include "test_util.hpp"

namespace stq::test {
namespace {

const double kGyni = 5.0 / 16.0 * (1.0 + 1.0 / std::sqrt(2.0));

Instrument two_input_pauli(int s0, int s1) {
  Instrument ins = pauli_instrument(pauli(s0));
  ins.ops.push_back(pauli_instrument(pauli(s1)).ops[0]);
  return ins;
}

TEST_CASE("trace and replace") {
  const CMatrix a = random_density_matrix(2, 1);
  const CMatrix b = random_hermitian(3, 2);
  const CMatrix w = tensor(a, b);
  const DimensionVector dims{2, 3};
  CHECK(max_abs_diff(trace_and_replace(w, dims, {1}),
                     tensor(a, identity(3) / 3.0) * b.trace()) <= 1e-12);
  CHECK(max_abs_diff(trace_and_replace(w, dims, {0}),
                     tensor(identity(2) / 2.0, b)) <= 1e-12);
  CHECK(max_abs_diff(trace_and_replace(w, dims, {0, 1}),
                     identity(6) * w.trace() / 6.0) <= 1e-12);
  CHECK_THROWS_AS(trace_and_replace(w, dims, {2}), DimensionError);
  CHECK_THROWS_AS(trace_and_replace(w, DimensionVector{2, 2}, {0}),
                  DimensionError);
}

TEST_CASE("validity projector") {
  const ProcessMatrix w{ProcessDims{}, random_hermitian(16, 3)};
  const auto p1 = lv_project(w);
  const auto p2 = lv_project(p1);
  CHECK(max_abs_diff(p1.w, p2.w) <= 1e-12);
  const auto q1 = lv_project_as_printed(w);
  const auto q2 = lv_project_as_printed(q1);
  CHECK(max_abs_diff(q1.w, q2.w) > 1e-3);
  // The identity survives; one-body output terms are removed.
  const ProcessMatrix id{ProcessDims{}, identity(16)};
  CHECK(max_abs_diff(lv_project(id).w, identity(16)) <= 1e-12);
  const ProcessMatrix zo{ProcessDims{}, tensor_all({pauli(0), pauli(3), pauli(0), pauli(0)})};
  CHECK(lv_project(zo).w.cwiseAbs().maxCoeff() <= 1e-12);
  const ProcessMatrix zb{ProcessDims{}, tensor_all({pauli(0), pauli(0), pauli(3), pauli(0)})};
  CHECK(max_abs_diff(lv_project(zb).w, zb.w) <= 1e-12);
  CHECK_THROWS_AS(lv_project(ProcessMatrix{ProcessDims{}, identity(8)}),
                  DimensionError);
}

TEST_CASE("process validity diagnostics") {
  CHECK(is_valid_process({ProcessDims{}, identity(16) / 4.0}).valid());
  CHECK(is_valid_process(gyni_process()).valid());
  const auto bad_trace = is_valid_process({ProcessDims{}, identity(16) / 2.0});
  CHECK_FALSE(bad_trace.trace_ok);
  CHECK(bad_trace.expected_trace == 4.0);
  const CMatrix signalling =
      (identity(16) + tensor_all({pauli(0), pauli(0), pauli(0), pauli(3)})) / 4.0;
  const auto d = is_valid_process({ProcessDims{}, signalling});
  CHECK(d.psd);
  CHECK(d.trace_ok);
  CHECK_FALSE(d.fixed_point);
  CHECK_FALSE(d.valid());
  const CMatrix neg =
      (identity(16) + 2.0 * tensor_all({pauli(3), pauli(0), pauli(3), pauli(0)})) /
      4.0;
  CHECK_FALSE(is_valid_process({ProcessDims{}, neg}).psd);
}

TEST_CASE("sequential processes are valid") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = sequential_process(random_density_matrix(2, seed),
                                      random_channel(2, 2, 100 + seed));
    CHECK(is_valid_process(w).valid());
  }
  CHECK_THROWS_AS(sequential_process(2.0 * ket0(), identity_channel(2)),
                  PreconditionError);
}

TEST_CASE("CJ of a map is input first") {
  const CMatrix c = cj_of_map(identity_channel(2).as_map());
  CHECK(max_abs_diff(c, max_entangled_projector(2)) <= 1e-14);
  const KrausMap flip(2, 2, {pauli(1)});
  const CMatrix f = cj_of_map(flip);
  CHECK(std::abs(f(0 * 2 + 1, 1 * 2 + 0) - 1.0) <= 1e-14);
  CHECK(std::abs(f(0 * 2 + 1, 0 * 2 + 1) - 1.0) <= 1e-14);
}

TEST_CASE("instruments") {
  for (int s = 1; s <= 3; ++s) {
    CHECK(pauli_instrument(pauli(s)).completeness_deviation() <= 1e-12);
  }
  CHECK(gyni_operations().completeness_deviation() <= 1e-12);
  CHECK(gyni_operations_as_printed().completeness_deviation() <= 1e-12);
  const auto u = uniform_noise_instrument(2, 2, 2);
  CHECK(u.completeness_deviation() <= 1e-12);
  CHECK(u.n_inputs() == 2);
  CHECK(u.n_outcomes() == 2);
  CHECK_THROWS_AS(uniform_noise_instrument(0, 2, 2), DomainError);
}

TEST_CASE("sequential process probabilities match direct simulation") {
  const CMatrix rho = random_density_matrix(2, 11);
  const auto e = random_channel(2, 2, 12);
  const auto w = sequential_process(rho, e);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const auto pa = pauli_projectors(pauli(i));
      const auto pb = pauli_projectors(pauli(j));
      const auto a = pauli_instrument(pauli(i));
      const auto b = pauli_instrument(pauli(j));
      double corr = 0.0;
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const double direct =
              (pb[y] * e.apply(pa[x] * rho * pa[x])).trace().real();
          const double p = process_correlation(w, a, b, 0, 0, x, y);
          CHECK(std::abs(p - direct) <= 1e-12);
          corr += ((x + y) % 2 == 0 ? 1.0 : -1.0) * p;
        }
      }
      const double pdm = event_correlation(TemporalProcess{rho, {e}}, {i, j});
      CHECK(std::abs(corr - pdm) <= 1e-12);
    }
  }
  const auto t = probability_table(w, two_input_pauli(1, 3), two_input_pauli(2, 3));
  CHECK(t.normalization_deviation() <= 1e-12);
}

TEST_CASE("probability table indexing") {
  ProbabilityTable t(2, 3, 2, 4);
  t.at(1, 2, 1, 3) = 0.5;
  CHECK(t.at(1, 2, 1, 3) == 0.5);
  CHECK(t.values().size() == 48);
  CHECK_THROWS_AS(t.at(2, 0, 0, 0), DimensionError);
  CHECK_THROWS_AS(ProbabilityTable(0, 1, 1, 1), DomainError);
}

TEST_CASE("game scores") {
  const auto w = gyni_process();
  const auto u = uniform_noise_instrument(2, 2, 2);
  const auto t = probability_table(w, u, u);
  CHECK(gyni_score(t) == doctest::Approx(0.25));
  CHECK(lgyni_score(t) == doctest::Approx(0.5625));
  ProbabilityTable bad(2, 2, 2, 2);
  CHECK_THROWS_AS(gyni_score(bad), PreconditionError);
  ProbabilityTable wide(3, 2, 2, 2);
  CHECK_THROWS_AS(lgyni_score(wide), DimensionError);
}

TEST_CASE("GYNI violation") {
  const auto s = gyni_demo();
  CHECK(std::abs(s.gyni - kGyni) <= 1e-12);
  CHECK(std::abs(s.lgyni - (kGyni + 0.25)) <= 1e-12);
  CHECK(s.gyni > 0.5);
  CHECK(s.lgyni > 0.75);
  const auto w = gyni_process();
  const auto printed = gyni_operations_as_printed();
  const auto t = probability_table(w, printed, printed);
  CHECK(gyni_score(t) == doctest::Approx(5.0 / 16.0 + std::sqrt(2.0) / 8.0));
  CHECK(lgyni_score(t) == doctest::Approx(0.25 + 5.0 / 16.0 + std::sqrt(2.0) / 8.0));
}

TEST_CASE("PDM route gives the same probabilities") {
  const auto w = gyni_process();
  const PDM r = process_pdm(w);
  CHECK(max_abs_diff(r.matrix, w.w.transpose() / 4.0) <= 1e-12);
  CHECK(std::abs(r.matrix.trace() - 1.0) <= 1e-12);
  const auto ops = gyni_operations();
  const auto direct = probability_table(w, ops, ops);
  const auto via = pdm_probability_table(r, w.dims, ops, ops);
  for (std::size_t k = 0; k < direct.values().size(); ++k) {
    CHECK(std::abs(direct.values()[k] - via.values()[k]) <= 1e-12);
  }
  const auto s = pdm_gyni_demo();
  const auto d = gyni_demo();
  CHECK(std::abs(s.gyni - d.gyni) <= 1e-10);
  CHECK(std::abs(s.lgyni - d.lgyni) <= 1e-10);
  CHECK_THROWS_AS(process_pdm({ProcessDims{2, 2, 2, 3}, identity(24)}),
                  DimensionError);
}

TEST_CASE("causal vertex counts") {
  CHECK(count_causal_vertices(2, 2, 2, 2) == 112);
  CHECK(count_causal_vertices(1, 1, 2, 2) == 4);
  CHECK(count_causal_vertices(3, 2, 2, 2) == 8 * 64 + 64 * 4 - 8 * 4);
  CHECK(enumerate_causal_vertices(2, 2, 2, 2).size() == 112);
  CHECK(enumerate_causal_vertices(1, 1, 2, 2).size() == 4);
  CHECK(enumerate_causal_vertices(3, 2, 2, 2).size() ==
        count_causal_vertices(3, 2, 2, 2));
  CHECK(enumerate_causal_vertices(2, 3, 3, 2).size() ==
        count_causal_vertices(2, 3, 3, 2));
  CHECK_THROWS_AS(count_causal_vertices(0, 2, 2, 2), DomainError);
  CHECK_THROWS_AS(count_causal_vertices(40, 40, 2, 2), DomainError);
}

TEST_CASE("causal vertices respect the game bounds") {
  double best_g = 0.0;
  double best_l = 0.0;
  for (const auto& v : enumerate_causal_vertices(2, 2, 2, 2)) {
    CHECK(v.normalization_deviation() == 0.0);
    const double g = gyni_score(v);
    const double l = lgyni_score(v);
    CHECK(g <= 0.5);
    CHECK(l <= 0.75);
    best_g = std::max(best_g, g);
    best_l = std::max(best_l, l);
  }
  CHECK(best_g == 0.5);
  CHECK(best_l == 0.75);
}

TEST_CASE("causally ordered processes never violate GYNI") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = sequential_process(random_density_matrix(2, seed),
                                      random_channel(2, 2, 300 + seed));
    const auto t = probability_table(
        w, two_input_pauli(1 + seed % 3, 1 + (seed / 3) % 3),
        two_input_pauli(3, 1 + (seed / 9) % 3));
    CHECK(gyni_score(t) <= 0.5 + 1e-12);
    CHECK(lgyni_score(t) <= 0.75 + 1e-12);
  }
}

}  // namespace
}  // namespace stq::test
