// Copyright 2026 The snforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "snforge/constructions.hpp"
#include "snforge/ensembles.hpp"
#include "snforge/seeding.hpp"
#include "test_support.hpp"

using namespace snforge;
using namespace snforge::testing;

TEST_CASE("ensembles.derive_seed") {
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
  std::vector<int> hits(50, 0);
  parallel_for(50, 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(parallel_for(10, 2, [](std::size_t i) {
    if (i == 7) throw InvalidArgument("boom");
  }));
}

TEST_CASE("ensembles.gue_basic") {
  GueSample g = sample_gue(50, true, 3);
  CHECK(std::abs(g.matrix.matrix().trace()) <= 1e-10 * 50);
  CHECK(max_abs_diff(g.matrix.matrix(), g.matrix.matrix().adjoint()) == 0.0);
  CHECK(max_abs_diff(sample_gue(50, true, 3).matrix.matrix(), g.matrix.matrix()) == 0.0);
  CHECK(std::abs(sample_gue(50, false, 3).matrix.trace()) > 1e-6);
}

TEST_CASE("ensembles.gue_moments") {
  // E tr(G'^2) = n^2 for the untraced sample.
  double acc = 0.0;
  for (int s = 0; s < 200; ++s) {
    acc += sample_gue(50, false, derive_seed(5, s)).matrix.matrix().squaredNorm() / 2500.0;
  }
  CHECK(acc / 200 == doctest::Approx(1.0).epsilon(0.05));

  int in_band = 0;
  for (int s = 0; s < 100; ++s) {
    GueSample g = sample_gue(64, true, derive_seed(6, s));
    double e = eigenvalues_hermitian(g.matrix)(0) / 8.0;
    in_band += (e >= -2.4 && e <= -1.7);
  }
  CHECK(in_band >= 90);
}

TEST_CASE("ensembles.random_state") {
  RandomState s = random_state(4, 0.2, 1);
  CHECK(std::abs(s.rho.trace() - 1.0) <= 1e-12);
  CHECK(s.rho.space().dims() == std::vector<std::size_t>{4, 4});
  Matrix expect = (Matrix::Identity(16, 16) + s.g.matrix.matrix() * (0.2 / 4)) / 16.0;
  CHECK(max_abs_diff(s.rho.matrix(), expect) < 1e-15);
  CHECK_THROWS_AS(random_state(4, 0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(random_state(4, 0.5, 1), InvalidArgument);
}

TEST_CASE("ensembles.witness_value") {
  GueSample zero;
  zero.n = 4;
  zero.matrix = DenseHermitian::zero(TensorSpace({2, 2}));
  DenseHermitian mm = DenseHermitian::identity(TensorSpace({2, 2})) * 0.25;
  CHECK(witness_value(mm, zero, 0.3, 2) == doctest::Approx(1.0));
  RandomState s = random_state(3, 0.3, 2);
  CHECK(witness_value(mm.with_space(TensorSpace({2, 2})), zero, 0.3, 2) == doctest::Approx(1.0));
  DenseHermitian flat = DenseHermitian::identity(TensorSpace({3, 3})) * (1.0 / 9);
  CHECK(witness_value(flat, s.g, 0.3, 3) == doctest::Approx(1.0).epsilon(1e-12));
  // Closed form for the ensemble state: 1 - 2 tr(G^2) / d^4.
  const double g2 = s.g.matrix.matrix().squaredNorm();
  CHECK(witness_value(s.rho, s.g, 0.3, 3) == doctest::Approx(1.0 - 2.0 * g2 / 81.0));
  CHECK_THROWS_AS(witness_value(s.rho, s.g, 0.0, 3), InvalidArgument);
}

TEST_CASE("ensembles.ppt_frequency") {
  EnsembleReport low = ppt_frequency(4, 0.05, 100, 1, 2);
  CHECK(low.ppt_count == 100);
  CHECK(low.witness_values.size() == 100);
  EnsembleReport edge = ppt_frequency(2, 0.45, 500, 2, 2);
  CHECK(edge.ppt_count > 0);
  CHECK(edge.ppt_count < 500);
  EnsembleReport one = ppt_frequency(3, 0.3, 20, 5, 1);
  EnsembleReport four = ppt_frequency(3, 0.3, 20, 5, 4);
  CHECK(one.to_report("x").render_text() == four.to_report("x").render_text());
  CHECK(one.to_report("x").csv == four.to_report("x").csv);
}

TEST_CASE("ensembles.sup_ascent_full_rank_is_top_eigenvalue") {
  std::mt19937_64 rng(31);
  for (std::size_t d : {2u, 3u, 4u}) {
    DenseHermitian g = random_hermitian(TensorSpace({d, d}), rng);
    RealVector ev = eigenvalues_hermitian(g);
    CHECK(std::abs(sup_sn_k_ascent(g, d, 4, 200, 1) - ev(ev.size() - 1)) < 1e-6);
  }
}

TEST_CASE("ensembles.sup_ascent_product_below_entangled_top") {
  const std::size_t d = 3;
  DenseHermitian g = max_entangled(d).projector - DenseHermitian::identity(TensorSpace({d, d})) * (1.0 / 9);
  double top = eigenvalues_hermitian(g)(8);
  double prod = sup_sn_k_ascent(g, 1, 8, 200, 2);
  // Best product overlap with Omega is 1/d.
  CHECK(prod == doctest::Approx(1.0 / 3 - 1.0 / 9).epsilon(1e-6));
  CHECK(prod < top - 0.1);
  CHECK_THROWS_AS(sup_sn_k_ascent(g, 0), InvalidArgument);
  CHECK_THROWS_AS(sup_sn_k_ascent(g, 4), InvalidArgument);
}

TEST_CASE("ensembles.sup_profile_monotone") {
  std::mt19937_64 rng(32);
  DenseHermitian g = random_hermitian(TensorSpace({4, 4}), rng);
  auto prof = sup_sn_k_profile(g, 4, 200, 3);
  REQUIRE(prof.size() == 4);
  for (std::size_t k = 1; k < prof.size(); ++k) CHECK(prof[k - 1] <= prof[k] + 1e-9);
  for (std::size_t k = 1; k <= 4; ++k) CHECK(sup_sn_k_ascent(g, k, 4, 200, 3) <= prof[k - 1] + 1e-12);
}

TEST_CASE("ensembles.mean_width_shape") {
  MeanWidth full = mean_width_estimate(4, 4, 20, 2, 1, 2);
  MeanWidth prod = mean_width_estimate(1, 4, 20, 2, 1, 2);
  CHECK(prod.estimate < full.estimate);
  CHECK(full.values.size() == 20);
  CHECK(full.standard_error > 0.0);
  // k = d: lambda_max(G) / d^2 with lambda_max near 2 sqrt(n) = 2 d.
  CHECK(full.estimate == doctest::Approx(2.0 / 4).epsilon(0.25));
}

TEST_CASE("ensembles.ks_distance") {
  CHECK(ks_distance({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_distance({1, 2}, {3, 4}) == 1.0);
  CHECK(ks_distance({1, 2, 3, 4}, {3, 4, 5, 6}) == doctest::Approx(0.5));
  GueStats s = gue_stats(64, 50, 8, 2);
  REQUIRE(s.ks_partial_transpose.has_value());
  CHECK(*s.ks_partial_transpose <= 0.1);
  CHECK(gue_stats(60, 2, 8).ks_partial_transpose.has_value() == false);
}
