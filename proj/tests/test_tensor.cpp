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

#include <array>
#include <cmath>

#include "doctest.h"
#include "snforge/constructions.hpp"
#include "snforge/tensor.hpp"
#include "test_support.hpp"

using namespace snforge;
using namespace snforge::testing;

TEST_CASE("tensor.space_indexing") {
  TensorSpace s({2, 3, 4}, {"A", "B", "C"});
  CHECK(s.total_dim() == 24);
  CHECK(s.stride(0) == 12);
  CHECK(s.stride(2) == 1);
  CHECK(s.digit(23, 0) == 1);
  CHECK(s.digit(23, 1) == 2);
  CHECK(s.digit(23, 2) == 3);
  CHECK(s.position("B") == 1);
  CHECK_THROWS_AS(s.position("Z"), InvalidArgument);
  CHECK_THROWS_AS(s.validate_subset({0, 0}), InvalidArgument);
  CHECK_THROWS_AS(s.validate_subset({3}), InvalidArgument);
  CHECK(s.complement({1}) == FactorSet{0, 2});

  const std::array<std::size_t, 2> groups{1, 2};
  TensorSpace c = s.coarse_grained(groups, {"X", "Y"});
  CHECK(c.dims() == std::vector<std::size_t>{2, 12});
  CHECK(TensorSpace({2, 2}).labels() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("tensor.rejects_non_hermitian") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(DenseHermitian{m}, InvalidArgument);
  m(1, 0) = 1.0;
  CHECK_NOTHROW(DenseHermitian{m});
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(DenseHermitian{bad}, InvalidArgument);
}

TEST_CASE("tensor.kron_is_row_major") {
  std::mt19937_64 rng(1);
  DenseHermitian a = random_hermitian(TensorSpace({2}, {"A"}), rng);
  DenseHermitian b = random_hermitian(TensorSpace({3}, {"B"}), rng);
  DenseHermitian k = kron(a, b);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      Complex expect = a.matrix()(i / 3, j / 3) * b.matrix()(i % 3, j % 3);
      CHECK(std::abs(k.matrix()(i, j) - expect) < 1e-14);
    }
  }
  CHECK(k.space().labels() == std::vector<std::string>{"A", "B"});
}

TEST_CASE("tensor.partial_transpose_matches_loop") {
  std::mt19937_64 rng(2);
  const std::vector<std::size_t> dims{2, 3, 2, 2};
  TensorSpace s(dims);
  for (int rep = 0; rep < 5; ++rep) {
    DenseHermitian m = random_hermitian(s, rng);
    for (const FactorSet& f : {FactorSet{0}, FactorSet{1, 3}, FactorSet{0, 1, 2, 3}}) {
      Matrix expect = loop_partial_transpose(m.matrix(), dims, f);
      CHECK(max_abs_diff(partial_transpose(m, f).matrix(), expect) == 0.0);
    }
  }
  // Transposing every factor is the full transpose.
  DenseHermitian m = random_hermitian(s, rng);
  CHECK(max_abs_diff(partial_transpose(m, {0, 1, 2, 3}).matrix(), m.matrix().transpose()) ==
        0.0);
}

TEST_CASE("tensor.permute_factors_matches_loop") {
  std::mt19937_64 rng(3);
  const std::vector<std::size_t> dims{2, 3, 4};
  DenseHermitian m = random_hermitian(TensorSpace(dims), rng);
  const std::array<std::size_t, 3> perm{2, 0, 1};
  DenseHermitian p = permute_factors(m, perm);
  const std::vector<std::size_t> pdims{4, 2, 3};
  CHECK(p.space().dims() == pdims);
  for (std::size_t r = 0; r < 24; ++r) {
    for (std::size_t c = 0; c < 24; ++c) {
      auto dr = digits_of(r, dims), dc = digits_of(c, dims);
      std::vector<std::size_t> pr{dr[2], dr[0], dr[1]}, pc{dc[2], dc[0], dc[1]};
      CHECK(p.matrix()(index_of(pr, pdims), index_of(pc, pdims)) == m.matrix()(r, c));
    }
  }
}

TEST_CASE("tensor.partial_trace_of_product") {
  std::mt19937_64 rng(4);
  DenseHermitian a = random_hermitian(TensorSpace({3}, {"A"}), rng);
  DenseHermitian b = random_psd(TensorSpace({2}, {"B"}), rng);
  DenseHermitian ab = kron(a, b);
  DenseHermitian ra = partial_trace(ab, {1});
  CHECK(max_abs_diff(ra.matrix(), a.matrix() * b.trace()) < 1e-12);
  DenseHermitian all = partial_trace(ab, {0, 1});
  CHECK(all.dim() == 1);
  CHECK(std::abs(all.matrix()(0, 0).real() - a.trace() * b.trace()) < 1e-12);
}

TEST_CASE("tensor.eigensolver_against_general_solver") {
  std::mt19937_64 rng(5);
  DenseHermitian m = random_hermitian(TensorSpace({3, 3}), rng);
  Spectrum sp = eig_hermitian(m);
  auto oracle = loop_eigenvalues(m.matrix());
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    CHECK(std::abs(sp.eigenvalues(i) - oracle[i]) < 1e-10);
  }
  Matrix recon = sp.eigenvectors * sp.eigenvalues.asDiagonal() * sp.eigenvectors.adjoint();
  CHECK(max_abs_diff(recon, m.matrix()) < 1e-12);
}

TEST_CASE("tensor.psd_check_tolerance") {
  TensorSpace s({2});
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = -1e-12;
  CHECK(psd_check(DenseHermitian(m, s)).verdict);
  m(1, 1) = -1e-6;
  PsdResult r = psd_check(DenseHermitian(m, s));
  CHECK_FALSE(r.verdict);
  CHECK(r.min_eigenvalue == doctest::Approx(-1e-6));
  CHECK(r.tolerance == doctest::Approx(1e-9));
}

TEST_CASE("tensor.schmidt_rank") {
  MaxEntangled me = max_entangled(4);
  CHECK(schmidt_rank(me.vector, {0}) == 4);
  RealVector sv = schmidt_coefficients(me.vector, {0});
  for (Eigen::Index i = 0; i < sv.size(); ++i) CHECK(sv(i) == doctest::Approx(0.5));

  Vector prod = kron(Vector::Unit(3, 1), Vector::Unit(2, 0));
  CHECK(schmidt_rank(StateVector(prod, TensorSpace({3, 2})), {0}) == 1);

  // |00> + |11> on (A1, B1) times a product on (A2, B2): rank 2 across A1A2 : B1B2.
  Vector bell = (kron(Vector::Unit(2, 0), Vector::Unit(2, 0)) +
                 kron(Vector::Unit(2, 1), Vector::Unit(2, 1))) / std::sqrt(2.0);
  Vector v = kron(bell, kron(Vector::Unit(3, 2), Vector::Unit(3, 0)));
  StateVector sv4(v, TensorSpace({2, 2, 3, 3}, {"A1", "B1", "A2", "B2"}));
  CHECK(schmidt_rank(sv4, {0, 2}) == 2);
  CHECK(schmidt_rank(sv4, {0, 1}) == 1);
}

TEST_CASE("tensor.lanczos_matches_dense") {
  std::mt19937_64 rng(6);
  for (std::size_t n : {5u, 40u, 200u}) {
    DenseHermitian m = random_hermitian(TensorSpace::single(n), rng);
    RealVector ev = eigenvalues_hermitian(m);
    ExtremeEigenvalues ex = lanczos_extremes(m.matrix());
    CHECK(ex.min == doctest::Approx(ev(0)).epsilon(1e-8));
    CHECK(ex.max == doctest::Approx(ev(ev.size() - 1)).epsilon(1e-8));
  }
}
