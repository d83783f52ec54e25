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
#include "snforge/linear_map.hpp"
#include "test_support.hpp"

using namespace snforge;
using namespace snforge::testing;

namespace {

// Z on (A1, B1, A2, B2) straight from the defining entries, with
// X = 1 - Omega and Y = (d1 - 1)(d2 + 1) Omega.
Matrix loop_family(std::size_t d1, std::size_t d2) {
  const std::vector<std::size_t> dims{d1, d1, d2, d2};
  const std::size_t n = d1 * d1 * d2 * d2;
  const double cy = static_cast<double>((d1 - 1) * (d2 + 1));
  Matrix z(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      auto a = digits_of(r, dims), b = digits_of(c, dims);
      double o1 = omega_entry(a[0], a[1], b[0], b[1], d1);
      double o2 = omega_entry(a[2], a[3], b[2], b[3], d2);
      double id1 = (a[0] == b[0] && a[1] == b[1]) ? 1.0 : 0.0;
      double id2 = (a[2] == b[2] && a[3] == b[3]) ? 1.0 : 0.0;
      z(r, c) = (id1 - o1) * (id2 - o2) + cy * o1 * o2;
    }
  }
  return z;
}

// Closed form of the partial transpose on B1 B2:
// 1 - F1 / d1 - F2 / d2 + (d1 d2 + d1 - d2) / (d1 d2) F1 F2.
Matrix loop_family_gamma(std::size_t d1, std::size_t d2) {
  const std::vector<std::size_t> dims{d1, d1, d2, d2};
  const std::size_t n = d1 * d1 * d2 * d2;
  const double D1 = static_cast<double>(d1), D2 = static_cast<double>(d2);
  const double c = (D1 * D2 + D1 - D2) / (D1 * D2);
  Matrix z(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t col = 0; col < n; ++col) {
      auto a = digits_of(r, dims), b = digits_of(col, dims);
      double f1 = flip_entry(a[0], a[1], b[0], b[1]);
      double f2 = flip_entry(a[2], a[3], b[2], b[3]);
      double id1 = (a[0] == b[0] && a[1] == b[1]) ? 1.0 : 0.0;
      double id2 = (a[2] == b[2] && a[3] == b[3]) ? 1.0 : 0.0;
      z(r, col) = id1 * id2 - f1 * id2 / D1 - id1 * f2 / D2 + c * f1 * f2;
    }
  }
  return z;
}

}  // namespace

TEST_CASE("constructions.max_entangled_and_flip") {
  MaxEntangled me = max_entangled(3);
  CHECK(me.projector.trace() == doctest::Approx(1.0));
  CHECK(me.projector.matrix()(0, 4).real() == doctest::Approx(1.0 / 3));
  DenseHermitian f = flip(3);
  CHECK(max_abs_diff(f.matrix() * f.matrix(), Matrix::Identity(9, 9)) < 1e-15);
  // F^Gamma = d |Omega><Omega|.
  CHECK(max_abs_diff(partial_transpose(f, {1}).matrix(), 3.0 * me.projector.matrix()) < 1e-15);
}

TEST_CASE("constructions.family_matches_loop") {
  for (auto [d1, d2] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 4}}) {
    ZFamilyState z = concrete_z(d1, d2);
    CHECK(z.z.space().labels() == std::vector<std::string>{"A1", "B1", "A2", "B2"});
    CHECK(max_abs_diff(z.z.matrix(), loop_family(d1, d2)) < 1e-14);
    DenseHermitian zg = partial_transpose(z.z, ZFamilyState::side_b());
    CHECK(max_abs_diff(zg.matrix(), loop_family_gamma(d1, d2)) < 1e-13);
  }
  CHECK_THROWS_AS(concrete_z(3, 2), InvalidArgument);
  CHECK_THROWS_AS(concrete_z(0, 2), InvalidArgument);
}

TEST_CASE("constructions.family_gamma_spectrum") {
  // Eigenvalues 1 - s1/d1 - s2/d2 + c s1 s2 with s = +-1.
  ZFamilyState z = concrete_z(2, 8);
  RealVector ev = eigenvalues_hermitian(partial_transpose(z.z, ZFamilyState::side_b()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double e = ev(i);
    const bool ok = std::abs(e) < 1e-12 || std::abs(e - 0.75) < 1e-12 ||
                    std::abs(e - 1.0) < 1e-12 || std::abs(e - 2.25) < 1e-12;
    CHECK(ok);
  }
  CHECK(z.z.trace() == doctest::Approx(198.0));
  CHECK(z.normalized().z.trace() == doctest::Approx(1.0));
}

TEST_CASE("constructions.decompose_round_trip") {
  ZFamilyState z = concrete_z(2, 3);
  ZFamilyState back = decompose_z(z.z);
  CHECK(back.d1 == 2);
  CHECK(back.d2 == 3);
  CHECK(max_abs_diff(back.x.matrix(), z.x.matrix()) < 1e-13);
  CHECK(max_abs_diff(back.y.matrix(), z.y.matrix()) < 1e-13);

  std::mt19937_64 rng(7);
  DenseHermitian x = random_psd(TensorSpace({2, 2}), rng);
  DenseHermitian y = random_psd(TensorSpace({2, 2}), rng);
  ZFamilyState built = build_z(x, y, 3);
  ZFamilyState rec = decompose_z(built.z);
  CHECK(max_abs_diff(rec.x.matrix(), x.matrix()) < 1e-12);
  CHECK(max_abs_diff(rec.y.matrix(), y.matrix()) < 1e-12);

  DenseHermitian noise = random_hermitian(built.z.space(), rng);
  CHECK_THROWS_AS(decompose_z(noise), InvalidArgument);
}

TEST_CASE("constructions.embed_zero") {
  Matrix m(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(i + j, i == j ? 0 : (i < j ? 1 : -1));
  }
  DenseHermitian h(m, TensorSpace({2, 2}));
  const std::array<std::size_t, 2> dims{3, 3};
  DenseHermitian e = embed_zero(h, dims);
  CHECK(e.dim() == 9);
  // (a, b) -> 3 a + b in the padded space.
  CHECK(e.matrix()(4, 1) == m(3, 1));
  CHECK(e.matrix()(2, 2) == Complex(0.0));
  CHECK(e.trace() == doctest::Approx(h.trace()));
  const std::array<std::size_t, 2> smaller{1, 2};
  CHECK_THROWS_AS(embed_zero(h, smaller), InvalidArgument);
}

TEST_CASE("constructions.pt_invariant_lift") {
  ZFamilyState z = concrete_z(2, 4).normalized();
  LiftedState l = pt_invariant_lift(z.z, ZFamilyState::side_b());
  CHECK(l.lifted.space().num_factors() == 5);
  CHECK(l.pt_side == FactorSet{1, 3, 4});
  DenseHermitian lg = partial_transpose(l.lifted, l.pt_side);
  CHECK(max_abs_diff(lg.matrix(), l.lifted.matrix()) <= 1e-12);
  CHECK(max_abs_diff(compress_last_factor(l.lifted, plus_i_ket()).matrix(), z.z.matrix()) <=
        1e-12);
  DenseHermitian back_g = compress_last_factor(l.lifted, minus_i_ket());
  CHECK(max_abs_diff(back_g.matrix(),
                     partial_transpose(z.z, ZFamilyState::side_b()).matrix()) <= 1e-12);
  CHECK(l.lifted.trace() == doctest::Approx(2.0));
}

TEST_CASE("constructions.scaled_state") {
  for (std::size_t d : {2u, 3u, 8u, 9u}) {
    ScaledState s = scaled_state(d);
    CHECK(s.rho.space().dims() == std::vector<std::size_t>{d, d});
    CHECK(s.rho.trace() == doctest::Approx(1.0));
    CHECK(s.padded == (d >= 4 && d % 2 == 1));
    CHECK(s.family.has_value() == (d >= 4));
    CHECK(s.claimed_sn_lower == static_cast<int>(ceil_div(d - 1, 4)));
    CHECK(psd_check(partial_transpose(s.rho, {1})).verdict);
  }
}

TEST_CASE("constructions.pt_invariant_family") {
  for (std::size_t d : {8u, 9u}) {
    PtInvariantFamily f = pt_invariant_family(d);
    CHECK(f.rho.space().dims() == std::vector<std::size_t>{d, d});
    CHECK(f.rho.trace() == doctest::Approx(1.0));
    DenseHermitian g = partial_transpose(f.rho, {1});
    CHECK(max_abs_diff(g.matrix(), f.rho.matrix()) <= 1e-12);
    CHECK(psd_check(f.rho).verdict);
  }
  CHECK(pt_invariant_family(8).claimed_sn_lower == 1);
  CHECK(pt_invariant_family(20).claimed_sn_lower == 3);
  CHECK(pt_invariant_family(21).claimed_sn_lower == 3);
  CHECK_THROWS_AS(pt_invariant_family(3), InvalidArgument);
}

TEST_CASE("maps.choi_map_choi_matrix_closed_form") {
  for (std::size_t d : {2u, 3u, 5u}) {
    LinearMapRep p = LinearMapRep::choi_map(d);
    const double D = static_cast<double>(d);
    Matrix expect = Matrix::Identity(d * d, d * d) / D - max_entangled(d).projector.matrix() / (D - 1);
    CHECK(max_abs_diff(p.choi().matrix(), expect) < 1e-14);
    CHECK(eigenvalues_hermitian(p.choi())(0) == doctest::Approx(-1.0 / (D * (D - 1))));
    CHECK(p.positivity_degree() == static_cast<int>(d - 1));
  }
  CHECK_THROWS_AS(LinearMapRep::choi_map(1), InvalidArgument);
}

TEST_CASE("maps.choi_map_on_identity") {
  LinearMapRep p = LinearMapRep::choi_map(3);
  Matrix out = p.apply(Matrix::Identity(3, 3) / 3.0);
  CHECK(max_abs_diff(out, Matrix::Identity(3, 3) * (5.0 / 6.0)) < 1e-15);
}

TEST_CASE("maps.transposition_choi_is_flip_over_d") {
  LinearMapRep t = LinearMapRep::transposition(3);
  CHECK(max_abs_diff(t.choi().matrix(), flip(3).matrix() / 3.0) < 1e-15);
  CHECK(max_abs_diff(LinearMapRep::identity(3).choi().matrix(),
                     max_entangled(3).projector.matrix()) < 1e-15);
}

TEST_CASE("maps.analytic_and_choi_paths_agree") {
  std::mt19937_64 rng(8);
  for (std::size_t d : {2u, 4u}) {
    for (const LinearMapRep& map : {LinearMapRep::identity(d), LinearMapRep::transposition(d),
                                    LinearMapRep::choi_map(d)}) {
      Matrix x = random_complex(d, d, rng);
      CHECK(max_abs_diff(map.apply(x), map.apply_via_choi(x)) < 1e-12);
      LinearMapRep general = LinearMapRep::from_choi(map.choi(), d, d);
      CHECK(general.kind() == MapKind::kGeneral);
      CHECK(max_abs_diff(general.apply(x), map.apply(x)) < 1e-12);

      DenseHermitian m = random_hermitian(TensorSpace({2, d, 3}), rng);
      DenseHermitian fast = apply_map_to_factor(map, m, 1);
      DenseHermitian slow = apply_map_to_factor_via_choi(map, m, 1);
      CHECK(max_abs_diff(fast.matrix(), slow.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("maps.factor_application_by_loop") {
  // (id (x) P)(M) entrywise: sum over the P factor's row/col digits.
  std::mt19937_64 rng(9);
  const std::size_t d = 3;
  DenseHermitian m = random_hermitian(TensorSpace({2, d}), rng);
  LinearMapRep p = LinearMapRep::choi_map(d);
  Matrix expect = Matrix::Zero(2 * d, 2 * d);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      Matrix block = m.matrix().block(a * d, b * d, d, d);
      expect.block(a * d, b * d, d, d) =
          block.trace() * Matrix::Identity(d, d) - block / static_cast<double>(d - 1);
    }
  }
  CHECK(max_abs_diff(apply_map_to_factor(p, m, 1).matrix(), expect) < 1e-13);
}
