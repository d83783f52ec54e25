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

#ifndef SNFORGE_CONSTRUCTIONS_HPP
#define SNFORGE_CONSTRUCTIONS_HPP

#include <cstddef>
#include <optional>
#include <span>

#include "snforge/tensor.hpp"

namespace snforge {

struct MaxEntangled {
  StateVector vector;       // (1/sqrt d) sum_i |i>|i>
  DenseHermitian projector;
};

/// Maximally entangled vector and projector on (A:d, B:d).
MaxEntangled max_entangled(std::size_t d);

/// Swap operator F|ij> = |ji> on (A:d, B:d).
DenseHermitian flip(std::size_t d);

/// The operator X (x) (1 - Omega) + Y (x) Omega on factors (A1, B1, A2, B2)
/// with dims (d1, d1, d2, d2), together with its X and Y blocks. The
/// bipartition of interest is A = A1 A2 versus B = B1 B2.
struct ZFamilyState {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  DenseHermitian x;  // on (A1, B1)
  DenseHermitian y;  // on (A1, B1)
  DenseHermitian z;  // on (A1, B1, A2, B2)

  static FactorSet side_a() { return {0, 2}; }
  static FactorSet side_b() { return {1, 3}; }
  static constexpr std::size_t kA2 = 2;

  /// Scales X, Y and Z by 1 / tr(Z).
  ZFamilyState normalized() const;
};

struct XYPair {
  DenseHermitian x;
  DenseHermitian y;
};

/// Places X and Y (both on d1 (x) d1) into the Z form with the given d2.
ZFamilyState build_z(const DenseHermitian& x, const DenseHermitian& y,
                     std::size_t d2);

/// X = 1 - Omega and Y = (d1 - 1)(d2 + 1) Omega on d1 (x) d1; requires
/// 1 <= d1 <= d2.
XYPair concrete_xy(std::size_t d1, std::size_t d2);

/// build_z(concrete_xy(d1, d2), d2), unnormalized.
ZFamilyState concrete_z(std::size_t d1, std::size_t d2);

/// Recovers X and Y from an operator of Z form on (d1, d1, d2, d2) with
/// d2 >= 2. Throws InvalidArgument when the input is not of that form within
/// rel_tol (relative to 1 + max |Z_ij|).
ZFamilyState decompose_z(const DenseHermitian& z, double rel_tol = 1e-10);

/// Zero-pads every factor up to new_dims; entries on the original index
/// range are kept, everything else is zero.
DenseHermitian embed_zero(const DenseHermitian& m,
                          std::span<const std::size_t> new_dims);

/// (|0> + i|1>)/sqrt2 and (|0> - i|1>)/sqrt2.
Vector plus_i_ket();
Vector minus_i_ket();

struct LiftedState {
  DenseHermitian base;
  DenseHermitian lifted;  // base factors followed by B' (dim 2)
  FactorSet pt_side;      // the B factors of base plus B'
};

/// base (x) |+i><+i| + base^Gamma_B (x) |-i><-i|, where Gamma_B transposes
/// the factors in b_side. The result is invariant under transposing
/// b_side together with the new factor. A non-PPT base gives a non-positive
/// lift; that is reported downstream, not rejected here.
LiftedState pt_invariant_lift(const DenseHermitian& base, const FactorSet& b_side);

/// (1 (x) <k|) M (1 (x) |k>) on the last factor of M.
DenseHermitian compress_last_factor(const DenseHermitian& m, const Vector& ket);

/// PPT state on d (x) d with Schmidt number at least ceil((d - 1) / 4).
///
/// For d >= 4 this is the normalized concrete Z with d1 = 2, d2 = floor(d/2),
/// regrouped as A1 A2 : B1 B2 and zero-padded by one level per side when d is
/// odd. For d in {2, 3} the bound is 1 and the maximally mixed state is used.
struct ScaledState {
  std::size_t d = 0;
  std::optional<ZFamilyState> family;  // normalized; empty for d < 4
  DenseHermitian rho;                  // on (A:d, B:d)
  bool padded = false;
  int claimed_sn_lower = 1;
};

ScaledState scaled_state(std::size_t d);

/// The PT-invariant family on d (x) d (d >= 4): a ScaledState at
/// d' = floor(d/2), lifted on B, tensored with |0><0| on an extra A' qubit,
/// normalized, regrouped as (A A') : (B B'), and zero-padded when d is odd.
/// The result equals its partial transpose on B.
struct PtInvariantFamily {
  std::size_t d = 0;
  std::size_t d_prime = 0;
  ScaledState base;
  LiftedState lift;    // lift of base.rho on (A, B, B')
  DenseHermitian rho;  // on (A:d, B:d)
  int claimed_sn_lower = 1;
};

PtInvariantFamily pt_invariant_family(std::size_t d);

/// ceil(a / b) for positive integers.
constexpr std::size_t ceil_div(std::size_t a, std::size_t b) {
  return (a + b - 1) / b;
}

}  // namespace snforge

#endif  // SNFORGE_CONSTRUCTIONS_HPP
