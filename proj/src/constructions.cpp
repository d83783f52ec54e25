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

#include "snforge/constructions.hpp"

#include <array>
#include <cmath>

namespace snforge {

namespace {

// Interprets an operator on d (x) d, accepting an unstructured space of
// dimension d^2.
DenseHermitian as_bipartite_square(const DenseHermitian& m, const char* a,
                                   const char* b) {
  const auto& s = m.space();
  std::size_t d = 0;
  if (s.num_factors() == 2 && s.dim(0) == s.dim(1)) {
    d = s.dim(0);
  } else if (s.num_factors() == 1) {
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(double(m.dim()))));
    if (r * r != m.dim()) {
      throw InvalidArgument("operator dimension is not a square");
    }
    d = r;
  } else {
    throw InvalidArgument("operator must act on d (x) d");
  }
  return m.with_space(TensorSpace({d, d}, {a, b}));
}

}  // namespace

MaxEntangled max_entangled(std::size_t d) {
  if (d < 1) throw InvalidArgument("dimension must be >= 1");
  TensorSpace space({d, d}, {"A", "B"});
  const auto n = static_cast<Eigen::Index>(d * d);
  Vector v = Vector::Zero(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = amp;
  // The projector has entries exactly 1/d on the |ii><jj| pattern.
  Matrix p = Matrix::Zero(n, n);
  const double w = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      p(static_cast<Eigen::Index>(i * d + i), static_cast<Eigen::Index>(j * d + j)) = w;
    }
  }
  StateVector sv(std::move(v), space, false);
  return MaxEntangled{std::move(sv), DenseHermitian(std::move(p), space)};
}

DenseHermitian flip(std::size_t d) {
  if (d < 1) throw InvalidArgument("dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix f = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      f(static_cast<Eigen::Index>(j * d + i), static_cast<Eigen::Index>(i * d + j)) = 1.0;
    }
  }
  return DenseHermitian(std::move(f), TensorSpace({d, d}, {"A", "B"}));
}

ZFamilyState ZFamilyState::normalized() const {
  double t = z.trace();
  if (!(t > 0.0)) throw InvalidArgument("cannot normalize: tr(Z) is not positive");
  const double s = 1.0 / t;
  return ZFamilyState{d1, d2, x * s, y * s, z * s};
}

ZFamilyState build_z(const DenseHermitian& x, const DenseHermitian& y,
                     std::size_t d2) {
  if (d2 < 1) throw InvalidArgument("d2 must be >= 1");
  if (x.dim() != y.dim()) {
    throw InvalidArgument("X and Y must have equal dimension");
  }
  DenseHermitian xs = as_bipartite_square(x, "A1", "B1");
  DenseHermitian ys = as_bipartite_square(y, "A1", "B1");
  const std::size_t d1 = xs.space().dim(0);
  TensorSpace pair2({d2, d2}, {"A2", "B2"});
  DenseHermitian omega = max_entangled(d2).projector.with_space(pair2);
  DenseHermitian rest = DenseHermitian::identity(pair2) - omega;
  DenseHermitian z = kron(xs, rest) + kron(ys, omega);
  return ZFamilyState{d1, d2, std::move(xs), std::move(ys), std::move(z)};
}

XYPair concrete_xy(std::size_t d1, std::size_t d2) {
  if (d1 < 1) throw InvalidArgument("d1 must be >= 1");
  if (d1 > d2) throw InvalidArgument("concrete family requires d1 <= d2");
  TensorSpace pair1({d1, d1}, {"A1", "B1"});
  DenseHermitian omega = max_entangled(d1).projector.with_space(pair1);
  DenseHermitian x = DenseHermitian::identity(pair1) - omega;
  DenseHermitian y = omega * (static_cast<double>(d1 - 1) * static_cast<double>(d2 + 1));
  return XYPair{std::move(x), std::move(y)};
}

ZFamilyState concrete_z(std::size_t d1, std::size_t d2) {
  XYPair xy = concrete_xy(d1, d2);
  return build_z(xy.x, xy.y, d2);
}

ZFamilyState decompose_z(const DenseHermitian& z, double rel_tol) {
  const auto& s = z.space();
  if (s.num_factors() != 4 || s.dim(0) != s.dim(1) || s.dim(2) != s.dim(3)) {
    throw InvalidArgument("Z must act on factors with dims (d1, d1, d2, d2)");
  }
  const std::size_t d1 = s.dim(0);
  const std::size_t d2 = s.dim(2);
  if (d2 < 2) throw InvalidArgument("Z decomposition needs d2 >= 2");
  const std::size_t m = d1 * d1;
  const std::size_t k = d2 * d2;
  const Matrix& src = z.matrix();
  // tr_{A2B2}[Z (1 (x) Omega)] = Y and tr_{A2B2}[Z] = (d2^2 - 1) X + Y.
  Matrix y = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  Matrix full = y;
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = 0; r < m; ++r) {
      Complex acc_y = 0.0, acc_t = 0.0;
      for (std::size_t a = 0; a < d2; ++a) {
        for (std::size_t b = 0; b < d2; ++b) {
          acc_y += src(static_cast<Eigen::Index>(r * k + a * d2 + a),
                       static_cast<Eigen::Index>(c * k + b * d2 + b));
        }
      }
      for (std::size_t t = 0; t < k; ++t) {
        acc_t += src(static_cast<Eigen::Index>(r * k + t), static_cast<Eigen::Index>(c * k + t));
      }
      y(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc_y / static_cast<double>(d2);
      full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc_t;
    }
  }
  Matrix x = (full - y) / static_cast<double>(k - 1);
  TensorSpace pair1({d1, d1}, {"A1", "B1"});
  ZFamilyState out = build_z(DenseHermitian::symmetrized(x, pair1),
                             DenseHermitian::symmetrized(y, pair1), d2);
  double residual = max_abs_diff(out.z.matrix(), src);
  if (residual > rel_tol * (1.0 + z.max_abs())) {
    throw InvalidArgument("operator is not of the Z form (residual " +
                          std::to_string(residual) + ")");
  }
  out.z = z.with_space(out.z.space());
  return out;
}

DenseHermitian embed_zero(const DenseHermitian& m,
                          std::span<const std::size_t> new_dims) {
  const auto& s = m.space();
  if (new_dims.size() != s.num_factors()) {
    throw InvalidArgument("new_dims must list one dimension per factor");
  }
  for (std::size_t f = 0; f < new_dims.size(); ++f) {
    if (new_dims[f] < s.dim(f)) {
      throw InvalidArgument("embed_zero cannot shrink a factor");
    }
  }
  TensorSpace target(std::vector<std::size_t>(new_dims.begin(), new_dims.end()),
                     s.labels());
  // Source index of every target index that lies in the original range.
  std::vector<Eigen::Index> src_of;
  std::vector<Eigen::Index> tgt_of;
  for (std::size_t t = 0; t < target.total_dim(); ++t) {
    std::size_t src = 0;
    bool inside = true;
    for (std::size_t f = 0; f < s.num_factors(); ++f) {
      std::size_t dg = target.digit(t, f);
      if (dg >= s.dim(f)) {
        inside = false;
        break;
      }
      src += dg * s.stride(f);
    }
    if (inside) {
      src_of.push_back(static_cast<Eigen::Index>(src));
      tgt_of.push_back(static_cast<Eigen::Index>(t));
    }
  }
  const auto n = static_cast<Eigen::Index>(target.total_dim());
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t c = 0; c < src_of.size(); ++c) {
    for (std::size_t r = 0; r < src_of.size(); ++r) {
      out(tgt_of[r], tgt_of[c]) = m.matrix()(src_of[r], src_of[c]);
    }
  }
  return DenseHermitian(std::move(out), std::move(target));
}

Vector plus_i_ket() {
  Vector v(2);
  v << Complex(1.0, 0.0), Complex(0.0, 1.0);
  return v / std::sqrt(2.0);
}

Vector minus_i_ket() {
  Vector v(2);
  v << Complex(1.0, 0.0), Complex(0.0, -1.0);
  return v / std::sqrt(2.0);
}

LiftedState pt_invariant_lift(const DenseHermitian& base, const FactorSet& b_side) {
  base.space().validate_subset(b_side);
  if (b_side.empty()) throw InvalidArgument("lift needs at least one B factor");
  TensorSpace qubit({2}, {"B'"});
  // |+i><+i| = [[1, -i], [i, 1]] / 2 and its transpose |-i><-i|.
  Matrix plus(2, 2), minus(2, 2);
  plus << Complex(0.5, 0.0), Complex(0.0, -0.5), Complex(0.0, 0.5), Complex(0.5, 0.0);
  minus = plus.transpose();
  DenseHermitian lifted = kron(base, DenseHermitian(plus, qubit)) +
                          kron(partial_transpose(base, b_side), DenseHermitian(minus, qubit));
  FactorSet pt_side = b_side;
  pt_side.push_back(base.space().num_factors());
  return LiftedState{base, std::move(lifted), std::move(pt_side)};
}

DenseHermitian compress_last_factor(const DenseHermitian& m, const Vector& ket) {
  const auto& s = m.space();
  const std::size_t last = s.num_factors() - 1;
  const std::size_t dk = s.dim(last);
  if (static_cast<std::size_t>(ket.size()) != dk) {
    throw InvalidArgument("ket dimension does not match the last factor");
  }
  if (s.num_factors() < 2) throw InvalidArgument("nothing left after compression");
  const std::size_t rest = m.dim() / dk;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rest), static_cast<Eigen::Index>(rest));
  for (std::size_t c = 0; c < rest; ++c) {
    for (std::size_t r = 0; r < rest; ++r) {
      Complex acc = 0.0;
      for (std::size_t a = 0; a < dk; ++a) {
        for (std::size_t b = 0; b < dk; ++b) {
          acc += std::conj(ket(static_cast<Eigen::Index>(a))) *
                 m.matrix()(static_cast<Eigen::Index>(r * dk + a),
                            static_cast<Eigen::Index>(c * dk + b)) *
                 ket(static_cast<Eigen::Index>(b));
        }
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }
  FactorSet kept;
  for (std::size_t f = 0; f < last; ++f) kept.push_back(f);
  return DenseHermitian::symmetrized(out, s.kept(kept));
}

ScaledState scaled_state(std::size_t d) {
  if (d < 2) throw InvalidArgument("scaled state needs d >= 2");
  ScaledState out;
  out.d = d;
  out.claimed_sn_lower = static_cast<int>(ceil_div(d - 1, 4));
  TensorSpace ab({d, d}, {"A", "B"});
  if (d < 4) {
    out.rho = DenseHermitian::identity(ab) * (1.0 / static_cast<double>(d * d));
    return out;
  }
  const std::size_t d2 = d / 2;
  ZFamilyState fam = concrete_z(2, d2).normalized();
  const std::array<std::size_t, 4> regroup{0, 2, 1, 3};  // (A1, A2, B1, B2)
  const std::array<std::size_t, 2> groups{2, 2};
  DenseHermitian rho = permute_factors(fam.z, regroup);
  rho = rho.with_space(rho.space().coarse_grained(groups, {"A", "B"}));
  if (d % 2 == 1) {
    const std::array<std::size_t, 2> dims{d, d};
    rho = embed_zero(rho, dims);
    out.padded = true;
  }
  out.family = std::move(fam);
  out.rho = std::move(rho);
  return out;
}

PtInvariantFamily pt_invariant_family(std::size_t d) {
  if (d < 4) throw InvalidArgument("PT-invariant family needs d >= 4");
  PtInvariantFamily out;
  out.d = d;
  out.d_prime = d / 2;
  out.claimed_sn_lower = static_cast<int>(d % 2 == 0 ? ceil_div(d - 2, 8)
                                                     : ceil_div(d - 3, 8));
  out.base = scaled_state(out.d_prime);
  out.lift = pt_invariant_lift(out.base.rho, FactorSet{1});  // (A, B, B')

  TensorSpace anc({2}, {"A'"});
  Matrix zero_proj = Matrix::Zero(2, 2);
  zero_proj(0, 0) = 1.0;
  DenseHermitian rho = kron(out.lift.lifted, DenseHermitian(zero_proj, anc));  // (A, B, B', A')
  const std::array<std::size_t, 4> order{0, 3, 1, 2};  // (A, A', B, B')
  rho = permute_factors(rho, order) * 0.5;
  const std::array<std::size_t, 2> groups{2, 2};
  rho = rho.with_space(rho.space().coarse_grained(groups, {"A", "B"}));
  if (d % 2 == 1) {
    const std::array<std::size_t, 2> dims{d, d};
    rho = embed_zero(rho, dims);
  }
  out.rho = std::move(rho);
  return out;
}

}  // namespace snforge
