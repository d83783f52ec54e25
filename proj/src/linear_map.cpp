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

#include "snforge/linear_map.hpp"

#include <numeric>
#include <vector>

namespace snforge {

namespace {

using Idx = Eigen::Index;

Matrix unit(std::size_t d, std::size_t i, std::size_t j) {
  Matrix e = Matrix::Zero(static_cast<Idx>(d), static_cast<Idx>(d));
  e(static_cast<Idx>(i), static_cast<Idx>(j)) = 1.0;
  return e;
}

}  // namespace

LinearMapRep::LinearMapRep(MapKind kind, std::size_t d_in, std::size_t d_out)
    : kind_(kind), d_in_(d_in), d_out_(d_out) {}

LinearMapRep LinearMapRep::identity(std::size_t d) {
  if (d < 1) throw InvalidArgument("map dimension must be >= 1");
  LinearMapRep m(MapKind::kIdentity, d, d);
  Matrix c = Matrix::Zero(static_cast<Idx>(d * d), static_cast<Idx>(d * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      c(static_cast<Idx>(i * d + i), static_cast<Idx>(j * d + j)) = 1.0 / static_cast<double>(d);
    }
  }
  m.choi_ = DenseHermitian(std::move(c), TensorSpace({d, d}, {"out", "in"}));
  return m;
}

LinearMapRep LinearMapRep::transposition(std::size_t d) {
  if (d < 1) throw InvalidArgument("map dimension must be >= 1");
  LinearMapRep m(MapKind::kTransposition, d, d);
  Matrix c = Matrix::Zero(static_cast<Idx>(d * d), static_cast<Idx>(d * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      c(static_cast<Idx>(j * d + i), static_cast<Idx>(i * d + j)) = 1.0 / static_cast<double>(d);
    }
  }
  m.choi_ = DenseHermitian(std::move(c), TensorSpace({d, d}, {"out", "in"}));
  m.positivity_degree_ = 1;
  return m;
}

LinearMapRep LinearMapRep::choi_map(std::size_t d) {
  if (d < 2) throw InvalidArgument("the Choi map needs d >= 2");
  LinearMapRep m(MapKind::kChoiMap, d, d);
  // C = 1 (x) 1 / d - Omega / (d - 1).
  const auto n = static_cast<Idx>(d * d);
  Matrix c = Matrix::Identity(n, n) / static_cast<double>(d);
  const double w = 1.0 / (static_cast<double>(d) * static_cast<double>(d - 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      c(static_cast<Idx>(i * d + i), static_cast<Idx>(j * d + j)) -= w;
    }
  }
  m.choi_ = DenseHermitian(std::move(c), TensorSpace({d, d}, {"out", "in"}));
  m.positivity_degree_ = static_cast<int>(d - 1);
  return m;
}

LinearMapRep LinearMapRep::from_choi(const DenseHermitian& choi, std::size_t d_in,
                                     std::size_t d_out) {
  if (d_in < 1 || d_out < 1) throw InvalidArgument("map dimensions must be >= 1");
  if (choi.dim() != d_in * d_out) {
    throw InvalidArgument("Choi matrix dimension must be d_out * d_in");
  }
  LinearMapRep m(MapKind::kGeneral, d_in, d_out);
  m.choi_ = choi.with_space(TensorSpace({d_out, d_in}, {"out", "in"}));
  return m;
}

std::string LinearMapRep::name() const {
  switch (kind_) {
    case MapKind::kIdentity: return "identity";
    case MapKind::kTransposition: return "transposition";
    case MapKind::kChoiMap: return "choi_map";
    case MapKind::kGeneral: return "general";
  }
  return "general";
}

Matrix LinearMapRep::apply_analytic(const Matrix& x) const {
  switch (kind_) {
    case MapKind::kIdentity: return x;
    case MapKind::kTransposition: return x.transpose();
    case MapKind::kChoiMap: {
      const auto d = static_cast<Idx>(d_in_);
      return x.trace() * Matrix::Identity(d, d) - x / static_cast<double>(d_in_ - 1);
    }
    case MapKind::kGeneral: break;
  }
  return apply_via_choi(x);
}

Matrix LinearMapRep::apply(const Matrix& x) const {
  if (x.rows() != static_cast<Idx>(d_in_) || x.cols() != static_cast<Idx>(d_in_)) {
    throw InvalidArgument("input dimension does not match the map");
  }
  return apply_analytic(x);
}

Matrix LinearMapRep::apply_via_choi(const Matrix& x) const {
  if (x.rows() != static_cast<Idx>(d_in_) || x.cols() != static_cast<Idx>(d_in_)) {
    throw InvalidArgument("input dimension does not match the map");
  }
  const Matrix& c = choi_.matrix();
  const auto di = static_cast<Idx>(d_in_);
  const auto dout = static_cast<Idx>(d_out_);
  Matrix out = Matrix::Zero(dout, dout);
  for (Idx o2 = 0; o2 < dout; ++o2) {
    for (Idx o = 0; o < dout; ++o) {
      Complex acc = 0.0;
      for (Idx i = 0; i < di; ++i) {
        for (Idx j = 0; j < di; ++j) acc += x(i, j) * c(o * di + i, o2 * di + j);
      }
      out(o, o2) = acc * static_cast<double>(d_in_);
    }
  }
  return out;
}

DenseHermitian choi_matrix(const LinearMapRep& map) { return map.choi(); }

namespace {

void check_factor(const LinearMapRep& map, const DenseHermitian& m,
                  std::size_t factor) {
  if (factor >= m.space().num_factors()) {
    throw InvalidArgument("factor position out of range");
  }
  if (m.space().dim(factor) != map.d_in()) {
    throw InvalidArgument("factor dimension " + std::to_string(m.space().dim(factor)) +
                          " does not match map input dimension " +
                          std::to_string(map.d_in()));
  }
}

// Moves `factor` to the last position and back.
std::vector<std::size_t> to_last(std::size_t k, std::size_t factor) {
  std::vector<std::size_t> perm;
  for (std::size_t f = 0; f < k; ++f) {
    if (f != factor) perm.push_back(f);
  }
  perm.push_back(factor);
  return perm;
}

std::vector<std::size_t> inverse(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) inv[perm[j]] = j;
  return inv;
}

}  // namespace

DenseHermitian apply_map_to_factor_via_choi(const LinearMapRep& map,
                                            const DenseHermitian& m,
                                            std::size_t factor) {
  check_factor(map, m, factor);
  const auto& space = m.space();
  const std::size_t k = space.num_factors();
  auto perm = to_last(k, factor);
  DenseHermitian moved = permute_factors(m, perm);
  const std::size_t din = map.d_in();
  const std::size_t dout = map.d_out();
  const std::size_t rest = m.dim() / din;

  std::vector<Matrix> images;  // L(e_ij), row-major in (i, j)
  images.reserve(din * din);
  for (std::size_t i = 0; i < din; ++i) {
    for (std::size_t j = 0; j < din; ++j) images.push_back(map.apply_via_choi(unit(din, i, j)));
  }

  const Matrix& src = moved.matrix();
  Matrix out = Matrix::Zero(static_cast<Idx>(rest * dout), static_cast<Idx>(rest * dout));
  for (std::size_t c = 0; c < rest; ++c) {
    for (std::size_t r = 0; r < rest; ++r) {
      auto blk = out.block(static_cast<Idx>(r * dout), static_cast<Idx>(c * dout),
                           static_cast<Idx>(dout), static_cast<Idx>(dout));
      for (std::size_t i = 0; i < din; ++i) {
        for (std::size_t j = 0; j < din; ++j) {
          Complex v = src(static_cast<Idx>(r * din + i), static_cast<Idx>(c * din + j));
          if (v != Complex(0.0, 0.0)) blk += v * images[i * din + j];
        }
      }
    }
  }
  TensorSpace moved_out = moved.space().resized(k - 1, dout);
  DenseHermitian result = DenseHermitian::symmetrized(out, moved_out);
  auto inv = inverse(perm);
  return permute_factors(result, inv);
}

DenseHermitian apply_map_to_factor(const LinearMapRep& map, const DenseHermitian& m,
                                   std::size_t factor) {
  check_factor(map, m, factor);
  switch (map.kind()) {
    case MapKind::kIdentity:
      return m;
    case MapKind::kTransposition:
      return partial_transpose(m, FactorSet{factor});
    case MapKind::kChoiMap: {
      // tr_f(M) (x) 1_f - M / (d - 1), with 1_f placed back on `factor`.
      const auto& space = m.space();
      DenseHermitian reduced = partial_trace(m, FactorSet{factor});
      FactorSet kept = space.complement(FactorSet{factor});
      const std::size_t n = m.dim();
      std::vector<std::size_t> rest_index(n);
      for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t r = 0;
        for (auto f : kept) r = r * space.dim(f) + space.digit(idx, f);
        rest_index[idx] = r;
      }
      const double inv = 1.0 / static_cast<double>(map.d_in() - 1);
      Matrix out = -m.matrix() * inv;
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
          if (space.digit(r, factor) == space.digit(c, factor)) {
            out(static_cast<Idx>(r), static_cast<Idx>(c)) +=
                reduced.matrix()(static_cast<Idx>(rest_index[r]), static_cast<Idx>(rest_index[c]));
          }
        }
      }
      return DenseHermitian(std::move(out), space);
    }
    case MapKind::kGeneral:
      break;
  }
  return apply_map_to_factor_via_choi(map, m, factor);
}

}  // namespace snforge
