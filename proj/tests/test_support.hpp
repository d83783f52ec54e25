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

// Helpers shared by the unit tests and the acceptance suite. Everything
// here is written with explicit index loops so it can act as an oracle for
// the library's reshaping code.

#ifndef SNFORGE_TESTS_TEST_SUPPORT_HPP
#define SNFORGE_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "snforge/tensor.hpp"

namespace snforge::testing {

inline Matrix random_complex(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

inline DenseHermitian random_hermitian(const TensorSpace& space, std::mt19937_64& rng) {
  Matrix a = random_complex(space.total_dim(), space.total_dim(), rng);
  return DenseHermitian::symmetrized((a + a.adjoint()) * 0.5, space);
}

/// A A^dagger with A of the given column count; rank <= cols.
inline DenseHermitian random_psd(const TensorSpace& space, std::mt19937_64& rng,
                                 std::size_t cols = 0) {
  if (cols == 0) cols = space.total_dim();
  Matrix a = random_complex(space.total_dim(), cols, rng);
  return DenseHermitian::symmetrized(a * a.adjoint(), space);
}

/// Digits of a row-major composite index.
inline std::vector<std::size_t> digits_of(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    out[f] = index % dims[f];
    index /= dims[f];
  }
  return out;
}

inline std::size_t index_of(const std::vector<std::size_t>& digits,
                            const std::vector<std::size_t>& dims) {
  std::size_t out = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) out = out * dims[f] + digits[f];
  return out;
}

/// Partial transpose by swapping row and column digits of the listed factors.
inline Matrix loop_partial_transpose(const Matrix& m, const std::vector<std::size_t>& dims,
                                     const std::vector<std::size_t>& factors) {
  const auto n = static_cast<std::size_t>(m.rows());
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      auto dr = digits_of(r, dims);
      auto dc = digits_of(c, dims);
      for (std::size_t f : factors) std::swap(dr[f], dc[f]);
      out(static_cast<Eigen::Index>(index_of(dr, dims)),
          static_cast<Eigen::Index>(index_of(dc, dims))) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

/// Dense eigenvalues through a general complex eigensolver, sorted.
inline std::vector<double> loop_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    out.push_back(es.eigenvalues()(i).real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Swap operator entries: F[(a,b),(a',b')] = delta(a,b') delta(b,a').
inline double flip_entry(std::size_t a, std::size_t b, std::size_t ap, std::size_t bp) {
  return (a == bp && b == ap) ? 1.0 : 0.0;
}

/// Unnormalized |Omega><Omega| entries: delta(a,b) delta(a',b') / d.
inline double omega_entry(std::size_t a, std::size_t b, std::size_t ap, std::size_t bp,
                          std::size_t d) {
  return (a == b && ap == bp) ? 1.0 / static_cast<double>(d) : 0.0;
}

}  // namespace snforge::testing

#endif  // SNFORGE_TESTS_TEST_SUPPORT_HPP
