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

#ifndef SNFORGE_LINEAR_MAP_HPP
#define SNFORGE_LINEAR_MAP_HPP

#include <cstddef>
#include <optional>
#include <string>

#include "snforge/tensor.hpp"

namespace snforge {

enum class MapKind { kIdentity, kTransposition, kChoiMap, kGeneral };

/// Linear map M_{d_in} -> M_{d_out}, stored as its Choi matrix
/// C_L = (L (x) id)(Omega) on (out, in), with analytic fast paths for the
/// identity, the transposition and the Choi map X -> tr(X) 1 - X / (d - 1).
///
/// Applying through the Choi matrix uses
///   L(X) = d_in tr_in[ C_L (1_out (x) X^T) ].
class LinearMapRep {
 public:
  static LinearMapRep identity(std::size_t d);
  static LinearMapRep transposition(std::size_t d);
  /// Requires d >= 2. Positive on d-1 levels (recorded, not recomputed).
  static LinearMapRep choi_map(std::size_t d);
  /// Hermiticity-preserving map given by its Choi matrix on (d_out, d_in).
  static LinearMapRep from_choi(const DenseHermitian& choi, std::size_t d_in,
                                std::size_t d_out);

  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }
  MapKind kind() const { return kind_; }
  const DenseHermitian& choi() const { return choi_; }
  /// k such that the map is known to be k-positive, when recorded.
  std::optional<int> positivity_degree() const { return positivity_degree_; }
  std::string name() const;

  /// L(X), analytic when the kind has a closed form.
  Matrix apply(const Matrix& x) const;
  /// L(X) computed from the Choi matrix only.
  Matrix apply_via_choi(const Matrix& x) const;

 private:
  LinearMapRep(MapKind kind, std::size_t d_in, std::size_t d_out);
  Matrix apply_analytic(const Matrix& x) const;

  MapKind kind_;
  std::size_t d_in_;
  std::size_t d_out_;
  DenseHermitian choi_;
  std::optional<int> positivity_degree_;
};

DenseHermitian choi_matrix(const LinearMapRep& map);

/// (id (x) ... (x) L (x) ... (x) id)(M) with L acting on `factor`; that
/// factor's dimension becomes d_out. Uses the analytic path when available.
DenseHermitian apply_map_to_factor(const LinearMapRep& map,
                                   const DenseHermitian& m, std::size_t factor);

/// Same result computed blockwise from the Choi matrix alone.
DenseHermitian apply_map_to_factor_via_choi(const LinearMapRep& map,
                                            const DenseHermitian& m,
                                            std::size_t factor);

}  // namespace snforge

#endif  // SNFORGE_LINEAR_MAP_HPP
