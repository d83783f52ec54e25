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

#ifndef SNFORGE_MATRIX_IO_HPP
#define SNFORGE_MATRIX_IO_HPP

#include <string>

#include "snforge/tensor.hpp"

namespace snforge {

/// Matrix file layout:
///   SNFORGE v1
///   dims: 2 2 8 8
///   labels: A1 B1 A2 B2
///   <re> <im>        (n^2 lines, row-major, %.17g)
std::string serialize_matrix(const DenseHermitian& m);

/// Strict parser for the layout above. Throws ParseError on any deviation,
/// including a non-Hermitian payload.
DenseHermitian parse_matrix(const std::string& text);

void write_matrix(const std::string& path, const DenseHermitian& m);
DenseHermitian read_matrix(const std::string& path);

}  // namespace snforge

#endif  // SNFORGE_MATRIX_IO_HPP
