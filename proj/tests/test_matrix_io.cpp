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

#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "snforge/constructions.hpp"
#include "snforge/matrix_io.hpp"
#include "test_support.hpp"

using namespace snforge;
using namespace snforge::testing;

TEST_CASE("matrix_io.round_trip_is_bit_exact") {
  std::mt19937_64 rng(41);
  DenseHermitian m = random_hermitian(TensorSpace({2, 3}, {"A", "B"}), rng);
  DenseHermitian back = parse_matrix(serialize_matrix(m));
  CHECK(back.space().dims() == m.space().dims());
  CHECK(back.space().labels() == m.space().labels());
  CHECK(max_abs_diff(back.matrix(), m.matrix()) == 0.0);
  CHECK(serialize_matrix(back) == serialize_matrix(m));

  DenseHermitian z = concrete_z(2, 3).z;
  auto path = std::filesystem::temp_directory_path() / "snforge_io_test.snm";
  write_matrix(path.string(), z);
  CHECK(max_abs_diff(read_matrix(path.string()).matrix(), z.matrix()) == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("matrix_io.malformed") {
  const std::string good = "SNFORGE v1\ndims: 2\nlabels: A\n1 0\n0 0\n0 0\n1 0\n";
  CHECK_NOTHROW(parse_matrix(good));
  const char* bad[] = {
      "",
      "SNFORGE v2\ndims: 2\nlabels: A\n1 0\n0 0\n0 0\n1 0\n",
      "SNFORGE v1\ndims: 2\nlabels: A\n1 0\n0 0\n0 0\n",
      "SNFORGE v1\ndims: 2\nlabels: A\n1 0\n0 0\n0 0\n1 0\n5 0\n",
      "SNFORGE v1\ndims: 2\nlabels: A\n1 0\n1 0\n0 0\n1 0\n",
      "SNFORGE v1\ndims: 2\nlabels: A\n1 x\n0 0\n0 0\n1 0\n",
      "SNFORGE v1\ndims: 0\nlabels: A\n",
      "SNFORGE v1\ndims: 2\nlabels: A B\n1 0\n0 0\n0 0\n1 0\n",
      "SNFORGE v1\ndims: 2\nlabels: A\n1 0\n0 0\n0 0\nnan 0\n",
      "SNFORGE v1\ndims: 99999\nlabels: A\n",
  };
  for (const char* text : bad) {
    CAPTURE(std::string(text));
    CHECK_THROWS_AS(parse_matrix(text), ParseError);
  }
  CHECK_THROWS(read_matrix("/nonexistent/dir/file.snm"));
}
