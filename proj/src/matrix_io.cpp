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

#include "snforge/matrix_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace snforge {

namespace {

constexpr const char* kMagic = "SNFORGE v1";

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + tok + "'");
  }
  return v;
}

std::size_t parse_dim(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos ||
      tok.size() > 9) {
    throw ParseError("bad dimension '" + tok + "'");
  }
  std::size_t v = std::stoul(tok);
  if (v == 0) throw ParseError("dimension must be positive");
  return v;
}

// Strips one trailing '\r' so files edited on other platforms still parse.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::string serialize_matrix(const DenseHermitian& m) {
  std::string out = kMagic;
  out += "\ndims:";
  for (std::size_t d : m.space().dims()) out += " " + std::to_string(d);
  out += "\nlabels:";
  for (const auto& l : m.space().labels()) out += " " + l;
  out += "\n";
  char buf[96];
  const Matrix& a = m.matrix();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", a(i, j).real(), a(i, j).imag());
      out += buf;
    }
  }
  return out;
}

DenseHermitian parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!next_line(in, line) || line != kMagic) {
    throw ParseError("missing 'SNFORGE v1' header");
  }
  if (!next_line(in, line) || line.rfind("dims:", 0) != 0) {
    throw ParseError("line 2: expected 'dims:'");
  }
  std::vector<std::size_t> dims;
  std::size_t n = 1;
  for (const auto& tok : split_ws(line.substr(5))) {
    dims.push_back(parse_dim(tok));
    n *= dims.back();
    if (n > 4096) throw ParseError("matrix too large (more than 4096 levels)");
  }
  if (dims.empty()) throw ParseError("line 2: no dimensions");
  if (!next_line(in, line) || line.rfind("labels:", 0) != 0) {
    throw ParseError("line 3: expected 'labels:'");
  }
  std::vector<std::string> labels = split_ws(line.substr(7));
  if (labels.size() != dims.size()) {
    throw ParseError("line 3: " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(dims.size()) + " factors");
  }
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::size_t lineno = 3;
  for (std::size_t k = 0; k < n * n; ++k) {
    ++lineno;
    if (!next_line(in, line)) {
      throw ParseError("expected " + std::to_string(n * n) + " entries, got " +
                       std::to_string(k));
    }
    auto toks = split_ws(line);
    if (toks.size() != 2) {
      throw ParseError("line " + std::to_string(lineno) + ": expected '<re> <im>'");
    }
    m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) =
        Complex(parse_double(toks[0], lineno), parse_double(toks[1], lineno));
  }
  while (next_line(in, line)) {
    if (!split_ws(line).empty()) throw ParseError("trailing data after entries");
  }
  try {
    return DenseHermitian(std::move(m), TensorSpace(dims, labels));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid matrix: ") + e.what());
  }
}

void write_matrix(const std::string& path, const DenseHermitian& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out << serialize_matrix(m);
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

DenseHermitian read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

}  // namespace snforge
