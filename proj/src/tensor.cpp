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

#include "snforge/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace snforge {

namespace {

std::vector<std::string> default_labels(std::size_t k) {
  if (k == 2) return {"A", "B"};
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back("F" + std::to_string(i + 1));
  return out;
}

double hermitian_defect(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

void check_square_finite(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("matrix is not square (" + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()) + ")");
  }
  if (!m.allFinite()) throw InvalidArgument("matrix has non-finite entries");
}

// Offsets into the source index for every composite index of a subspace.
std::vector<std::size_t> embed_offsets(const TensorSpace& space,
                                       const FactorSet& factors) {
  std::size_t count = 1;
  for (auto f : factors) count *= space.dim(f);
  std::vector<std::size_t> out(count, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    std::size_t off = 0;
    for (std::size_t p = factors.size(); p-- > 0;) {
      std::size_t f = factors[p];
      off += (rem % space.dim(f)) * space.stride(f);
      rem /= space.dim(f);
    }
    out[idx] = off;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// TensorSpace

TensorSpace::TensorSpace() : TensorSpace(std::vector<std::size_t>{1}, {"S"}) {}

TensorSpace::TensorSpace(std::vector<std::size_t> dims,
                         std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) throw InvalidArgument("tensor space needs a factor");
  for (auto d : dims_) {
    if (d < 1) throw InvalidArgument("factor dimension must be >= 1");
  }
  if (labels_.empty()) labels_ = default_labels(dims_.size());
  if (labels_.size() != dims_.size()) {
    throw InvalidArgument("label count does not match factor count");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw InvalidArgument("empty factor label");
    if (!seen.insert(l).second) {
      throw InvalidArgument("duplicate factor label '" + l + "'");
    }
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t f = dims_.size() - 1; f-- > 0;) {
    strides_[f] = strides_[f + 1] * dims_[f + 1];
  }
  total_ = strides_[0] * dims_[0];
}

TensorSpace TensorSpace::single(std::size_t n) { return TensorSpace({n}, {"S"}); }

std::size_t TensorSpace::position(std::string_view label) const {
  for (std::size_t f = 0; f < labels_.size(); ++f) {
    if (labels_[f] == label) return f;
  }
  throw InvalidArgument("no factor labeled '" + std::string(label) + "'");
}

void TensorSpace::validate_subset(const FactorSet& factors) const {
  std::set<std::size_t> seen;
  for (auto f : factors) {
    if (f >= dims_.size()) {
      throw InvalidArgument("factor position " + std::to_string(f) +
                            " out of range");
    }
    if (!seen.insert(f).second) {
      throw InvalidArgument("factor position repeated in subset");
    }
  }
}

FactorSet TensorSpace::complement(const FactorSet& factors) const {
  validate_subset(factors);
  FactorSet out;
  for (std::size_t f = 0; f < dims_.size(); ++f) {
    if (std::find(factors.begin(), factors.end(), f) == factors.end()) {
      out.push_back(f);
    }
  }
  return out;
}

TensorSpace TensorSpace::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != dims_.size()) {
    throw InvalidArgument("permutation length does not match factor count");
  }
  validate_subset(FactorSet(perm.begin(), perm.end()));
  std::vector<std::size_t> d;
  std::vector<std::string> l;
  for (auto p : perm) {
    d.push_back(dims_[p]);
    l.push_back(labels_[p]);
  }
  return TensorSpace(std::move(d), std::move(l));
}

TensorSpace TensorSpace::kept(const FactorSet& factors) const {
  validate_subset(factors);
  FactorSet sorted = factors;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> d;
  std::vector<std::string> l;
  for (auto f : sorted) {
    d.push_back(dims_[f]);
    l.push_back(labels_[f]);
  }
  if (d.empty()) return TensorSpace({1}, {"S"});
  return TensorSpace(std::move(d), std::move(l));
}

TensorSpace TensorSpace::resized(std::size_t factor, std::size_t new_dim) const {
  auto d = dims_;
  d.at(factor) = new_dim;
  return TensorSpace(std::move(d), labels_);
}

TensorSpace TensorSpace::coarse_grained(std::span<const std::size_t> group_sizes,
                                        std::vector<std::string> labels) const {
  std::size_t total = std::accumulate(group_sizes.begin(), group_sizes.end(),
                                      std::size_t{0});
  if (total != dims_.size()) {
    throw InvalidArgument("group sizes must cover every factor");
  }
  std::vector<std::size_t> d;
  std::size_t f = 0;
  for (auto g : group_sizes) {
    if (g == 0) throw InvalidArgument("empty factor group");
    std::size_t prod = 1;
    for (std::size_t i = 0; i < g; ++i) prod *= dims_[f++];
    d.push_back(prod);
  }
  return TensorSpace(std::move(d), std::move(labels));
}

TensorSpace TensorSpace::concat(const TensorSpace& other) const {
  auto d = dims_;
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  auto l = labels_;
  l.insert(l.end(), other.labels_.begin(), other.labels_.end());
  std::set<std::string> uniq(l.begin(), l.end());
  if (uniq.size() != l.size()) l.clear();
  return TensorSpace(std::move(d), std::move(l));
}

// ---------------------------------------------------------------------------
// DenseHermitian

DenseHermitian::DenseHermitian(Matrix m)
    : DenseHermitian(std::move(m), TensorSpace{}) {}

DenseHermitian::DenseHermitian(Matrix m, TensorSpace space)
    : m_(std::move(m)), space_(std::move(space)) {
  check_square_finite(m_);
  if (m_.rows() == 0) throw InvalidArgument("empty matrix");
  if (space_.total_dim() == 1 && m_.rows() != 1) {
    space_ = TensorSpace::single(static_cast<std::size_t>(m_.rows()));
  }
  if (space_.total_dim() != static_cast<std::size_t>(m_.rows())) {
    throw InvalidArgument("space dimension " +
                          std::to_string(space_.total_dim()) +
                          " does not match matrix dimension " +
                          std::to_string(m_.rows()));
  }
  double scale = 1.0 + m_.cwiseAbs().maxCoeff();
  if (hermitian_defect(m_) > 1e-12 * scale) {
    throw InvalidArgument("matrix is not Hermitian within tolerance");
  }
}

DenseHermitian DenseHermitian::symmetrized(const Matrix& m, TensorSpace space) {
  check_square_finite(m);
  double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (hermitian_defect(m) > 1e-9 * scale) {
    throw InvalidArgument("computed matrix is far from Hermitian");
  }
  Matrix h = (m + m.adjoint()) * 0.5;
  return DenseHermitian(std::move(h), std::move(space));
}

DenseHermitian DenseHermitian::identity(const TensorSpace& space) {
  auto n = static_cast<Eigen::Index>(space.total_dim());
  return DenseHermitian(Matrix::Identity(n, n), space);
}

DenseHermitian DenseHermitian::zero(const TensorSpace& space) {
  auto n = static_cast<Eigen::Index>(space.total_dim());
  return DenseHermitian(Matrix::Zero(n, n), space);
}

double DenseHermitian::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

DenseHermitian DenseHermitian::with_space(TensorSpace space) const {
  if (space.total_dim() != dim()) {
    throw InvalidArgument("space dimension does not match matrix");
  }
  DenseHermitian out = *this;
  out.space_ = std::move(space);
  return out;
}

DenseHermitian DenseHermitian::normalized() const {
  double t = trace();
  if (!(t > 0.0)) throw InvalidArgument("cannot normalize: trace is not positive");
  return *this * (1.0 / t);
}

DenseHermitian DenseHermitian::operator+(const DenseHermitian& o) const {
  if (o.dim() != dim()) throw InvalidArgument("dimension mismatch in sum");
  return DenseHermitian(m_ + o.m_, space_);
}

DenseHermitian DenseHermitian::operator-(const DenseHermitian& o) const {
  if (o.dim() != dim()) throw InvalidArgument("dimension mismatch in difference");
  return DenseHermitian(m_ - o.m_, space_);
}

DenseHermitian DenseHermitian::operator*(double s) const {
  return DenseHermitian(m_ * s, space_);
}

// ---------------------------------------------------------------------------
// StateVector / Spectrum

StateVector::StateVector(Vector amplitudes, TensorSpace space, bool normalized)
    : v_(std::move(amplitudes)), space_(std::move(space)), normalized_(normalized) {
  if (space_.total_dim() == 1 && v_.size() != 1) {
    space_ = TensorSpace::single(static_cast<std::size_t>(v_.size()));
  }
  if (space_.total_dim() != static_cast<std::size_t>(v_.size())) {
    throw InvalidArgument("space dimension does not match vector length");
  }
  if (!v_.allFinite()) throw InvalidArgument("vector has non-finite entries");
  if (normalized_ && std::abs(v_.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("state vector is not normalized");
  }
}

DenseHermitian StateVector::projector() const {
  return DenseHermitian(v_ * v_.adjoint(), space_);
}

StateVector Spectrum::vector(std::size_t i) const {
  Vector v = eigenvectors.col(static_cast<Eigen::Index>(i));
  return StateVector(std::move(v), space, false);
}

// ---------------------------------------------------------------------------
// Operations

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

DenseHermitian kron(const DenseHermitian& a, const DenseHermitian& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return DenseHermitian(std::move(out), a.space().concat(b.space()));
}

DenseHermitian kron(std::span<const DenseHermitian> parts) {
  if (parts.empty()) throw InvalidArgument("kron of an empty list");
  DenseHermitian acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = kron(acc, parts[i]);
  return acc;
}

namespace {

std::vector<std::size_t> permutation_index_map(
    const TensorSpace& space, std::span<const std::size_t> perm) {
  TensorSpace target = space.permuted(perm);
  std::vector<std::size_t> map(space.total_dim());
  for (std::size_t j = 0; j < map.size(); ++j) {
    std::size_t old = 0;
    for (std::size_t f = 0; f < perm.size(); ++f) {
      old += target.digit(j, f) * space.stride(perm[f]);
    }
    map[j] = old;
  }
  return map;
}

}  // namespace

DenseHermitian permute_factors(const DenseHermitian& m,
                               std::span<const std::size_t> perm) {
  const auto& space = m.space();
  auto map = permutation_index_map(space, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  Matrix out(n, n);
  const Matrix& src = m.matrix();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      out(r, c) = src(static_cast<Eigen::Index>(map[r]),
                      static_cast<Eigen::Index>(map[c]));
    }
  }
  return DenseHermitian(std::move(out), space.permuted(perm));
}

Vector permute_factors(const Vector& v, const TensorSpace& space,
                       std::span<const std::size_t> perm) {
  if (static_cast<std::size_t>(v.size()) != space.total_dim()) {
    throw InvalidArgument("vector length does not match space");
  }
  auto map = permutation_index_map(space, perm);
  Vector out(v.size());
  for (std::size_t j = 0; j < map.size(); ++j) {
    out(static_cast<Eigen::Index>(j)) = v(static_cast<Eigen::Index>(map[j]));
  }
  return out;
}

DenseHermitian partial_transpose(const DenseHermitian& m,
                                 const FactorSet& factors) {
  const auto& space = m.space();
  space.validate_subset(factors);
  const std::size_t n = space.total_dim();
  std::vector<std::size_t> sel(n, 0), rest(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t s = 0;
    for (auto f : factors) s += space.digit(i, f) * space.stride(f);
    sel[i] = s;
    rest[i] = i - s;
  }
  const Matrix& src = m.matrix();
  Matrix out(src.rows(), src.cols());
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          src(static_cast<Eigen::Index>(rest[r] + sel[c]),
              static_cast<Eigen::Index>(rest[c] + sel[r]));
    }
  }
  return DenseHermitian(std::move(out), space);
}

DenseHermitian partial_trace(const DenseHermitian& m, const FactorSet& traced) {
  const auto& space = m.space();
  FactorSet kept = space.complement(traced);
  FactorSet tr_sorted = traced;
  std::sort(tr_sorted.begin(), tr_sorted.end());
  auto kept_off = embed_offsets(space, kept);
  auto tr_off = embed_offsets(space, tr_sorted);
  const auto nk = static_cast<Eigen::Index>(kept_off.size());
  const Matrix& src = m.matrix();
  Matrix out = Matrix::Zero(nk, nk);
  for (Eigen::Index c = 0; c < nk; ++c) {
    for (Eigen::Index r = 0; r < nk; ++r) {
      Complex acc = 0.0;
      for (auto t : tr_off) {
        acc += src(static_cast<Eigen::Index>(kept_off[r] + t),
                   static_cast<Eigen::Index>(kept_off[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return DenseHermitian(std::move(out), space.kept(kept));
}

Spectrum eig_hermitian(const DenseHermitian& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  return Spectrum{es.eigenvalues(), es.eigenvectors(), m.space()};
}

RealVector eigenvalues_hermitian(const DenseHermitian& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  return es.eigenvalues();
}

PsdResult psd_check(const DenseHermitian& m, double rel_tol) {
  if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be positive");
  RealVector ev = eigenvalues_hermitian(m);
  PsdResult out;
  out.min_eigenvalue = ev(0);
  out.max_eigenvalue = ev(ev.size() - 1);
  out.tolerance = rel_tol * std::max(1.0, out.max_eigenvalue);
  out.verdict = out.min_eigenvalue >= -out.tolerance;
  return out;
}

RealVector schmidt_coefficients(const StateVector& v, const FactorSet& side_a) {
  const auto& space = v.space();
  space.validate_subset(side_a);
  if (side_a.empty() || side_a.size() == space.num_factors()) {
    throw InvalidArgument("side_A must be a nonempty proper subset of factors");
  }
  FactorSet a_sorted = side_a;
  std::sort(a_sorted.begin(), a_sorted.end());
  FactorSet perm = a_sorted;
  for (auto f : space.complement(side_a)) perm.push_back(f);
  Vector w = permute_factors(v.amplitudes(), space, perm);
  std::size_t dim_a = 1;
  for (auto f : a_sorted) dim_a *= space.dim(f);
  const auto rows = static_cast<Eigen::Index>(dim_a);
  const auto cols = static_cast<Eigen::Index>(space.total_dim() / dim_a);
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>;
  Matrix c = Eigen::Map<const RowMajor>(w.data(), rows, cols);
  Eigen::JacobiSVD<Matrix> svd(c);
  return svd.singularValues();
}

int schmidt_rank(const StateVector& v, const FactorSet& side_a, double sv_tol) {
  if (!(sv_tol > 0.0)) throw InvalidArgument("sv_tol must be positive");
  RealVector s = schmidt_coefficients(v, side_a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > sv_tol * s(0)) ++rank;
  }
  return rank;
}

}  // namespace snforge
