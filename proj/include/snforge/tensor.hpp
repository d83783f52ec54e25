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

#ifndef SNFORGE_TENSOR_HPP
#define SNFORGE_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace snforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered set of factor positions (0-based) inside a TensorSpace.
using FactorSet = std::vector<std::size_t>;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered list of labeled tensor factors.
///
/// Composite indices are row-major over the factors in list order:
/// index(i1, ..., ik) = i1 * (n2 * ... * nk) + ... + ik. Every reshape,
/// Kronecker product and factor permutation in the library uses this
/// convention.
class TensorSpace {
 public:
  /// One factor of dimension 1.
  TensorSpace();
  /// Labels default to {"A", "B"} for two factors and {"F1", ...} otherwise.
  explicit TensorSpace(std::vector<std::size_t> dims,
                       std::vector<std::string> labels = {});

  /// Unstructured space with a single factor of dimension n.
  static TensorSpace single(std::size_t n);

  std::size_t num_factors() const { return dims_.size(); }
  std::size_t dim(std::size_t factor) const { return dims_.at(factor); }
  const std::string& label(std::size_t factor) const {
    return labels_.at(factor);
  }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t total_dim() const { return total_; }
  std::size_t stride(std::size_t factor) const { return strides_.at(factor); }

  /// Position of the factor with the given label; throws InvalidArgument.
  std::size_t position(std::string_view label) const;

  /// New space whose factor j is this space's factor perm[j].
  TensorSpace permuted(std::span<const std::size_t> perm) const;
  /// Subspace made of the listed factors, in increasing position order.
  TensorSpace kept(const FactorSet& factors) const;
  /// Same labels; factor `factor` resized to `new_dim`.
  TensorSpace resized(std::size_t factor, std::size_t new_dim) const;
  /// Merges runs of consecutive factors. `group_sizes` must sum to
  /// num_factors(); the merged factor takes the matching entry of `labels`.
  TensorSpace coarse_grained(std::span<const std::size_t> group_sizes,
                             std::vector<std::string> labels) const;
  /// Concatenation; duplicate labels are replaced by generic ones.
  TensorSpace concat(const TensorSpace& other) const;

  /// Digit of `index` along `factor`.
  std::size_t digit(std::size_t index, std::size_t factor) const {
    return (index / strides_[factor]) % dims_[factor];
  }

  /// Throws InvalidArgument unless every position is in range and unique.
  void validate_subset(const FactorSet& factors) const;
  /// Complement of `factors`, ascending.
  FactorSet complement(const FactorSet& factors) const;

  friend bool operator==(const TensorSpace& a, const TensorSpace& b) {
    return a.dims_ == b.dims_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

/// Square complex matrix that is Hermitian up to
/// |M_ij - conj(M_ji)| <= 1e-12 (1 + max |M_kl|), with finite entries, and
/// that carries the tensor structure of the space it acts on.
class DenseHermitian {
 public:
  DenseHermitian() = default;
  explicit DenseHermitian(Matrix m);
  DenseHermitian(Matrix m, TensorSpace space);

  /// Accepts a numerically computed matrix whose anti-Hermitian part is at
  /// most 1e-9 relative and stores (M + M^dagger) / 2.
  static DenseHermitian symmetrized(const Matrix& m, TensorSpace space);

  static DenseHermitian identity(const TensorSpace& space);
  static DenseHermitian zero(const TensorSpace& space);

  const Matrix& matrix() const { return m_; }
  const TensorSpace& space() const { return space_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

  double trace() const { return m_.trace().real(); }
  double max_abs() const;

  /// Same entries viewed on another space of identical total dimension.
  DenseHermitian with_space(TensorSpace space) const;
  /// Divides by the trace; throws InvalidArgument if the trace is not
  /// positive.
  DenseHermitian normalized() const;

  DenseHermitian operator+(const DenseHermitian& o) const;
  DenseHermitian operator-(const DenseHermitian& o) const;
  DenseHermitian operator*(double s) const;

 private:
  Matrix m_;
  TensorSpace space_;
};

/// Complex vector with tensor structure. Unit norm within 1e-12 unless
/// constructed as unnormalized.
class StateVector {
 public:
  StateVector() = default;
  StateVector(Vector amplitudes, TensorSpace space, bool normalized = true);

  const Vector& amplitudes() const { return v_; }
  const TensorSpace& space() const { return space_; }
  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  bool is_normalized() const { return normalized_; }

  /// Rank-one operator |v><v|.
  DenseHermitian projector() const;

 private:
  Vector v_;
  TensorSpace space_;
  bool normalized_ = true;
};

/// Ascending eigenvalues with an orthonormal eigenvector matrix whose
/// column i belongs to eigenvalue i.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
  TensorSpace space;

  std::size_t size() const {
    return static_cast<std::size_t>(eigenvalues.size());
  }
  StateVector vector(std::size_t i) const;
};

struct PsdResult {
  bool verdict = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  /// The tolerance actually applied: rel_tol * max(1, max_eigenvalue).
  double tolerance = 0.0;
};

inline constexpr double kDefaultPsdRelTol = 1e-9;
inline constexpr double kDefaultSvTol = 1e-10;

/// Kronecker product in list order; the result space concatenates the
/// part spaces.
DenseHermitian kron(std::span<const DenseHermitian> parts);
DenseHermitian kron(const DenseHermitian& a, const DenseHermitian& b);
Vector kron(const Vector& a, const Vector& b);

/// Factor j of the result is factor perm[j] of the input.
DenseHermitian permute_factors(const DenseHermitian& m,
                               std::span<const std::size_t> perm);
Vector permute_factors(const Vector& v, const TensorSpace& space,
                       std::span<const std::size_t> perm);

/// Transposes the listed factors only.
DenseHermitian partial_transpose(const DenseHermitian& m,
                                 const FactorSet& factors);

/// Traces out the listed factors. Tracing every factor gives a 1x1 matrix
/// holding tr(M).
DenseHermitian partial_trace(const DenseHermitian& m, const FactorSet& traced);

/// Throws InvalidArgument when the input is not Hermitian within tolerance.
Spectrum eig_hermitian(const DenseHermitian& m);
RealVector eigenvalues_hermitian(const DenseHermitian& m);

PsdResult psd_check(const DenseHermitian& m,
                    double rel_tol = kDefaultPsdRelTol);

/// Singular values of v reshaped into (dim side_a) x (dim complement).
RealVector schmidt_coefficients(const StateVector& v, const FactorSet& side_a);

/// Number of singular values above sv_tol times the largest one.
int schmidt_rank(const StateVector& v, const FactorSet& side_a,
                 double sv_tol = kDefaultSvTol);

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Smallest and largest eigenvalue estimates of a Hermitian matrix.
struct ExtremeEigenvalues {
  double min = 0.0;
  double max = 0.0;
  int iterations = 0;
};

/// Lanczos iteration with full reorthogonalization; meant for large
/// matrices where only the spectral edges are needed.
ExtremeEigenvalues lanczos_extremes(const Matrix& h, int max_iter = 300,
                                    double rel_tol = 1e-10);

}  // namespace snforge

#endif  // SNFORGE_TENSOR_HPP
