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

#include <algorithm>
#include <cmath>
#include <random>

#include "snforge/tensor.hpp"

namespace snforge {

ExtremeEigenvalues lanczos_extremes(const Matrix& h, int max_iter,
                                    double rel_tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw InvalidArgument("lanczos needs a nonempty square matrix");
  }
  const Eigen::Index n = h.rows();
  const int steps = static_cast<int>(std::min<Eigen::Index>(max_iter, n));

  // Fixed start vector so the estimate is a pure function of h.
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector q(n);
  for (Eigen::Index i = 0; i < n; ++i) q(i) = Complex(normal(rng), normal(rng));
  q.normalize();

  Matrix basis(n, steps);
  std::vector<double> alpha, beta;
  ExtremeEigenvalues out;
  double prev_min = 0.0, prev_max = 0.0;

  for (int k = 0; k < steps; ++k) {
    basis.col(k) = q;
    Vector w = h.selfadjointView<Eigen::Lower>() * q;
    alpha.push_back(q.dot(w).real());
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      Vector coeff = basis.leftCols(k + 1).adjoint() * w;
      w -= basis.leftCols(k + 1) * coeff;
    }
    double b = w.norm();

    RealVector diag = Eigen::Map<RealVector>(alpha.data(), k + 1);
    RealVector sub(k);
    for (int i = 0; i < k; ++i) sub(i) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    out.min = tri.eigenvalues()(0);
    out.max = tri.eigenvalues()(k);
    out.iterations = k + 1;

    double scale = std::max({std::abs(out.min), std::abs(out.max), 1e-300});
    bool converged = k >= 8 && std::abs(out.min - prev_min) <= rel_tol * scale &&
                     std::abs(out.max - prev_max) <= rel_tol * scale;
    prev_min = out.min;
    prev_max = out.max;
    if (converged || b <= 1e-14 * scale) break;
    beta.push_back(b);
    q = w / b;
  }
  return out;
}

}  // namespace snforge
