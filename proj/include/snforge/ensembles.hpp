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

#ifndef SNFORGE_ENSEMBLES_HPP
#define SNFORGE_ENSEMBLES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "snforge/report.hpp"
#include "snforge/tensor.hpp"

namespace snforge {

/// G~ has independent entries x + iy with x, y ~ N(0, 1/2);
/// G' = (G~ + G~^dagger) / sqrt 2 and, when traceless, G = G' - tr(G') 1 / n.
struct GueSample {
  std::size_t n = 0;
  DenseHermitian matrix;
  bool traceless = true;
  std::uint64_t seed = 0;
};

GueSample sample_gue(std::size_t n, bool traceless, std::uint64_t seed);

struct RandomState {
  DenseHermitian rho;  // on (A:d, B:d)
  GueSample g;         // n = d^2, traceless, same space as rho
};

/// rho = (1 + alpha G / d) / d^2 with G traceless GUE on d^2 levels.
/// Requires 0 < alpha < 1/2. rho is not guaranteed PSD.
RandomState random_state(std::size_t d, double alpha, std::uint64_t seed);

/// tr(rho (1 - 2 G / (alpha d))).
double witness_value(const DenseHermitian& rho, const GueSample& g, double alpha,
                     std::size_t d);

struct EnsembleReport {
  std::size_t d = 0;
  double alpha = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t ppt_count = 0;
  std::vector<double> witness_values;
  std::vector<double> min_eig;     // lambda_min(rho) per trial
  std::vector<double> min_eig_pt;  // lambda_min(rho^Gamma) per trial
  std::vector<bool> ppt;

  double frequency() const;
  /// Text report plus a per-trial CSV table.
  CertificateReport to_report(const std::string& operation) const;
};

/// Trial t uses random_state(d, alpha, derive_seed(seed, t)). A trial counts
/// when rho and rho^Gamma both pass psd_check.
EnsembleReport ppt_frequency(std::size_t d, double alpha, std::size_t trials,
                             std::uint64_t seed, unsigned threads = 1);

inline constexpr std::size_t kDefaultRestarts = 16;
inline constexpr std::size_t kDefaultAscentIters = 200;

/// Heuristic lower estimate of sup <psi|G|psi> over unit vectors of Schmidt
/// rank <= k on the two factors of G's space.
///
/// Each restart runs the truncated power iteration
///   psi <- top-k Schmidt truncation of (G + s 1) psi,  s = |lambda_min| + 1,
/// until successive values differ by < 1e-9, then alternately re-optimizes
/// psi exactly inside C^dA (x) W_B and W_A (x) C^dB, with W the span of the
/// current top-k Schmidt vectors. For k = min(dA, dB) this is the exact top
/// eigenvalue.
double sup_sn_k_ascent(const DenseHermitian& g, std::size_t k,
                       std::size_t restarts = kDefaultRestarts,
                       std::size_t iters = kDefaultAscentIters,
                       std::uint64_t seed = 0);

/// Estimates for k = 1 .. min(dA, dB). Level k reuses the restarts of
/// sup_sn_k_ascent(g, k, ...) and also starts from the best vector of level
/// k - 1, so the profile is nondecreasing.
std::vector<double> sup_sn_k_profile(const DenseHermitian& g,
                                     std::size_t restarts = kDefaultRestarts,
                                     std::size_t iters = kDefaultAscentIters,
                                     std::uint64_t seed = 0);

struct MeanWidth {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::vector<double> values;  // sup / n per sample
};

/// Average over traceless GUE samples on d^2 levels of sup_sn_k_ascent / d^2.
/// A heuristic lower estimate.
MeanWidth mean_width_estimate(std::size_t k, std::size_t d, std::size_t samples,
                              std::size_t restarts, std::uint64_t seed,
                              unsigned threads = 1);

CertificateReport mean_width_report(const MeanWidth& w, std::size_t k, std::size_t d,
                                    std::uint64_t seed);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(std::vector<double> a, std::vector<double> b);

struct GueStats {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> trace_ratio;         // tr(G^2) / (n^2 - 1)
  std::vector<double> min_eig_scaled;      // lambda_min / sqrt n
  std::optional<double> ks_partial_transpose;  // KS(spec G, spec G^Gamma)
};

/// Traceless samples on n levels. lambda_min is computed by Lanczos above
/// 512 levels. The KS comparison of G against G^Gamma on (sqrt n, sqrt n)
/// runs when n is a perfect square no larger than 1024.
GueStats gue_stats(std::size_t n, std::size_t samples, std::uint64_t seed,
                   unsigned threads = 1);

CertificateReport gue_stats_report(const GueStats& s);

}  // namespace snforge

#endif  // SNFORGE_ENSEMBLES_HPP
