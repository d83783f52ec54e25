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

#ifndef SNFORGE_SUBBLOCKS_HPP
#define SNFORGE_SUBBLOCKS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "snforge/report.hpp"
#include "snforge/tensor.hpp"

namespace snforge {

/// rho = sum_ij |i><j| (x) X_ij with X_ij of size d2 x d2.
struct BlockDecomposition {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::vector<Matrix> blocks;  // row-major, blocks[i * d1 + j] = X_ij

  const Matrix& block(std::size_t i, std::size_t j) const {
    return blocks[i * d1 + j];
  }
  Matrix reassemble() const;
};

/// Throws InvalidArgument unless rho.dim() == d1 * d2.
BlockDecomposition block_decompose(const DenseHermitian& rho, std::size_t d1,
                                   std::size_t d2);

/// sum_st |s><t| (x) X_{m_s m_t} on (r, d2). Indices are 0-based, distinct
/// and in range; their order is kept.
DenseHermitian extract_principal_subblock(const BlockDecomposition& dec,
                                          const std::vector<std::size_t>& indices);

struct PtInvarianceResult {
  bool invariant = false;
  double residual = 0.0;  // max_ij max |X_ij - X_ji|
};

/// Invariance under transposition of the first factor, i.e. X_ij = X_ji.
PtInvarianceResult pt_invariance_check(const BlockDecomposition& dec,
                                       double tol = 1e-12);

struct PtInvariantBound {
  int bound = 0;
  CertificateReport subblock_report;
};

/// SN <= d1 - 1 for states invariant under transposing the first factor.
/// Every pair {k1, k2} of first-factor levels is checked PSD, PT-invariant
/// and PPT; the separability of such 2 x d2 blocks is taken from the
/// literature and recorded as a citation claim. Any failure leaves bound d1.
PtInvariantBound ptinv_sn_bound(const DenseHermitian& rho, std::size_t d1,
                                std::size_t d2, double tol = 1e-12,
                                double psd_rel_tol = kDefaultPsdRelTol);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of diag(R) moved into Q.
Matrix haar_unitary(std::size_t n, std::uint64_t seed);

inline constexpr std::size_t kDefaultApptTrials = 64;
inline constexpr double kApptViolationTol = 1e-9;

enum class ApptStatus { kFalsified, kUndetermined };

struct ApptVerdict {
  ApptStatus status = ApptStatus::kUndetermined;
  std::optional<Matrix> witness;  // U with (U rho U^dagger)^Gamma not PSD
  std::optional<double> violating_min_eig;
  std::size_t trials_run = 0;  // includes the identity pre-check
  std::uint64_t seed = 0;
  std::optional<std::size_t> trial_index;  // 0 is the identity pre-check
};

/// Randomized search for a unitary that makes rho NPT. Trial 0 checks rho
/// itself; trial t >= 1 uses haar_unitary(d1 d2, derive_seed(seed, t)).
/// The smallest falsifying trial index is reported for any thread count.
/// rho must be a state (PSD, trace one within 1e-9).
ApptVerdict appt_falsifier(const DenseHermitian& rho, std::size_t d1,
                           std::size_t d2,
                           std::size_t trials = kDefaultApptTrials,
                           std::uint64_t seed = 0, unsigned threads = 1);

/// lambda_min of (U rho U^dagger)^Gamma_B on (d1, d2).
double replay_witness(const DenseHermitian& rho, std::size_t d1, std::size_t d2,
                      const Matrix& u);

CertificateReport appt_report(const ApptVerdict& v);

/// For each pair {k1, k2}: lifts 2 d2-dimensional Haar unitaries into the full
/// space as sum_st |k_s><k_t| (x) V_st + sum_{i not in pair} |i><i| (x) 1 and
/// checks PPT of the conjugated {k1, k2} sub-block. Randomized and heuristic.
CertificateReport subblock_appt_scan(const DenseHermitian& rho, std::size_t d1,
                                     std::size_t d2,
                                     std::size_t trials_per_block = kDefaultApptTrials,
                                     std::uint64_t seed = 0, unsigned threads = 1);

}  // namespace snforge

#endif  // SNFORGE_SUBBLOCKS_HPP
