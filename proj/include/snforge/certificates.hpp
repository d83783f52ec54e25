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

#ifndef SNFORGE_CERTIFICATES_HPP
#define SNFORGE_CERTIFICATES_HPP

#include <cstddef>

#include "snforge/constructions.hpp"
#include "snforge/linear_map.hpp"
#include "snforge/report.hpp"
#include "snforge/tensor.hpp"

namespace snforge {

/// A map output counts as non-positive when its smallest eigenvalue is below
/// -kDetectorRelTol * max(1, max |entry|).
inline constexpr double kDetectorRelTol = 1e-9;
/// |<Omega|X|Omega>| must be at most this, <Omega|Y|Omega> at least this.
inline constexpr double kHypothesisTol = 1e-10;
inline constexpr double kDefaultEigTol = 1e-9;

/// Positivity and PPT of the Z form decided from X and Y alone.
///
/// Claims: x_psd, y_psd, ppt_minus ((d2-1) X^G + Y^G >= 0),
/// ppt_plus ((d2+1) X^G - Y^G >= 0), and the derived positive / ppt.
/// When d2 == 1 the (1 - Omega) and antisymmetric parts vanish, so only
/// y_psd and ppt_minus enter the derived verdicts.
CertificateReport lemma1_verdict(const DenseHermitian& x, const DenseHermitian& y,
                                 std::size_t d2,
                                 double rel_tol = kDefaultPsdRelTol);

struct DetectorResult {
  double min_eigenvalue = 0.0;
  double threshold = 0.0;  // violation iff min_eigenvalue < -threshold
  bool violated = false;
};

/// Smallest eigenvalue of (id (x) id (x) L (x) id)(Z), L acting on A2.
DetectorResult detector_violation(const ZFamilyState& z, const LinearMapRep& map);
/// Same with L acting on an arbitrary factor of m.
DetectorResult detector_violation(const DenseHermitian& m, std::size_t factor,
                                  const LinearMapRep& map);

struct SnBound {
  int bound = 1;
  CertificateReport evidence;
};

/// Lower bound ceil(d2 / d1) on the Schmidt number across A1 A2 : B1 B2,
/// issued only when the Omega hypothesis, both PSD/PPT conditions and a
/// strict detector violation by the Choi map on A2 all check out.
/// Otherwise returns 1 with the failing claim in the evidence.
SnBound sn_lower_certificate(const ZFamilyState& z,
                             double rel_tol = kDefaultPsdRelTol);

/// Schmidt-number upper bound from one explicit decomposition: the largest
/// Schmidt rank among eigenvectors with eigenvalue above eig_tol * lambda_max.
///
/// Degenerate eigenspaces are resolved by diagonalizing, inside each
/// eigenspace, the diagonal operators diag(i_f) and diag(i_f^2) of every
/// factor f in turn. Any orthonormal basis of an eigenspace gives a valid
/// decomposition, so this only sharpens the bound. Throws InvalidArgument
/// when rho is not PSD.
SnBound sn_upper_via_eigenbasis(const DenseHermitian& rho, const FactorSet& side_a,
                                double eig_tol = kDefaultEigTol,
                                double sv_tol = kDefaultSvTol,
                                double psd_rel_tol = kDefaultPsdRelTol);

struct SnDifference {
  int lower_on_z = 1;
  int upper_on_z_gamma = 0;
  int difference_lower_bound = 0;  // lower_on_z - upper_on_z_gamma
  int clamped = 0;                 // max(0, difference_lower_bound)
  CertificateReport report;
};

SnDifference sn_difference_report(std::size_t d1, std::size_t d2,
                                  double sv_tol = kDefaultSvTol);

/// Certifies that id_k (x) L is not decomposable. For k < d_in a concrete Z
/// with d1 = k, d2 = d_in serves as the PPT witness; for k >= d_in the map
/// id_k (x) L is not even positive. Refuses when C_L is PSD.
CertificateReport nondecomposability_witness(const LinearMapRep& map, std::size_t k);

/// Lower bound for a ScaledState: checks that rho is the regrouped and
/// padded family state, that rho is PPT, and certifies the family.
SnBound scaled_state_certificate(const ScaledState& state);

/// PT invariance, positivity and PPT of the family, exactness of the
/// <+i| compression back to the base, and the base certificate.
SnBound pt_invariant_family_certificate(const PtInvariantFamily& family);

}  // namespace snforge

#endif  // SNFORGE_CERTIFICATES_HPP
