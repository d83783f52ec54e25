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

#include "snforge/certificates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace snforge {

namespace {

using Idx = Eigen::Index;

void add_psd_claim(CertificateReport& r, const std::string& name,
                   const PsdResult& p) {
  r.add_claim(name, p.verdict, p.min_eigenvalue, p.tolerance);
}

double omega_expectation(const DenseHermitian& m) {
  const std::size_t d = m.space().dim(0);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      acc += m.matrix()(static_cast<Idx>(i * d + i), static_cast<Idx>(j * d + j));
    }
  }
  return acc.real() / static_cast<double>(d);
}

}  // namespace

CertificateReport lemma1_verdict(const DenseHermitian& x, const DenseHermitian& y,
                                 std::size_t d2, double rel_tol) {
  if (d2 < 1) throw InvalidArgument("d2 must be >= 1");
  if (x.dim() != y.dim()) throw InvalidArgument("X and Y must have equal dimension");
  // Reuse build_z's interpretation of the d1 (x) d1 structure.
  const auto zf = build_z(x, y, 1);
  const DenseHermitian& xs = zf.x;
  const DenseHermitian& ys = zf.y;
  const FactorSet b1{1};
  DenseHermitian xg = partial_transpose(xs, b1);
  DenseHermitian yg = partial_transpose(ys, b1);
  const double dd = static_cast<double>(d2);

  CertificateReport r("lemma1");
  PsdResult px = psd_check(xs, rel_tol);
  PsdResult py = psd_check(ys, rel_tol);
  PsdResult pminus = psd_check(xg * (dd - 1.0) + yg, rel_tol);
  PsdResult pplus = psd_check(xg * (dd + 1.0) - yg, rel_tol);

  bool positive = py.verdict && (d2 == 1 || px.verdict);
  bool ppt = pminus.verdict && (d2 == 1 || pplus.verdict);

  if (d2 == 1) {
    r.add_info("x_psd", px.verdict, px.min_eigenvalue, px.tolerance);
    add_psd_claim(r, "y_psd", py);
    add_psd_claim(r, "ppt_minus", pminus);
    r.add_info("ppt_plus", pplus.verdict, pplus.min_eigenvalue, pplus.tolerance);
    r.add_note("d2 = 1: the (1 - Omega) part and the antisymmetric part vanish");
  } else {
    add_psd_claim(r, "x_psd", px);
    add_psd_claim(r, "y_psd", py);
    add_psd_claim(r, "ppt_minus", pminus);
    add_psd_claim(r, "ppt_plus", pplus);
  }
  double pos_evidence = d2 == 1 ? py.min_eigenvalue
                                : std::min(px.min_eigenvalue, py.min_eigenvalue);
  double ppt_evidence = d2 == 1 ? pminus.min_eigenvalue
                                : std::min(pminus.min_eigenvalue, pplus.min_eigenvalue);
  r.add_claim("positive", positive, pos_evidence, std::max(px.tolerance, py.tolerance));
  r.add_claim("ppt", ppt, ppt_evidence, std::max(pminus.tolerance, pplus.tolerance));
  r.add_value("d1", static_cast<std::int64_t>(zf.d1));
  r.add_value("d2", static_cast<std::int64_t>(d2));
  return r;
}

DetectorResult detector_violation(const DenseHermitian& m, std::size_t factor,
                                  const LinearMapRep& map) {
  DenseHermitian out = apply_map_to_factor(map, m, factor);
  RealVector ev = eigenvalues_hermitian(out);
  DetectorResult r;
  r.min_eigenvalue = ev(0);
  r.threshold = kDetectorRelTol * std::max(1.0, out.max_abs());
  r.violated = r.min_eigenvalue < -r.threshold;
  return r;
}

DetectorResult detector_violation(const ZFamilyState& z, const LinearMapRep& map) {
  if (map.d_in() != z.d2) throw InvalidArgument("map input dimension must equal d2");
  return detector_violation(z.z, ZFamilyState::kA2, map);
}

SnBound sn_lower_certificate(const ZFamilyState& z, double rel_tol) {
  SnBound out;
  out.evidence = CertificateReport("sn_lower");
  auto& r = out.evidence;
  r.add_value("d1", static_cast<std::int64_t>(z.d1));
  r.add_value("d2", static_cast<std::int64_t>(z.d2));

  const double ax = omega_expectation(z.x);
  const double ay = omega_expectation(z.y);
  const bool hyp_x = std::abs(ax) <= kHypothesisTol;
  const bool hyp_y = ay >= kHypothesisTol;
  r.add_claim("hypothesis_x_omega_zero", hyp_x, ax, kHypothesisTol);
  r.add_claim("hypothesis_y_omega_positive", hyp_y, ay, kHypothesisTol);

  CertificateReport l1 = lemma1_verdict(z.x, z.y, z.d2, rel_tol);
  r.merge(l1, "lemma1.");
  bool ok = hyp_x && hyp_y && l1.passed();

  if (z.d2 < 2) {
    r.add_claim("detector_available", false, static_cast<double>(z.d2), 2.0);
    r.add_note("the Choi map needs d2 >= 2");
    ok = false;
  } else {
    auto p = LinearMapRep::choi_map(z.d2);
    DetectorResult det = detector_violation(z, p);
    r.add_claim("detector_violation", det.violated, det.min_eigenvalue, det.threshold);
    ok = ok && det.violated;
  }

  const std::size_t degree = (z.d2 - 1) / z.d1;
  r.add_value("k_positivity_degree", static_cast<std::int64_t>(degree));
  if (ok) {
    out.bound = static_cast<int>(ceil_div(z.d2, z.d1));
    r.add_note("id_d1 (x) P is " + std::to_string(degree) +
               "-positive (recorded fact about the Choi map), so SN >= " +
               std::to_string(out.bound));
  } else {
    out.bound = 1;
    r.add_note("hypothesis-not-verified: bound stays at 1");
  }
  r.add_value("bound", static_cast<std::int64_t>(out.bound));
  return out;
}

namespace {

// Groups of consecutive (sorted) values whose neighbours differ by <= tol.
std::vector<std::pair<Idx, Idx>> clusters(const RealVector& v, Idx begin, Idx end,
                                          double tol) {
  std::vector<std::pair<Idx, Idx>> out;
  Idx start = begin;
  for (Idx i = begin + 1; i <= end; ++i) {
    if (i == end || v(i) - v(i - 1) > tol) {
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

// Splits the span of `basis` (orthonormal columns inside one eigenspace) into
// joint eigenvectors of the diagonal refinement operators.
std::vector<Vector> refine_eigenspace(const Matrix& basis,
                                      const std::vector<RealVector>& diagonals) {
  std::vector<Matrix> groups{basis};
  for (const auto& diag : diagonals) {
    std::vector<Matrix> next;
    for (const auto& g : groups) {
      if (g.cols() == 1) {
        next.push_back(g);
        continue;
      }
      Matrix h = g.adjoint() * diag.asDiagonal() * g;
      h = (h + h.adjoint()).eval() * 0.5;
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      Matrix rotated = g * es.eigenvectors();
      const RealVector& w = es.eigenvalues();
      double tol = 1e-8 * (1.0 + w.cwiseAbs().maxCoeff());
      for (auto [a, b] : clusters(w, 0, w.size(), tol)) {
        next.push_back(rotated.middleCols(a, b - a));
      }
    }
    groups = std::move(next);
  }
  std::vector<Vector> out;
  for (const auto& g : groups) {
    for (Idx c = 0; c < g.cols(); ++c) out.push_back(g.col(c));
  }
  return out;
}

}  // namespace

SnBound sn_upper_via_eigenbasis(const DenseHermitian& rho, const FactorSet& side_a,
                                double eig_tol, double sv_tol, double psd_rel_tol) {
  if (!(eig_tol > 0.0) || !(sv_tol > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  const auto& space = rho.space();
  space.validate_subset(side_a);
  if (side_a.empty() || side_a.size() == space.num_factors()) {
    throw InvalidArgument("side_A must be a nonempty proper subset of factors");
  }
  Spectrum sp = eig_hermitian(rho);
  const double lmin = sp.eigenvalues(0);
  const double lmax = sp.eigenvalues(sp.eigenvalues.size() - 1);
  const double psd_tol = psd_rel_tol * std::max(1.0, lmax);
  if (lmin < -psd_tol) {
    throw InvalidArgument("sn_upper_via_eigenbasis needs a PSD operator (lambda_min = " +
                          format_number(lmin) + ")");
  }

  SnBound out;
  out.evidence = CertificateReport("sn_upper_eigenbasis");
  auto& r = out.evidence;
  r.add_claim("psd", true, lmin, psd_tol);

  const Idx n = sp.eigenvalues.size();
  const double cutoff = eig_tol * lmax;
  Idx first = 0;
  while (first < n && sp.eigenvalues(first) <= cutoff) ++first;

  std::vector<RealVector> diagonals;
  for (std::size_t f = 0; f < space.num_factors(); ++f) {
    RealVector lin(n), sq(n);
    for (Idx i = 0; i < n; ++i) {
      double dg = static_cast<double>(space.digit(static_cast<std::size_t>(i), f));
      lin(i) = dg;
      sq(i) = dg * dg;
    }
    diagonals.push_back(std::move(lin));
    diagonals.push_back(std::move(sq));
  }

  std::map<int, int> histogram;
  int best = 0;
  std::size_t degenerate = 0;
  for (auto [a, b] : clusters(sp.eigenvalues, first, n, 1e-10 * std::max(lmax, 1e-300))) {
    std::vector<Vector> vecs;
    if (b - a == 1) {
      vecs.push_back(sp.eigenvectors.col(a));
    } else {
      ++degenerate;
      vecs = refine_eigenspace(sp.eigenvectors.middleCols(a, b - a), diagonals);
    }
    for (auto& v : vecs) {
      int rank = schmidt_rank(StateVector(v, space, false), side_a, sv_tol);
      ++histogram[rank];
      best = std::max(best, rank);
    }
  }
  out.bound = std::max(best, 1);
  r.add_value("bound", static_cast<std::int64_t>(out.bound));
  r.add_value("eigenvectors_used", static_cast<std::int64_t>(n - first));
  r.add_value("degenerate_eigenspaces", static_cast<std::int64_t>(degenerate));
  r.add_value("eig_tol", eig_tol);
  r.add_value("sv_tol", sv_tol);
  std::string hist;
  for (auto [rank, count] : histogram) {
    if (!hist.empty()) hist += ",";
    hist += std::to_string(rank) + ":" + std::to_string(count);
  }
  r.add_value("rank_histogram", hist.empty() ? std::string("none") : hist);
  return out;
}

SnDifference sn_difference_report(std::size_t d1, std::size_t d2, double sv_tol) {
  if (d1 < 1 || d1 > d2) throw InvalidArgument("need 1 <= d1 <= d2");
  ZFamilyState z = concrete_z(d1, d2);
  SnDifference out;
  out.report = CertificateReport("sn_diff");
  auto& r = out.report;
  r.add_value("d1", static_cast<std::int64_t>(d1));
  r.add_value("d2", static_cast<std::int64_t>(d2));

  SnBound lower = sn_lower_certificate(z);
  r.merge(lower.evidence, "lower.");
  out.lower_on_z = lower.bound;

  DenseHermitian zg = partial_transpose(z.z, ZFamilyState::side_b());
  SnBound upper = sn_upper_via_eigenbasis(zg, ZFamilyState::side_a(), kDefaultEigTol, sv_tol);
  r.merge(upper.evidence, "upper.");
  out.upper_on_z_gamma = upper.bound;

  out.difference_lower_bound = out.lower_on_z - out.upper_on_z_gamma;
  out.clamped = std::max(0, out.difference_lower_bound);
  r.add_value("lower_on_z", static_cast<std::int64_t>(out.lower_on_z));
  r.add_value("upper_on_z_gamma", static_cast<std::int64_t>(out.upper_on_z_gamma));
  r.add_value("difference_lower_bound", static_cast<std::int64_t>(out.difference_lower_bound));
  r.add_value("difference_clamped", static_cast<std::int64_t>(out.clamped));
  if (out.difference_lower_bound < 0) {
    r.add_note("raw difference bound is negative; reported clamped to 0");
  }
  return out;
}

CertificateReport nondecomposability_witness(const LinearMapRep& map, std::size_t k) {
  if (k < 2) throw InvalidArgument("k must be >= 2");
  CertificateReport r("nondecomp");
  r.add_value("map", map.name());
  r.add_value("k", static_cast<std::int64_t>(k));
  r.add_value("d_in", static_cast<std::int64_t>(map.d_in()));

  PsdResult c = psd_check(map.choi());
  r.add_claim("map_not_cp", !c.verdict, c.min_eigenvalue, c.tolerance);
  if (c.verdict) {
    r.add_note("L-is-CP: the Choi matrix is PSD, nothing to certify");
    return r;
  }
  if (k >= map.d_in()) {
    // (id_k (x) L) applied to the unnormalized maximally entangled operator on
    // d_in levels of the k side is d_in * C_L up to factor order.
    r.add_claim("id_k_tensor_L_not_positive", true, c.min_eigenvalue, c.tolerance);
    r.add_claim("non_decomposable", true, c.min_eigenvalue, c.tolerance);
    r.add_note("k >= d_in: id_k (x) L is not positive, hence not decomposable");
    return r;
  }
  ZFamilyState z = concrete_z(k, map.d_in());
  CertificateReport l1 = lemma1_verdict(z.x, z.y, z.d2);
  r.merge(l1, "witness.");
  DetectorResult det = detector_violation(z, map);
  r.add_claim("detector_violation", det.violated, det.min_eigenvalue, det.threshold);
  r.add_claim("non_decomposable", l1.passed() && det.violated, det.min_eigenvalue,
              det.threshold);
  return r;
}

SnBound scaled_state_certificate(const ScaledState& state) {
  SnBound out;
  out.evidence = CertificateReport("scaled_state");
  auto& r = out.evidence;
  r.add_value("d", static_cast<std::int64_t>(state.d));
  r.add_value("claimed_sn_lower", static_cast<std::int64_t>(state.claimed_sn_lower));

  const DenseHermitian& rho = state.rho;
  r.add_claim("trace_one", std::abs(rho.trace() - 1.0) <= 1e-12, rho.trace() - 1.0, 1e-12);
  PsdResult pos = psd_check(rho);
  PsdResult ppt = psd_check(partial_transpose(rho, FactorSet{1}));
  add_psd_claim(r, "positive", pos);
  add_psd_claim(r, "ppt", ppt);
  bool ok = r.passed();

  if (!state.family) {
    out.bound = 1;
    r.add_note("d < 4: maximally mixed state, bound 1 is trivial");
    r.add_value("bound", static_cast<std::int64_t>(out.bound));
    return out;
  }
  const ZFamilyState& fam = *state.family;
  const std::array<std::size_t, 4> regroup{0, 2, 1, 3};
  const std::array<std::size_t, 2> groups{2, 2};
  DenseHermitian expect = permute_factors(fam.z, regroup);
  expect = expect.with_space(expect.space().coarse_grained(groups, {"A", "B"}));
  if (state.padded) {
    const std::array<std::size_t, 2> dims{state.d, state.d};
    expect = embed_zero(expect, dims);
  }
  double residual = max_abs_diff(expect.matrix(), rho.matrix());
  r.add_claim("embedding_consistent", residual <= 1e-12, residual, 1e-12);
  ok = ok && residual <= 1e-12;

  SnBound fam_bound = sn_lower_certificate(fam);
  r.merge(fam_bound.evidence, "family.");
  ok = ok && fam_bound.evidence.passed();
  out.bound = ok ? fam_bound.bound : 1;
  r.add_value("bound", static_cast<std::int64_t>(out.bound));
  return out;
}

SnBound pt_invariant_family_certificate(const PtInvariantFamily& family) {
  SnBound out;
  out.evidence = CertificateReport("ptinv_family");
  auto& r = out.evidence;
  r.add_value("d", static_cast<std::int64_t>(family.d));
  r.add_value("d_prime", static_cast<std::int64_t>(family.d_prime));
  r.add_value("claimed_sn_lower", static_cast<std::int64_t>(family.claimed_sn_lower));

  const DenseHermitian& rho = family.rho;
  DenseHermitian rho_g = partial_transpose(rho, FactorSet{1});
  double inv = max_abs_diff(rho_g.matrix(), rho.matrix());
  r.add_claim("pt_invariant", inv <= 1e-12, inv, 1e-12);
  r.add_claim("trace_one", std::abs(rho.trace() - 1.0) <= 1e-12, rho.trace() - 1.0, 1e-12);
  add_psd_claim(r, "positive", psd_check(rho));
  add_psd_claim(r, "ppt", psd_check(rho_g));

  const auto& lift = family.lift;
  double lift_inv = max_abs_diff(partial_transpose(lift.lifted, lift.pt_side).matrix(),
                                 lift.lifted.matrix());
  r.add_claim("lift_pt_invariant", lift_inv <= 1e-12, lift_inv, 1e-12);
  DenseHermitian back = compress_last_factor(lift.lifted, plus_i_ket());
  double comp = max_abs_diff(back.matrix(), lift.base.matrix());
  r.add_claim("compression_recovers_base", comp <= 1e-12, comp, 1e-12);

  SnBound base = scaled_state_certificate(family.base);
  r.merge(base.evidence, "base.");
  out.bound = r.passed() ? base.bound : 1;
  r.add_value("bound", static_cast<std::int64_t>(out.bound));
  return out;
}

}  // namespace snforge
