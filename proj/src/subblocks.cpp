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

#include "snforge/subblocks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "snforge/seeding.hpp"

namespace snforge {

namespace {

using Idx = Eigen::Index;

Idx as_idx(std::size_t v) { return static_cast<Idx>(v); }

double min_eig_pt_second(const Matrix& m, std::size_t d1, std::size_t d2) {
  TensorSpace space({d1, d2});
  DenseHermitian h = DenseHermitian::symmetrized(m, space);
  return eigenvalues_hermitian(partial_transpose(h, FactorSet{1}))(0);
}

}  // namespace

Matrix BlockDecomposition::reassemble() const {
  Matrix out(as_idx(d1 * d2), as_idx(d1 * d2));
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d1; ++j) {
      out.block(as_idx(i * d2), as_idx(j * d2), as_idx(d2), as_idx(d2)) = block(i, j);
    }
  }
  return out;
}

BlockDecomposition block_decompose(const DenseHermitian& rho, std::size_t d1,
                                   std::size_t d2) {
  if (d1 == 0 || d2 == 0 || rho.dim() != d1 * d2) {
    throw InvalidArgument("block_decompose: dimension " + std::to_string(rho.dim()) +
                          " is not d1 * d2 = " + std::to_string(d1 * d2));
  }
  BlockDecomposition dec;
  dec.d1 = d1;
  dec.d2 = d2;
  dec.blocks.reserve(d1 * d1);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d1; ++j) {
      dec.blocks.push_back(
          rho.matrix().block(as_idx(i * d2), as_idx(j * d2), as_idx(d2), as_idx(d2)));
    }
  }
  return dec;
}

DenseHermitian extract_principal_subblock(const BlockDecomposition& dec,
                                          const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw InvalidArgument("principal sub-block needs indices");
  std::vector<bool> seen(dec.d1, false);
  for (std::size_t m : indices) {
    if (m >= dec.d1) {
      throw InvalidArgument("sub-block index " + std::to_string(m) + " out of range");
    }
    if (seen[m]) throw InvalidArgument("repeated sub-block index " + std::to_string(m));
    seen[m] = true;
  }
  const std::size_t r = indices.size();
  const std::size_t d2 = dec.d2;
  Matrix out(as_idx(r * d2), as_idx(r * d2));
  for (std::size_t s = 0; s < r; ++s) {
    for (std::size_t t = 0; t < r; ++t) {
      out.block(as_idx(s * d2), as_idx(t * d2), as_idx(d2), as_idx(d2)) =
          dec.block(indices[s], indices[t]);
    }
  }
  return DenseHermitian(std::move(out), TensorSpace({r, d2}));
}

PtInvarianceResult pt_invariance_check(const BlockDecomposition& dec, double tol) {
  PtInvarianceResult r;
  for (std::size_t i = 0; i < dec.d1; ++i) {
    for (std::size_t j = i + 1; j < dec.d1; ++j) {
      r.residual = std::max(r.residual, max_abs_diff(dec.block(i, j), dec.block(j, i)));
    }
  }
  r.invariant = r.residual <= tol;
  return r;
}

PtInvariantBound ptinv_sn_bound(const DenseHermitian& rho, std::size_t d1,
                                std::size_t d2, double tol, double psd_rel_tol) {
  if (d1 < 2 || d1 > d2) throw InvalidArgument("ptinv_sn_bound needs 2 <= d1 <= d2");
  BlockDecomposition dec = block_decompose(rho, d1, d2);
  PtInvariantBound out;
  out.subblock_report = CertificateReport("ptinv_bound");
  auto& r = out.subblock_report;
  r.add_value("d1", static_cast<std::int64_t>(d1));
  r.add_value("d2", static_cast<std::int64_t>(d2));

  PtInvarianceResult inv = pt_invariance_check(dec, tol);
  if (!inv.invariant) {
    r.add_claim("not-PT-invariant", false, inv.residual, tol);
    r.add_note("state is not invariant under transposing the first factor; bound stays d1");
    out.bound = static_cast<int>(d1);
    r.add_value("bound", static_cast<std::int64_t>(out.bound));
    return out;
  }
  r.add_claim("pt_invariant", true, inv.residual, tol);

  bool all_ok = true;
  for (std::size_t k1 = 0; k1 < d1; ++k1) {
    for (std::size_t k2 = k1 + 1; k2 < d1; ++k2) {
      const std::string tag = "pair_" + std::to_string(k1) + "_" + std::to_string(k2);
      DenseHermitian sub = extract_principal_subblock(dec, {k1, k2});
      PsdResult psd = psd_check(sub, psd_rel_tol);
      PtInvarianceResult sub_inv = pt_invariance_check(block_decompose(sub, 2, d2), tol);
      PsdResult ppt = psd_check(partial_transpose(sub, FactorSet{1}), psd_rel_tol);
      r.add_claim(tag + ".psd", psd.verdict, psd.min_eigenvalue, psd.tolerance);
      r.add_claim(tag + ".pt_invariant", sub_inv.invariant, sub_inv.residual, tol);
      r.add_claim(tag + ".ppt", ppt.verdict, ppt.min_eigenvalue, ppt.tolerance);
      const bool ok = psd.verdict && sub_inv.invariant && ppt.verdict;
      r.add_claim(tag + ".separable-by-citation", ok, ok ? 1.0 : 0.0, 0.0,
                  "PT-invariant PPT states on 2 x N are separable (cited)");
      all_ok = all_ok && ok;
    }
  }
  if (all_ok) {
    out.bound = static_cast<int>(d1) - 1;
  } else {
    out.bound = static_cast<int>(d1);
    r.add_note("a pairwise sub-block check failed; bound stays d1");
  }
  r.add_value("bound", static_cast<std::int64_t>(out.bound));
  return out;
}

Matrix haar_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("haar_unitary needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(as_idx(n), as_idx(n));
  for (Idx i = 0; i < g.rows(); ++i) {
    for (Idx j = 0; j < g.cols(); ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(as_idx(n), as_idx(n));
  const Matrix& r = qr.matrixQR();
  for (Idx j = 0; j < q.cols(); ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= a > 0.0 ? d / a : Complex(1.0);
  }
  return q;
}

double replay_witness(const DenseHermitian& rho, std::size_t d1, std::size_t d2,
                      const Matrix& u) {
  if (rho.dim() != d1 * d2 || u.rows() != as_idx(d1 * d2) || u.cols() != u.rows()) {
    throw InvalidArgument("replay_witness: dimension mismatch");
  }
  return min_eig_pt_second(u * rho.matrix() * u.adjoint(), d1, d2);
}

ApptVerdict appt_falsifier(const DenseHermitian& rho, std::size_t d1, std::size_t d2,
                           std::size_t trials, std::uint64_t seed, unsigned threads) {
  if (rho.dim() != d1 * d2) throw InvalidArgument("appt_falsifier: dimension mismatch");
  PsdResult psd = psd_check(rho);
  if (!psd.verdict || std::abs(rho.trace() - 1.0) > 1e-9) {
    throw InvalidArgument("appt_falsifier needs a state (PSD, trace one)");
  }
  ApptVerdict v;
  v.seed = seed;
  const std::size_t n = d1 * d2;
  const std::size_t total = trials + 1;
  const std::size_t chunk = std::max<std::size_t>(1, threads) * 4;

  auto unitary_for = [&](std::size_t t) -> Matrix {
    if (t == 0) return Matrix::Identity(as_idx(n), as_idx(n));
    return haar_unitary(n, derive_seed(seed, t));
  };

  for (std::size_t start = 0; start < total; start += chunk) {
    const std::size_t count = std::min(chunk, total - start);
    std::vector<double> mins(count);
    parallel_for(count, threads, [&](std::size_t i) {
      mins[i] = replay_witness(rho, d1, d2, unitary_for(start + i));
    });
    for (std::size_t i = 0; i < count; ++i) {
      if (mins[i] < -kApptViolationTol) {
        v.status = ApptStatus::kFalsified;
        v.trial_index = start + i;
        v.witness = unitary_for(start + i);
        v.violating_min_eig = mins[i];
        v.trials_run = start + i + 1;
        return v;
      }
    }
  }
  v.trials_run = total;
  return v;
}

CertificateReport appt_report(const ApptVerdict& v) {
  CertificateReport r("appt_falsify");
  const bool falsified = v.status == ApptStatus::kFalsified;
  r.add_value("status", std::string(falsified ? "falsified" : "undetermined"));
  r.add_value("trials_run", static_cast<std::int64_t>(v.trials_run));
  r.add_value("seed", std::to_string(v.seed));
  if (falsified) {
    r.add_value("trial_index", static_cast<std::int64_t>(*v.trial_index));
    r.add_info("not_absolutely_ppt", true, *v.violating_min_eig, kApptViolationTol);
  } else {
    r.add_note("no falsifying unitary found; absolute PPT is not certified");
  }
  return r;
}

CertificateReport subblock_appt_scan(const DenseHermitian& rho, std::size_t d1,
                                     std::size_t d2, std::size_t trials_per_block,
                                     std::uint64_t seed, unsigned threads) {
  if (d1 < 2 || d1 > d2) throw InvalidArgument("subblock_appt_scan needs 2 <= d1 <= d2");
  BlockDecomposition dec = block_decompose(rho, d1, d2);
  const std::size_t n = d1 * d2;
  const std::size_t m = 2 * d2;

  struct PairResult {
    std::size_t k1 = 0, k2 = 0;
    bool falsified = false;
    std::size_t trials = 0;
    double min_eig = 0.0;
    double unitarity = 0.0;
    double consistency = 0.0;
  };
  std::vector<PairResult> pairs;
  for (std::size_t k1 = 0; k1 < d1; ++k1) {
    for (std::size_t k2 = k1 + 1; k2 < d1; ++k2) pairs.push_back({k1, k2});
  }

  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    PairResult& pr = pairs[p];
    const std::array<std::size_t, 2> ks{pr.k1, pr.k2};
    DenseHermitian sub = extract_principal_subblock(dec, {pr.k1, pr.k2});
    const std::uint64_t pair_seed = derive_seed(seed, p);
    pr.min_eig = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials_per_block; ++t) {
      Matrix v = haar_unitary(m, derive_seed(pair_seed, t));
      Matrix u = Matrix::Identity(as_idx(n), as_idx(n));
      for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t q = 0; q < 2; ++q) {
          u.block(as_idx(ks[s] * d2), as_idx(ks[q] * d2), as_idx(d2), as_idx(d2)) =
              v.block(as_idx(s * d2), as_idx(q * d2), as_idx(d2), as_idx(d2));
        }
      }
      Matrix gram = u.adjoint() * u;
      pr.unitarity = std::max(
          pr.unitarity, max_abs_diff(gram, Matrix::Identity(as_idx(n), as_idx(n))));
      // Rows of U belonging to levels k1, k2 give the conjugated sub-block.
      Matrix rows(as_idx(m), as_idx(n));
      for (std::size_t s = 0; s < 2; ++s) {
        rows.middleRows(as_idx(s * d2), as_idx(d2)) =
            u.middleRows(as_idx(ks[s] * d2), as_idx(d2));
      }
      Matrix conj = rows * rho.matrix() * rows.adjoint();
      if (t == 0) {
        Matrix direct = v * sub.matrix() * v.adjoint();
        pr.consistency = max_abs_diff(conj, direct);
      }
      double e = min_eig_pt_second(conj, 2, d2);
      pr.min_eig = std::min(pr.min_eig, e);
      pr.trials = t + 1;
      if (e < -kApptViolationTol) {
        pr.falsified = true;
        break;
      }
    }
  });

  CertificateReport r("subblock_scan");
  r.add_value("d1", static_cast<std::int64_t>(d1));
  r.add_value("d2", static_cast<std::int64_t>(d2));
  r.add_value("trials_per_block", static_cast<std::int64_t>(trials_per_block));
  r.add_value("seed", std::to_string(seed));
  bool any = false;
  double worst_unitarity = 0.0;
  r.csv = "k1,k2,status,trials,min_eig\n";
  for (const auto& pr : pairs) {
    const std::string tag = "pair_" + std::to_string(pr.k1) + "_" + std::to_string(pr.k2);
    r.add_value(tag + ".status", std::string(pr.falsified ? "falsified" : "undetermined"));
    r.add_value(tag + ".trials", static_cast<std::int64_t>(pr.trials));
    r.add_value(tag + ".min_eig", pr.min_eig);
    r.add_claim(tag + ".embedding_consistent", pr.consistency <= 1e-10, pr.consistency,
                1e-10);
    r.csv += std::to_string(pr.k1) + "," + std::to_string(pr.k2) + "," +
             (pr.falsified ? "falsified" : "undetermined") + "," +
             std::to_string(pr.trials) + "," + format_number(pr.min_eig) + "\n";
    any = any || pr.falsified;
    worst_unitarity = std::max(worst_unitarity, pr.unitarity);
  }
  r.add_claim("embedded_unitary", worst_unitarity <= 1e-10, worst_unitarity, 1e-10);
  r.add_value("any_pair_falsified", std::string(any ? "yes" : "no"));
  if (!any && trials_per_block > 0) {
    const std::size_t heuristic = std::min(d1, d2) - 1;
    r.add_value("sn_upper_heuristic", static_cast<std::int64_t>(heuristic));
    r.add_note("heuristic: no pair falsified, consistent with SN <= min(d1, d2) - 1 "
               "if the state is absolutely PPT (not certified)");
  } else if (any) {
    r.add_note("some conjugated sub-block is NPT: the state is not absolutely PPT");
  }
  return r;
}

}  // namespace snforge
