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

#include "snforge/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "snforge/seeding.hpp"

namespace snforge {

namespace {

using Idx = Eigen::Index;

Idx as_idx(std::size_t v) { return static_cast<Idx>(v); }

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

std::size_t exact_sqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return r * r == n ? r : 0;
}

}  // namespace

GueSample sample_gue(std::size_t n, bool traceless, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample_gue needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix gt(as_idx(n), as_idx(n));
  for (Idx i = 0; i < gt.rows(); ++i) {
    for (Idx j = 0; j < gt.cols(); ++j) gt(i, j) = Complex(normal(rng), normal(rng));
  }
  Matrix g = (gt + gt.adjoint()) / std::sqrt(2.0);
  if (traceless) {
    const Complex shift = g.trace() / static_cast<double>(n);
    g.diagonal().array() -= Complex(shift.real(), 0.0);
  }
  // Exact Hermiticity: copy the upper triangle down.
  for (Idx i = 0; i < g.rows(); ++i) {
    g(i, i) = Complex(g(i, i).real(), 0.0);
    for (Idx j = i + 1; j < g.cols(); ++j) g(j, i) = std::conj(g(i, j));
  }
  GueSample out;
  out.n = n;
  out.traceless = traceless;
  out.seed = seed;
  out.matrix = DenseHermitian(std::move(g), TensorSpace::single(n));
  return out;
}

RandomState random_state(std::size_t d, double alpha, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("random_state needs d >= 1");
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw InvalidArgument("alpha must lie in (0, 1/2)");
  }
  TensorSpace ab({d, d}, {"A", "B"});
  RandomState out;
  out.g = sample_gue(d * d, true, seed);
  out.g.matrix = out.g.matrix.with_space(ab);
  const double dd = static_cast<double>(d);
  Matrix rho = out.g.matrix.matrix() * (alpha / dd);
  rho.diagonal().array() += Complex(1.0, 0.0);
  rho /= dd * dd;
  out.rho = DenseHermitian(std::move(rho), ab);
  return out;
}

double witness_value(const DenseHermitian& rho, const GueSample& g, double alpha,
                     std::size_t d) {
  if (alpha == 0.0) throw InvalidArgument("witness_value needs alpha != 0");
  if (rho.dim() != g.n || d == 0) throw InvalidArgument("witness_value: shape mismatch");
  // tr(rho G) for Hermitian arguments is the real Frobenius inner product.
  const double rho_g = (rho.matrix().conjugate().cwiseProduct(g.matrix.matrix())).sum().real();
  return rho.trace() - 2.0 * rho_g / (alpha * static_cast<double>(d));
}

double EnsembleReport::frequency() const {
  return trials == 0 ? 0.0 : static_cast<double>(ppt_count) / static_cast<double>(trials);
}

CertificateReport EnsembleReport::to_report(const std::string& operation) const {
  CertificateReport r(operation);
  r.add_value("d", static_cast<std::int64_t>(d));
  r.add_value("alpha", alpha);
  r.add_value("trials", static_cast<std::int64_t>(trials));
  r.add_value("seed", std::to_string(seed));
  r.add_value("ppt_count", static_cast<std::int64_t>(ppt_count));
  r.add_value("frequency", frequency());
  r.add_value("min_eig_mean", mean_of(min_eig));
  r.add_value("min_eig_pt_mean", mean_of(min_eig_pt));
  if (!witness_values.empty()) {
    r.add_value("witness_mean", mean_of(witness_values));
    r.add_value("witness_stddev", stddev_of(witness_values));
    auto negatives = std::count_if(witness_values.begin(), witness_values.end(),
                                   [](double w) { return w < 0.0; });
    r.add_value("witness_negative", static_cast<std::int64_t>(negatives));
  }
  std::string csv = "trial,min_eig,min_eig_pt,ppt,witness\n";
  for (std::size_t t = 0; t < trials; ++t) {
    csv += std::to_string(t) + "," + format_number(min_eig[t]) + "," +
           format_number(min_eig_pt[t]) + "," + (ppt[t] ? "1" : "0") + "," +
           (t < witness_values.size() ? format_number(witness_values[t]) : "") + "\n";
  }
  r.csv = std::move(csv);
  return r;
}

EnsembleReport ppt_frequency(std::size_t d, double alpha, std::size_t trials,
                             std::uint64_t seed, unsigned threads) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw InvalidArgument("alpha must lie in (0, 1/2)");
  EnsembleReport rep;
  rep.d = d;
  rep.alpha = alpha;
  rep.trials = trials;
  rep.seed = seed;
  rep.witness_values.assign(trials, 0.0);
  rep.min_eig.assign(trials, 0.0);
  rep.min_eig_pt.assign(trials, 0.0);
  std::vector<char> ok(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    RandomState s = random_state(d, alpha, derive_seed(seed, t));
    PsdResult pos = psd_check(s.rho);
    PsdResult pt = psd_check(partial_transpose(s.rho, FactorSet{1}));
    rep.min_eig[t] = pos.min_eigenvalue;
    rep.min_eig_pt[t] = pt.min_eigenvalue;
    ok[t] = pos.verdict && pt.verdict;
    rep.witness_values[t] = witness_value(s.rho, s.g, alpha, d);
  });
  rep.ppt.assign(ok.begin(), ok.end());
  rep.ppt_count = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  return rep;
}

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  Vector psi;
};

class Ascent {
 public:
  Ascent(const DenseHermitian& g, std::size_t iters)
      : g_(g.matrix()), da_(g.space().dim(0)), db_(g.space().dim(1)), iters_(iters) {
    RealVector ev = eigenvalues_hermitian(g);
    shift_ = std::abs(ev(0)) + 1.0;
  }

  std::size_t max_rank() const { return std::min(da_, db_); }

  Vector random_start(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(g_.rows());
    for (Idx i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
    return v;
  }

  // Top-k Schmidt truncation, normalized.
  Vector truncate(const Vector& v, std::size_t k) const {
    RowMatrix m = Eigen::Map<const RowMatrix>(v.data(), as_idx(da_), as_idx(db_));
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Idx kk = as_idx(std::min(k, max_rank()));
    RowMatrix t = svd.matrixU().leftCols(kk) *
                  svd.singularValues().head(kk).asDiagonal() *
                  svd.matrixV().leftCols(kk).adjoint();
    Vector out = Eigen::Map<const Vector>(t.data(), t.size());
    return out / out.norm();
  }

  double value(const Vector& v) const { return v.dot(g_ * v).real(); }

  Candidate run(Vector psi, std::size_t k) const {
    psi = truncate(psi, k);
    double prev = value(psi);
    for (std::size_t it = 0; it < iters_; ++it) {
      Vector next = g_ * psi + shift_ * psi;
      psi = truncate(next, k);
      double cur = value(psi);
      if (std::abs(cur - prev) < 1e-9) {
        prev = cur;
        break;
      }
      prev = cur;
    }
    return polish({prev, psi}, k);
  }

  // Alternating exact maximization over C^dA (x) W_B and W_A (x) C^dB.
  Candidate polish(Candidate c, std::size_t k) const {
    const Idx kk = as_idx(std::min(k, max_rank()));
    for (int round = 0; round < 50; ++round) {
      const double before = c.value;
      for (int side = 0; side < 2; ++side) {
        RowMatrix m = Eigen::Map<const RowMatrix>(c.psi.data(), as_idx(da_), as_idx(db_));
        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Matrix p;
        if (side == 0) {
          Matrix w = svd.matrixV().leftCols(kk);  // dB x k
          p = Matrix::Zero(g_.rows(), as_idx(da_) * kk);
          for (Idx a = 0; a < as_idx(da_); ++a) {
            p.block(a * as_idx(db_), a * kk, as_idx(db_), kk) = w;
          }
        } else {
          Matrix w = svd.matrixU().leftCols(kk);  // dA x k
          p = Matrix::Zero(g_.rows(), kk * as_idx(db_));
          for (Idx a = 0; a < as_idx(da_); ++a) {
            for (Idx s = 0; s < kk; ++s) {
              p.block(a * as_idx(db_), s * as_idx(db_), as_idx(db_), as_idx(db_)) =
                  w(a, s) * Matrix::Identity(as_idx(db_), as_idx(db_));
            }
          }
        }
        Matrix h = p.adjoint() * g_ * p;
        h = (h + h.adjoint()).eval() * 0.5;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const Idx top = es.eigenvalues().size() - 1;
        if (es.eigenvalues()(top) > c.value) {
          Vector v = p * es.eigenvectors().col(top);
          v /= v.norm();
          c.psi = v;
          c.value = value(v);
        }
      }
      if (c.value - before <= 1e-12 * (1.0 + std::abs(c.value))) break;
    }
    return c;
  }

  Candidate best_of(std::size_t k, std::size_t restarts, std::uint64_t seed,
                    const Vector* warm) const {
    Candidate best;
    const std::uint64_t level_seed = derive_seed(seed, k);
    for (std::size_t r = 0; r < restarts; ++r) {
      Candidate c = run(random_start(derive_seed(level_seed, r)), k);
      if (c.value > best.value) best = std::move(c);
    }
    if (warm != nullptr) {
      Candidate c = run(*warm, k);
      // The warm start's own value is feasible at level k.
      Candidate w{value(*warm), *warm};
      if (w.value > c.value) c = std::move(w);
      if (c.value > best.value) best = std::move(c);
    }
    return best;
  }

 private:
  const Matrix& g_;
  std::size_t da_, db_;
  std::size_t iters_;
  double shift_ = 1.0;
};

void check_ascent_input(const DenseHermitian& g) {
  if (g.space().num_factors() != 2) {
    throw InvalidArgument("sup_sn_k_ascent needs an operator on two factors");
  }
}

}  // namespace

double sup_sn_k_ascent(const DenseHermitian& g, std::size_t k, std::size_t restarts,
                       std::size_t iters, std::uint64_t seed) {
  check_ascent_input(g);
  Ascent a(g, iters);
  if (k < 1 || k > a.max_rank()) throw InvalidArgument("k out of range");
  if (restarts == 0) throw InvalidArgument("restarts must be >= 1");
  return a.best_of(k, restarts, seed, nullptr).value;
}

std::vector<double> sup_sn_k_profile(const DenseHermitian& g, std::size_t restarts,
                                     std::size_t iters, std::uint64_t seed) {
  check_ascent_input(g);
  if (restarts == 0) throw InvalidArgument("restarts must be >= 1");
  Ascent a(g, iters);
  std::vector<double> out;
  Vector warm;
  for (std::size_t k = 1; k <= a.max_rank(); ++k) {
    Candidate c = a.best_of(k, restarts, seed, k == 1 ? nullptr : &warm);
    out.push_back(c.value);
    warm = c.psi;
  }
  return out;
}

MeanWidth mean_width_estimate(std::size_t k, std::size_t d, std::size_t samples,
                              std::size_t restarts, std::uint64_t seed,
                              unsigned threads) {
  if (k < 1 || k > d) throw InvalidArgument("need 1 <= k <= d");
  if (samples == 0) throw InvalidArgument("samples must be >= 1");
  MeanWidth w;
  w.values.assign(samples, 0.0);
  const double n = static_cast<double>(d * d);
  TensorSpace ab({d, d}, {"A", "B"});
  parallel_for(samples, threads, [&](std::size_t s) {
    const std::uint64_t sample_seed = derive_seed(seed, s);
    GueSample g = sample_gue(d * d, true, sample_seed);
    w.values[s] = sup_sn_k_ascent(g.matrix.with_space(ab), k, restarts,
                                  kDefaultAscentIters, mix64(sample_seed)) / n;
  });
  w.estimate = mean_of(w.values);
  w.standard_error = stddev_of(w.values) / std::sqrt(static_cast<double>(samples));
  return w;
}

CertificateReport mean_width_report(const MeanWidth& w, std::size_t k, std::size_t d,
                                    std::uint64_t seed) {
  CertificateReport r("meanwidth");
  r.add_value("d", static_cast<std::int64_t>(d));
  r.add_value("k", static_cast<std::int64_t>(k));
  r.add_value("samples", static_cast<std::int64_t>(w.values.size()));
  r.add_value("seed", std::to_string(seed));
  r.add_value("estimate", w.estimate);
  r.add_value("stderr", w.standard_error);
  r.add_value("heuristic", std::string("yes"));
  r.add_note("heuristic lower estimate: the sup is found by local ascent");
  std::string csv = "sample,value\n";
  for (std::size_t s = 0; s < w.values.size(); ++s) {
    csv += std::to_string(s) + "," + format_number(w.values[s]) + "\n";
  }
  r.csv = std::move(csv);
  return r;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_distance needs samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

GueStats gue_stats(std::size_t n, std::size_t samples, std::uint64_t seed,
                   unsigned threads) {
  if (n < 2 || samples == 0) throw InvalidArgument("gue_stats needs n >= 2, samples >= 1");
  GueStats s;
  s.n = n;
  s.seed = seed;
  s.trace_ratio.assign(samples, 0.0);
  s.min_eig_scaled.assign(samples, 0.0);
  const std::size_t d = exact_sqrt(n);
  const bool with_ks = d > 1 && n <= 1024;
  std::vector<RealVector> spec(with_ks ? samples : 0), spec_pt(with_ks ? samples : 0);
  const double nn = static_cast<double>(n);
  parallel_for(samples, threads, [&](std::size_t t) {
    GueSample g = sample_gue(n, true, derive_seed(seed, t));
    s.trace_ratio[t] = g.matrix.matrix().squaredNorm() / (nn * nn - 1.0);
    double lmin;
    if (n > 512) {
      lmin = lanczos_extremes(g.matrix.matrix(), 400, 1e-9).min;
    } else {
      RealVector ev = eigenvalues_hermitian(g.matrix);
      lmin = ev(0);
      if (with_ks) spec[t] = ev;
    }
    if (with_ks) {
      if (spec[t].size() == 0) spec[t] = eigenvalues_hermitian(g.matrix);
      DenseHermitian gd = g.matrix.with_space(TensorSpace({d, d}));
      spec_pt[t] = eigenvalues_hermitian(partial_transpose(gd, FactorSet{1}));
    }
    s.min_eig_scaled[t] = lmin / std::sqrt(nn);
  });
  if (with_ks) {
    std::vector<double> a, b;
    for (std::size_t t = 0; t < samples; ++t) {
      a.insert(a.end(), spec[t].data(), spec[t].data() + spec[t].size());
      b.insert(b.end(), spec_pt[t].data(), spec_pt[t].data() + spec_pt[t].size());
    }
    s.ks_partial_transpose = ks_distance(std::move(a), std::move(b));
  }
  return s;
}

CertificateReport gue_stats_report(const GueStats& s) {
  CertificateReport r("gue_stats");
  r.add_value("n", static_cast<std::int64_t>(s.n));
  r.add_value("samples", static_cast<std::int64_t>(s.trace_ratio.size()));
  r.add_value("seed", std::to_string(s.seed));
  r.add_value("trace_ratio_mean", mean_of(s.trace_ratio));
  r.add_value("min_eig_scaled_mean", mean_of(s.min_eig_scaled));
  auto in_band = std::count_if(s.min_eig_scaled.begin(), s.min_eig_scaled.end(),
                               [](double x) { return x >= -2.4 && x <= -1.7; });
  r.add_value("min_eig_in_band_fraction",
              static_cast<double>(in_band) / static_cast<double>(s.min_eig_scaled.size()));
  if (s.ks_partial_transpose) {
    r.add_value("ks_partial_transpose", *s.ks_partial_transpose);
  } else {
    r.add_value("ks_partial_transpose", std::string("skipped"));
  }
  std::string csv = "sample,trace_ratio,min_eig_scaled\n";
  for (std::size_t t = 0; t < s.trace_ratio.size(); ++t) {
    csv += std::to_string(t) + "," + format_number(s.trace_ratio[t]) + "," +
           format_number(s.min_eig_scaled[t]) + "\n";
  }
  r.csv = std::move(csv);
  return r;
}

}  // namespace snforge
