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

#include "snforge/snforge.h"

#include <array>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "snforge/certificates.hpp"
#include "snforge/constructions.hpp"
#include "snforge/ensembles.hpp"
#include "snforge/linear_map.hpp"
#include "snforge/matrix_io.hpp"
#include "snforge/report.hpp"
#include "snforge/subblocks.hpp"
#include "snforge/tensor.hpp"

struct snf_matrix {
  snforge::DenseHermitian m;
};

struct snf_report {
  snforge::CertificateReport r;
};

namespace {

using namespace snforge;

thread_local std::string g_last_error;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename F>
snf_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SNF_OK;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return SNF_PARSE_ERROR;
  } catch (const InvalidArgument& e) {
    g_last_error = e.what();
    return SNF_INVALID_ARGUMENT;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return SNF_IO_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SNF_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SNF_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return SNF_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(snf_matrix** out, DenseHermitian m) {
  require(out, "out");
  *out = new snf_matrix{std::move(m)};
}

void emit(snf_report** out, CertificateReport r) {
  if (out != nullptr) *out = new snf_report{std::move(r)};
}

void require_report(snf_report** out) { require(out, "report"); }

CertificateReport construction_report(const std::string& op, const DenseHermitian& m,
                                      const FactorSet& b_side) {
  CertificateReport r(op);
  std::string dims, labels;
  for (std::size_t f = 0; f < m.space().num_factors(); ++f) {
    dims += (f ? " " : "") + std::to_string(m.space().dim(f));
    labels += (f ? " " : "") + m.space().label(f);
  }
  r.add_value("dims", dims);
  r.add_value("labels", labels);
  r.add_value("dim", static_cast<std::int64_t>(m.dim()));
  r.add_value("trace", m.trace());
  PsdResult pos = psd_check(m);
  PsdResult ppt = psd_check(partial_transpose(m, b_side));
  r.add_info("positive", pos.verdict, pos.min_eigenvalue, pos.tolerance);
  r.add_info("ppt", ppt.verdict, ppt.min_eigenvalue, ppt.tolerance);
  return r;
}

FactorSet bipartite_b(const DenseHermitian& m) {
  return m.space().num_factors() == 4 ? ZFamilyState::side_b() : FactorSet{1};
}

void set_bound(int* bound, int v) {
  if (bound != nullptr) *bound = v;
}

}  // namespace

extern "C" {

const char* snf_last_error(void) { return g_last_error.c_str(); }

const char* snf_version(void) { return "0.1.0"; }

void snf_string_free(char* s) { std::free(s); }

snf_status snf_matrix_create(size_t num_factors, const size_t* dims,
                             const char* const* labels, const double* re_im,
                             snf_matrix** out) {
  return guarded([&] {
    require(dims, "dims");
    require(re_im, "re_im");
    if (num_factors == 0) throw InvalidArgument("need at least one factor");
    std::vector<std::size_t> dv(dims, dims + num_factors);
    std::vector<std::string> lv;
    if (labels != nullptr) {
      for (std::size_t f = 0; f < num_factors; ++f) {
        require(labels[f], "label");
        lv.emplace_back(labels[f]);
      }
    }
    TensorSpace space(dv, lv);
    const auto n = static_cast<Eigen::Index>(space.total_dim());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(i * n + j);
        m(i, j) = Complex(re_im[2 * k], re_im[2 * k + 1]);
      }
    }
    emit(out, DenseHermitian(std::move(m), std::move(space)));
  });
}

snf_status snf_matrix_read(const char* path, snf_matrix** out) {
  return guarded([&] {
    require(path, "path");
    if (!std::ifstream(path, std::ios::binary)) {
      throw IoError(std::string("cannot open '") + path + "'");
    }
    emit(out, read_matrix(path));
  });
}

snf_status snf_matrix_write(const snf_matrix* m, const char* path) {
  return guarded([&] {
    require(m, "matrix");
    require(path, "path");
    try {
      write_matrix(path, m->m);
    } catch (const InvalidArgument& e) {
      throw IoError(e.what());
    }
  });
}

snf_status snf_matrix_parse(const char* text, snf_matrix** out) {
  return guarded([&] {
    require(text, "text");
    emit(out, parse_matrix(text));
  });
}

snf_status snf_matrix_serialize(const snf_matrix* m, char** out) {
  return guarded([&] {
    require(m, "matrix");
    require(out, "out");
    *out = dup_string(serialize_matrix(m->m));
  });
}

size_t snf_matrix_dim(const snf_matrix* m) { return m ? m->m.dim() : 0; }

size_t snf_matrix_num_factors(const snf_matrix* m) {
  return m ? m->m.space().num_factors() : 0;
}

size_t snf_matrix_factor_dim(const snf_matrix* m, size_t factor) {
  if (m == nullptr || factor >= m->m.space().num_factors()) return 0;
  return m->m.space().dim(factor);
}

snf_status snf_matrix_entry(const snf_matrix* m, size_t row, size_t col, double* re,
                            double* im) {
  return guarded([&] {
    require(m, "matrix");
    if (row >= m->m.dim() || col >= m->m.dim()) throw InvalidArgument("index out of range");
    Complex v = m->m.matrix()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

snf_status snf_matrix_as_bipartite(const snf_matrix* m, size_t d1, size_t d2,
                                   snf_matrix** out) {
  return guarded([&] {
    require(m, "matrix");
    if (d1 * d2 != m->m.dim()) {
      throw InvalidArgument("d1 * d2 = " + std::to_string(d1 * d2) +
                            " does not match dimension " + std::to_string(m->m.dim()));
    }
    emit(out, m->m.with_space(TensorSpace({d1, d2}, {"A", "B"})));
  });
}

snf_status snf_matrix_swap(const snf_matrix* m, snf_matrix** out) {
  return guarded([&] {
    require(m, "matrix");
    if (m->m.space().num_factors() != 2) throw InvalidArgument("swap needs two factors");
    const std::array<std::size_t, 2> perm{1, 0};
    emit(out, permute_factors(m->m, perm));
  });
}

void snf_matrix_free(snf_matrix* m) { delete m; }

snf_status snf_construct_family(size_t d1, size_t d2, int normalized, snf_matrix** out,
                                snf_report** report) {
  return guarded([&] {
    ZFamilyState z = concrete_z(d1, d2);
    if (normalized) z = z.normalized();
    CertificateReport r = construction_report("construct_family", z.z, ZFamilyState::side_b());
    r.add_value("d1", static_cast<std::int64_t>(d1));
    r.add_value("d2", static_cast<std::int64_t>(d2));
    r.add_value("normalized", std::string(normalized ? "yes" : "no"));
    emit(out, std::move(z.z));
    emit(report, std::move(r));
  });
}

snf_status snf_construct_scaled(size_t d, snf_matrix** out, snf_report** report) {
  return guarded([&] {
    ScaledState s = scaled_state(d);
    CertificateReport r = construction_report("construct_scaled", s.rho, FactorSet{1});
    r.add_value("d", static_cast<std::int64_t>(d));
    r.add_value("padded", std::string(s.padded ? "yes" : "no"));
    r.add_value("claimed_sn_lower", static_cast<std::int64_t>(s.claimed_sn_lower));
    emit(out, std::move(s.rho));
    emit(report, std::move(r));
  });
}

snf_status snf_construct_ptinv(size_t d, snf_matrix** out, snf_report** report) {
  return guarded([&] {
    PtInvariantFamily f = pt_invariant_family(d);
    CertificateReport r = construction_report("construct_ptinv", f.rho, FactorSet{1});
    r.add_value("d", static_cast<std::int64_t>(d));
    r.add_value("d_prime", static_cast<std::int64_t>(f.d_prime));
    r.add_value("claimed_sn_lower", static_cast<std::int64_t>(f.claimed_sn_lower));
    double inv = max_abs_diff(partial_transpose(f.rho, FactorSet{1}).matrix(), f.rho.matrix());
    r.add_claim("pt_invariant", inv <= 1e-12, inv, 1e-12);
    emit(out, std::move(f.rho));
    emit(report, std::move(r));
  });
}

snf_status snf_construct_lift(const snf_matrix* base, const size_t* b_side,
                              size_t b_count, snf_matrix** out, snf_report** report) {
  return guarded([&] {
    require(base, "base");
    FactorSet side;
    if (b_side == nullptr || b_count == 0) {
      side = bipartite_b(base->m);
    } else {
      side.assign(b_side, b_side + b_count);
    }
    LiftedState l = pt_invariant_lift(base->m, side);
    CertificateReport r = construction_report("construct_lift", l.lifted, l.pt_side);
    double inv = max_abs_diff(partial_transpose(l.lifted, l.pt_side).matrix(),
                              l.lifted.matrix());
    r.add_claim("pt_invariant", inv <= 1e-12, inv, 1e-12);
    double comp = max_abs_diff(compress_last_factor(l.lifted, plus_i_ket()).matrix(),
                               l.base.matrix());
    r.add_claim("compression_recovers_base", comp <= 1e-12, comp, 1e-12);
    emit(out, std::move(l.lifted));
    emit(report, std::move(r));
  });
}

snf_status snf_construct_maxent(size_t d, snf_matrix** out, snf_report** report) {
  return guarded([&] {
    MaxEntangled me = max_entangled(d);
    CertificateReport r = construction_report("construct_maxent", me.projector, FactorSet{1});
    r.add_value("d", static_cast<std::int64_t>(d));
    emit(out, std::move(me.projector));
    emit(report, std::move(r));
  });
}

snf_status snf_construct_flip(size_t d, snf_matrix** out, snf_report** report) {
  return guarded([&] {
    DenseHermitian f = flip(d);
    CertificateReport r = construction_report("construct_flip", f, FactorSet{1});
    r.add_value("d", static_cast<std::int64_t>(d));
    emit(out, std::move(f));
    emit(report, std::move(r));
  });
}

snf_status snf_certify_lemma1(const snf_matrix* z, double psd_rel_tol, snf_report** report) {
  return guarded([&] {
    require(z, "z");
    require_report(report);
    if (!(psd_rel_tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    ZFamilyState f = decompose_z(z->m);
    emit(report, lemma1_verdict(f.x, f.y, f.d2, psd_rel_tol));
  });
}

snf_status snf_certify_detector(const snf_matrix* z, snf_report** report) {
  return guarded([&] {
    require(z, "z");
    require_report(report);
    ZFamilyState f = decompose_z(z->m);
    LinearMapRep p = LinearMapRep::choi_map(f.d2);
    DetectorResult det = detector_violation(f, p);
    CertificateReport r("detector");
    r.add_value("map", p.name());
    r.add_value("d1", static_cast<std::int64_t>(f.d1));
    r.add_value("d2", static_cast<std::int64_t>(f.d2));
    r.add_claim("detector_violation", det.violated, det.min_eigenvalue, det.threshold);
    emit(report, std::move(r));
  });
}

snf_status snf_certify_sn_lower(const snf_matrix* z, double psd_rel_tol,
                                snf_report** report, int* bound) {
  return guarded([&] {
    require(z, "z");
    require_report(report);
    if (!(psd_rel_tol > 0.0)) throw InvalidArgument("tolerance must be positive");
    SnBound b = sn_lower_certificate(decompose_z(z->m), psd_rel_tol);
    set_bound(bound, b.bound);
    emit(report, std::move(b.evidence));
  });
}

snf_status snf_certify_scaled(size_t d, snf_report** report, int* bound) {
  return guarded([&] {
    require_report(report);
    SnBound b = scaled_state_certificate(scaled_state(d));
    set_bound(bound, b.bound);
    emit(report, std::move(b.evidence));
  });
}

snf_status snf_certify_ptinv_family(size_t d, snf_report** report, int* bound) {
  return guarded([&] {
    require_report(report);
    SnBound b = pt_invariant_family_certificate(pt_invariant_family(d));
    set_bound(bound, b.bound);
    emit(report, std::move(b.evidence));
  });
}

snf_status snf_certify_sn_upper_gamma(const snf_matrix* z, double eig_tol, double sv_tol,
                                      snf_report** report, int* bound) {
  return guarded([&] {
    require(z, "z");
    require_report(report);
    ZFamilyState f = decompose_z(z->m);
    DenseHermitian zg = partial_transpose(f.z, ZFamilyState::side_b());
    SnBound b = sn_upper_via_eigenbasis(zg, ZFamilyState::side_a(), eig_tol, sv_tol);
    set_bound(bound, b.bound);
    emit(report, std::move(b.evidence));
  });
}

snf_status snf_certify_sn_upper(const snf_matrix* rho, const size_t* side_a,
                                size_t side_a_count, double eig_tol, double sv_tol,
                                snf_report** report, int* bound) {
  return guarded([&] {
    require(rho, "rho");
    require_report(report);
    FactorSet a;
    if (side_a == nullptr || side_a_count == 0) {
      a = rho->m.space().num_factors() == 4 ? ZFamilyState::side_a() : FactorSet{0};
    } else {
      a.assign(side_a, side_a + side_a_count);
    }
    SnBound b = sn_upper_via_eigenbasis(rho->m, a, eig_tol, sv_tol);
    set_bound(bound, b.bound);
    emit(report, std::move(b.evidence));
  });
}

snf_status snf_certify_sn_diff(size_t d1, size_t d2, double sv_tol, snf_report** report) {
  return guarded([&] {
    require_report(report);
    SnDifference diff = sn_difference_report(d1, d2, sv_tol);
    emit(report, std::move(diff.report));
  });
}

snf_status snf_certify_nondecomp(const char* map_name, size_t d, size_t k,
                                 snf_report** report) {
  return guarded([&] {
    require(map_name, "map_name");
    require_report(report);
    const std::string name = map_name;
    if (name == "choi") {
      emit(report, nondecomposability_witness(LinearMapRep::choi_map(d), k));
    } else if (name == "transpose") {
      emit(report, nondecomposability_witness(LinearMapRep::transposition(d), k));
    } else if (name == "identity") {
      emit(report, nondecomposability_witness(LinearMapRep::identity(d), k));
    } else {
      throw InvalidArgument("unknown map '" + name + "' (choi, transpose, identity)");
    }
  });
}

snf_status snf_certify_nondecomp_choi(const snf_matrix* choi, size_t d_in, size_t d_out,
                                      size_t k, snf_report** report) {
  return guarded([&] {
    require(choi, "choi");
    require_report(report);
    emit(report, nondecomposability_witness(
                     LinearMapRep::from_choi(choi->m, d_in, d_out), k));
  });
}

snf_status snf_subblock_ptinv_bound(const snf_matrix* rho, size_t d1, size_t d2,
                                    snf_report** report, int* bound) {
  return guarded([&] {
    require(rho, "rho");
    require_report(report);
    PtInvariantBound b = ptinv_sn_bound(rho->m, d1, d2);
    set_bound(bound, b.bound);
    emit(report, std::move(b.subblock_report));
  });
}

snf_status snf_subblock_appt_falsify(const snf_matrix* rho, size_t d1, size_t d2,
                                     size_t trials, uint64_t seed, unsigned threads,
                                     snf_report** report) {
  return guarded([&] {
    require(rho, "rho");
    require_report(report);
    ApptVerdict v = appt_falsifier(rho->m, d1, d2, trials, seed, threads);
    CertificateReport r = appt_report(v);
    if (v.witness) {
      double replay = replay_witness(rho->m, d1, d2, *v.witness);
      r.add_claim("witness_replays", replay < -kApptViolationTol, replay, kApptViolationTol);
    }
    emit(report, std::move(r));
  });
}

snf_status snf_subblock_scan(const snf_matrix* rho, size_t d1, size_t d2,
                             size_t trials_per_block, uint64_t seed, unsigned threads,
                             snf_report** report) {
  return guarded([&] {
    require(rho, "rho");
    require_report(report);
    emit(report, subblock_appt_scan(rho->m, d1, d2, trials_per_block, seed, threads));
  });
}

snf_status snf_ensemble_ppt(size_t d, double alpha, size_t trials, uint64_t seed,
                            unsigned threads, snf_report** report) {
  return guarded([&] {
    require_report(report);
    emit(report, ppt_frequency(d, alpha, trials, seed, threads).to_report("ensemble_ppt"));
  });
}

snf_status snf_ensemble_witness(size_t d, double alpha, size_t trials, uint64_t seed,
                                unsigned threads, snf_report** report) {
  return guarded([&] {
    require_report(report);
    emit(report,
         ppt_frequency(d, alpha, trials, seed, threads).to_report("ensemble_witness"));
  });
}

snf_status snf_ensemble_meanwidth(size_t d, size_t k, size_t samples, size_t restarts,
                                  uint64_t seed, unsigned threads, snf_report** report) {
  return guarded([&] {
    require_report(report);
    MeanWidth w = mean_width_estimate(k, d, samples, restarts, seed, threads);
    emit(report, mean_width_report(w, k, d, seed));
  });
}

snf_status snf_ensemble_gue_stats(size_t n, size_t samples, uint64_t seed,
                                  unsigned threads, snf_report** report) {
  return guarded([&] {
    require_report(report);
    emit(report, gue_stats_report(gue_stats(n, samples, seed, threads)));
  });
}

snf_status snf_report_render(const snf_report* r, int format, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    if (format != 0 && format != 1) throw InvalidArgument("format must be 0 or 1");
    *out = dup_string(format == 1 ? r->r.render_json() : r->r.render_text());
  });
}

snf_status snf_report_csv(const snf_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(r->r.csv);
  });
}

int snf_report_passed(const snf_report* r) { return r != nullptr && r->r.passed() ? 1 : 0; }

size_t snf_report_num_claims(const snf_report* r) { return r ? r->r.claims().size() : 0; }

snf_status snf_report_claim(const snf_report* r, size_t index, const char** name,
                            int* verdict, double* evidence, double* tolerance) {
  return guarded([&] {
    require(r, "report");
    if (index >= r->r.claims().size()) throw InvalidArgument("claim index out of range");
    const Claim& c = r->r.claims()[index];
    if (name) *name = c.name.c_str();
    if (verdict) *verdict = c.verdict ? 1 : 0;
    if (evidence) *evidence = c.evidence;
    if (tolerance) *tolerance = c.tolerance;
  });
}

snf_status snf_report_value(const snf_report* r, const char* name, char** out) {
  return guarded([&] {
    require(r, "report");
    require(name, "name");
    require(out, "out");
    auto v = r->r.find_value(name);
    if (!v) throw InvalidArgument(std::string("no value named '") + name + "'");
    *out = dup_string(*v);
  });
}

snf_status snf_report_merge(snf_report* r, const snf_report* other, const char* prefix) {
  return guarded([&] {
    require(r, "report");
    require(other, "other");
    r->r.merge(other->r, prefix ? prefix : "");
  });
}

void snf_report_free(snf_report* r) { delete r; }

}  // extern "C"
