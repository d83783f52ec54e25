/* Copyright 2026 The snforge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to snforge. Every fallible call returns an snf_status; on
 * failure snf_last_error() holds a one-line message for the calling thread.
 * Objects returned through out-parameters are owned by the caller and are
 * released with the matching *_free function. */

#ifndef SNFORGE_SNFORGE_H
#define SNFORGE_SNFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(SNF_BUILDING_LIBRARY)
#define SNF_API __attribute__((visibility("default")))
#else
#define SNF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum snf_status {
  SNF_OK = 0,
  SNF_INVALID_ARGUMENT = 1,
  SNF_PARSE_ERROR = 2,
  SNF_IO_ERROR = 3,
  SNF_INTERNAL_ERROR = 4
} snf_status;

/* Hermitian matrix with labeled tensor factors. */
typedef struct snf_matrix snf_matrix;
/* Claims, values and notes produced by one operation. */
typedef struct snf_report snf_report;

SNF_API const char* snf_last_error(void);
SNF_API const char* snf_version(void);
SNF_API void snf_string_free(char* s);

/* ---- matrices ---- */

/* re_im holds 2 n^2 doubles (re, im) in row-major order; labels may be NULL. */
SNF_API snf_status snf_matrix_create(size_t num_factors, const size_t* dims,
                                     const char* const* labels,
                                     const double* re_im, snf_matrix** out);
SNF_API snf_status snf_matrix_read(const char* path, snf_matrix** out);
SNF_API snf_status snf_matrix_write(const snf_matrix* m, const char* path);
SNF_API snf_status snf_matrix_parse(const char* text, snf_matrix** out);
SNF_API snf_status snf_matrix_serialize(const snf_matrix* m, char** out);
SNF_API size_t snf_matrix_dim(const snf_matrix* m);
SNF_API size_t snf_matrix_num_factors(const snf_matrix* m);
SNF_API size_t snf_matrix_factor_dim(const snf_matrix* m, size_t factor);
SNF_API snf_status snf_matrix_entry(const snf_matrix* m, size_t row, size_t col,
                                    double* re, double* im);
/* Same entries viewed as a bipartite (d1, d2) operator. */
SNF_API snf_status snf_matrix_as_bipartite(const snf_matrix* m, size_t d1,
                                           size_t d2, snf_matrix** out);
/* Swaps the two factors of a bipartite operator. */
SNF_API snf_status snf_matrix_swap(const snf_matrix* m, snf_matrix** out);
SNF_API void snf_matrix_free(snf_matrix* m);

/* ---- constructions (report may be NULL) ---- */

/* X (x) (1 - Omega) + Y (x) Omega with X = 1 - Omega,
 * Y = (d1 - 1)(d2 + 1) Omega on (A1, B1, A2, B2). */
SNF_API snf_status snf_construct_family(size_t d1, size_t d2, int normalized,
                                        snf_matrix** out, snf_report** report);
/* PPT state on d x d with Schmidt number at least ceil((d - 1) / 4). */
SNF_API snf_status snf_construct_scaled(size_t d, snf_matrix** out,
                                        snf_report** report);
/* PT-invariant state on d x d (d >= 4). */
SNF_API snf_status snf_construct_ptinv(size_t d, snf_matrix** out,
                                       snf_report** report);
/* base (x) |+i><+i| + base^Gamma (x) |-i><-i|, transposing the listed
 * factors of base. */
SNF_API snf_status snf_construct_lift(const snf_matrix* base,
                                      const size_t* b_side, size_t b_count,
                                      snf_matrix** out, snf_report** report);
SNF_API snf_status snf_construct_maxent(size_t d, snf_matrix** out,
                                        snf_report** report);
SNF_API snf_status snf_construct_flip(size_t d, snf_matrix** out,
                                      snf_report** report);

/* ---- certificates ---- */

/* z must be of family form on (d1, d1, d2, d2). */
SNF_API snf_status snf_certify_lemma1(const snf_matrix* z, double psd_rel_tol,
                                      snf_report** report);
SNF_API snf_status snf_certify_detector(const snf_matrix* z, snf_report** report);
SNF_API snf_status snf_certify_sn_lower(const snf_matrix* z, double psd_rel_tol,
                                        snf_report** report, int* bound);
SNF_API snf_status snf_certify_scaled(size_t d, snf_report** report, int* bound);
SNF_API snf_status snf_certify_ptinv_family(size_t d, snf_report** report,
                                            int* bound);
/* Upper bound on the partial transpose (on B1 B2) of a family operator. */
SNF_API snf_status snf_certify_sn_upper_gamma(const snf_matrix* z, double eig_tol,
                                              double sv_tol, snf_report** report,
                                              int* bound);
SNF_API snf_status snf_certify_sn_upper(const snf_matrix* rho, const size_t* side_a,
                                        size_t side_a_count, double eig_tol,
                                        double sv_tol, snf_report** report,
                                        int* bound);
SNF_API snf_status snf_certify_sn_diff(size_t d1, size_t d2, double sv_tol,
                                       snf_report** report);
/* map_name: "choi", "transpose" or "identity" on d levels. */
SNF_API snf_status snf_certify_nondecomp(const char* map_name, size_t d, size_t k,
                                         snf_report** report);
/* Map given by its Choi matrix on (out, in). */
SNF_API snf_status snf_certify_nondecomp_choi(const snf_matrix* choi, size_t d_in,
                                              size_t d_out, size_t k,
                                              snf_report** report);

/* ---- sub-blocks ---- */

SNF_API snf_status snf_subblock_ptinv_bound(const snf_matrix* rho, size_t d1,
                                            size_t d2, snf_report** report,
                                            int* bound);
SNF_API snf_status snf_subblock_appt_falsify(const snf_matrix* rho, size_t d1,
                                             size_t d2, size_t trials,
                                             uint64_t seed, unsigned threads,
                                             snf_report** report);
SNF_API snf_status snf_subblock_scan(const snf_matrix* rho, size_t d1, size_t d2,
                                     size_t trials_per_block, uint64_t seed,
                                     unsigned threads, snf_report** report);

/* ---- ensembles ---- */

SNF_API snf_status snf_ensemble_ppt(size_t d, double alpha, size_t trials,
                                    uint64_t seed, unsigned threads,
                                    snf_report** report);
SNF_API snf_status snf_ensemble_witness(size_t d, double alpha, size_t trials,
                                        uint64_t seed, unsigned threads,
                                        snf_report** report);
SNF_API snf_status snf_ensemble_meanwidth(size_t d, size_t k, size_t samples,
                                          size_t restarts, uint64_t seed,
                                          unsigned threads, snf_report** report);
SNF_API snf_status snf_ensemble_gue_stats(size_t n, size_t samples, uint64_t seed,
                                          unsigned threads, snf_report** report);

/* ---- reports ---- */

/* format: 0 line-oriented text, 1 JSON. */
SNF_API snf_status snf_report_render(const snf_report* r, int format, char** out);
SNF_API snf_status snf_report_csv(const snf_report* r, char** out);
/* 1 when every required claim passed, 0 otherwise. */
SNF_API int snf_report_passed(const snf_report* r);
SNF_API size_t snf_report_num_claims(const snf_report* r);
/* *name stays valid until the report is freed. */
SNF_API snf_status snf_report_claim(const snf_report* r, size_t index,
                                    const char** name, int* verdict,
                                    double* evidence, double* tolerance);
SNF_API snf_status snf_report_value(const snf_report* r, const char* name,
                                    char** out);
/* Appends the claims, values and notes of other, names prefixed. */
SNF_API snf_status snf_report_merge(snf_report* r, const snf_report* other,
                                    const char* prefix);
SNF_API void snf_report_free(snf_report* r);

#ifdef __cplusplus
}
#endif

#endif /* SNFORGE_SNFORGE_H */
