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

#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "snforge/snforge.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  snf_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("capi.matrix_lifecycle") {
  const size_t dims[] = {2};
  const double data[] = {1, 0, 0, 1, 0, -1, 1, 0};
  snf_matrix* m = nullptr;
  REQUIRE(snf_matrix_create(1, dims, nullptr, data, &m) == SNF_OK);
  CHECK(snf_matrix_dim(m) == 2);
  CHECK(snf_matrix_num_factors(m) == 1);
  CHECK(snf_matrix_factor_dim(m, 0) == 2);
  double re = 0, im = 0;
  CHECK(snf_matrix_entry(m, 0, 1, &re, &im) == SNF_OK);
  CHECK(re == 0.0);
  CHECK(im == 1.0);
  CHECK(snf_matrix_entry(m, 2, 0, &re, &im) == SNF_INVALID_ARGUMENT);
  CHECK(std::strlen(snf_last_error()) > 0);

  char* text = nullptr;
  REQUIRE(snf_matrix_serialize(m, &text) == SNF_OK);
  std::string s = take(text);
  snf_matrix* back = nullptr;
  REQUIRE(snf_matrix_parse(s.c_str(), &back) == SNF_OK);
  REQUIRE(snf_matrix_serialize(back, &text) == SNF_OK);
  CHECK(take(text) == s);
  snf_matrix_free(back);
  snf_matrix_free(m);
  snf_matrix_free(nullptr);

  const double skew[] = {1, 0, 0, 1, 0, 1, 1, 0};
  CHECK(snf_matrix_create(1, dims, nullptr, skew, &m) == SNF_INVALID_ARGUMENT);
  CHECK(snf_matrix_parse("garbage", &m) == SNF_PARSE_ERROR);
  CHECK(snf_matrix_read("/nonexistent/x.snm", &m) == SNF_IO_ERROR);
  CHECK(snf_matrix_create(1, nullptr, nullptr, data, &m) == SNF_INVALID_ARGUMENT);
  CHECK(snf_matrix_parse(nullptr, &m) == SNF_INVALID_ARGUMENT);
}

TEST_CASE("capi.family_certificates") {
  snf_matrix* z = nullptr;
  snf_report* r = nullptr;
  REQUIRE(snf_construct_family(2, 8, 0, &z, &r) == SNF_OK);
  char* v = nullptr;
  REQUIRE(snf_report_value(r, "trace", &v) == SNF_OK);
  CHECK(take(v) == "198");
  CHECK(snf_report_value(r, "no-such", &v) == SNF_INVALID_ARGUMENT);
  snf_report_free(r);

  int bound = 0;
  REQUIRE(snf_certify_sn_lower(z, 1e-10, &r, &bound) == SNF_OK);
  CHECK(bound == 4);
  CHECK(snf_report_passed(r) == 1);
  CHECK(snf_report_num_claims(r) > 0);
  const char* name = nullptr;
  int verdict = 0;
  double ev = 0, tol = 0;
  CHECK(snf_report_claim(r, 0, &name, &verdict, &ev, &tol) == SNF_OK);
  CHECK(name != nullptr);
  CHECK(snf_report_claim(r, 100000, &name, &verdict, &ev, &tol) == SNF_INVALID_ARGUMENT);

  char* text = nullptr;
  REQUIRE(snf_report_render(r, 0, &text) == SNF_OK);
  CHECK(take(text).rfind("report ", 0) == 0);
  REQUIRE(snf_report_render(r, 1, &text) == SNF_OK);
  CHECK(take(text).front() == '{');
  CHECK(snf_report_render(r, 7, &text) == SNF_INVALID_ARGUMENT);

  snf_report* up = nullptr;
  REQUIRE(snf_certify_sn_upper_gamma(z, 1e-10, 1e-8, &up, &bound) == SNF_OK);
  CHECK(bound <= 4);
  size_t before = snf_report_num_claims(r);
  REQUIRE(snf_report_merge(r, up, "upper.") == SNF_OK);
  CHECK(snf_report_num_claims(r) == before + snf_report_num_claims(up));
  snf_report_free(up);
  snf_report_free(r);
  snf_matrix_free(z);
}

TEST_CASE("capi.nondecomp_and_subblocks") {
  snf_report* r = nullptr;
  REQUIRE(snf_certify_nondecomp("choi", 3, 2, &r) == SNF_OK);
  CHECK(snf_report_passed(r) == 1);
  snf_report_free(r);
  REQUIRE(snf_certify_nondecomp("transpose", 3, 2, &r) == SNF_OK);
  CHECK(snf_report_passed(r) == 1);
  snf_report_free(r);
  REQUIRE(snf_certify_nondecomp("identity", 3, 2, &r) == SNF_OK);
  CHECK(snf_report_passed(r) == 0);
  snf_report_free(r);
  CHECK(snf_certify_nondecomp("bogus", 3, 2, &r) == SNF_INVALID_ARGUMENT);
  CHECK(snf_certify_nondecomp("choi", 3, 1, &r) == SNF_INVALID_ARGUMENT);

  snf_matrix* omega = nullptr;
  REQUIRE(snf_construct_maxent(2, &omega, nullptr) == SNF_OK);
  REQUIRE(snf_subblock_appt_falsify(omega, 2, 2, 4, 1, 1, &r) == SNF_OK);
  char* v = nullptr;
  REQUIRE(snf_report_value(r, "status", &v) == SNF_OK);
  CHECK(take(v) == "falsified");
  snf_report_free(r);
  snf_matrix_free(omega);
}

TEST_CASE("capi.ensembles_thread_invariant") {
  snf_report* a = nullptr;
  snf_report* b = nullptr;
  REQUIRE(snf_ensemble_ppt(3, 0.2, 10, 4, 1, &a) == SNF_OK);
  REQUIRE(snf_ensemble_ppt(3, 0.2, 10, 4, 3, &b) == SNF_OK);
  char* ta = nullptr;
  char* tb = nullptr;
  snf_report_csv(a, &ta);
  snf_report_csv(b, &tb);
  CHECK(take(ta) == take(tb));
  snf_report_free(a);
  snf_report_free(b);
  CHECK(snf_ensemble_ppt(3, 0.7, 10, 4, 1, &a) == SNF_INVALID_ARGUMENT);
  CHECK(std::string(snf_version()).size() > 0);
}
