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

#ifndef SNFORGE_REPORT_HPP
#define SNFORGE_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace snforge {

/// One verified statement with the number that justifies it.
struct Claim {
  std::string name;
  bool verdict = false;
  double evidence = 0.0;
  double tolerance = 0.0;
  /// Operation that produced the claim.
  std::string provenance;
  /// Required claims decide CertificateReport::passed(); informational
  /// ones do not.
  bool required = true;
};

struct ReportValue {
  std::string name;
  std::string text;
};

/// Structured verdicts plus the numeric evidence behind each of them.
///
/// Text rendering is line oriented:
///   report <operation>
///   claim <name> verdict <pass|fail> evidence <float> tol <float>
///   value <name> <text>
///   note <text>
class CertificateReport {
 public:
  explicit CertificateReport(std::string operation = {});

  const std::string& operation() const { return operation_; }

  Claim& add_claim(std::string name, bool verdict, double evidence,
                   double tolerance, std::string provenance = {});
  void add_info(std::string name, bool verdict, double evidence,
                double tolerance, std::string provenance = {});
  void add_value(std::string name, double v);
  void add_value(std::string name, std::int64_t v);
  void add_value(std::string name, std::string v);
  void add_note(std::string note);
  /// Appends every claim, value and note of `other`; names get `prefix`.
  void merge(const CertificateReport& other, const std::string& prefix = {});

  const std::vector<Claim>& claims() const { return claims_; }
  const std::vector<ReportValue>& values() const { return values_; }
  const std::vector<std::string>& notes() const { return notes_; }

  const Claim* find_claim(const std::string& name) const;
  std::optional<std::string> find_value(const std::string& name) const;

  /// True iff every required claim passed.
  bool passed() const;

  /// Optional per-trial table, written verbatim by `--csv`.
  std::string csv;

  std::string render_text() const;
  std::string render_json() const;

 private:
  std::string operation_;
  std::vector<Claim> claims_;
  std::vector<ReportValue> values_;
  std::vector<std::string> notes_;
};

/// %.12g formatting shared by every report writer.
std::string format_number(double v);

}  // namespace snforge

#endif  // SNFORGE_REPORT_HPP
