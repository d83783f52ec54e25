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

#include "snforge/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace snforge {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CertificateReport::CertificateReport(std::string operation)
    : operation_(std::move(operation)) {}

Claim& CertificateReport::add_claim(std::string name, bool verdict,
                                    double evidence, double tolerance,
                                    std::string provenance) {
  if (provenance.empty()) provenance = operation_;
  claims_.push_back(Claim{std::move(name), verdict, evidence, tolerance,
                          std::move(provenance), true});
  return claims_.back();
}

void CertificateReport::add_info(std::string name, bool verdict,
                                 double evidence, double tolerance,
                                 std::string provenance) {
  add_claim(std::move(name), verdict, evidence, tolerance,
            std::move(provenance))
      .required = false;
}

void CertificateReport::add_value(std::string name, double v) {
  values_.push_back({std::move(name), format_number(v)});
}

void CertificateReport::add_value(std::string name, std::int64_t v) {
  values_.push_back({std::move(name), std::to_string(v)});
}

void CertificateReport::add_value(std::string name, std::string v) {
  values_.push_back({std::move(name), std::move(v)});
}

void CertificateReport::add_note(std::string note) {
  notes_.push_back(std::move(note));
}

void CertificateReport::merge(const CertificateReport& other,
                              const std::string& prefix) {
  for (auto c : other.claims_) {
    c.name = prefix + c.name;
    claims_.push_back(std::move(c));
  }
  for (auto v : other.values_) {
    v.name = prefix + v.name;
    values_.push_back(std::move(v));
  }
  for (const auto& n : other.notes_) notes_.push_back(n);
}

const Claim* CertificateReport::find_claim(const std::string& name) const {
  for (const auto& c : claims_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::optional<std::string> CertificateReport::find_value(
    const std::string& name) const {
  for (const auto& v : values_) {
    if (v.name == name) return v.text;
  }
  return std::nullopt;
}

bool CertificateReport::passed() const {
  for (const auto& c : claims_) {
    if (c.required && !c.verdict) return false;
  }
  return true;
}

std::string CertificateReport::render_text() const {
  std::string out = "report " + operation_ + "\n";
  for (const auto& c : claims_) {
    out += "claim " + c.name + " verdict " + (c.verdict ? "pass" : "fail") +
           " evidence " + format_number(c.evidence) + " tol " +
           format_number(c.tolerance) + "\n";
  }
  for (const auto& v : values_) out += "value " + v.name + " " + v.text + "\n";
  for (const auto& n : notes_) out += "note " + n + "\n";
  return out;
}

namespace {

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

std::string CertificateReport::render_json() const {
  nlohmann::ordered_json doc;
  doc["operation"] = operation_;
  doc["passed"] = passed();
  auto claims = nlohmann::ordered_json::array();
  for (const auto& c : claims_) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["verdict"] = c.verdict ? "pass" : "fail";
    j["evidence"] = json_number(c.evidence);
    j["tol"] = json_number(c.tolerance);
    j["provenance"] = c.provenance;
    j["required"] = c.required;
    claims.push_back(std::move(j));
  }
  doc["claims"] = std::move(claims);
  auto values = nlohmann::ordered_json::object();
  for (const auto& v : values_) values[v.name] = v.text;
  doc["values"] = std::move(values);
  doc["notes"] = notes_;
  return doc.dump(2) + "\n";
}

}  // namespace snforge
