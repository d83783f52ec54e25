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

// Command-line front end. Talks to the library only through snforge.h.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snforge/snforge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct MatrixDeleter {
  void operator()(snf_matrix* m) const { snf_matrix_free(m); }
};
struct ReportDeleter {
  void operator()(snf_report* r) const { snf_report_free(r); }
};
using MatrixPtr = std::unique_ptr<snf_matrix, MatrixDeleter>;
using ReportPtr = std::unique_ptr<snf_report, ReportDeleter>;

// Carries an exit code out of a subcommand callback.
struct Exit {
  int code;
  std::string message;
};

void check(snf_status s) {
  if (s == SNF_OK) return;
  const int code = s == SNF_INTERNAL_ERROR ? kExitFailed : kExitUsage;
  throw Exit{code, snf_last_error()};
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  snf_string_free(s);
  return out;
}

struct Options {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format = "text";
  std::string out;
  std::string csv;
  std::string in;
  std::string report_out;
  std::size_t d = 0, d1 = 0, d2 = 0, k = 0, n = 0;
  double alpha = 0.25;
  std::size_t trials = 0;
  std::size_t samples = 100;
  std::size_t restarts = 16;
  bool normalize = false;
  double psd_tol = 1e-9;
  double eig_tol = 1e-9;
  double sv_tol = 1e-10;
  std::string map = "choi";
  std::string choi_in;
  std::size_t d_in = 0, d_out = 0;
  std::string state;
  std::string family = "scaled";
  std::string pt_side = "A";
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Exit{kExitUsage, "cannot open '" + path + "' for writing"};
  f << text;
}

int finish(const Options& o, snf_report* report, const std::string& report_path) {
  char* text = nullptr;
  check(snf_report_render(report, o.format == "json" ? 1 : 0, &text));
  write_text(report_path, take_string(text));
  if (!o.csv.empty()) {
    char* csv = nullptr;
    check(snf_report_csv(report, &csv));
    write_text(o.csv, take_string(csv));
  }
  return snf_report_passed(report) ? kExitOk : kExitFailed;
}

MatrixPtr read_input(const std::string& path) {
  snf_matrix* m = nullptr;
  check(snf_matrix_read(path.c_str(), &m));
  return MatrixPtr(m);
}

MatrixPtr family_or_input(const Options& o, bool normalized) {
  if (!o.in.empty()) return read_input(o.in);
  if (o.d1 == 0 || o.d2 == 0) throw Exit{kExitUsage, "need --in or both --d1 and --d2"};
  snf_matrix* m = nullptr;
  check(snf_construct_family(o.d1, o.d2, normalized ? 1 : 0, &m, nullptr));
  return MatrixPtr(m);
}

// Bipartite (d1, d2) operator for the sub-block commands.
MatrixPtr bipartite_input(const Options& o, std::size_t& d1, std::size_t& d2) {
  snf_matrix* m = nullptr;
  if (o.state == "ptinv") {
    if (o.d == 0) throw Exit{kExitUsage, "--state ptinv needs --d"};
    check(snf_construct_ptinv(o.d, &m, nullptr));
    d1 = d2 = o.d;
    return MatrixPtr(m);
  }
  if (o.d1 == 0 || o.d2 == 0) throw Exit{kExitUsage, "need --d1 and --d2"};
  d1 = o.d1;
  d2 = o.d2;
  const std::size_t n = d1 * d2;
  if (o.state == "maxmixed" || o.state == "product") {
    std::vector<double> re_im(2 * n * n, 0.0);
    if (o.state == "maxmixed") {
      for (std::size_t i = 0; i < n; ++i) re_im[2 * (i * n + i)] = 1.0 / static_cast<double>(n);
    } else {
      re_im[0] = 1.0;
    }
    const std::size_t dims[2] = {d1, d2};
    check(snf_matrix_create(2, dims, nullptr, re_im.data(), &m));
    return MatrixPtr(m);
  }
  if (!o.state.empty()) throw Exit{kExitUsage, "unknown --state '" + o.state + "'"};
  if (o.in.empty()) throw Exit{kExitUsage, "need --in or --state"};
  MatrixPtr raw = read_input(o.in);
  check(snf_matrix_as_bipartite(raw.get(), d1, d2, &m));
  return MatrixPtr(m);
}

std::uint64_t default_seed() {
  const char* env = std::getenv("SNFORGE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || errno != 0 || env[0] == '-') {
    throw Exit{kExitUsage, std::string("SNFORGE_SEED is not an unsigned integer: ") + env};
  }
  return v;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "Master seed (default: SNFORGE_SEED or 0)");
  app->add_option("--threads", o.threads, "Worker threads; never changes output")
      ->check(CLI::Range(1u, 256u));
  app->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  app->add_option("--csv", o.csv, "Write per-trial CSV to this path");
}

void add_tolerances(CLI::App* app, Options& o) {
  app->add_option("--psd-tol", o.psd_tol, "Relative PSD tolerance")
      ->check(CLI::PositiveNumber);
  app->add_option("--eig-tol", o.eig_tol, "Relative eigenvalue cutoff")
      ->check(CLI::PositiveNumber);
  app->add_option("--sv-tol", o.sv_tol, "Relative singular-value tolerance")
      ->check(CLI::PositiveNumber);
}

using Action = std::function<int()>;

int run(int argc, char** argv) {
  CLI::App app{"snforge: PPT states with high Schmidt number, certificates and ensembles"};
  app.require_subcommand(1);
  Options o;
  o.seed = default_seed();
  Action action;

  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 Action a) {
    CLI::App* c = parent->add_subcommand(name, help);
    add_common(c, o);
    c->callback([&action, a] { action = a; });
    return c;
  };

  // construct
  CLI::App* construct = app.add_subcommand("construct", "Build states and operators");
  construct->require_subcommand(1);
  auto emit_matrix = [&](snf_matrix* raw, snf_report* rep) {
    MatrixPtr m(raw);
    ReportPtr r(rep);
    if (!o.out.empty()) check(snf_matrix_write(m.get(), o.out.c_str()));
    return finish(o, r.get(), o.report_out);
  };
  auto construct_opts = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Matrix output path");
    c->add_option("--report", o.report_out, "Report output path (default stdout)");
  };
  {
    auto* c = sub(construct, "theorem3",
                  "X (x) (1-Omega) + Y (x) Omega family (--d1 --d2), or its d x d "
                  "regrouping (--d)",
                  [&] {
                    snf_matrix* m = nullptr;
                    snf_report* r = nullptr;
                    if (o.d != 0) {
                      check(snf_construct_scaled(o.d, &m, &r));
                    } else {
                      if (o.d1 == 0 || o.d2 == 0) throw Exit{kExitUsage, "need --d1 --d2 or --d"};
                      check(snf_construct_family(o.d1, o.d2, o.normalize ? 1 : 0, &m, &r));
                    }
                    return emit_matrix(m, r);
                  });
    c->add_option("--d1", o.d1);
    c->add_option("--d2", o.d2);
    c->add_option("--d", o.d, "Regrouped PPT state on d x d");
    c->add_flag("--normalize", o.normalize, "Scale to unit trace");
    construct_opts(c);
  }
  {
    auto* c = sub(construct, "ptinv", "PT-invariant PPT state on d x d", [&] {
      snf_matrix* m = nullptr;
      snf_report* r = nullptr;
      check(snf_construct_ptinv(o.d, &m, &r));
      return emit_matrix(m, r);
    });
    c->add_option("--d", o.d)->required();
    construct_opts(c);
  }
  {
    auto* c = sub(construct, "lift", "PT-invariant lift of --in or of the normalized family",
                  [&] {
                    MatrixPtr base = family_or_input(o, true);
                    snf_matrix* m = nullptr;
                    snf_report* r = nullptr;
                    check(snf_construct_lift(base.get(), nullptr, 0, &m, &r));
                    return emit_matrix(m, r);
                  });
    c->add_option("--in", o.in);
    c->add_option("--d1", o.d1);
    c->add_option("--d2", o.d2);
    construct_opts(c);
  }
  {
    auto* c = sub(construct, "maxent", "Maximally entangled projector on d x d", [&] {
      snf_matrix* m = nullptr;
      snf_report* r = nullptr;
      check(snf_construct_maxent(o.d, &m, &r));
      return emit_matrix(m, r);
    });
    c->add_option("--d", o.d)->required();
    construct_opts(c);
  }
  {
    auto* c = sub(construct, "flip", "Swap operator on d x d", [&] {
      snf_matrix* m = nullptr;
      snf_report* r = nullptr;
      check(snf_construct_flip(o.d, &m, &r));
      return emit_matrix(m, r);
    });
    c->add_option("--d", o.d)->required();
    construct_opts(c);
  }

  // certify
  CLI::App* certify = app.add_subcommand("certify", "Run certificates");
  certify->require_subcommand(1);
  auto report_only = [&](snf_report* rep) {
    ReportPtr r(rep);
    return finish(o, r.get(), o.out);
  };
  auto family_inputs = [&](CLI::App* c) {
    c->add_option("--in", o.in, "Operator of family form on (d1, d1, d2, d2)");
    c->add_option("--d1", o.d1);
    c->add_option("--d2", o.d2);
    c->add_option("--out", o.out, "Report output path (default stdout)");
    add_tolerances(c, o);
  };
  family_inputs(sub(certify, "lemma1", "Positivity and PPT from the X, Y blocks", [&] {
    MatrixPtr z = family_or_input(o, false);
    snf_report* r = nullptr;
    check(snf_certify_lemma1(z.get(), o.psd_tol, &r));
    return report_only(r);
  }));
  family_inputs(sub(certify, "detector", "Choi-map detector on the A2 factor", [&] {
    MatrixPtr z = family_or_input(o, false);
    snf_report* r = nullptr;
    check(snf_certify_detector(z.get(), &r));
    return report_only(r);
  }));
  {
    auto* c = sub(certify, "sn-lower", "Schmidt-number lower bound", [&] {
      snf_report* r = nullptr;
      int bound = 0;
      if (o.d != 0) {
        if (o.family == "ptinv") {
          check(snf_certify_ptinv_family(o.d, &r, &bound));
        } else {
          check(snf_certify_scaled(o.d, &r, &bound));
        }
      } else {
        MatrixPtr z = family_or_input(o, false);
        check(snf_certify_sn_lower(z.get(), o.psd_tol, &r, &bound));
      }
      return report_only(r);
    });
    family_inputs(c);
    c->add_option("--d", o.d, "Certify the d x d state of --family instead");
    c->add_option("--family", o.family)->check(CLI::IsMember({"scaled", "ptinv"}));
  }
  family_inputs(sub(certify, "sn-upper-gamma",
                    "Eigenbasis upper bound on the partial transpose", [&] {
                      MatrixPtr z = family_or_input(o, false);
                      snf_report* r = nullptr;
                      int bound = 0;
                      check(snf_certify_sn_upper_gamma(z.get(), o.eig_tol, o.sv_tol, &r,
                                                       &bound));
                      return report_only(r);
                    }));
  {
    auto* c = sub(certify, "sn-diff", "Lower bound on SN(Z) - SN(Z^Gamma)", [&] {
      snf_report* r = nullptr;
      check(snf_certify_sn_diff(o.d1, o.d2, o.sv_tol, &r));
      return report_only(r);
    });
    c->add_option("--d1", o.d1)->required();
    c->add_option("--d2", o.d2)->required();
    c->add_option("--out", o.out, "Report output path (default stdout)");
    add_tolerances(c, o);
  }
  {
    auto* c = sub(certify, "nondecomp", "Non-decomposability of id_k (x) L", [&] {
      snf_report* r = nullptr;
      if (!o.choi_in.empty()) {
        MatrixPtr choi = read_input(o.choi_in);
        check(snf_certify_nondecomp_choi(choi.get(), o.d_in, o.d_out, o.k, &r));
      } else {
        check(snf_certify_nondecomp(o.map.c_str(), o.d, o.k, &r));
      }
      return report_only(r);
    });
    c->add_option("--map", o.map)->check(CLI::IsMember({"choi", "transpose", "identity"}));
    c->add_option("--d", o.d);
    c->add_option("--k", o.k)->required();
    c->add_option("--choi-in", o.choi_in, "Choi matrix file on (out, in)");
    c->add_option("--d-in", o.d_in);
    c->add_option("--d-out", o.d_out);
    c->add_option("--out", o.out, "Report output path (default stdout)");
  }

  // subblock
  CLI::App* subblock = app.add_subcommand("subblock", "Sub-block analysis");
  subblock->require_subcommand(1);
  auto bipartite_opts = [&](CLI::App* c) {
    c->add_option("--in", o.in, "Matrix file, viewed as (d1, d2)");
    c->add_option("--state", o.state, "Built-in state")
        ->check(CLI::IsMember({"maxmixed", "product", "ptinv"}));
    c->add_option("--d", o.d, "Dimension for --state ptinv");
    c->add_option("--d1", o.d1);
    c->add_option("--d2", o.d2);
    c->add_option("--out", o.out, "Report output path (default stdout)");
  };
  {
    auto* c = sub(subblock, "scan", "Randomized sub-block absolute-PPT scan", [&] {
      std::size_t d1 = 0, d2 = 0;
      MatrixPtr m = bipartite_input(o, d1, d2);
      snf_report* r = nullptr;
      check(snf_subblock_scan(m.get(), d1, d2, o.trials ? o.trials : 64, o.seed, o.threads, &r));
      return report_only(r);
    });
    bipartite_opts(c);
    c->add_option("--trials", o.trials, "Trials per pair (default 64)");
  }
  {
    auto* c = sub(subblock, "ptinv-bound", "Upper bound for PT-invariant states", [&] {
      std::size_t d1 = 0, d2 = 0;
      MatrixPtr m = bipartite_input(o, d1, d2);
      // Invariance under transposing B is checked on the swapped operator.
      if (o.pt_side == "B" || o.state == "ptinv") {
        snf_matrix* s = nullptr;
        check(snf_matrix_swap(m.get(), &s));
        m.reset(s);
        std::swap(d1, d2);
      }
      snf_report* r = nullptr;
      int bound = 0;
      check(snf_subblock_ptinv_bound(m.get(), d1, d2, &r, &bound));
      return report_only(r);
    });
    bipartite_opts(c);
    c->add_option("--pt-side", o.pt_side, "Factor the state is invariant under transposing")
        ->check(CLI::IsMember({"A", "B"}));
  }
  {
    auto* c = sub(subblock, "appt-falsify", "Search for a unitary making the state NPT", [&] {
      std::size_t d1 = 0, d2 = 0;
      MatrixPtr m = bipartite_input(o, d1, d2);
      snf_report* r = nullptr;
      check(snf_subblock_appt_falsify(m.get(), d1, d2, o.trials ? o.trials : 64, o.seed,
                                      o.threads, &r));
      return report_only(r);
    });
    bipartite_opts(c);
    c->add_option("--trials", o.trials, "Haar trials (default 64)");
  }

  // ensemble
  CLI::App* ensemble = app.add_subcommand("ensemble", "Random-state experiments");
  ensemble->require_subcommand(1);
  auto ensemble_opts = [&](CLI::App* c) {
    c->add_option("--d", o.d)->required();
    c->add_option("--alpha", o.alpha, "Noise strength in (0, 1/2)");
    c->add_option("--trials", o.trials)->required();
    c->add_option("--out", o.out, "Report output path (default stdout)");
  };
  ensemble_opts(sub(ensemble, "ppt", "Empirical PPT frequency", [&] {
    snf_report* r = nullptr;
    check(snf_ensemble_ppt(o.d, o.alpha, o.trials, o.seed, o.threads, &r));
    return report_only(r);
  }));
  ensemble_opts(sub(ensemble, "witness", "Schmidt-number witness values", [&] {
    snf_report* r = nullptr;
    check(snf_ensemble_witness(o.d, o.alpha, o.trials, o.seed, o.threads, &r));
    return report_only(r);
  }));
  {
    auto* c = sub(ensemble, "meanwidth", "Heuristic mean-width estimate", [&] {
      snf_report* r = nullptr;
      check(snf_ensemble_meanwidth(o.d, o.k, o.samples, o.restarts, o.seed, o.threads, &r));
      return report_only(r);
    });
    c->add_option("--d", o.d)->required();
    c->add_option("--k", o.k)->required();
    c->add_option("--samples", o.samples);
    c->add_option("--restarts", o.restarts);
    c->add_option("--out", o.out, "Report output path (default stdout)");
  }
  {
    auto* c = sub(ensemble, "gue-stats", "Spectral statistics of traceless GUE samples", [&] {
      std::size_t n = o.n != 0 ? o.n : o.d * o.d;
      if (n == 0) throw Exit{kExitUsage, "need --n or --d"};
      snf_report* r = nullptr;
      check(snf_ensemble_gue_stats(n, o.samples, o.seed, o.threads, &r));
      return report_only(r);
    });
    c->add_option("--n", o.n, "Matrix size");
    c->add_option("--d", o.d, "Use n = d^2");
    c->add_option("--samples", o.samples);
    c->add_option("--out", o.out, "Report output path (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "snforge: %s\n", e.what());
    return kExitUsage;
  }
  if (!action) return kExitUsage;
  return action();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Exit& e) {
    if (!e.message.empty()) std::fprintf(stderr, "snforge: error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "snforge: error: %s\n", e.what());
    return kExitFailed;
  }
}
