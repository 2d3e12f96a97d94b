// Copyright 2026 The hafmoments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: exact moments, Monte Carlo estimates, m2 scans,
// GBS sector checks and the cross-oracle verification suite.
//
// Exit codes: 0 ok, 1 check failure, 2 usage or cap error.

#include "hafmoments/anticoncentration.hpp"
#include "hafmoments/errors.hpp"
#include "hafmoments/gbs.hpp"
#include "hafmoments/manifest.hpp"
#include "hafmoments/moments_exact.hpp"
#include "hafmoments/moments_mc.hpp"
#include "hafmoments/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hm = hafmoments;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int jobs_default() {
  if (const char* env = std::getenv("HAFMOMENTS_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Session {
 public:
  Session(int argc, char** argv) : start_(std::chrono::steady_clock::now()) {
    for (int i = 0; i < argc; ++i) manifest_.command_line.emplace_back(argv[i]);
    manifest_.version = HAFMOMENTS_VERSION;
  }

  hm::RunManifest& manifest() { return manifest_; }

  /// Writes to `out` (plus manifest) when given, else to stdout.
  void emit(const std::string& out, const std::string& contents) {
    if (out.empty()) {
      std::cout << contents;
      return;
    }
    manifest_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    hm::write_with_manifest(out, contents, manifest_);
    std::cerr << "wrote " << out << " and " << hm::manifest_path_for(out).string() << '\n';
  }

 private:
  std::chrono::steady_clock::time_point start_;
  hm::RunManifest manifest_;
};

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw hm::DomainError("not an integer list entry: '" + item + "'");
    values.push_back(static_cast<T>(v));
  }
  return values;
}

CLI::Range positive() { return CLI::Range(1L, std::numeric_limits<long>::max()); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of Gaussian boson sampling output probabilities"};
  app.set_version_flag("--version", std::string("hafmoments ") + HAFMOMENTS_VERSION);
  app.require_subcommand(1);
  Session session(argc, argv);
  auto& manifest = session.manifest();

  int jobs = jobs_default();
  bool as_json = false;
  std::string out;

  // m1 ---------------------------------------------------------------------
  auto* m1 = app.add_subcommand("m1", "First moment M1(k,n) as an exact integer");
  long m1_k = 1;
  int m1_n = 1;
  std::string m1_mode = "closed";
  int m1_cap = hm::kDefaultFirstMomentCap;
  m1->add_option("--k", m1_k, "Squeezed modes")->required()->check(positive());
  m1->add_option("--n", m1_n, "Photon pairs")->required()->check(positive());
  m1->add_option("--mode", m1_mode, "closed | enumerate")
      ->check(CLI::IsMember({"closed", "enumerate"}));
  m1->add_option("--cap", m1_cap, "Enumeration cap on n");
  m1->add_flag("--json", as_json, "Print JSON");
  m1->add_option("--out", out, "Write result to file (with manifest)");
  m1->callback([&] {
    manifest.caps = {{"first_moment", m1_cap}};
    hm::BigInt value;
    if (m1_mode == "closed") {
      value = hm::first_moment_closed(m1_k, m1_n);
    } else {
      value = hm::double_factorial(2L * m1_n - 1) *
              hm::first_moment_poly(m1_n, m1_cap).evaluate(hm::BigInt(m1_k));
    }
    std::string text;
    if (as_json) {
      text = nlohmann::json{{"k", m1_k}, {"n", m1_n}, {"mode", m1_mode}, {"m1", value.str()}}
                 .dump() + "\n";
    } else {
      text = value.str() + "\n";
    }
    session.emit(out, text);
  });

  // m2poly -----------------------------------------------------------------
  auto* m2poly = app.add_subcommand("m2poly", "Second-moment coefficients c_i by enumeration");
  int m2_n = 1;
  bool allow_n4 = false;
  bool progress = false;
  m2poly->add_option("--n", m2_n, "Photon pairs")->required()->check(positive());
  m2poly->add_flag("--allow-n4", allow_n4, "Permit the n=4 long run (~3e8 graphs)");
  m2poly->add_option("--jobs", jobs, "Worker threads (default $HAFMOMENTS_JOBS or 1)");
  m2poly->add_flag("--progress", progress, "Report progress on stderr");
  m2poly->add_option("--out", out, "Write JSON to file (with manifest)");
  m2poly->callback([&] {
    hm::SecondMomentOptions options;
    options.allow_long_run = allow_n4;
    options.jobs = jobs;
    if (progress) {
      options.progress = [](std::size_t done, std::size_t total) {
        if (done % std::max<std::size_t>(total / 100, 1) == 0 || done == total) {
          std::cerr << "\rprogress " << done << "/" << total << std::flush;
          if (done == total) std::cerr << '\n';
        }
      };
    }
    const auto poly = hm::second_moment_coeffs(m2_n, options);
    const hm::BigInt df = hm::double_factorial(2L * m2_n - 1);
    const hm::BigInt expected_sum = (hm::BigInt(1) << (2 * m2_n)) * df * df * df;
    const hm::BigInt expected_top = hm::double_factorial(2L * m2_n);
    const bool sum_ok = poly.coefficient_sum() == expected_sum;
    const bool top_ok = poly.coefficient(2 * m2_n) == expected_top;
    manifest.caps = {{"second_moment", allow_n4 ? hm::kLongRunSecondMomentCap
                                                : hm::kDefaultSecondMomentCap}};
    manifest.checks = {
        {"sum_c_i", {{"value", poly.coefficient_sum().str()},
                     {"expected", expected_sum.str()}, {"ok", sum_ok}}},
        {"c_2n", {{"value", poly.coefficient(2 * m2_n).str()},
                  {"expected", expected_top.str()}, {"ok", top_ok}}}};
    std::cerr << "check sum c_i = 4^n((2n-1)!!)^3: " << (sum_ok ? "ok" : "FAILED") << '\n'
              << "check c_2n = (2n)!! = " << expected_top.str() << ": "
              << (top_ok ? "ok" : "FAILED") << '\n';
    session.emit(out, nlohmann::json(poly).dump() + "\n");
    if (!sum_ok || !top_ok) throw CheckFailed("second-moment built-in checks failed");
  });

  // mc ---------------------------------------------------------------------
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of M_t(k,n)");
  int mc_t = 1, mc_k = 1, mc_n = 1, mc_batches = hm::kDefaultBatches;
  std::int64_t mc_samples = 100000;
  std::uint64_t mc_seed = 1;
  bool median_of_means = false;
  mc->add_option("--t", mc_t, "Moment order (1 or 2)")->check(CLI::IsMember({1, 2}));
  mc->add_option("--k", mc_k, "Squeezed modes")->required()->check(positive());
  mc->add_option("--n", mc_n, "Photon pairs")->required()->check(positive());
  mc->add_option("--samples", mc_samples, "Total samples");
  mc->add_option("--batches", mc_batches, "Batches for the batch-means error");
  mc->add_option("--seed", mc_seed, "Seed");
  mc->add_option("--jobs", jobs, "Worker threads (default $HAFMOMENTS_JOBS or 1)");
  mc->add_flag("--median-of-means", median_of_means, "Median of batch means");
  mc->add_option("--out", out, "Write JSON to file (with manifest)");
  mc->callback([&] {
    hm::MCOptions options;
    options.jobs = jobs;
    if (median_of_means) options.combiner = hm::BatchCombiner::kMedianOfMeans;
    const auto estimate =
        hm::estimate_moment(mc_t, mc_k, mc_n, mc_samples, mc_batches, mc_seed, options);
    manifest.seeds = {mc_seed};
    manifest.caps = {{"hafnian", hm::kDefaultHafnianCap}};
    session.emit(out, nlohmann::json(estimate).dump() + "\n");
  });

  // scan -------------------------------------------------------------------
  auto* scan = app.add_subcommand("scan", "Tabulate m2(k,n) against its reference curves");
  std::string n_list, k_list, scan_mode = "exact", format = "csv";
  std::int64_t scan_samples = 100000;
  int scan_batches = hm::kDefaultBatches;
  std::uint64_t scan_seed = 1;
  scan->add_option("--n-list", n_list, "Comma-separated n values")->required();
  scan->add_option("--k-list", k_list, "Comma-separated k values")->required();
  scan->add_option("--mode", scan_mode, "exact | monte-carlo")
      ->check(CLI::IsMember({"exact", "monte-carlo", "mc"}));
  scan->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--samples", scan_samples, "Monte Carlo samples per cell");
  scan->add_option("--batches", scan_batches, "Monte Carlo batches");
  scan->add_option("--seed", scan_seed, "Monte Carlo seed");
  scan->add_option("--jobs", jobs, "Worker threads (default $HAFMOMENTS_JOBS or 1)");
  scan->add_option("--out", out, "Write table to file (with manifest)");
  scan->callback([&] {
    hm::M2Options options;
    options.samples = scan_samples;
    options.batches = scan_batches;
    options.seed = scan_seed;
    options.jobs = jobs;
    options.enumeration.jobs = jobs;
    const auto mode = hm::parse_m2_mode(scan_mode);
    const auto rows = hm::transition_scan(parse_list<int>(n_list), parse_list<long>(k_list),
                                          mode, options);
    manifest.caps = {{"second_moment", hm::kDefaultSecondMomentCap},
                     {"hafnian", hm::kDefaultHafnianCap}};
    if (mode == hm::M2Mode::kMonteCarlo) manifest.seeds = {scan_seed};
    const bool json_out =
        format == "json" || (out.size() > 5 && out.substr(out.size() - 5) == ".json");
    session.emit(out, json_out ? hm::scan_to_json(rows).dump(2) + "\n"
                               : hm::scan_to_csv(rows));
  });

  // gbs --------------------------------------------------------------------
  auto* gbs = app.add_subcommand("gbs", "Physical GBS layer checks");
  gbs->require_subcommand(1);
  int g_m = 0, g_k = 1, g_photons = 0, g_trials = 5;
  double g_r = 0.0, g_n = 0.0;
  std::uint64_t g_seed = 1;

  auto* sector = gbs->add_subcommand("sector-sum",
                                     "max |sum of outcome probabilities - P(2n)| over Haar trials");
  sector->add_option("--m", g_m, "Modes")->required()->check(positive());
  sector->add_option("--k", g_k, "Squeezed modes")->required()->check(positive());
  sector->add_option("--r", g_r, "Squeezing parameter")->required();
  sector->add_option("--photons", g_photons, "Total photons 2n")->required();
  sector->add_option("--trials", g_trials, "Haar unitaries");
  sector->add_option("--seed", g_seed, "Seed");
  sector->callback([&] {
    if (g_photons % 2 != 0) throw hm::DomainError("--photons must be even");
    manifest.seeds = {g_seed};
    const hm::GbsConfig config{g_m, g_k, g_r};
    std::cout << format_real(hm::sector_sum_deviation(config, g_photons / 2, g_trials, g_seed))
              << '\n';
  });

  auto* p2n = gbs->add_subcommand("p2n", "Probability of 2n total photons");
  p2n->add_option("--k", g_k, "Squeezed modes")->required()->check(positive());
  p2n->add_option("--r", g_r, "Squeezing parameter")->required();
  p2n->add_option("--photons", g_photons, "Total photons 2n")->required();
  p2n->callback([&] {
    if (g_photons % 2 != 0) throw hm::DomainError("--photons must be even");
    std::cout << format_real(hm::sector_probability({g_k, g_k, g_r}, g_photons / 2)) << '\n';
  });

  auto* sbs = gbs->add_subcommand("sbs-collision",
                                  "Input collision probability of scattershot sampling");
  sbs->add_option("--n", g_n, "Mean photon number")->required();
  sbs->add_option("--k", g_k, "Two-mode squeezed sources")->required()->check(positive());
  sbs->callback([&] { std::cout << format_real(hm::sbs_collision_probability(g_n, g_k)) << '\n'; });

  auto* photons = gbs->add_subcommand("expected-photons", "E[2n] = k sinh^2 r");
  photons->add_option("--m", g_m, "Modes (default k)");
  photons->add_option("--k", g_k, "Squeezed modes")->required()->check(positive());
  photons->add_option("--r", g_r, "Squeezing parameter")->required();
  photons->callback([&] {
    const auto e = hm::expected_photons({g_m > 0 ? g_m : g_k, g_k, g_r});
    std::cout << format_real(e.mean) << '\n';
    std::cerr << "collision-free regime (E[2n] <= sqrt(m)/10): "
              << (e.collision_free_regime ? "yes" : "no") << '\n';
  });

  // verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run the cross-oracle verification suite");
  std::string level = "quick";
  std::uint64_t verify_seed = hm::verify::Context{}.seed;
  verify->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--seed", verify_seed, "Seed for randomized checks");
  verify->add_option("--jobs", jobs, "Worker threads (default $HAFMOMENTS_JOBS or 1)");
  verify->add_option("--out", out, "Write the report to file (with manifest)");
  verify->callback([&] {
    hm::verify::Context ctx;
    ctx.level = hm::verify::parse_level(level);
    ctx.jobs = jobs;
    ctx.seed = verify_seed;
    std::ostringstream report;
    const auto summary = hm::verify::run_checks(hm::verify::standard_checks(), ctx, report);
    report << (summary.ok() ? "OK" : "FAILED") << ": " << summary.passed << " passed, "
           << summary.failed << " failed\n";
    manifest.seeds = {verify_seed};
    manifest.caps = {{"first_moment", hm::kDefaultFirstMomentCap},
                     {"second_moment", hm::kDefaultSecondMomentCap}};
    session.emit(out, report.str());
    if (!out.empty()) std::cout << report.str();
    if (!summary.ok()) {
      std::string names;
      for (const auto& n : summary.failed_names) names += (names.empty() ? "" : ", ") + n;
      throw CheckFailed("failed checks: " + names);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const CheckFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailure;
  } catch (const hm::CapExceeded& e) {
    std::cerr << "error: cap exceeded: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
