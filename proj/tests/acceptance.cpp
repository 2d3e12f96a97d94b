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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Set HAFMOMENTS_ACCEPT_N4=1 to add the n=4 second-moment
// enumeration to criterion 2.

#include "hafmoments/anticoncentration.hpp"
#include "hafmoments/gbs.hpp"
#include "hafmoments/hafnian.hpp"
#include "hafmoments/moments_exact.hpp"
#include "hafmoments/moments_mc.hpp"
#include "hafmoments/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace hafmoments;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 means no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

BigInt pow4(int n) { return BigInt(1) << (2 * n); }

Outcome first_moment_identity() {
  for (int n = 1; n <= 6; ++n) {
    if (first_moment_poly(n) != rising_even_product(n)) {
      return {false, "mismatch at n=" + std::to_string(n)};
    }
  }
  return {true, "enumeration equals prod (k+2j-2) for n=1..6"};
}

Outcome second_moment_identities() {
  const bool with_n4 = std::getenv("HAFMOMENTS_ACCEPT_N4") != nullptr;
  const int max_n = with_n4 ? 4 : 3;
  std::ostringstream detail;
  for (int n = 1; n <= max_n; ++n) {
    SecondMomentOptions options;
    options.allow_long_run = n == 4;
    const auto poly = second_moment_coeffs(n, options);
    const BigInt df = double_factorial(2 * n - 1);
    const BigInt sum = poly.coefficient_sum();
    if (poly.coefficient(2 * n) != double_factorial(2 * n) || sum != pow4(n) * df * df * df ||
        df * sum != df * df * df * df * pow4(n)) {
      return {false, "identity fails at n=" + std::to_string(n)};
    }
    detail << (n > 1 ? ", " : "") << "n=" << n << " sum=" << sum;
  }
  if (!with_n4) detail << " (n=4 skipped)";
  return {true, detail.str()};
}

Outcome top_coefficient_cross_check() {
  for (int n = 1; n <= 3; ++n) {
    if (second_moment_coeffs(n).coefficient(2 * n) != first_moment_poly(n).evaluate(2)) {
      return {false, "c_2n != f(2,n) at n=" + std::to_string(n)};
    }
  }
  return {true, "c_2n equals f(2,n) for n<=3"};
}

Outcome transition_endpoints() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto poly = second_moment_coeffs(n);
    if (m2_exact_from(1, poly) != BigRational(1, pow4(n))) {
      return {false, "m2(1,n) != 4^-n at n=" + std::to_string(n)};
    }
    const BigRational gap = m2_exact_from(1000000, poly) - m2_limit(n);
    worst = std::max(worst, std::abs(gap.convert_to<double>()));
  }
  const double stirling = m2_limit(50).convert_to<double>() * std::sqrt(std::numbers::pi * 50);
  const bool ok = worst < 1e-4 && std::abs(stirling - 1.0) < 0.01;
  return {ok, "max |m2(1e6,n) - limit| = " + fmt("%.3e", worst) +
                  ", m2_limit(50) sqrt(50 pi) = " + fmt("%.6f", stirling)};
}

Outcome monte_carlo_vs_exact() {
  struct Case {
    int t, k, n;
    std::int64_t samples;
  };
  std::vector<Case> cases;
  for (int k : {1, 2, 4}) {
    for (int n : {1, 2, 3}) cases.push_back({1, k, n, 100000});
  }
  for (int k : {1, 2}) {
    for (int n : {1, 2}) cases.push_back({2, k, n, 1000000});
  }
  double worst = 0.0;
  std::string where;
  std::uint64_t seed = 1000;
  for (const auto& c : cases) {
    const double exact =
        c.t == 1 ? first_moment_closed(c.k, c.n).convert_to<double>()
                 : second_moment_eval(c.k, second_moment_coeffs(c.n)).convert_to<double>();
    const auto e = estimate_moment(c.t, c.k, c.n, c.samples, kDefaultBatches, ++seed);
    const double z = std::abs(e.mean - exact) / e.std_error;
    if (z > worst) {
      worst = z;
      where = " at t=" + std::to_string(c.t) + " k=" + std::to_string(c.k) +
              " n=" + std::to_string(c.n);
    }
  }
  return {worst < 5.0, std::to_string(cases.size()) + " cells, max |mean - exact| / stderr = " +
                           fmt("%.3f", worst) + where};
}

Outcome sector_sum_conservation() {
  double worst = 0.0;
  int cells = 0;
  for (int m : {4, 5, 6}) {
    for (int k = 1; k <= m; ++k) {
      for (int n : {1, 2}) {
        worst = std::max(worst, sector_sum_deviation({m, k, 0.4}, n, 10, 77));
        ++cells;
      }
    }
  }
  return {worst < 1e-9, std::to_string(cells) + " (m,k,2n) cells x 10 unitaries, max deviation " +
                            fmt("%.3e", worst)};
}

Outcome convolution_identity() {
  for (int n = 0; n <= kConvolutionMaxN; ++n) {
    for (int k = 1; k <= kConvolutionMaxK; ++k) {
      if (BigRational(convolution_lhs(n, k)) != convolution_rhs(n, k)) {
        return {false, "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k)};
      }
    }
  }
  return {true, "exact for n<=6, k<=8"};
}

Complex draw(CounterStream& s) { return {s.next_normal(), s.next_normal()}; }

double rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

Outcome hafnian_oracles() {
  CounterStream s(derive_key(8, 8));
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const int dim = 2 * n;

    // Permanent embedding with an n x n block.
    std::vector<std::vector<Complex>> w(n, std::vector<Complex>(n));
    SymmetricComplexMatrix block(dim);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        w[i][j] = draw(s);
        block.set(i, n + j, w[i][j]);
      }
    }
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Complex permanent{};
    do {
      Complex term{1.0, 0.0};
      for (int i = 0; i < n; ++i) term *= w[i][p[i]];
      permanent += term;
    } while (std::next_permutation(p.begin(), p.end()));
    worst = std::max(worst, rel(hafnian(block), permanent));

    // Permutation invariance and scaling.
    SymmetricComplexMatrix a(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) a.set(i, j, draw(s));
    }
    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = dim - 1; i > 0; --i) std::swap(perm[i], perm[s.next_u64() % (i + 1)]);
    const Complex c = draw(s);
    SymmetricComplexMatrix permuted(dim);
    SymmetricComplexMatrix scaled(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        permuted.set(i, j, a(perm[i], perm[j]));
        scaled.set(i, j, c * a(i, j));
      }
    }
    const Complex h = hafnian(a);
    worst = std::max(worst, rel(hafnian(permuted), h));
    worst = std::max(worst, rel(hafnian(scaled), std::pow(c, n) * h));
  }
  return {worst < 1e-10, "100 instances, max relative error " + fmt("%.3e", worst)};
}

Outcome verify_determinism() {
  const auto checks = verify::standard_checks();
  std::string reference;
  std::string detail;
  const int runs[] = {1, 1, 2, 4};
  for (int jobs : runs) {
    verify::Context ctx;
    ctx.level = verify::Level::kFull;
    ctx.jobs = jobs;
    std::ostringstream out;
    const auto summary = verify::run_checks(checks, ctx, out);
    if (reference.empty()) {
      reference = out.str();
      detail = std::to_string(summary.passed) + "/" + std::to_string(checks.size()) +
               " checks passed";
    } else if (out.str() != reference) {
      return {false, "report differs with jobs=" + std::to_string(jobs)};
    }
  }
  return {true, "full report byte-identical for jobs 1,1,2,4 (" + detail + ")"};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "first-moment-identity", 5, first_moment_identity},
      {2, "second-moment-identities", 10, second_moment_identities},
      {3, "top-coefficient-cross-check", 0, top_coefficient_cross_check},
      {4, "transition-endpoints", 0, transition_endpoints},
      {5, "monte-carlo-vs-exact", 120, monte_carlo_vs_exact},
      {6, "sector-sum-conservation", 60, sector_sum_conservation},
      {7, "convolution-identity", 0, convolution_identity},
      {8, "hafnian-oracles", 60, hafnian_oracles},
      {9, "verify-determinism", 0, verify_determinism},
  };
  if (std::getenv("HAFMOMENTS_ACCEPT_N4") != nullptr) {
    // The long-run enumeration is not held to the default budget.
    criteria[1].budget_seconds = 0;
  }

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
      outcome.passed = false;
      outcome.detail += "; over the " + fmt("%.0f", c.budget_seconds) + " s budget";
    }
    if (!outcome.passed) ++failed;
    std::printf("%s %d %s: %s [%.2f s]\n", outcome.passed ? "PASS" : "FAIL", c.id,
                c.name.c_str(), outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%s: %d of %zu criteria passed\n", failed == 0 ? "OK" : "FAILED",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
