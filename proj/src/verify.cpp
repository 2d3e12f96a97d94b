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

#include "hafmoments/verify.hpp"

#include "hafmoments/anticoncentration.hpp"
#include "hafmoments/errors.hpp"
#include "hafmoments/gbs.hpp"
#include "hafmoments/hafnian.hpp"
#include "hafmoments/moments_mc.hpp"
#include "hafmoments/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hafmoments::verify {

Level parse_level(const std::string& text) {
  if (text == "quick") return Level::kQuick;
  if (text == "full") return Level::kFull;
  throw DomainError("unknown verify level '" + text + "' (expected quick or full)");
}

MomentPolynomial Context::second_moment(int n) const {
  if (second_moment_source) return second_moment_source(n);
  SecondMomentOptions options;
  options.jobs = jobs;
  return second_moment_coeffs(n, options);
}

namespace {

bool full(const Context& ctx) { return ctx.level == Level::kFull; }

std::string sci(double v) {
  std::ostringstream out;
  out << std::setprecision(3) << std::scientific << v;
  return out.str();
}

std::string fixed6(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << std::fixed << v;
  return out.str();
}

CheckResult pass(std::string detail) { return {true, std::move(detail)}; }
CheckResult fail(std::string detail) { return {false, std::move(detail)}; }

std::string poly_string(const MomentPolynomial& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (i) s += ",";
    s += p.coeffs[i].str();
  }
  return s + "]";
}

// --- first moment ----------------------------------------------------------

CheckResult thm1_poly(const Context& ctx) {
  const int max_n = full(ctx) ? 6 : 2;
  for (int n = 1; n <= max_n; ++n) {
    const auto result = enumerate_first_moment(n);
    const auto expected = rising_even_product(n);
    if (result.poly.coeffs != expected.coeffs) {
      return fail("n=" + std::to_string(n) + " enumerated " + poly_string(result.poly) +
                  " != product " + poly_string(expected));
    }
    if (result.graphs_visited != double_factorial(2 * n - 1)) {
      return fail("n=" + std::to_string(n) + " visited " +
                  std::to_string(result.graphs_visited) + " graphs");
    }
  }
  return pass("enumeration equals prod (k+2j-2) for n=1.." + std::to_string(max_n));
}

CheckResult m1_modes(const Context& ctx) {
  const int max_n = full(ctx) ? 6 : 2;
  for (int n = 1; n <= max_n; ++n) {
    const auto poly = first_moment_poly(n);
    const BigInt norm = double_factorial(2 * n - 1);
    for (long k = 1; k <= 10; ++k) {
      const BigInt enumerated = norm * poly.evaluate(BigInt(k));
      const BigInt closed = first_moment_closed(k, n);
      if (enumerated != closed) {
        return fail("k=" + std::to_string(k) + " n=" + std::to_string(n) + ": " +
                    enumerated.str() + " != " + closed.str());
      }
    }
  }
  return pass("closed form equals enumeration for k<=10, n<=" + std::to_string(max_n));
}

// --- second moment ---------------------------------------------------------

int second_moment_max_n(const Context& ctx) { return full(ctx) ? 3 : 2; }

CheckResult thm2_count(const Context& ctx) {
  std::string detail;
  for (int n = 1; n <= second_moment_max_n(ctx); ++n) {
    const auto poly = ctx.second_moment(n);
    const BigInt df = double_factorial(2 * n - 1);
    const BigInt expected = (BigInt(1) << (2 * n)) * df * df * df;
    if (poly.coefficient_sum() != expected) {
      return fail("n=" + std::to_string(n) + " sum c_i=" + poly.coefficient_sum().str() +
                  " != 4^n((2n-1)!!)^3=" + expected.str());
    }
    if (poly.coefficient(0) != 0 || poly.degree() > 2 * n) {
      return fail("n=" + std::to_string(n) + " coefficients out of range " +
                  poly_string(poly));
    }
    detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) +
              " sum c_i=" + expected.str();
  }
  return pass(detail);
}

CheckResult lemma1_i(const Context& ctx) {
  for (int n = 1; n <= second_moment_max_n(ctx); ++n) {
    const auto poly = ctx.second_moment(n);
    const BigInt df = double_factorial(2 * n - 1);
    const BigInt m2_at_1 = second_moment_eval(1, poly);
    const BigInt expected = df * df * df * df * (BigInt(1) << (2 * n));
    if (m2_at_1 != expected) {
      return fail("n=" + std::to_string(n) + " M2(1,n)=" + m2_at_1.str() +
                  " != ((2n-1)!!)^4 4^n=" + expected.str());
    }
  }
  return pass("M2(1,n) = ((2n-1)!!)^4 4^n for n<=" +
              std::to_string(second_moment_max_n(ctx)));
}

CheckResult lemma1_ii(const Context& ctx) {
  for (int n = 1; n <= second_moment_max_n(ctx); ++n) {
    const auto poly = ctx.second_moment(n);
    const BigInt expected = double_factorial(2 * n);
    if (poly.coefficient(2 * n) != expected) {
      return fail("n=" + std::to_string(n) + " c_2n=" + poly.coefficient(2 * n).str() +
                  " != (2n)!!=" + expected.str());
    }
  }
  return pass("c_2n = (2n)!! for n<=" + std::to_string(second_moment_max_n(ctx)));
}

CheckResult lemma1_ii_cross(const Context& ctx) {
  for (int n = 1; n <= second_moment_max_n(ctx); ++n) {
    const auto poly = ctx.second_moment(n);
    const BigInt f2 = first_moment_poly(n).evaluate(BigInt(2));
    if (poly.coefficient(2 * n) != f2) {
      return fail("n=" + std::to_string(n) + " c_2n=" + poly.coefficient(2 * n).str() +
                  " != f(2,n)=" + f2.str());
    }
  }
  return pass("c_2n equals f(2,n) from first-moment enumeration for n<=" +
              std::to_string(second_moment_max_n(ctx)));
}

CheckResult parity(const Context& ctx) {
  const int max_n = second_moment_max_n(ctx);
  for (int n = 1; n <= max_n; ++n) {
    SecondMomentOptions options;
    options.jobs = ctx.jobs;
    options.check_parity = true;
    const auto result = enumerate_second_moment(n, options);
    if (result.odd_component_graphs != 0) {
      return fail("n=" + std::to_string(n) + ": " +
                  std::to_string(result.odd_component_graphs) +
                  " graphs have an odd component");
    }
  }
  return pass("all components even for n<=" + std::to_string(max_n));
}

// --- anticoncentration -----------------------------------------------------

CheckResult m2_at_k1(const Context& ctx) {
  for (int n = 1; n <= second_moment_max_n(ctx); ++n) {
    const auto value = m2_exact_from(1, ctx.second_moment(n));
    if (value != m2_k1(n)) {
      return fail("n=" + std::to_string(n) + " m2(1,n)=" + rational_to_string(value));
    }
  }
  // Closed forms of the k=1 endpoint for larger n.
  for (int n = 1; n <= 10; ++n) {
    const BigInt m1 = first_moment_closed(1, n);
    const BigInt df = double_factorial(2 * n - 1);
    const BigRational value(m1 * m1, df * df * df * df * (BigInt(1) << (2 * n)));
    if (value != m2_k1(n)) return fail("closed form n=" + std::to_string(n));
  }
  return pass("m2(1,n) = 4^-n exactly (enumerated n<=" +
              std::to_string(second_moment_max_n(ctx)) + ", closed form n<=10)");
}

CheckResult m2_large_k(const Context& ctx) {
  double worst = 0.0;
  for (int n = 1; n <= second_moment_max_n(ctx); ++n) {
    const auto value = m2_exact_from(1000000, ctx.second_moment(n));
    const double gap = BigRational(abs(value - m2_limit(n))).convert_to<double>();
    worst = std::max(worst, gap);
    if (!(gap < 1e-4)) {
      return fail("n=" + std::to_string(n) + " |m2(1e6,n) - C(2n,n)/4^n| = " + sci(gap));
    }
  }
  return pass("max |m2(1e6,n) - C(2n,n)/4^n| = " + sci(worst));
}

CheckResult asymptote(const Context&) {
  const double ratio = m2_limit(50).convert_to<double>() * std::sqrt(std::numbers::pi * 50.0);
  if (!(std::abs(ratio - 1.0) < 0.01)) {
    return fail("m2_limit(50) sqrt(50 pi) = " + fixed6(ratio));
  }
  return pass("m2_limit(50) sqrt(50 pi) = " + fixed6(ratio));
}

// --- Monte Carlo -----------------------------------------------------------

CheckResult mc_vs_exact(const Context& ctx) {
  const std::vector<int> k1 = full(ctx) ? std::vector<int>{1, 2, 4} : std::vector<int>{1, 2};
  const std::vector<int> n1 = full(ctx) ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
  const std::int64_t samples1 = full(ctx) ? 100000 : 20000;
  const std::int64_t samples2 = full(ctx) ? 1000000 : 100000;
  MCOptions options;
  options.jobs = ctx.jobs;
  double worst = 0.0;
  std::uint64_t cell = 0;
  for (int k : k1) {
    for (int n : n1) {
      const auto e = estimate_moment(1, k, n, samples1, kDefaultBatches,
                                     derive_key(ctx.seed, cell++), options);
      const double exact = first_moment_closed(k, n).convert_to<double>();
      const double z = std::abs(e.mean - exact) / e.std_error;
      worst = std::max(worst, z);
      if (!(z < 5.0)) {
        return fail("t=1 k=" + std::to_string(k) + " n=" + std::to_string(n) +
                    " mean=" + fixed6(e.mean) + " exact=" + fixed6(exact) +
                    " z=" + fixed6(z));
      }
    }
  }
  for (int k : {1, 2}) {
    for (int n : {1, 2}) {
      const auto e = estimate_moment(2, k, n, samples2, kDefaultBatches,
                                     derive_key(ctx.seed, cell++), options);
      const double exact = second_moment_eval(k, ctx.second_moment(n)).convert_to<double>();
      const double z = std::abs(e.mean - exact) / e.std_error;
      worst = std::max(worst, z);
      if (!(z < 5.0)) {
        return fail("t=2 k=" + std::to_string(k) + " n=" + std::to_string(n) +
                    " mean=" + fixed6(e.mean) + " exact=" + fixed6(exact) +
                    " z=" + fixed6(z));
      }
    }
  }
  return pass("max |mean - exact| / stderr = " + fixed6(worst));
}

// --- GBS layer -------------------------------------------------------------

CheckResult sector_sums(const Context& ctx) {
  const std::vector<int> modes = full(ctx) ? std::vector<int>{4, 5, 6} : std::vector<int>{4};
  const int max_n = full(ctx) ? 2 : 1;
  const int trials = full(ctx) ? 10 : 2;
  double worst = 0.0;
  std::uint64_t cell = 0;
  for (int m : modes) {
    for (int k = 1; k <= m; ++k) {
      for (int n = 1; n <= max_n; ++n) {
        const GbsConfig config{m, k, 0.4};
        const double dev =
            sector_sum_deviation(config, n, trials, derive_key(ctx.seed ^ 0x5ec7, cell++));
        worst = std::max(worst, dev);
        if (!(dev < 1e-9)) {
          return fail("m=" + std::to_string(m) + " k=" + std::to_string(k) +
                      " 2n=" + std::to_string(2 * n) + " deviation " + sci(dev));
        }
      }
    }
  }
  return pass("max |sum P_U - P(2n)| < 1e-9 (" + std::to_string(trials) +
              " unitaries per cell)");
}

CheckResult convolution(const Context& ctx) {
  const int max_n = full(ctx) ? kConvolutionMaxN : 2;
  const int max_k = full(ctx) ? kConvolutionMaxK : 4;
  for (int n = 0; n <= max_n; ++n) {
    for (int k = 1; k <= max_k; ++k) {
      const BigRational lhs(convolution_lhs(n, k));
      if (lhs != convolution_rhs(n, k)) {
        return fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
                    rational_to_string(lhs) + " != " +
                    rational_to_string(convolution_rhs(n, k)));
      }
    }
  }
  return pass("exact for n<=" + std::to_string(max_n) + ", k<=" + std::to_string(max_k));
}

// --- hafnian ---------------------------------------------------------------

Complex random_complex(CounterStream& s) { return {s.next_normal(), s.next_normal()}; }

SymmetricComplexMatrix random_symmetric(int dim, CounterStream& s) {
  SymmetricComplexMatrix a(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) a.set(i, j, random_complex(s));
  }
  return a;
}

Complex brute_permanent(const std::vector<std::vector<Complex>>& w) {
  const int d = static_cast<int>(w.size());
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total{};
  do {
    Complex term{1.0, 0.0};
    for (int i = 0; i < d; ++i) term *= w[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

double rel_err(Complex a, Complex b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

CheckResult hafnian_oracles(const Context& ctx) {
  const int instances = full(ctx) ? 100 : 10;
  CounterStream s(derive_key(ctx.seed, 0x4af));
  double worst = 0.0;
  for (int inst = 0; inst < instances; ++inst) {
    const int n = 1 + inst % 4;
    const int dim = 2 * n;
    const auto a = random_symmetric(dim, s);
    const Complex h = hafnian(a);

    // Permutation invariance.
    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = dim - 1; i > 0; --i) {
      std::swap(perm[i], perm[s.next_u64() % static_cast<std::uint64_t>(i + 1)]);
    }
    SymmetricComplexMatrix permuted(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) permuted.set(i, j, a(perm[i], perm[j]));
    }
    const double perm_err = rel_err(hafnian(permuted), h);

    // Scaling.
    const Complex c = random_complex(s);
    SymmetricComplexMatrix scaled(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) scaled.set(i, j, c * a(i, j));
    }
    const double scale_err = rel_err(hafnian(scaled), std::pow(c, n) * h);

    // Permanent embedding, W of size 3 or 4.
    const int w_dim = 3 + inst % 2;
    std::vector<std::vector<Complex>> w(w_dim, std::vector<Complex>(w_dim));
    for (auto& row : w) {
      for (auto& v : row) v = random_complex(s);
    }
    SymmetricComplexMatrix block(2 * w_dim);
    for (int i = 0; i < w_dim; ++i) {
      for (int j = 0; j < w_dim; ++j) block.set(i, w_dim + j, w[i][j]);
    }
    const double perm_embed_err = rel_err(hafnian(block), brute_permanent(w));

    worst = std::max({worst, perm_err, scale_err, perm_embed_err});
    if (!(perm_err < 1e-10 && scale_err < 1e-10 && perm_embed_err < 1e-10)) {
      return fail("instance " + std::to_string(inst) + ": permutation " + sci(perm_err) +
                  ", scaling " + sci(scale_err) + ", permanent " + sci(perm_embed_err));
    }
  }
  return pass(std::to_string(instances) + " instances, max relative error " + sci(worst));
}

}  // namespace

std::vector<Check> standard_checks() {
  return {
      {"thm1-poly", thm1_poly},
      {"m1-modes", m1_modes},
      {"thm2-count", thm2_count},
      {"lemma1-i", lemma1_i},
      {"lemma1-ii", lemma1_ii},
      {"lemma1-ii-cross", lemma1_ii_cross},
      {"component-parity", parity},
      {"m2-k1", m2_at_k1},
      {"m2-large-k", m2_large_k},
      {"m2-asymptote", asymptote},
      {"hafnian-oracles", hafnian_oracles},
      {"convolution", convolution},
      {"sector-sum", sector_sums},
      {"mc-vs-exact", mc_vs_exact},
  };
}

Summary run_checks(const std::vector<Check>& checks, const Context& ctx,
                   std::ostream& out) {
  Summary summary;
  // Enumerate each requested second-moment polynomial once.
  Context cached = ctx;
  auto cache = std::make_shared<std::map<int, MomentPolynomial>>();
  cached.second_moment_source = [cache, &ctx](int n) {
    auto it = cache->find(n);
    if (it == cache->end()) it = cache->emplace(n, ctx.second_moment(n)).first;
    return it->second;
  };
  for (const auto& check : checks) {
    CheckResult result;
    try {
      result = check.run(cached);
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    out << (result.passed ? "PASS " : "FAIL ") << check.name << ": " << result.detail
        << '\n';
    if (result.passed) {
      ++summary.passed;
    } else {
      ++summary.failed;
      summary.failed_names.push_back(check.name);
    }
  }
  return summary;
}

}  // namespace hafmoments::verify
