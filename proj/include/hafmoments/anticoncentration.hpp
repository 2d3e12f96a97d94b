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

#pragma once

#include "hafmoments/combinatorics.hpp"
#include "hafmoments/moments_exact.hpp"
#include "hafmoments/moments_mc.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hafmoments {

enum class M2Mode { kExact, kMonteCarlo };

std::string to_string(M2Mode mode);  // "exact" / "monte-carlo"
M2Mode parse_m2_mode(const std::string& text);

/// Inverse normalized collision probability m2 = M1^2 / M2 at one (k, n),
/// together with its reference curves.
struct M2Report {
  long k = 1;
  int n = 1;
  M2Mode mode = M2Mode::kExact;
  /// Set in exact mode.
  std::optional<BigRational> m2_exact;
  /// Set in Monte Carlo mode.
  std::optional<double> m2_estimate;
  std::optional<double> m2_stderr;
  BigRational m2_k1;     // 4^-n
  BigRational m2_limit;  // C(2n, n) / 4^n
  double m2_asymptote = 0.0;  // 1 / sqrt(pi n)

  /// m2 as a double, whichever mode produced it.
  double m2_value() const;
};

struct M2Options {
  /// Exact mode: source of second-moment coefficients for a given n.
  /// Defaults to enumeration (second_moment_coeffs).
  std::function<MomentPolynomial(int)> second_moment_source;
  SecondMomentOptions enumeration;
  // Monte Carlo mode.
  std::int64_t samples = 100000;
  int batches = kDefaultBatches;
  std::uint64_t seed = 1;
  int jobs = 1;
};

M2Report m2(long k, int n, M2Mode mode, const M2Options& options = {});

/// Exact m2 from a known second-moment polynomial.
BigRational m2_exact_from(long k, const MomentPolynomial& second_moment);

/// m2(1, n) = 4^-n.
BigRational m2_k1(int n);

/// The large-k limit C(2n, n) / 4^n.
BigRational m2_limit(int n);

/// 1 / sqrt(pi n).
double m2_asymptote(int n);

/// Lower bound (1 - alpha)^2 * p2 on the fraction of outcomes whose
/// probability is at least alpha times uniform, clamped to [0, 1].
double paley_zygmund_bound(double alpha, double p2);

/// Upper bound on the exact distribution's normalized second moment given
/// the approximate one's and a relative per-probability error delta:
/// ratio / (1 - delta)^2 + 1.
double translation_bound(double m2_ratio_approx, double delta);

/// One row per (k, n), n-major then k, in the order given.
std::vector<M2Report> transition_scan(const std::vector<int>& n_values,
                                      const std::vector<long>& k_values,
                                      M2Mode mode, const M2Options& options = {});

inline constexpr const char* kScanCsvHeader =
    "k,n,m2,m2_stderr,m2_k1,m2_limit,m2_asymptote,mode";

/// Exact quantities are written as reduced fractions "p/q" (or integers);
/// floating-point columns use 17 significant digits.
std::string scan_to_csv(const std::vector<M2Report>& rows);
nlohmann::json scan_to_json(const std::vector<M2Report>& rows);
std::vector<M2Report> scan_from_json(const nlohmann::json& j);
std::vector<M2Report> scan_from_csv(const std::string& csv);

std::string rational_to_string(const BigRational& q);
BigRational rational_from_string(const std::string& text);

}  // namespace hafmoments
