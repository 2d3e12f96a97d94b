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

#include "hafmoments/moments_exact.hpp"

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace hafmoments::verify {

enum class Level { kQuick, kFull };

Level parse_level(const std::string& text);

struct CheckResult {
  bool passed = false;
  /// Deterministic one-line summary; never contains timings.
  std::string detail;
};

struct Context {
  Level level = Level::kQuick;
  int jobs = 1;
  std::uint64_t seed = 20240611;
  /// Second-moment coefficients under test. Defaults to enumeration.
  std::function<MomentPolynomial(int)> second_moment_source;

  MomentPolynomial second_moment(int n) const;
};

struct Check {
  std::string name;
  std::function<CheckResult(const Context&)> run;
};

/// The cross-oracle suite, in run order. Names are stable identifiers
/// (e.g. "thm1-poly", "lemma1-ii").
std::vector<Check> standard_checks();

struct Summary {
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failed_names;

  bool ok() const { return failed == 0; }
};

/// Runs each check, printing "PASS name: detail" or "FAIL name: detail".
/// Exceptions thrown by a check count as a failure of that check.
Summary run_checks(const std::vector<Check>& checks, const Context& ctx,
                   std::ostream& out);

}  // namespace hafmoments::verify
