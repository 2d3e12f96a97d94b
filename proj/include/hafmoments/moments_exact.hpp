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

#include "json.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace hafmoments {

inline constexpr int kDefaultFirstMomentCap = 6;
inline constexpr int kDefaultSecondMomentCap = 3;
/// Largest second-moment order reachable with the long-run flag.
inline constexpr int kLongRunSecondMomentCap = 4;

enum class GraphFamily { kFirstMoment, kSecondMoment };

std::string to_string(GraphFamily family);  // "G1" / "G2"

/// Polynomial in k with exact nonnegative integer coefficients;
/// coeffs[i] multiplies k^i.
struct MomentPolynomial {
  int n = 0;
  GraphFamily family = GraphFamily::kFirstMoment;
  std::vector<BigInt> coeffs;

  int degree() const;
  BigInt evaluate(const BigInt& k) const;
  /// Sum of all coefficients, i.e. the total number of graphs counted.
  BigInt coefficient_sum() const;
  BigInt coefficient(int power) const;

  friend bool operator==(const MomentPolynomial&,
                         const MomentPolynomial&) = default;
};

void to_json(nlohmann::json& j, const MomentPolynomial& p);
void from_json(const nlohmann::json& j, MomentPolynomial& p);

/// Expansion of prod_{j=1..n} (k + 2j - 2), computed by repeated
/// multiplication of linear factors.
MomentPolynomial rising_even_product(int n);

// --- first moment ----------------------------------------------------------

struct FirstMomentResult {
  MomentPolynomial poly;
  std::uint64_t graphs_visited = 0;
};

/// Enumerates the (2n-1)!! first-moment graphs: fixed black edges
/// (2j-1, 2j) plus one red perfect matching, summing k^C(G).
FirstMomentResult enumerate_first_moment(int n,
                                         int cap = kDefaultFirstMomentCap);

MomentPolynomial first_moment_poly(int n, int cap = kDefaultFirstMomentCap);

/// M1(k,n) = (2n-1)!! (k+2n-2)!! / (k-2)!!. Requires k >= 1, n >= 1.
BigInt first_moment_closed(long k, long n);

// --- second moment ---------------------------------------------------------

/// Black-edge pattern of one column pair, numbered 1..4.
using BlackPatternType = int;

/// One term of the second-moment graph expansion: black-edge pattern code
/// z in 1..4^n plus one red matching per row.
///
/// Vertices are 1-based and row-major: O_1..O_2n are 1..2n,
/// P_1..P_2n are 2n+1..4n, Q_1..Q_2n are 4n+1..6n.
struct SecondMomentGraph {
  int n = 0;
  std::uint64_t z = 1;
  Matching red_o;
  Matching red_p;
  Matching red_q;

  /// Pattern type (1..4) of column pair j (1-based).
  BlackPatternType pattern(int column_pair) const;

  std::vector<std::pair<int, int>> black_edges() const;
  /// Red edges with row offsets applied.
  std::vector<std::pair<int, int>> red_edges() const;
  int components() const;
};

/// z = 1 + sum_j (type_j - 1) * 4^(n-j), first column pair most significant.
std::uint64_t encode_black_patterns(std::span<const BlackPatternType> types);
std::vector<BlackPatternType> decode_black_patterns(std::uint64_t z, int n);

/// The three black edges of a column pair in 1-based vertex labels.
std::array<std::pair<int, int>, 3> black_edges_for_pattern(
    BlackPatternType type, int column_pair, int n);

struct SecondMomentOptions {
  /// Permits n = 4 (about 3e8 graphs).
  bool allow_long_run = false;
  int jobs = 1;
  /// Also verifies that every component has an even number of vertices.
  bool check_parity = false;
  /// Called from worker threads as (work items done, total work items).
  std::function<void(std::size_t, std::size_t)> progress;
};

struct SecondMomentResult {
  MomentPolynomial poly;
  std::uint64_t graphs_visited = 0;
  /// Graphs containing a component with an odd vertex count. Only
  /// populated when check_parity is set.
  std::uint64_t odd_component_graphs = 0;
};

/// Enumerates all 4^n ((2n-1)!!)^3 second-moment graphs and returns the
/// histogram c_i of component counts. Work is split over (z, red_o) pairs
/// and reduced in index order, so the result does not depend on `jobs`.
SecondMomentResult enumerate_second_moment(int n,
                                           const SecondMomentOptions& options = {});

MomentPolynomial second_moment_coeffs(int n,
                                      const SecondMomentOptions& options = {});

/// M2(k,n) = (2n-1)!! * sum_i c_i k^i.
BigInt second_moment_eval(long k, const MomentPolynomial& poly);

}  // namespace hafmoments
