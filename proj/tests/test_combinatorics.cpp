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

#include "hafmoments/combinatorics.hpp"
#include "hafmoments/errors.hpp"
#include "hafmoments/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

using namespace hafmoments;

namespace {

// Depth-first search component count, independent of the union-find code.
int dfs_components(int num_vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(num_vertices + 1);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(num_vertices + 1, false);
  int components = 0;
  for (int start = 1; start <= num_vertices; ++start) {
    if (seen[start]) continue;
    ++components;
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

}  // namespace

TEST_CASE("double_factorial") {
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(8) == 384);
  CHECK_THROWS_AS(double_factorial(-2), DomainError);

  SUBCASE("(2n)!! (2n-1)!! = (2n)!") {
    for (long n = 1; n <= 20; ++n) {
      CHECK(double_factorial(2 * n) * double_factorial(2 * n - 1) == factorial(2 * n));
    }
  }
}

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(10, 4) == 210);
  CHECK(binomial(12, 6) == 924);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("binom_half examples") {
  CHECK(binom_half(HalfInteger{1}, 1) == BigRational(1, 2));
  CHECK(binom_half(HalfInteger::from_integer(1), 1) == 1);
  CHECK(binom_half(HalfInteger::from_integer(3), 2) == 3);
  CHECK(binom_half(HalfInteger{3}, 2) == BigRational(3, 8));
  CHECK(binom_half(HalfInteger{-7}, 0) == 1);
}

TEST_CASE("binom_half times n! is the falling factorial") {
  CounterStream rng(derive_key(11, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const long twice = static_cast<long>(rng.next_u64() % 81) - 40;
    const int n = static_cast<int>(rng.next_u64() % 11);
    BigRational falling = 1;
    const BigRational x(twice, 2);
    for (int i = 0; i < n; ++i) falling *= x - i;
    CHECK(binom_half(HalfInteger{twice}, n) * BigRational(factorial(n)) == falling);
  }
}

TEST_CASE("enumerate_matchings small cases") {
  const auto one = enumerate_matchings(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Matching({{1, 2}}));

  const auto two = enumerate_matchings(2);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == Matching({{1, 2}, {3, 4}}));
  CHECK(two[1] == Matching({{1, 3}, {2, 4}}));
  CHECK(two[2] == Matching({{1, 4}, {2, 3}}));
}

TEST_CASE("enumerate_matchings count and distinctness") {
  for (int n = 1; n <= 6; ++n) {
    const auto all = enumerate_matchings(n);
    const std::set<Matching> unique(all.begin(), all.end());
    CHECK(all.size() == double_factorial(2 * n - 1));
    CHECK(unique.size() == all.size());
  }
  CHECK(enumerate_matchings(5).size() == 945);
}

TEST_CASE("matching enumeration order is ascending and canonical") {
  const auto all = enumerate_matchings(4);
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (const auto& m : all) {
    for (const auto& [a, b] : m.pairs()) CHECK(a < b);
  }
}

TEST_CASE("matching chunks partition the stream in order") {
  const MatchingEnumerator e(5);
  std::vector<std::vector<int>> whole;
  e.for_each([&](std::span<const int> p) { whole.emplace_back(p.begin(), p.end()); });
  for (int depth = 0; depth <= 5; ++depth) {
    std::vector<std::vector<int>> joined;
    for (std::size_t c = 0; c < e.num_chunks(depth); ++c) {
      e.for_each_in_chunk(depth, c,
                          [&](std::span<const int> p) { joined.emplace_back(p.begin(), p.end()); });
    }
    CHECK(joined == whole);
  }
  CHECK(e.num_chunks(2) == 9 * 7);
}

TEST_CASE("matching cap and validation") {
  CHECK_THROWS_AS(MatchingEnumerator(9), CapExceeded);
  CHECK_NOTHROW(MatchingEnumerator(9, 9));
  CHECK_THROWS_AS(MatchingEnumerator(0), DomainError);
  CHECK_THROWS_AS(Matching({{1, 2}, {2, 3}}), DomainError);
  CHECK_THROWS_AS(Matching({{1, 5}, {2, 3}}), DomainError);
  const Matching m({{4, 1}, {3, 2}});
  CHECK(m.pairs().front() == std::pair{1, 4});
  CHECK(m.partner(3) == 2);
}

TEST_CASE("count_components examples") {
  const std::vector<std::pair<int, int>> a{{1, 2}, {3, 4}};
  CHECK(count_components(4, a) == 2);
  const std::vector<std::pair<int, int>> dup{{1, 2}, {3, 4}, {1, 2}};
  CHECK(count_components(4, dup) == 2);
  const std::vector<std::pair<int, int>> fig{{1, 2}, {3, 4}, {5, 6}, {7, 8},
                                             {1, 4}, {2, 3}, {5, 8}, {6, 7}};
  CHECK(count_components(8, fig) == 2);
  const std::vector<std::pair<int, int>> bad{{0, 1}};
  CHECK_THROWS_AS(count_components(4, bad), DomainError);
}

TEST_CASE("count_components is invariant under permutation and duplication") {
  CounterStream rng(derive_key(12, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const int v = 1 + static_cast<int>(rng.next_u64() % 20);
    const int e = static_cast<int>(rng.next_u64() % 25);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < e; ++i) {
      edges.emplace_back(1 + rng.next_u64() % v, 1 + rng.next_u64() % v);
    }
    const int expected = dfs_components(v, edges);
    CHECK(count_components(v, edges) == expected);

    auto shuffled = edges;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.next_u64() % i]);
    }
    const auto half = shuffled.size() / 2;
    shuffled.insert(shuffled.end(), edges.begin(), edges.begin() + half);
    CHECK(count_components(v, shuffled) == expected);

    ComponentCounter fast(v);
    for (auto [a, b] : shuffled) fast.unite(a - 1, b - 1);
    CHECK(fast.components() == expected);
  }
}
