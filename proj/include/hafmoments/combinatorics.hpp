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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hafmoments {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Default cap on the number of pairs accepted by the matching enumerator.
/// (15)!! is about 2.0M matchings.
inline constexpr int kDefaultMatchingCap = 8;

/// x(x-2)(x-4)... with (-1)!! = 0!! = 1. Rejects x < -1.
BigInt double_factorial(long x);

BigInt factorial(long x);

/// Integer binomial C(n, r); zero when r < 0 or r > n.
BigInt binomial(long n, long r);

/// Exact half-integer value twice_value / 2.
struct HalfInteger {
  long twice_value = 0;

  static constexpr HalfInteger from_integer(long v) { return {2 * v}; }
  BigRational value() const { return BigRational(twice_value, 2); }
  friend bool operator==(const HalfInteger&, const HalfInteger&) = default;
};

/// Generalized binomial x(x-1)...(x-n+1)/n! over exact rationals.
BigRational binom_half(HalfInteger x, int n);

/// A perfect matching on vertex labels 1..2n in canonical form: pairs
/// sorted by first element, a < b within each pair.
class Matching {
 public:
  using Pair = std::pair<int, int>;

  Matching() = default;
  /// Canonicalizes and validates; throws DomainError if the pairs do not
  /// cover 1..2n exactly once.
  explicit Matching(std::vector<Pair> pairs);

  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  const std::vector<Pair>& pairs() const { return pairs_; }

  /// partner(v) for 1-based label v.
  int partner(int v) const;

  std::string to_string() const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;

 private:
  std::vector<Pair> pairs_;
};

/// Visitor for the allocation-free enumeration path. `partner` is indexed
/// 0..2n-1 and holds the 0-based partner of each vertex.
using MatchingVisitor = std::function<void(std::span<const int> partner)>;

/// Deterministic enumerator of all (2n-1)!! perfect matchings of 2n points.
///
/// Order: the smallest unpaired label is paired with each larger unpaired
/// label in ascending order, recursively. The stream can be split into
/// disjoint chunks by fixing the partners of the first `prefix_depth`
/// smallest-unpaired labels; concatenating chunks in index order gives the
/// full stream.
class MatchingEnumerator {
 public:
  explicit MatchingEnumerator(int n_pairs, int cap = kDefaultMatchingCap);

  int n_pairs() const { return n_pairs_; }

  /// Total number of matchings, (2n-1)!!.
  std::uint64_t size() const;

  void for_each(const MatchingVisitor& visit) const;

  /// Number of chunks produced by fixing `prefix_depth` pairs
  /// (clamped to n_pairs).
  std::size_t num_chunks(int prefix_depth) const;
  void for_each_in_chunk(int prefix_depth, std::size_t chunk,
                         const MatchingVisitor& visit) const;

  /// Materializes every matching. Intended for small n.
  std::vector<Matching> all() const;

 private:
  int n_pairs_;
};

/// Convenience wrapper: MatchingEnumerator(n_pairs, cap).all().
std::vector<Matching> enumerate_matchings(int n_pairs,
                                          int cap = kDefaultMatchingCap);

/// Number of connected components of an undirected graph on vertices
/// 1..num_vertices. Throws DomainError on out-of-range labels.
int count_components(int num_vertices,
                     std::span<const std::pair<int, int>> edges);

/// Small fixed-capacity union-find used in the hot enumeration loops.
/// Labels are 0-based.
class ComponentCounter {
 public:
  static constexpr int kMaxVertices = 64;

  explicit ComponentCounter(int num_vertices);

  int find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = static_cast<std::uint8_t>(a);
    --components_;
  }
  int components() const { return components_; }

 private:
  std::uint8_t parent_[kMaxVertices]{};
  int components_;
};

}  // namespace hafmoments
