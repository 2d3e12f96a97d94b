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

#include <algorithm>
#include <array>
#include <sstream>

namespace hafmoments {

BigInt double_factorial(long x) {
  if (x < -1) {
    throw DomainError("double_factorial: argument must be >= -1, got " +
                      std::to_string(x));
  }
  BigInt result = 1;
  for (long v = x; v > 1; v -= 2) result *= v;
  return result;
}

BigInt factorial(long x) {
  if (x < 0) throw DomainError("factorial: negative argument");
  BigInt result = 1;
  for (long v = 2; v <= x; ++v) result *= v;
  return result;
}

BigInt binomial(long n, long r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (long i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;  // exact: running value is C(n-r+i, i)
  }
  return result;
}

BigRational binom_half(HalfInteger x, int n) {
  if (n < 0) throw DomainError("binom_half: n must be >= 0");
  // Work with twice the falling-factorial terms: (2x - 2i) / 2.
  BigInt numerator = 1;
  for (int i = 0; i < n; ++i) numerator *= BigInt(x.twice_value - 2L * i);
  BigInt denominator = factorial(n) << n;
  return BigRational(numerator, denominator);
}

// ---------------------------------------------------------------------------

Matching::Matching(std::vector<Pair> pairs) {
  const int n_vertices = 2 * static_cast<int>(pairs.size());
  std::vector<int> seen(n_vertices + 1, 0);
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
    if (a < 1 || b > n_vertices || a == b) {
      throw DomainError("Matching: label out of range or self-pair");
    }
    if (seen[a]++ || seen[b]++) {
      throw DomainError("Matching: label appears more than once");
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs_ = std::move(pairs);
}

int Matching::partner(int v) const {
  for (const auto& [a, b] : pairs_) {
    if (a == v) return b;
    if (b == v) return a;
  }
  throw DomainError("Matching::partner: label not present");
}

std::string Matching::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (i) out << ',';
    out << '(' << pairs_[i].first << ',' << pairs_[i].second << ')';
  }
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxPairs = 16;

struct MatchingState {
  int n_vertices;
  std::array<int, 2 * kMaxPairs> partner;

  explicit MatchingState(int n_pairs) : n_vertices(2 * n_pairs) {
    partner.fill(-1);
  }

  int first_free(int from) const {
    while (from < n_vertices && partner[from] >= 0) ++from;
    return from;
  }

  // Applies the c-th (0-based) ascending choice for the smallest free label.
  // Returns false if c is out of range.
  bool apply_choice(int c) {
    const int a = first_free(0);
    int seen = 0;
    for (int b = a + 1; b < n_vertices; ++b) {
      if (partner[b] >= 0) continue;
      if (seen++ == c) {
        partner[a] = b;
        partner[b] = a;
        return true;
      }
    }
    return false;
  }
};

void recurse(MatchingState& st, int from, const MatchingVisitor& visit) {
  const int a = st.first_free(from);
  if (a >= st.n_vertices) {
    visit(std::span<const int>(st.partner.data(), st.n_vertices));
    return;
  }
  for (int b = a + 1; b < st.n_vertices; ++b) {
    if (st.partner[b] >= 0) continue;
    st.partner[a] = b;
    st.partner[b] = a;
    recurse(st, a + 1, visit);
    st.partner[a] = -1;
    st.partner[b] = -1;
  }
}

}  // namespace

MatchingEnumerator::MatchingEnumerator(int n_pairs, int cap)
    : n_pairs_(n_pairs) {
  if (n_pairs < 1) throw DomainError("matching enumeration needs n_pairs >= 1");
  if (n_pairs > cap || n_pairs > kMaxPairs) {
    throw CapExceeded("matching enumeration: n_pairs=" +
                      std::to_string(n_pairs) + " exceeds cap " +
                      std::to_string(std::min(cap, kMaxPairs)));
  }
}

std::uint64_t MatchingEnumerator::size() const {
  std::uint64_t total = 1;
  for (int v = 2 * n_pairs_ - 1; v > 1; v -= 2) total *= v;
  return total;
}

void MatchingEnumerator::for_each(const MatchingVisitor& visit) const {
  MatchingState st(n_pairs_);
  recurse(st, 0, visit);
}

std::size_t MatchingEnumerator::num_chunks(int prefix_depth) const {
  prefix_depth = std::clamp(prefix_depth, 0, n_pairs_);
  std::size_t total = 1;
  for (int d = 0; d < prefix_depth; ++d) total *= 2 * (n_pairs_ - d) - 1;
  return total;
}

void MatchingEnumerator::for_each_in_chunk(int prefix_depth, std::size_t chunk,
                                           const MatchingVisitor& visit) const {
  prefix_depth = std::clamp(prefix_depth, 0, n_pairs_);
  if (chunk >= num_chunks(prefix_depth)) {
    throw DomainError("MatchingEnumerator: chunk index out of range");
  }
  // Mixed-radix decode, first choice most significant.
  std::array<int, kMaxPairs> choice{};
  for (int d = prefix_depth - 1; d >= 0; --d) {
    const std::size_t radix = 2 * (n_pairs_ - d) - 1;
    choice[d] = static_cast<int>(chunk % radix);
    chunk /= radix;
  }
  MatchingState st(n_pairs_);
  for (int d = 0; d < prefix_depth; ++d) st.apply_choice(choice[d]);
  recurse(st, 0, visit);
}

std::vector<Matching> MatchingEnumerator::all() const {
  std::vector<Matching> out;
  out.reserve(size());
  for_each([&](std::span<const int> partner) {
    std::vector<Matching::Pair> pairs;
    pairs.reserve(n_pairs_);
    for (int v = 0; v < static_cast<int>(partner.size()); ++v) {
      if (v < partner[v]) pairs.emplace_back(v + 1, partner[v] + 1);
    }
    out.emplace_back(std::move(pairs));
  });
  return out;
}

std::vector<Matching> enumerate_matchings(int n_pairs, int cap) {
  return MatchingEnumerator(n_pairs, cap).all();
}

// ---------------------------------------------------------------------------

ComponentCounter::ComponentCounter(int num_vertices)
    : components_(num_vertices) {
  if (num_vertices < 0 || num_vertices > kMaxVertices) {
    throw DomainError("ComponentCounter: vertex count out of range");
  }
  for (int v = 0; v < num_vertices; ++v) parent_[v] = static_cast<std::uint8_t>(v);
}

int count_components(int num_vertices,
                     std::span<const std::pair<int, int>> edges) {
  if (num_vertices < 0) throw DomainError("count_components: negative size");
  std::vector<int> parent(num_vertices);
  for (int v = 0; v < num_vertices; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  int components = num_vertices;
  for (const auto& [a, b] : edges) {
    if (a < 1 || a > num_vertices || b < 1 || b > num_vertices) {
      throw DomainError("count_components: vertex label out of range");
    }
    int ra = find(a - 1);
    int rb = find(b - 1);
    if (ra == rb) continue;
    if (ra > rb) std::swap(ra, rb);
    parent[rb] = ra;
    --components;
  }
  return components;
}

}  // namespace hafmoments
