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

#include "hafmoments/moments_exact.hpp"

#include "hafmoments/errors.hpp"
#include "hafmoments/parallel.hpp"

#include <mutex>
#include <string>

namespace hafmoments {

std::string to_string(GraphFamily family) {
  return family == GraphFamily::kFirstMoment ? "G1" : "G2";
}

int MomentPolynomial::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    if (coeffs[i] != 0) return i;
  }
  return 0;
}

BigInt MomentPolynomial::evaluate(const BigInt& k) const {
  BigInt acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * k + *it;
  return acc;
}

BigInt MomentPolynomial::coefficient_sum() const {
  BigInt total = 0;
  for (const auto& c : coeffs) total += c;
  return total;
}

BigInt MomentPolynomial::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs.size())) return 0;
  return coeffs[power];
}

void to_json(nlohmann::json& j, const MomentPolynomial& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(c.str());
  j = nlohmann::json{{"n", p.n}, {"family", to_string(p.family)}, {"coeffs", coeffs}};
}

void from_json(const nlohmann::json& j, MomentPolynomial& p) {
  p.n = j.at("n").get<int>();
  const auto family = j.at("family").get<std::string>();
  if (family == "G1") {
    p.family = GraphFamily::kFirstMoment;
  } else if (family == "G2") {
    p.family = GraphFamily::kSecondMoment;
  } else {
    throw DomainError("MomentPolynomial: unknown family '" + family + "'");
  }
  p.coeffs.clear();
  for (const auto& c : j.at("coeffs")) p.coeffs.emplace_back(c.get<std::string>());
}

MomentPolynomial rising_even_product(int n) {
  MomentPolynomial p{n, GraphFamily::kFirstMoment, {1}};
  for (int j = 1; j <= n; ++j) {
    // Multiply by (k + a).
    const long a = 2L * j - 2;
    std::vector<BigInt> next(p.coeffs.size() + 1, 0);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
      next[i + 1] += p.coeffs[i];
      next[i] += p.coeffs[i] * a;
    }
    p.coeffs = std::move(next);
  }
  return p;
}

// ---------------------------------------------------------------------------

FirstMomentResult enumerate_first_moment(int n, int cap) {
  if (n < 1) throw DomainError("first moment: n must be >= 1");
  if (n > cap) {
    throw CapExceeded("first moment enumeration: n=" + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap));
  }
  const MatchingEnumerator red(n, std::max(cap, kDefaultMatchingCap));
  std::vector<std::uint64_t> histogram(n + 1, 0);
  std::uint64_t visited = 0;
  red.for_each([&](std::span<const int> partner) {
    ComponentCounter uf(2 * n);
    for (int j = 0; j < n; ++j) uf.unite(2 * j, 2 * j + 1);
    for (int v = 0; v < 2 * n; ++v) {
      if (v < partner[v]) uf.unite(v, partner[v]);
    }
    ++histogram[uf.components()];
    ++visited;
  });
  FirstMomentResult result;
  result.poly = {n, GraphFamily::kFirstMoment, {}};
  for (auto c : histogram) result.poly.coeffs.emplace_back(c);
  result.graphs_visited = visited;
  return result;
}

MomentPolynomial first_moment_poly(int n, int cap) {
  return enumerate_first_moment(n, cap).poly;
}

BigInt first_moment_closed(long k, long n) {
  if (k < 1 || n < 1) throw DomainError("first_moment_closed: needs k, n >= 1");
  // (k+2n-2)!! / (k-2)!! telescopes to k (k+2) ... (k+2n-2).
  BigInt ratio = 1;
  for (long j = 0; j < n; ++j) ratio *= BigInt(k + 2 * j);
  return double_factorial(2 * n - 1) * ratio;
}

// ---------------------------------------------------------------------------

std::uint64_t encode_black_patterns(std::span<const BlackPatternType> types) {
  std::uint64_t z = 0;
  for (auto t : types) {
    if (t < 1 || t > 4) throw DomainError("black pattern type must be 1..4");
    z = 4 * z + static_cast<std::uint64_t>(t - 1);
  }
  return z + 1;
}

std::vector<BlackPatternType> decode_black_patterns(std::uint64_t z, int n) {
  if (n < 1 || n > 31) throw DomainError("decode_black_patterns: bad n");
  if (z < 1 || z > (std::uint64_t{1} << (2 * n))) {
    throw DomainError("decode_black_patterns: z out of range 1..4^n");
  }
  std::vector<BlackPatternType> types(n);
  std::uint64_t rest = z - 1;
  for (int j = n - 1; j >= 0; --j) {
    types[j] = static_cast<BlackPatternType>(rest % 4) + 1;
    rest /= 4;
  }
  return types;
}

std::array<std::pair<int, int>, 3> black_edges_for_pattern(BlackPatternType type,
                                                           int column_pair, int n) {
  const int c1 = 2 * column_pair - 1;
  const int c2 = 2 * column_pair;
  auto o = [&](int c) { return c; };
  auto p = [&](int c) { return 2 * n + c; };
  auto q = [&](int c) { return 4 * n + c; };
  switch (type) {
    case 1:
      return {{{o(c1), o(c2)}, {p(c1), q(c1)}, {p(c2), q(c2)}}};
    case 2:
      return {{{o(c1), q(c2)}, {p(c1), q(c1)}, {o(c2), p(c2)}}};
    case 3:
      return {{{o(c2), q(c1)}, {p(c1), o(c1)}, {p(c2), q(c2)}}};
    case 4:
      return {{{o(c1), p(c1)}, {o(c2), p(c2)}, {q(c1), q(c2)}}};
    default:
      throw DomainError("black pattern type must be 1..4");
  }
}

BlackPatternType SecondMomentGraph::pattern(int column_pair) const {
  return decode_black_patterns(z, n).at(column_pair - 1);
}

std::vector<std::pair<int, int>> SecondMomentGraph::black_edges() const {
  std::vector<std::pair<int, int>> edges;
  const auto types = decode_black_patterns(z, n);
  for (int j = 1; j <= n; ++j) {
    for (const auto& e : black_edges_for_pattern(types[j - 1], j, n)) {
      edges.push_back(e);
    }
  }
  return edges;
}

std::vector<std::pair<int, int>> SecondMomentGraph::red_edges() const {
  std::vector<std::pair<int, int>> edges;
  const Matching* rows[] = {&red_o, &red_p, &red_q};
  for (int r = 0; r < 3; ++r) {
    if (rows[r]->num_pairs() != n) {
      throw DomainError("SecondMomentGraph: row matching has wrong size");
    }
    for (const auto& [a, b] : rows[r]->pairs()) {
      edges.emplace_back(a + 2 * n * r, b + 2 * n * r);
    }
  }
  return edges;
}

int SecondMomentGraph::components() const {
  auto edges = black_edges();
  const auto red = red_edges();
  edges.insert(edges.end(), red.begin(), red.end());
  return count_components(6 * n, edges);
}

namespace {

using RowMatching = std::vector<std::pair<std::uint8_t, std::uint8_t>>;

std::vector<RowMatching> row_matchings(int n) {
  std::vector<RowMatching> out;
  MatchingEnumerator(n).for_each([&](std::span<const int> partner) {
    RowMatching m;
    for (int v = 0; v < 2 * n; ++v) {
      if (v < partner[v]) {
        m.emplace_back(static_cast<std::uint8_t>(v),
                       static_cast<std::uint8_t>(partner[v]));
      }
    }
    out.push_back(std::move(m));
  });
  return out;
}

bool has_odd_component(const ComponentCounter& uf, int num_vertices) {
  std::array<int, ComponentCounter::kMaxVertices> size{};
  for (int v = 0; v < num_vertices; ++v) ++size[uf.find(v)];
  for (int v = 0; v < num_vertices; ++v) {
    if (size[v] % 2 != 0) return true;
  }
  return false;
}

}  // namespace

SecondMomentResult enumerate_second_moment(int n, const SecondMomentOptions& options) {
  if (n < 1) throw DomainError("second moment: n must be >= 1");
  const int cap = options.allow_long_run ? kLongRunSecondMomentCap
                                         : kDefaultSecondMomentCap;
  if (n > cap) {
    throw CapExceeded("second moment enumeration: n=" + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap) +
                      (options.allow_long_run ? "" : " (n=4 needs the long-run flag)"));
  }
  const int num_vertices = 6 * n;
  const auto rows = row_matchings(n);
  const std::size_t num_patterns = std::size_t{1} << (2 * n);
  const std::size_t work_items = num_patterns * rows.size();

  struct Partial {
    std::vector<std::uint64_t> histogram;
    std::uint64_t visited = 0;
    std::uint64_t odd = 0;
  };
  std::vector<Partial> partials(work_items);
  std::mutex progress_mutex;
  std::size_t done = 0;

  parallel_for(work_items, options.jobs, [&](std::size_t item) {
    const std::uint64_t z = item / rows.size() + 1;
    const auto& red_o = rows[item % rows.size()];
    Partial part;
    part.histogram.assign(2 * n + 1, 0);

    ComponentCounter base(num_vertices);
    const auto types = decode_black_patterns(z, n);
    for (int j = 1; j <= n; ++j) {
      for (const auto& [a, b] : black_edges_for_pattern(types[j - 1], j, n)) {
        base.unite(a - 1, b - 1);
      }
    }
    for (const auto& [a, b] : red_o) base.unite(a, b);

    const int p_offset = 2 * n;
    const int q_offset = 4 * n;
    for (const auto& red_p : rows) {
      ComponentCounter with_p = base;
      for (const auto& [a, b] : red_p) with_p.unite(a + p_offset, b + p_offset);
      for (const auto& red_q : rows) {
        ComponentCounter full = with_p;
        for (const auto& [a, b] : red_q) full.unite(a + q_offset, b + q_offset);
        ++part.histogram[full.components()];
        ++part.visited;
        if (options.check_parity && has_odd_component(full, num_vertices)) {
          ++part.odd;
        }
      }
    }
    partials[item] = std::move(part);
    if (options.progress) {
      std::lock_guard lock(progress_mutex);
      options.progress(++done, work_items);
    }
  });

  // Fixed-order exact reduction.
  std::vector<BigInt> coeffs(2 * n + 1, 0);
  SecondMomentResult result;
  for (const auto& part : partials) {
    for (std::size_t i = 0; i < part.histogram.size(); ++i) coeffs[i] += part.histogram[i];
    result.graphs_visited += part.visited;
    result.odd_component_graphs += part.odd;
  }
  result.poly = {n, GraphFamily::kSecondMoment, std::move(coeffs)};
  return result;
}

MomentPolynomial second_moment_coeffs(int n, const SecondMomentOptions& options) {
  return enumerate_second_moment(n, options).poly;
}

BigInt second_moment_eval(long k, const MomentPolynomial& poly) {
  if (poly.family != GraphFamily::kSecondMoment) {
    throw DomainError("second_moment_eval: expected a G2 polynomial");
  }
  if (k < 1) throw DomainError("second_moment_eval: k must be >= 1");
  return double_factorial(2L * poly.n - 1) * poly.evaluate(BigInt(k));
}

}  // namespace hafmoments
