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

#include "hafmoments/errors.hpp"
#include "hafmoments/hafnian.hpp"
#include "hafmoments/rng.hpp"

#include "doctest.h"

#include <algorithm>
#include <numeric>

using namespace hafmoments;

namespace {

// Haf(A) = 1/(2^n n!) sum over sigma in S_2n of prod A[sigma(2j-1)][sigma(2j)].
Complex hafnian_by_permutations(const SymmetricComplexMatrix& a) {
  const int dim = a.dimension();
  std::vector<int> sigma(dim);
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex total{};
  do {
    Complex term{1.0, 0.0};
    for (int j = 0; j < dim; j += 2) term *= a(sigma[j], sigma[j + 1]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  double norm = 1.0;
  for (int j = 1; j <= dim / 2; ++j) norm *= 2.0 * j;
  return total / norm;
}

Complex brute_permanent(const std::vector<std::vector<Complex>>& w) {
  std::vector<int> p(w.size());
  std::iota(p.begin(), p.end(), 0);
  Complex total{};
  do {
    Complex term{1.0, 0.0};
    for (std::size_t i = 0; i < w.size(); ++i) term *= w[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

Complex draw(CounterStream& s) { return {s.next_normal(), s.next_normal()}; }

SymmetricComplexMatrix random_symmetric(int dim, CounterStream& s) {
  SymmetricComplexMatrix a(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) a.set(i, j, draw(s));
  }
  return a;
}

double rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("hafnian examples") {
  SymmetricComplexMatrix two(2);
  two.set(0, 1, {2.5, -1.0});
  CHECK(hafnian(two) == Complex{2.5, -1.0});

  SymmetricComplexMatrix four(4);
  four.set(0, 1, 1);
  four.set(2, 3, 2);
  four.set(0, 2, 3);
  four.set(1, 3, 4);
  four.set(0, 3, 5);
  four.set(1, 2, 6);
  CHECK(hafnian(four) == Complex{44.0, 0.0});

  SymmetricComplexMatrix block(4);
  block.set(0, 2, 1);
  block.set(0, 3, 2);
  block.set(1, 2, 3);
  block.set(1, 3, 4);
  CHECK(hafnian(block) == Complex{10.0, 0.0});

  CHECK(hafnian(SymmetricComplexMatrix(0)) == Complex{1.0, 0.0});
}

TEST_CASE("hafnian errors") {
  CHECK_THROWS_AS(SymmetricComplexMatrix(3), DomainError);
  CHECK_THROWS_AS(hafnian(SymmetricComplexMatrix(18)), CapExceeded);
  CHECK_NOTHROW(hafnian(SymmetricComplexMatrix(10), 5));
  CHECK_THROWS_AS(hafnian_sym_product(ComplexRectMatrix(1, 3)), DomainError);
}

TEST_CASE("matching sum agrees with the permutation definition") {
  CounterStream s(derive_key(21, 0));
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = random_symmetric(2 * n, s);
      CHECK(rel(hafnian(a), hafnian_by_permutations(a)) < 1e-12);
    }
  }
}

TEST_CASE("hafnian permutation invariance and scaling") {
  CounterStream s(derive_key(22, 0));
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const int dim = 2 * n;
    const auto a = random_symmetric(dim, s);
    const Complex h = hafnian(a);

    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = dim - 1; i > 0; --i) std::swap(perm[i], perm[s.next_u64() % (i + 1)]);
    SymmetricComplexMatrix permuted(dim);
    SymmetricComplexMatrix scaled(dim);
    const Complex c = draw(s);
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        permuted.set(i, j, a(perm[i], perm[j]));
        scaled.set(i, j, c * a(i, j));
      }
    }
    CHECK(rel(hafnian(permuted), h) < 1e-10);
    CHECK(rel(hafnian(scaled), std::pow(c, n) * h) < 1e-10);
  }
}

TEST_CASE("hafnian of the bipartite embedding is the permanent") {
  CounterStream s(derive_key(23, 0));
  for (int d : {3, 4}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::vector<Complex>> w(d, std::vector<Complex>(d));
      for (auto& row : w) {
        for (auto& v : row) v = draw(s);
      }
      SymmetricComplexMatrix block(2 * d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) block.set(i, d + j, w[i][j]);
      }
      CHECK(rel(hafnian(block), brute_permanent(w)) < 1e-10);
    }
  }
}

TEST_CASE("hafnian_sym_product examples") {
  ComplexRectMatrix row(1, 2);
  row(0, 0) = {1.0, 2.0};
  row(0, 1) = {-0.5, 3.0};
  CHECK(rel(hafnian_sym_product(row), row(0, 0) * row(0, 1)) < 1e-15);

  for (int k : {1, 3, 7}) {
    ComplexRectMatrix ones(k, 2);
    for (int r = 0; r < k; ++r) ones(r, 0) = ones(r, 1) = 1.0;
    CHECK(hafnian_sym_product(ones) == Complex(k, 0.0));
  }

  CounterStream s(derive_key(24, 0));
  ComplexRectMatrix x(2, 4);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 4; ++c) x(r, c) = draw(s);
  }
  SymmetricComplexMatrix product(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) product.set(i, j, x(0, i) * x(0, j) + x(1, i) * x(1, j));
  }
  CHECK(rel(hafnian_sym_product(x), hafnian_by_permutations(product)) < 1e-12);
}

TEST_CASE("rank-one symmetric product: (2n-1)!! times the entry product") {
  CounterStream s(derive_key(25, 0));
  for (int n = 1; n <= 4; ++n) {
    ComplexRectMatrix x(1, 2 * n);
    Complex product{1.0, 0.0};
    for (int c = 0; c < 2 * n; ++c) {
      x(0, c) = draw(s);
      product *= x(0, c);
    }
    const double df = double_factorial(2 * n - 1).convert_to<double>();
    CHECK(rel(hafnian_sym_product(x), df * product) < 1e-12);
  }
}
