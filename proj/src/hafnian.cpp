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

#include "hafmoments/hafnian.hpp"

#include "hafmoments/errors.hpp"

#include <array>
#include <bit>
#include <string>

namespace hafmoments {

SymmetricComplexMatrix::SymmetricComplexMatrix(int dimension)
    : dim_(dimension) {
  if (dimension < 0) throw DomainError("matrix dimension must be >= 0");
  if (dimension % 2 != 0) {
    throw DomainError("hafnian matrix dimension must be even, got " +
                      std::to_string(dimension));
  }
  data_.assign(static_cast<std::size_t>(dimension) * dimension / 2, Complex{});
}

std::size_t SymmetricComplexMatrix::index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= dim_ || j >= dim_) {
    throw DomainError("SymmetricComplexMatrix: invalid off-diagonal index");
  }
  if (i > j) std::swap(i, j);
  // Row i of the strict upper triangle starts after sum_{r<i} (dim-1-r).
  const std::size_t row_start =
      static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2;
  return row_start + (j - i - 1);
}

ComplexRectMatrix::ComplexRectMatrix(int rows, int cols)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 0) throw DomainError("ComplexRectMatrix: bad shape");
  data_.assign(static_cast<std::size_t>(rows) * cols, Complex{});
}

SymmetricComplexMatrix ComplexRectMatrix::sym_product() const {
  SymmetricComplexMatrix out(cols_);
  for (int i = 0; i < cols_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      Complex acc{};
      for (int r = 0; r < rows_; ++r) acc += (*this)(r, i) * (*this)(r, j);
      out.set(i, j, acc);
    }
  }
  return out;
}

namespace {

constexpr int kMaxDim = 32;

struct DenseView {
  int dim;
  std::array<std::array<Complex, kMaxDim>, kMaxDim> a;
};

// Depth-first matching sum. `free` is a bitmask of unpaired vertices; the
// lowest set bit is always paired next, giving the canonical order.
Complex matching_sum(const DenseView& m, std::uint32_t free) {
  if (free == 0) return Complex{1.0, 0.0};
  const int i = std::countr_zero(free);
  std::uint32_t rest = free & (free - 1);
  Complex total{};
  for (std::uint32_t cand = rest; cand != 0; cand &= cand - 1) {
    const int j = std::countr_zero(cand);
    const Complex w = m.a[i][j];
    if (w == Complex{}) continue;
    total += w * matching_sum(m, rest & ~(1u << j));
  }
  return total;
}

}  // namespace

Complex hafnian(const SymmetricComplexMatrix& a, int cap) {
  const int n = a.dimension() / 2;
  if (n > cap || a.dimension() > kMaxDim) {
    throw CapExceeded("hafnian: n=" + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
  }
  if (n == 0) return Complex{1.0, 0.0};
  DenseView view{};
  view.dim = a.dimension();
  for (int i = 0; i < view.dim; ++i) {
    for (int j = i + 1; j < view.dim; ++j) {
      view.a[i][j] = view.a[j][i] = a(i, j);
    }
  }
  const std::uint32_t all =
      view.dim == 32 ? ~0u : ((1u << view.dim) - 1u);
  return matching_sum(view, all);
}

Complex hafnian_sym_product(const ComplexRectMatrix& x, int cap) {
  if (x.cols() % 2 != 0) {
    throw DomainError("hafnian_sym_product: column count must be even");
  }
  if (x.cols() / 2 > cap) {
    throw CapExceeded("hafnian_sym_product: n=" + std::to_string(x.cols() / 2) +
                      " exceeds cap " + std::to_string(cap));
  }
  return hafnian(x.sym_product(), cap);
}

}  // namespace hafmoments
