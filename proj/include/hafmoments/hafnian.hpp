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

#include <complex>
#include <vector>

namespace hafmoments {

using Complex = std::complex<double>;

/// Cap on n (half the matrix dimension) for the matching-sum hafnian.
inline constexpr int kDefaultHafnianCap = kDefaultMatchingCap;

/// Symmetric complex matrix of even dimension. Only the strict upper
/// triangle is stored; the diagonal is not represented because the hafnian
/// never reads it.
class SymmetricComplexMatrix {
 public:
  explicit SymmetricComplexMatrix(int dimension);

  int dimension() const { return dim_; }

  Complex operator()(int i, int j) const { return data_[index(i, j)]; }
  void set(int i, int j, Complex value) { data_[index(i, j)] = value; }

 private:
  std::size_t index(int i, int j) const;

  int dim_;
  std::vector<Complex> data_;
};

/// Dense row-major k x cols complex matrix.
class ComplexRectMatrix {
 public:
  ComplexRectMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int r, int c) { return data_[r * cols_ + c]; }
  Complex operator()(int r, int c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }

  /// The symmetric product X^T X (no conjugation), off-diagonal part.
  SymmetricComplexMatrix sym_product() const;

 private:
  int rows_;
  int cols_;
  std::vector<Complex> data_;
};

/// Sum over all (2n-1)!! perfect matchings of the product of paired
/// entries. A 0x0 matrix has hafnian 1.
Complex hafnian(const SymmetricComplexMatrix& a, int cap = kDefaultHafnianCap);

/// hafnian(X^T X) for a k x 2n matrix X.
Complex hafnian_sym_product(const ComplexRectMatrix& x,
                            int cap = kDefaultHafnianCap);

}  // namespace hafmoments
