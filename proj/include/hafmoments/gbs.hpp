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
#include "hafmoments/hafnian.hpp"

#include <Eigen/Dense>

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hafmoments {

/// Physical parameters: m modes, the first k of which carry single-mode
/// squeezed vacuum with squeezing r (phase fixed to 0).
struct GbsConfig {
  int m = 1;
  int k = 1;
  double r = 0.0;

  void validate() const;
};

/// Photon counts per output mode.
using OutcomeVector = std::vector<int>;

class UnitaryMatrix {
 public:
  /// Throws DomainError if the matrix is not square or U^dagger U deviates
  /// from the identity by more than `tolerance` in any entry.
  explicit UnitaryMatrix(Eigen::MatrixXcd matrix, double tolerance = 1e-12);

  int size() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Complex operator()(int r, int c) const { return matrix_(r, c); }

  /// max |(U^dagger U - I)_ij|
  double unitarity_error() const;

 private:
  Eigen::MatrixXcd matrix_;
};

void to_json(nlohmann::json& j, const UnitaryMatrix& u);
UnitaryMatrix unitary_from_json(const nlohmann::json& j);

/// Haar-random U(m): QR of a complex Ginibre matrix, with each column of Q
/// rescaled by the phase of the matching diagonal entry of R.
UnitaryMatrix sample_haar_unitary(int m, std::uint64_t seed);

/// Outcome probability for counts `outcome` (total 2n):
///   tanh^{2n} r / cosh^k r * |Haf(A^T A)|^2 / prod n_i!
/// where A is the first k rows of U with column i repeated n_i times.
double gbs_probability(const UnitaryMatrix& u, const GbsConfig& config,
                       std::span<const int> outcome,
                       int hafnian_cap = kDefaultHafnianCap);

/// Total probability of 2n detected photons:
///   tanh^{2n} r / cosh^k r * binom(n - 1 + k/2, n).
double sector_probability(const GbsConfig& config, int n);

/// The rational factor binom(n - 1 + k/2, n) of sector_probability.
BigRational sector_binomial(int k, int n);

inline constexpr int kConvolutionMaxN = 6;
inline constexpr int kConvolutionMaxK = 8;

/// Brute-force sum over compositions l_1 + ... + l_k = n of
/// prod C(2 l_i, l_i).
BigInt convolution_lhs(int n, int k);

/// 4^n * binom(n - 1 + k/2, n), exact.
BigRational convolution_rhs(int n, int k);

/// Number of collision-free outcomes with 2n photons in m modes, C(m, 2n).
BigInt sample_space_size(int m, int n);

struct ExpectedPhotons {
  double mean = 0.0;
  /// mean <= sqrt(m) / 10; a finite-size stand-in for mean = o(sqrt(m)).
  bool collision_free_regime = false;
};

/// E[2n] = k sinh^2 r.
ExpectedPhotons expected_photons(const GbsConfig& config);

/// Probability that heralding k two-mode squeezed states with n photons on
/// average shows a collision: 1 - (1 - ((n/k)/(1 + n/k))^2)^k.
double sbs_collision_probability(double n, int k);

/// Visits every outcome vector of length m with the given total, in
/// lexicographically decreasing order of counts.
void for_each_outcome(int m, int total,
                      const std::function<void(std::span<const int>)>& visit);

/// Sum of gbs_probability over all outcomes with 2n photons (Neumaier
/// compensated summation).
double sector_sum(const UnitaryMatrix& u, const GbsConfig& config, int n);

/// max over trials of |sector_sum - sector_probability| for Haar unitaries
/// seeded by derive_key(seed, trial).
double sector_sum_deviation(const GbsConfig& config, int n, int trials,
                            std::uint64_t seed);

}  // namespace hafmoments
