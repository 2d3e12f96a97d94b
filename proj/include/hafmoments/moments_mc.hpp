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

#include "hafmoments/hafnian.hpp"
#include "hafmoments/rng.hpp"

#include "json.hpp"

#include <cstdint>

namespace hafmoments {

inline constexpr int kDefaultBatches = 100;

/// How batch means are combined into a point estimate.
enum class BatchCombiner {
  kMean,
  /// Median of batch means; offered for the heavy-tailed t = 2 estimand.
  kMedianOfMeans,
};

/// Monte Carlo estimate of M_t(k,n) = E|Haf(X^T X)|^(2t).
struct MCEstimate {
  int t = 1;
  int k = 1;
  int n = 1;
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  int batches = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const MCEstimate&, const MCEstimate&) = default;
};

void to_json(nlohmann::json& j, const MCEstimate& e);
void from_json(const nlohmann::json& j, MCEstimate& e);

/// k x 2n matrix of i.i.d. standard complex normals with E|X_ij|^2 = 1
/// (real and imaginary parts each of variance 1/2), filled row-major.
ComplexRectMatrix sample_gaussian_matrix(int k, int n, CounterStream& stream);

struct MCOptions {
  int jobs = 1;
  BatchCombiner combiner = BatchCombiner::kMean;
  int hafnian_cap = kDefaultHafnianCap;
};

/// Batch b draws from CounterStream(derive_key(seed, b)) so the result is
/// bit-identical for any worker count. `samples` is rounded down to a
/// multiple of `batches`.
MCEstimate estimate_moment(int t, int k, int n, std::int64_t samples,
                           int batches, std::uint64_t seed,
                           const MCOptions& options = {});

/// First and second moments estimated from the same draws, with the
/// batch-means covariance of the two estimates.
struct JointMomentEstimate {
  MCEstimate first;
  MCEstimate second;
  double covariance = 0.0;
};

JointMomentEstimate estimate_moment_pair(int k, int n, std::int64_t samples,
                                         int batches, std::uint64_t seed,
                                         const MCOptions& options = {});

}  // namespace hafmoments
