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

#include "hafmoments/moments_mc.hpp"

#include "hafmoments/errors.hpp"
#include "hafmoments/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hafmoments {

void to_json(nlohmann::json& j, const MCEstimate& e) {
  j = nlohmann::json{{"t", e.t},           {"k", e.k},
                     {"n", e.n},           {"mean", e.mean},
                     {"stderr", e.std_error}, {"samples", e.samples},
                     {"batches", e.batches}, {"seed", e.seed}};
}

void from_json(const nlohmann::json& j, MCEstimate& e) {
  e.t = j.at("t").get<int>();
  e.k = j.at("k").get<int>();
  e.n = j.at("n").get<int>();
  e.mean = j.at("mean").get<double>();
  e.std_error = j.at("stderr").get<double>();
  e.samples = j.at("samples").get<std::int64_t>();
  e.batches = j.at("batches").get<int>();
  e.seed = j.at("seed").get<std::uint64_t>();
}

ComplexRectMatrix sample_gaussian_matrix(int k, int n, CounterStream& stream) {
  if (k < 1 || n < 1) throw DomainError("sample_gaussian_matrix: needs k, n >= 1");
  ComplexRectMatrix x(k, 2 * n);
  const double scale = std::numbers::sqrt2 / 2.0;
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < 2 * n; ++c) {
      const double re = stream.next_normal();
      const double im = stream.next_normal();
      x(r, c) = Complex{re * scale, im * scale};
    }
  }
  return x;
}

namespace {

struct BatchSums {
  double first = 0.0;   // sum |Haf|^2
  double second = 0.0;  // sum |Haf|^4
};

void validate(int k, int n, std::int64_t samples, int batches,
              const MCOptions& options) {
  if (k < 1 || n < 1) throw DomainError("estimate_moment: needs k, n >= 1");
  if (n > options.hafnian_cap) {
    throw CapExceeded("estimate_moment: n=" + std::to_string(n) +
                      " exceeds hafnian cap " + std::to_string(options.hafnian_cap));
  }
  if (batches < 10) throw DomainError("estimate_moment: batches must be >= 10");
  if (samples < batches) {
    throw DomainError("estimate_moment: samples must be >= batches");
  }
}

std::vector<BatchSums> run_batches(int k, int n, std::int64_t per_batch,
                                   int batches, std::uint64_t seed,
                                   const MCOptions& options) {
  std::vector<BatchSums> sums(batches);
  parallel_for(static_cast<std::size_t>(batches), options.jobs, [&](std::size_t b) {
    CounterStream stream(derive_key(seed, b));
    BatchSums acc;
    for (std::int64_t s = 0; s < per_batch; ++s) {
      const auto x = sample_gaussian_matrix(k, n, stream);
      const double p = std::norm(hafnian_sym_product(x, options.hafnian_cap));
      acc.first += p;
      acc.second += p * p;
    }
    sums[b] = acc;
  });
  return sums;
}

double mean_of(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total / static_cast<double>(v.size());
}

double covariance_of_mean(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - ma) * (b[i] - mb);
  const double nb = static_cast<double>(a.size());
  return acc / (nb - 1.0) / nb;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

MCEstimate summarize(int t, int k, int n, std::int64_t per_batch, int batches,
                     std::uint64_t seed, const std::vector<double>& batch_means,
                     BatchCombiner combiner) {
  MCEstimate e;
  e.t = t;
  e.k = k;
  e.n = n;
  e.samples = per_batch * batches;
  e.batches = batches;
  e.seed = seed;
  const double var_of_mean = covariance_of_mean(batch_means, batch_means);
  if (combiner == BatchCombiner::kMedianOfMeans) {
    e.mean = median_of(batch_means);
    // Asymptotic variance of a sample median of normal batch means.
    e.std_error = std::sqrt(var_of_mean * std::numbers::pi / 2.0);
  } else {
    e.mean = mean_of(batch_means);
    e.std_error = std::sqrt(var_of_mean);
  }
  return e;
}

}  // namespace

MCEstimate estimate_moment(int t, int k, int n, std::int64_t samples, int batches,
                           std::uint64_t seed, const MCOptions& options) {
  if (t != 1 && t != 2) throw DomainError("estimate_moment: t must be 1 or 2");
  validate(k, n, samples, batches, options);
  const std::int64_t per_batch = samples / batches;
  const auto sums = run_batches(k, n, per_batch, batches, seed, options);
  std::vector<double> means(batches);
  for (int b = 0; b < batches; ++b) {
    means[b] = (t == 1 ? sums[b].first : sums[b].second) / static_cast<double>(per_batch);
  }
  return summarize(t, k, n, per_batch, batches, seed, means, options.combiner);
}

JointMomentEstimate estimate_moment_pair(int k, int n, std::int64_t samples,
                                         int batches, std::uint64_t seed,
                                         const MCOptions& options) {
  validate(k, n, samples, batches, options);
  const std::int64_t per_batch = samples / batches;
  const auto sums = run_batches(k, n, per_batch, batches, seed, options);
  std::vector<double> first(batches);
  std::vector<double> second(batches);
  for (int b = 0; b < batches; ++b) {
    first[b] = sums[b].first / static_cast<double>(per_batch);
    second[b] = sums[b].second / static_cast<double>(per_batch);
  }
  JointMomentEstimate out;
  out.first = summarize(1, k, n, per_batch, batches, seed, first, BatchCombiner::kMean);
  out.second = summarize(2, k, n, per_batch, batches, seed, second, BatchCombiner::kMean);
  out.covariance = covariance_of_mean(first, second);
  return out;
}

}  // namespace hafmoments
