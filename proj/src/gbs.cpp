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

#include "hafmoments/gbs.hpp"

#include "hafmoments/errors.hpp"
#include "hafmoments/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hafmoments {

void GbsConfig::validate() const {
  if (m < 1) throw DomainError("GbsConfig: m must be >= 1");
  if (k < 1 || k > m) throw DomainError("GbsConfig: k must satisfy 1 <= k <= m");
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("GbsConfig: r must be finite and >= 0");
  }
}

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd matrix, double tolerance)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw DomainError("UnitaryMatrix: matrix must be square and non-empty");
  }
  const double err = unitarity_error();
  if (!(err <= tolerance)) {
    throw DomainError("UnitaryMatrix: U^dagger U deviates from identity by " +
                      std::to_string(err));
  }
}

double UnitaryMatrix::unitarity_error() const {
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  const auto n = matrix_.rows();
  return (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

void to_json(nlohmann::json& j, const UnitaryMatrix& u) {
  nlohmann::json entries = nlohmann::json::array();
  for (int r = 0; r < u.size(); ++r) {
    for (int c = 0; c < u.size(); ++c) {
      entries.push_back({u(r, c).real(), u(r, c).imag()});
    }
  }
  j = nlohmann::json{{"m", u.size()}, {"entries", entries}};
}

UnitaryMatrix unitary_from_json(const nlohmann::json& j) {
  const int m = j.at("m").get<int>();
  const auto& entries = j.at("entries");
  if (m < 1 || entries.size() != static_cast<std::size_t>(m) * m) {
    throw DomainError("unitary JSON: entry count does not match m*m");
  }
  Eigen::MatrixXcd mat(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      const auto& e = entries[static_cast<std::size_t>(r) * m + c];
      mat(r, c) = Complex{e.at(0).get<double>(), e.at(1).get<double>()};
    }
  }
  return UnitaryMatrix(std::move(mat));
}

UnitaryMatrix sample_haar_unitary(int m, std::uint64_t seed) {
  if (m < 1) throw DomainError("sample_haar_unitary: m must be >= 1");
  CounterStream stream(derive_key(seed, 0x4a11));
  Eigen::MatrixXcd g(m, m);
  const double scale = std::numbers::sqrt2 / 2.0;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      const double re = stream.next_normal();
      const double im = stream.next_normal();
      g(r, c) = Complex{re * scale, im * scale};
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& rmat = qr.matrixQR();
  for (int c = 0; c < m; ++c) {
    const Complex d = rmat(c, c);
    const double mag = std::abs(d);
    q.col(c) *= mag > 0.0 ? d / mag : Complex{1.0, 0.0};
  }
  return UnitaryMatrix(std::move(q));
}

double gbs_probability(const UnitaryMatrix& u, const GbsConfig& config,
                       std::span<const int> outcome, int hafnian_cap) {
  config.validate();
  if (u.size() != config.m) throw DomainError("gbs_probability: U is not m x m");
  if (static_cast<int>(outcome.size()) != config.m) {
    throw DomainError("gbs_probability: outcome length must equal m");
  }
  int total = 0;
  double count_factorials = 1.0;
  for (int c : outcome) {
    if (c < 0) throw DomainError("gbs_probability: negative photon count");
    total += c;
    for (int f = 2; f <= c; ++f) count_factorials *= f;
  }
  if (total % 2 != 0) {
    throw DomainError("gbs_probability: total photon count must be even, got " +
                      std::to_string(total));
  }
  const int n = total / 2;
  if (n > hafnian_cap) {
    throw CapExceeded("gbs_probability: n=" + std::to_string(n) +
                      " exceeds hafnian cap " + std::to_string(hafnian_cap));
  }
  const double prefactor = std::pow(std::tanh(config.r), 2 * n) /
                           std::pow(std::cosh(config.r), config.k);
  if (n == 0) return prefactor;

  ComplexRectMatrix sub(config.k, 2 * n);
  int col = 0;
  for (int mode = 0; mode < config.m; ++mode) {
    for (int copy = 0; copy < outcome[mode]; ++copy, ++col) {
      for (int row = 0; row < config.k; ++row) sub(row, col) = u(row, mode);
    }
  }
  return prefactor * std::norm(hafnian_sym_product(sub, hafnian_cap)) /
         count_factorials;
}

BigRational sector_binomial(int k, int n) {
  if (k < 1) throw DomainError("sector_binomial: k must be >= 1");
  if (n < 0) throw DomainError("sector_binomial: n must be >= 0");
  return binom_half(HalfInteger{2L * n - 2 + k}, n);
}

double sector_probability(const GbsConfig& config, int n) {
  if (config.k < 1 || !(config.r >= 0.0)) {
    throw DomainError("sector_probability: needs k >= 1 and r >= 0");
  }
  if (n < 0) throw DomainError("sector_probability: n must be >= 0");
  const double prefactor = std::pow(std::tanh(config.r), 2 * n) /
                           std::pow(std::cosh(config.r), config.k);
  return prefactor * sector_binomial(config.k, n).convert_to<double>();
}

namespace {

void compositions(int remaining, int parts, const BigInt& product,
                  BigInt& total) {
  if (parts == 1) {
    total += product * binomial(2L * remaining, remaining);
    return;
  }
  for (int l = 0; l <= remaining; ++l) {
    compositions(remaining - l, parts - 1, product * binomial(2L * l, l), total);
  }
}

}  // namespace

BigInt convolution_lhs(int n, int k) {
  if (n < 0 || k < 1) throw DomainError("convolution_lhs: needs n >= 0, k >= 1");
  if (n > kConvolutionMaxN || k > kConvolutionMaxK) {
    throw CapExceeded("convolution_lhs: (n, k) = (" + std::to_string(n) + ", " +
                      std::to_string(k) + ") exceeds cap (" +
                      std::to_string(kConvolutionMaxN) + ", " +
                      std::to_string(kConvolutionMaxK) + ")");
  }
  BigInt total = 0;
  compositions(n, k, BigInt(1), total);
  return total;
}

BigRational convolution_rhs(int n, int k) {
  return BigRational(BigInt(1) << (2 * n)) * sector_binomial(k, n);
}

BigInt sample_space_size(int m, int n) {
  if (m < 0 || n < 0) throw DomainError("sample_space_size: negative argument");
  if (2 * n > m) {
    throw DomainError("sample_space_size: 2n=" + std::to_string(2 * n) +
                      " exceeds m=" + std::to_string(m));
  }
  return binomial(m, 2L * n);
}

ExpectedPhotons expected_photons(const GbsConfig& config) {
  config.validate();
  const double s = std::sinh(config.r);
  ExpectedPhotons out;
  out.mean = config.k * s * s;
  out.collision_free_regime = out.mean <= std::sqrt(static_cast<double>(config.m)) / 10.0;
  return out;
}

double sbs_collision_probability(double n, int k) {
  if (k < 1) throw DomainError("sbs_collision_probability: k must be >= 1");
  if (!(n >= 0.0)) throw DomainError("sbs_collision_probability: n must be >= 0");
  const double ratio = n / k;
  const double x = ratio / (1.0 + ratio);
  // 1 - (1 - x^2)^k without cancellation for tiny x.
  return -std::expm1(k * std::log1p(-x * x));
}

void for_each_outcome(int m, int total,
                      const std::function<void(std::span<const int>)>& visit) {
  if (m < 1 || total < 0) throw DomainError("for_each_outcome: bad arguments");
  std::vector<int> counts(m, 0);
  auto recurse = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == m - 1) {
      counts[mode] = remaining;
      visit(counts);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[mode] = c;
      self(self, mode + 1, remaining - c);
    }
  };
  recurse(recurse, 0, total);
}

double sector_sum(const UnitaryMatrix& u, const GbsConfig& config, int n) {
  double sum = 0.0;
  double compensation = 0.0;
  for_each_outcome(config.m, 2 * n, [&](std::span<const int> outcome) {
    const double p = gbs_probability(u, config, outcome);
    const double t = sum + p;
    compensation += std::abs(sum) >= std::abs(p) ? (sum - t) + p : (p - t) + sum;
    sum = t;
  });
  return sum + compensation;
}

double sector_sum_deviation(const GbsConfig& config, int n, int trials,
                            std::uint64_t seed) {
  config.validate();
  if (trials < 1) throw DomainError("sector_sum_deviation: trials must be >= 1");
  const double expected = sector_probability(config, n);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto u = sample_haar_unitary(config.m, derive_key(seed, trial));
    worst = std::max(worst, std::abs(sector_sum(u, config, n) - expected));
  }
  return worst;
}

}  // namespace hafmoments
