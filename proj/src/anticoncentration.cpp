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

#include "hafmoments/anticoncentration.hpp"

#include "hafmoments/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace hafmoments {

std::string to_string(M2Mode mode) {
  return mode == M2Mode::kExact ? "exact" : "monte-carlo";
}

M2Mode parse_m2_mode(const std::string& text) {
  if (text == "exact") return M2Mode::kExact;
  if (text == "monte-carlo" || text == "mc") return M2Mode::kMonteCarlo;
  throw DomainError("unknown m2 mode '" + text + "' (expected exact or monte-carlo)");
}

double M2Report::m2_value() const {
  if (m2_exact) return m2_exact->convert_to<double>();
  if (m2_estimate) return *m2_estimate;
  return std::numeric_limits<double>::quiet_NaN();
}

BigRational m2_k1(int n) {
  if (n < 1) throw DomainError("m2_k1: n must be >= 1");
  return BigRational(BigInt(1), BigInt(1) << (2 * n));
}

BigRational m2_limit(int n) {
  if (n < 1) throw DomainError("m2_limit: n must be >= 1");
  return BigRational(binomial(2L * n, n), BigInt(1) << (2 * n));
}

double m2_asymptote(int n) {
  if (n < 1) throw DomainError("m2_asymptote: n must be >= 1");
  return 1.0 / std::sqrt(std::numbers::pi * n);
}

BigRational m2_exact_from(long k, const MomentPolynomial& second_moment) {
  const BigInt m1 = first_moment_closed(k, second_moment.n);
  const BigInt m2 = second_moment_eval(k, second_moment);
  return BigRational(m1 * m1, m2);
}

M2Report m2(long k, int n, M2Mode mode, const M2Options& options) {
  if (k < 1 || n < 1) throw DomainError("m2: needs k, n >= 1");
  M2Report report;
  report.k = k;
  report.n = n;
  report.mode = mode;
  report.m2_k1 = m2_k1(n);
  report.m2_limit = m2_limit(n);
  report.m2_asymptote = m2_asymptote(n);
  if (mode == M2Mode::kExact) {
    const auto poly = options.second_moment_source
                          ? options.second_moment_source(n)
                          : second_moment_coeffs(n, options.enumeration);
    report.m2_exact = m2_exact_from(k, poly);
    return report;
  }
  if (k > std::numeric_limits<int>::max()) throw DomainError("m2: k too large for MC");
  MCOptions mc;
  mc.jobs = options.jobs;
  const auto joint = estimate_moment_pair(static_cast<int>(k), n, options.samples,
                                          options.batches, options.seed, mc);
  const double a = joint.first.mean;
  const double b = joint.second.mean;
  const double ratio = a * a / b;
  // Delta method on f(a, b) = a^2 / b.
  const double da = 2.0 * a / b;
  const double db = -ratio / b;
  const double var = da * da * joint.first.std_error * joint.first.std_error +
                     db * db * joint.second.std_error * joint.second.std_error +
                     2.0 * da * db * joint.covariance;
  report.m2_estimate = ratio;
  report.m2_stderr = std::sqrt(std::max(var, 0.0));
  return report;
}

double paley_zygmund_bound(double alpha, double p2) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("paley_zygmund_bound: alpha must lie in (0, 1)");
  }
  if (!(p2 > 0.0)) throw DomainError("paley_zygmund_bound: p2 must be > 0");
  return std::clamp((1.0 - alpha) * (1.0 - alpha) * p2, 0.0, 1.0);
}

double translation_bound(double m2_ratio_approx, double delta) {
  if (!(m2_ratio_approx >= 1.0)) {
    throw DomainError("translation_bound: normalized second moment must be >= 1");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("translation_bound: delta must lie in [0, 1)");
  }
  return m2_ratio_approx / ((1.0 - delta) * (1.0 - delta)) + 1.0;
}

std::vector<M2Report> transition_scan(const std::vector<int>& n_values,
                                      const std::vector<long>& k_values,
                                      M2Mode mode, const M2Options& options) {
  std::vector<M2Report> rows;
  if (n_values.empty() || k_values.empty()) return rows;
  // Enumerate each second-moment polynomial once per n.
  std::map<int, MomentPolynomial> cache;
  M2Options cell = options;
  if (mode == M2Mode::kExact) {
    cell.second_moment_source = [&](int n) -> MomentPolynomial {
      auto it = cache.find(n);
      if (it == cache.end()) {
        it = cache.emplace(n, options.second_moment_source
                                  ? options.second_moment_source(n)
                                  : second_moment_coeffs(n, options.enumeration))
                 .first;
      }
      return it->second;
    };
  }
  for (int n : n_values) {
    for (long k : k_values) rows.push_back(m2(k, n, mode, cell));
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::string rational_to_string(const BigRational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigRational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return BigRational(BigInt(text));
    return BigRational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw DomainError("not an exact rational: '" + text + "'");
  }
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

}  // namespace

std::string scan_to_csv(const std::vector<M2Report>& rows) {
  std::ostringstream out;
  out << kScanCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.k << ',' << r.n << ',';
    if (r.m2_exact) {
      out << rational_to_string(*r.m2_exact) << ',';
    } else {
      out << format_double(r.m2_estimate.value_or(std::nan(""))) << ','
          << format_double(r.m2_stderr.value_or(0.0));
    }
    out << ',' << rational_to_string(r.m2_k1) << ','
        << rational_to_string(r.m2_limit) << ',' << format_double(r.m2_asymptote)
        << ',' << to_string(r.mode) << '\n';
  }
  return out.str();
}

nlohmann::json scan_to_json(const std::vector<M2Report>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"k", r.k},
                       {"n", r.n},
                       {"m2_k1", rational_to_string(r.m2_k1)},
                       {"m2_limit", rational_to_string(r.m2_limit)},
                       {"m2_asymptote", r.m2_asymptote},
                       {"mode", to_string(r.mode)}};
    if (r.m2_exact) {
      row["m2"] = rational_to_string(*r.m2_exact);
      row["m2_stderr"] = nullptr;
    } else {
      row["m2"] = r.m2_estimate.value_or(std::nan(""));
      row["m2_stderr"] = r.m2_stderr.value_or(0.0);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<M2Report> scan_from_json(const nlohmann::json& j) {
  std::vector<M2Report> rows;
  for (const auto& row : j) {
    M2Report r;
    r.k = row.at("k").get<long>();
    r.n = row.at("n").get<int>();
    r.mode = parse_m2_mode(row.at("mode").get<std::string>());
    r.m2_k1 = rational_from_string(row.at("m2_k1").get<std::string>());
    r.m2_limit = rational_from_string(row.at("m2_limit").get<std::string>());
    r.m2_asymptote = row.at("m2_asymptote").get<double>();
    if (r.mode == M2Mode::kExact) {
      r.m2_exact = rational_from_string(row.at("m2").get<std::string>());
    } else {
      r.m2_estimate = row.at("m2").get<double>();
      r.m2_stderr = row.at("m2_stderr").get<double>();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<M2Report> scan_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kScanCsvHeader) {
    throw DomainError("scan CSV: missing or unexpected header");
  }
  std::vector<M2Report> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw DomainError("scan CSV: expected 8 fields: " + line);
    M2Report r;
    r.k = std::stol(f[0]);
    r.n = std::stoi(f[1]);
    r.mode = parse_m2_mode(f[7]);
    if (r.mode == M2Mode::kExact) {
      r.m2_exact = rational_from_string(f[2]);
    } else {
      r.m2_estimate = std::stod(f[2]);
      r.m2_stderr = std::stod(f[3]);
    }
    r.m2_k1 = rational_from_string(f[4]);
    r.m2_limit = rational_from_string(f[5]);
    r.m2_asymptote = std::stod(f[6]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace hafmoments
