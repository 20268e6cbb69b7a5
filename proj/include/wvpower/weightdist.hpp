// Copyright 2026 The wvpower Authors
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

/// \file
/// Closed-form distribution of a uniformly random weight vector: expected
/// ordered weights, the density and CDF of the k-th largest weight, and
/// product moments.
///
/// The density of the k-th largest of n weights is
///
///     f(x) = n (n-1) C(n-1, k-1) sum_{j=k}^{min(n, floor(1/x))}
///                (-1)^(j-k) C(n-k, j-k) (1 - j x)^(n-2)
///
/// on [1/n, 1] for k = 1 and on [0, 1/k] for k > 1. Coefficients are built in
/// exact integer arithmetic and rounded once; the alternating sum itself is
/// accumulated with compensation.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wvpower/combinatorics.hpp"
#include "wvpower/errors.hpp"
#include "wvpower/summation.hpp"

namespace wvpower {

/// Largest n for which the alternating density sum has been validated.
inline constexpr std::size_t kMaxDensityPlayers = 64;

/// Expected weight of the k-th largest player, (H_n - H_{k-1}) / n, exact.
inline BigRational expected_ordered_weight_exact(std::size_t n, std::size_t k) {
  if (n == 0) throw invalid_dimension("expected_ordered_weight: n must be >= 1");
  if (k < 1 || k > n) {
    throw invalid_rank("expected_ordered_weight: rank " + std::to_string(k) + " not in [1, " +
                       std::to_string(n) + "]");
  }
  BigRational b = 0;
  for (std::size_t j = k; j <= n; ++j) b += BigRational(1, j);
  return b / n;
}

inline double expected_ordered_weight(std::size_t n, std::size_t k) {
  return to_double(expected_ordered_weight_exact(n, k));
}

/// Barycenter of the ordered simplex: expected_ordered_weight for k = 1..n.
inline std::vector<double> expected_ordered_weights(std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(expected_ordered_weight(n, k));
  return out;
}

/// Density and CDF of the k-th largest coordinate of a uniform point of the
/// n-simplex.
class OrderedWeightDensity {
 public:
  OrderedWeightDensity(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (n == 0) throw invalid_dimension("ordered weight density: n must be >= 1");
    if (k < 1 || k > n) throw invalid_rank("ordered weight density: rank out of range");
    if (n == 1) {
      throw degenerate_distribution("the weight of a single player is the constant 1");
    }
    if (n > kMaxDensityPlayers) {
      throw accuracy_unsupported("ordered weight density validated only for n <= " +
                                 std::to_string(kMaxDensityPlayers));
    }
    const BigInt lead = BigInt(n) * (n - 1) * binomial(n - 1, k - 1);
    for (std::size_t j = k; j <= n; ++j) {
      BigInt c = lead * binomial(n - k, j - k);
      if ((j - k) % 2 == 1) c = -c;
      density_coeff_.push_back(to_double(c));
      cdf_coeff_.push_back(to_double(BigRational(c, BigInt(j) * (n - 1))));
    }
  }

  std::size_t players() const noexcept { return n_; }
  std::size_t rank() const noexcept { return k_; }
  double support_lower() const noexcept { return k_ == 1 ? 1.0 / static_cast<double>(n_) : 0.0; }
  double support_upper() const noexcept { return k_ == 1 ? 1.0 : 1.0 / static_cast<double>(k_); }

  /// Points 1/j (j = k..n) inside the support, ascending.
  std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (std::size_t j = n_; j >= k_ && j >= 1; --j) {
      const double b = 1.0 / static_cast<double>(j);
      if (b >= support_lower() && b <= support_upper()) out.push_back(b);
      if (j == k_) break;
    }
    return out;
  }

  double density(double x) const {
    if (!(x >= support_lower() && x <= support_upper())) return 0.0;
    if (k_ == 1 && x == support_lower() && n_ > 2) return 0.0;
    CompensatedSum acc;
    for (std::size_t j = k_; j <= n_; ++j) {
      const double base = 1.0 - static_cast<double>(j) * x;
      if (base < 0.0) break;
      acc += density_coeff_[j - k_] * ipow(base, n_ - 2);
    }
    return std::max(0.0, acc.value());
  }

  /// P(W_k > x), integrated term by term in closed form.
  double survival(double x) const {
    if (x <= support_lower()) return 1.0;
    if (x >= support_upper()) return 0.0;
    CompensatedSum acc;
    for (std::size_t j = k_; j <= n_; ++j) {
      const double base = 1.0 - static_cast<double>(j) * x;
      if (base <= 0.0) break;
      acc += cdf_coeff_[j - k_] * ipow(base, n_ - 1);
    }
    return std::clamp(acc.value(), 0.0, 1.0);
  }

  double cdf(double x) const {
    if (x <= support_lower()) return 0.0;
    if (x >= support_upper()) return 1.0;
    return std::clamp(1.0 - survival(x), 0.0, 1.0);
  }

 private:
  static double ipow(double base, std::size_t e) noexcept {
    double r = 1.0;
    while (e) {
      if (e & 1u) r *= base;
      base *= base;
      e >>= 1u;
    }
    return r;
  }

  std::size_t n_;
  std::size_t k_;
  std::vector<double> density_coeff_;
  std::vector<double> cdf_coeff_;
};

inline double ordered_weight_density(std::size_t n, std::size_t k, double x) {
  return OrderedWeightDensity(n, k).density(x);
}

inline double ordered_weight_cdf(std::size_t n, std::size_t k, double x) {
  return OrderedWeightDensity(n, k).cdf(x);
}

/// Exponent vector (m_1, ..., m_n) of a product moment.
class MomentIndex {
 public:
  explicit MomentIndex(std::vector<std::uint32_t> exponents) : m_(std::move(exponents)) {}

  std::size_t size() const noexcept { return m_.size(); }
  std::span<const std::uint32_t> exponents() const noexcept { return m_; }
  std::uint64_t total() const noexcept {
    return std::accumulate(m_.begin(), m_.end(), std::uint64_t{0});
  }

 private:
  std::vector<std::uint32_t> m_;
};

/// E(prod W_j^{m_j}) = prod m_j! / (n)_{|m|}, exact.
inline BigRational product_moment_exact(std::size_t n, const MomentIndex& m) {
  if (m.size() != n) {
    throw invalid_arguments("product_moment: exponent vector has length " +
                            std::to_string(m.size()) + ", expected " + std::to_string(n));
  }
  if (n == 0) throw invalid_dimension("product_moment: n must be >= 1");
  BigInt num = 1;
  for (auto e : m.exponents()) num *= factorial(e);
  return BigRational(num, rising_factorial(n, m.total()));
}

inline double product_moment(std::size_t n, const MomentIndex& m) {
  return to_double(product_moment_exact(n, m));
}

/// E(sum_j W_j^m) = m! / (n+1)_{m-1}, exact.
inline BigRational power_sum_moment_exact(std::size_t n, std::uint32_t m) {
  if (m == 0) throw invalid_arguments("power_sum_moment: m must be >= 1");
  if (n == 0) throw invalid_dimension("power_sum_moment: n must be >= 1");
  return BigRational(factorial(m), rising_factorial(n + 1, m - 1));
}

inline double power_sum_moment(std::size_t n, std::uint32_t m) {
  return to_double(power_sum_moment_exact(n, m));
}

struct SumSqStats {
  double mean;
  double variance;
};

/// Mean 2/(n+1) and variance 4(n-1)/((n+1)^2 (n+2)(n+3)) of sum_j W_j^2.
inline SumSqStats sum_sq_stats(std::size_t n) {
  if (n == 0) throw invalid_dimension("sum_sq_stats: n must be >= 1");
  const BigInt nn = n;
  const BigRational mean(2, nn + 1);
  const BigRational var(4 * (nn - 1), (nn + 1) * (nn + 1) * (nn + 2) * (nn + 3));
  return {to_double(mean), to_double(var)};
}

}  // namespace wvpower
