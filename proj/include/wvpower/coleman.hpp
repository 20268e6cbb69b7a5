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
/// Expected Coleman index of a random game.
///
/// Let X be the weight of a uniformly random coalition and Z = X - 1/2. Then
/// E(C)(q) = P(X >= q) = 1 - F_Z(q - 1/2), and the characteristic function of
/// Z is the series
///
///     phi(t) = sum_j (-1)^j (t/2)^(2j) C(j+n-1, n-1) / (n)_(2j).
///
/// F_Z is recovered by a sine-transform inversion. Z carries atoms of mass
/// 2^-n at +-1/2, and its density tends to n(n-1) 2^-n at both ends of the
/// support. Both parts are removed from phi in closed form before
/// integrating, which leaves an integrand decaying like t^-3.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "wvpower/errors.hpp"
#include "wvpower/games.hpp"
#include "wvpower/rng.hpp"
#include "wvpower/simplex.hpp"
#include "wvpower/summation.hpp"

namespace wvpower {

/// |t| above which phi_Z is not evaluated.
inline constexpr double kPhiMaxFrequency = 1024.0;

namespace detail {

// Working precision needed at |t|: the series loses about log10(cosh(t/2))
// digits to cancellation.
struct PhiTier {
  double max_t;
  unsigned digits;  // 0 means plain double
};
inline constexpr PhiTier kPhiTiers[] = {{16.0, 0}, {120.0, 50}, {320.0, 100}, {1024.0, 250}};

template <class F>
F phi_series(std::size_t n, const F& t) {
  const F h = (t / 2) * (t / 2);
  const F eps = std::numeric_limits<F>::epsilon();
  F term = 1;
  F sum = 1;
  for (std::uint64_t j = 0;; ++j) {
    const std::uint64_t a = n + 2 * j;
    term *= -h * F(j + n) / (F(j + 1) * F(a) * F(a + 1));
    sum += term;
    const bool shrinking = h * F(j + 1 + n) < F(j + 2) * F(a + 2) * F(a + 3);
    if (shrinking && abs(term) <= eps * abs(sum)) break;
    if (term == 0) break;
  }
  return sum;
}

inline double phi_series_double(std::size_t n, double t) {
  const double h = 0.25 * t * t;
  double term = 1.0;
  CompensatedSum sum;
  sum += 1.0;
  for (std::uint64_t j = 0;; ++j) {
    const double a = static_cast<double>(n + 2 * j);
    term *= -h * static_cast<double>(j + n) / (static_cast<double>(j + 1) * a * (a + 1.0));
    sum += term;
    const bool shrinking = h * static_cast<double>(j + 1 + n) < static_cast<double>(j + 2) * (a + 2.0) * (a + 3.0);
    if (shrinking && std::fabs(term) <= std::numeric_limits<double>::epsilon() * std::fabs(sum.value())) break;
    if (term == 0.0) break;
  }
  return sum.value();
}

template <unsigned Digits>
double phi_series_mp(std::size_t n, double t) {
  using F = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;
  return static_cast<double>(phi_series<F>(n, F(t)));
}

}  // namespace detail

/// Characteristic function of Z for n players.
inline double phi_Z(std::size_t n, double t) {
  if (n == 0) throw invalid_dimension("phi_Z: n must be >= 1");
  if (!std::isfinite(t)) throw invalid_arguments("phi_Z: t must be finite");
  const double at = std::fabs(t);
  if (at > kPhiMaxFrequency) {
    throw accuracy_unsupported("phi_Z: |t| = " + std::to_string(at) + " exceeds the validated range " +
                               std::to_string(kPhiMaxFrequency));
  }
  if (at == 0.0) return 1.0;
  double r;
  if (at <= detail::kPhiTiers[0].max_t) {
    r = detail::phi_series_double(n, at);
  } else if (at <= detail::kPhiTiers[1].max_t) {
    r = detail::phi_series_mp<50>(n, at);
  } else if (at <= detail::kPhiTiers[2].max_t) {
    r = detail::phi_series_mp<100>(n, at);
  } else {
    r = detail::phi_series_mp<250>(n, at);
  }
  return std::clamp(r, -1.0, 1.0);
}

enum class ColemanMethod { inversion, normal, hoeffding_bound };

struct ColemanCurveSpec {
  std::size_t n = 0;
  ColemanMethod method = ColemanMethod::inversion;
  double integration_tolerance = 1e-6;
  double max_frequency = kPhiMaxFrequency;
  // Only used by hoeffding_bound, which averages the bound over sampled games.
  std::uint64_t samples = 65536;
  RandomSeed seed{};

  void validate() const {
    if (n == 0) throw invalid_dimension("coleman spec: n must be >= 1");
    if (!(integration_tolerance > 0.0)) throw invalid_arguments("coleman spec: tolerance must be > 0");
    if (!(max_frequency > 0.0) || max_frequency > kPhiMaxFrequency) {
      throw invalid_arguments("coleman spec: max frequency must lie in (0, " +
                              std::to_string(kPhiMaxFrequency) + "]");
    }
    if (method == ColemanMethod::hoeffding_bound && samples == 0) {
      throw invalid_arguments("coleman spec: samples must be >= 1");
    }
  }
};

/// Inverts phi_Z for a fixed n. Values of phi are cached across calls, so a
/// curve costs little more than a single point. Not safe for concurrent use;
/// give each thread its own instance.
class ColemanInverter {
 public:
  explicit ColemanInverter(std::size_t n, double tolerance = 1e-6, double max_frequency = kPhiMaxFrequency)
      : n_(n), tol_(tolerance), max_t_(max_frequency) {
    ColemanCurveSpec{n, ColemanMethod::inversion, tolerance, max_frequency}.validate();
    atom_ = std::ldexp(1.0, -static_cast<int>(n));
    edge_ = static_cast<double>(n) * static_cast<double>(n - 1) * atom_;
    rest_mass_ = 1.0 - 2.0 * atom_ - edge_;
  }

  std::size_t players() const noexcept { return n_; }

  /// P(Z <= x) for |x| < 1/2.
  double cdf(double x) {
    const double base = atom_ + edge_ * (x + 0.5) + 0.5 * rest_mass_;
    double span = kInitialSpan;
    double prev = integral(x, 0.0, span);
    for (;;) {
      const double next_span = 2.0 * span;
      if (next_span > max_t_) {
        throw convergence_failure("coleman inversion did not settle below max frequency " +
                                      std::to_string(max_t_),
                                  1.0 - (base + prev / std::numbers::pi), 1.0 - base);
      }
      const double cur = prev + integral(x, span, next_span);
      if (std::fabs(cur - prev) / std::numbers::pi < tol_) {
        return std::clamp(base + cur / std::numbers::pi, 0.0, 1.0);
      }
      prev = cur;
      span = next_span;
    }
  }

  /// E(C) at quota q.
  double expected(double q) {
    if (!(q > 0.5 && q <= 1.0)) throw quota_out_of_range("expected_coleman: quota must lie in (1/2, 1]");
    if (q == 1.0) return atom_;
    return 1.0 - cdf(q - 0.5);
  }

 private:
  static constexpr double kInitialSpan = 32.0;
  static constexpr double kPanelWidth = 4.0;
  static constexpr double kPanelTolerance = 1e-13;
  static constexpr unsigned kMaxPanelDepth = 8;

  double remainder(double t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    const double r = phi_Z(n_, t) - 2.0 * atom_ * std::cos(0.5 * t) - 2.0 * edge_ * std::sin(0.5 * t) / t;
    cache_.emplace(t, r);
    return r;
  }

  double panel(double x, double a, double b, unsigned depth) {
    double err = 0.0;
    auto f = [&](double t) { return std::sin(t * x) * remainder(t) / t; };
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
    if (err <= kPanelTolerance || depth >= kMaxPanelDepth) return v;
    const double m = 0.5 * (a + b);
    return panel(x, a, m, depth + 1) + panel(x, m, b, depth + 1);
  }

  double integral(double x, double a, double b) {
    double s = 0.0;
    for (double lo = a; lo < b; lo += kPanelWidth) s += panel(x, lo, std::min(lo + kPanelWidth, b), 0);
    return s;
  }

  std::size_t n_;
  double tol_;
  double max_t_;
  double atom_;
  double edge_;
  double rest_mass_;
  std::unordered_map<double, double> cache_;
};

/// 1 - Phi(sqrt(2(n+1)) (q - 1/2)).
inline double expected_coleman_normal(std::size_t n, double q) {
  if (n == 0) throw invalid_dimension("expected_coleman_normal: n must be >= 1");
  if (!(q >= 0.5 && q <= 1.0)) throw quota_out_of_range("expected_coleman_normal: quota must lie in [1/2, 1]");
  const double z = std::sqrt(2.0 * static_cast<double>(n + 1)) * (q - 0.5);
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

/// Quota q with expected_coleman_normal(n, q) = y.
inline double expected_coleman_normal_inverse(std::size_t n, double y) {
  if (!(y > 0.0 && y <= 0.5)) throw invalid_arguments("normal inverse: y must lie in (0, 1/2]");
  if (y == 0.5) return 0.5;
  const boost::math::normal_distribution<double> std_normal;
  const double z = boost::math::quantile(boost::math::complement(std_normal, y));
  return 0.5 + z / std::sqrt(2.0 * static_cast<double>(n + 1));
}

/// Monte Carlo mean of the Hoeffding bound over uniform random weights.
inline double expected_hoeffding_bound(std::size_t n, double q, std::uint64_t samples, RandomSeed seed) {
  if (samples == 0) throw invalid_arguments("expected_hoeffding_bound: samples must be >= 1");
  Xoshiro256 engine(seed);
  std::vector<double> w(n), vals(samples);
  for (auto& v : vals) {
    sample_uniform_simplex_into(std::span<double>(w), engine);
    double ss = 0.0;
    for (double x : w) ss += x * x;
    const double d = q - 0.5;
    v = std::exp(-2.0 * d * d / ss);
  }
  return pairwise_sum(vals) / static_cast<double>(samples);
}

inline double expected_coleman(const ColemanCurveSpec& spec, double q) {
  spec.validate();
  switch (spec.method) {
    case ColemanMethod::normal:
      return expected_coleman_normal(spec.n, q);
    case ColemanMethod::hoeffding_bound:
      if (!(q > 0.5 && q <= 1.0)) throw quota_out_of_range("expected_coleman: quota must lie in (1/2, 1]");
      return expected_hoeffding_bound(spec.n, q, spec.samples, spec.seed);
    case ColemanMethod::inversion:
      break;
  }
  ColemanInverter inv(spec.n, spec.integration_tolerance, spec.max_frequency);
  return inv.expected(q);
}

inline double expected_coleman(std::size_t n, double q) {
  return expected_coleman(ColemanCurveSpec{n}, q);
}

/// One value per quota, sharing a single inverter (or sample set).
inline std::vector<double> expected_coleman_curve(const ColemanCurveSpec& spec, std::span<const double> quotas) {
  spec.validate();
  std::vector<double> out;
  out.reserve(quotas.size());
  if (spec.method == ColemanMethod::inversion) {
    ColemanInverter inv(spec.n, spec.integration_tolerance, spec.max_frequency);
    for (double q : quotas) out.push_back(inv.expected(q));
  } else {
    for (double q : quotas) out.push_back(expected_coleman(spec, q));
  }
  return out;
}

struct ErrorRatio {
  double ratio;
  double normal_quota;  // solves C1(q) = y
  double exact_quota;   // solves E(C)(q) = y
};

/// Ratio of the quotas at which the normal approximation and the inverted
/// expectation reach level y.
inline ErrorRatio coleman_error_ratio(std::size_t n, double y, const ColemanCurveSpec& spec = {}) {
  if (n == 0) throw invalid_dimension("coleman_error_ratio: n must be >= 1");
  const double floor = std::ldexp(1.0, -2 * static_cast<int>(n));
  if (!(y >= floor && y <= 0.5)) {
    throw invalid_arguments("coleman_error_ratio: y must lie in [2^-2n, 1/2]");
  }
  if (y == 0.5) return {1.0, 0.5, 0.5};
  const double qn = expected_coleman_normal_inverse(n, y);

  ColemanInverter inv(n, spec.integration_tolerance, spec.max_frequency);
  // E(C) falls from 1/2 at q = 1/2 to 2^-n as q -> 1.
  const double top = std::ldexp(1.0, -static_cast<int>(n));
  if (y <= top) {
    throw convergence_failure("coleman_error_ratio: y = " + std::to_string(y) +
                                  " is not attained by E(C) on (1/2, 1); its infimum is 2^-n",
                              0.5, top);
  }
  double lo = 0.5, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inv.expected(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double qe = 0.5 * (lo + hi);
  return {qn / qe, qn, qe};
}

}  // namespace wvpower
