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
/// Piecewise polynomial least squares with automatic breakpoints, and local
/// extremum counting on sampled or exact curves.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wvpower/errors.hpp"
#include "wvpower/experiments.hpp"
#include "wvpower/polynomial.hpp"
#include "wvpower/stationary.hpp"

namespace wvpower {

struct SamplePoint {
  double x;
  double y;
};

enum class BreakpointMode { fixed, automatic };

struct SplineOptions {
  unsigned max_degree = 3;
  BreakpointMode mode = BreakpointMode::automatic;
  std::vector<double> breakpoints;  // interior, for BreakpointMode::fixed
  // Cost per free parameter added to the squared residual when choosing the
  // degree and the number of pieces.
  double penalty = 1e-9;
};

struct SplineFit {
  std::vector<double> knots;  // first sample, interior breakpoints..., last sample
  std::vector<Polynomial<double>> pieces;
  unsigned degree = 0;
  double max_residual = 0.0;
  double sum_squares = 0.0;

  std::vector<double> interior_breakpoints() const {
    return knots.size() > 2 ? std::vector<double>(knots.begin() + 1, knots.end() - 1) : std::vector<double>{};
  }

  double operator()(double x) const {
    std::size_t i = 0;
    while (i + 1 < pieces.size() && x > knots[i + 1]) ++i;
    return pieces[i].eval(x);
  }

  /// Largest value jump between neighbouring pieces at interior breakpoints.
  double max_jump() const {
    double j = 0.0;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
      j = std::max(j, std::fabs(pieces[i - 1].eval(knots[i]) - pieces[i].eval(knots[i])));
    }
    return j;
  }
};

namespace detail {

struct PieceFit {
  Polynomial<double> poly;
  double sse = 0.0;
};

inline PieceFit fit_piece(std::span<const SamplePoint> pts, unsigned degree) {
  const auto m = static_cast<Eigen::Index>(pts.size());
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd a(m, cols);
  Eigen::VectorXd b(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    double p = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      a(r, c) = p;
      p *= pts[static_cast<std::size_t>(r)].x;
    }
    b(r) = pts[static_cast<std::size_t>(r)].y;
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd res = a * coef - b;
  return {Polynomial<double>(std::vector<double>(coef.data(), coef.data() + coef.size())), res.squaredNorm()};
}

// Bisection for a strict sign change of f on [l, r].
template <class F>
double bisect_root(const F& f, double l, double r) {
  double fl = f(l);
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (l + r);
    const double fm = f(mid);
    if ((fm < 0.0) == (fl < 0.0)) {
      l = mid;
      fl = fm;
    } else {
      r = mid;
    }
  }
  return 0.5 * (l + r);
}

// Point in [lo, hi] where two neighbouring pieces meet: a sign change of their
// difference if there is one, otherwise where the difference is smallest
// (a tangential meeting shows up as a root of the derivative).
inline double meeting_point(const Polynomial<double>& left, const Polynomial<double>& right, double lo,
                            double hi) {
  const auto diff = left - right;
  const auto slope = diff.derivative();
  auto f = [&](double x) { return diff.eval(x); };
  auto g = [&](double x) { return slope.eval(x); };
  auto flips = [](double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); };
  constexpr int kGrid = 1000;
  double best = 0.5 * (lo + hi), best_abs = std::numeric_limits<double>::infinity();
  double x0 = lo, f0 = f(lo), g0 = g(lo);
  for (int i = 0; i <= kGrid; ++i) {
    const double x = lo + (hi - lo) * i / kGrid;
    const double fx = f(x), gx = g(x);
    if (i > 0 && flips(f0, fx)) return bisect_root(f, x0, x);
    if (std::fabs(fx) < best_abs) {
      best_abs = std::fabs(fx);
      best = x;
    }
    if (i > 0 && flips(g0, gx)) {
      const double c = bisect_root(g, x0, x);
      if (std::fabs(f(c)) <= best_abs) {
        best_abs = std::fabs(f(c));
        best = c;
      }
    }
    x0 = x;
    f0 = fx;
    g0 = gx;
  }
  return best;
}

}  // namespace detail

/// Least-squares piecewise polynomial through (x, y) samples with strictly
/// increasing x. Degree and segmentation minimize sum of squared residuals
/// plus penalty * (number of coefficients + number of interior breakpoints).
inline SplineFit fit_spline(std::span<const SamplePoint> pts, const SplineOptions& opt = {}) {
  const std::size_t n = pts.size();
  const std::size_t min_len = opt.max_degree + 2;
  if (n < min_len) {
    throw invalid_arguments("fit_spline: need at least " + std::to_string(min_len) + " samples, got " +
                            std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(pts[i].x) || !std::isfinite(pts[i].y)) throw invalid_arguments("fit_spline: non-finite sample");
    if (i > 0 && !(pts[i].x > pts[i - 1].x)) throw invalid_arguments("fit_spline: x must be strictly increasing");
  }
  if (!(opt.penalty >= 0.0)) throw invalid_arguments("fit_spline: penalty must be >= 0");

  struct Candidate {
    double cost = std::numeric_limits<double>::infinity();
    unsigned degree = 0;
    std::vector<std::size_t> cuts;  // start index of each piece after the first
  };
  Candidate best;

  for (unsigned d = 0; d <= opt.max_degree; ++d) {
    const double piece_cost = opt.penalty * (d + 1);
    std::vector<std::size_t> cuts;
    double cost = 0.0;
    if (opt.mode == BreakpointMode::fixed) {
      std::vector<double> br = opt.breakpoints;
      std::sort(br.begin(), br.end());
      std::size_t start = 0;
      for (std::size_t bi = 0; bi <= br.size(); ++bi) {
        std::size_t end = start;
        while (end < n && (bi == br.size() || pts[end].x <= br[bi])) ++end;
        if (end - start < min_len) {
          throw invalid_arguments("fit_spline: a piece has fewer than " + std::to_string(min_len) + " samples");
        }
        cost += detail::fit_piece(pts.subspan(start, end - start), d).sse + piece_cost;
        if (end < n) cuts.push_back(end);
        start = end;
      }
      if (start != n) throw invalid_arguments("fit_spline: samples beyond the last piece");
      cost += opt.penalty * static_cast<double>(br.size());
    } else {
      // best[j] = cheapest segmentation of the first j samples.
      std::vector<double> dp(n + 1, std::numeric_limits<double>::infinity());
      std::vector<std::size_t> from(n + 1, 0);
      dp[0] = -opt.penalty;  // the first piece has no breakpoint
      for (std::size_t j = min_len; j <= n; ++j) {
        for (std::size_t i = 0; i + min_len <= j; ++i) {
          if (!std::isfinite(dp[i])) continue;
          const double c = dp[i] + opt.penalty + piece_cost + detail::fit_piece(pts.subspan(i, j - i), d).sse;
          if (c < dp[j]) {
            dp[j] = c;
            from[j] = i;
          }
        }
      }
      cost = dp[n];
      for (std::size_t j = n; j > 0; j = from[j]) {
        if (from[j] > 0) cuts.push_back(from[j]);
      }
      std::reverse(cuts.begin(), cuts.end());
    }
    if (cost < best.cost) best = {cost, d, cuts};
  }

  SplineFit fit;
  fit.degree = best.degree;
  std::vector<std::size_t> starts{0};
  starts.insert(starts.end(), best.cuts.begin(), best.cuts.end());
  starts.push_back(n);
  for (std::size_t p = 0; p + 1 < starts.size(); ++p) {
    auto pf = detail::fit_piece(pts.subspan(starts[p], starts[p + 1] - starts[p]), best.degree);
    fit.pieces.push_back(std::move(pf.poly));
    fit.sum_squares += pf.sse;
  }
  fit.knots.push_back(pts.front().x);
  for (std::size_t p = 1; p < fit.pieces.size(); ++p) {
    const double lo = pts[starts[p] - 1].x, hi = pts[starts[p]].x;
    fit.knots.push_back(opt.mode == BreakpointMode::fixed
                            ? std::clamp(opt.breakpoints[p - 1], lo, hi)
                            : detail::meeting_point(fit.pieces[p - 1], fit.pieces[p], lo, hi));
  }
  fit.knots.push_back(pts.back().x);
  for (std::size_t p = 0; p + 1 < starts.size(); ++p) {
    for (std::size_t i = starts[p]; i < starts[p + 1]; ++i) {
      fit.max_residual = std::max(fit.max_residual, std::fabs(fit.pieces[p].eval(pts[i].x) - pts[i].y));
    }
  }
  return fit;
}

inline std::vector<SamplePoint> curve_samples(const QuotaCurve& c) {
  std::vector<SamplePoint> pts;
  for (std::size_t i = 0; i < c.size(); ++i) pts.push_back({c.quotas[i], c.points[i].mean});
  return pts;
}

// ---------------------------------------------------------------------------
// Extremum counting

inline constexpr std::size_t kDefaultSmoothingWindow = 5;
inline constexpr std::size_t kMinExtremaPoints = 10;

struct ExtremaReport {
  std::size_t count = 0;
  std::vector<double> locations;
  std::vector<ExtremumNature> natures;
};

/// Local extrema of sampled values: a centred moving average of `window`
/// points, then sign changes of its first differences (zero differences are
/// skipped).
inline ExtremaReport count_extrema(std::span<const double> x, std::span<const double> y,
                                   std::size_t window = kDefaultSmoothingWindow) {
  if (x.size() != y.size()) throw invalid_arguments("count_extrema: x and y differ in length");
  if (x.size() < kMinExtremaPoints) {
    throw invalid_arguments("count_extrema: need at least " + std::to_string(kMinExtremaPoints) + " points");
  }
  if (window == 0) window = 1;
  const std::size_t half = window / 2;
  if (2 * half + 1 > x.size()) throw invalid_arguments("count_extrema: window longer than the curve");
  std::vector<double> sx, sy;
  for (std::size_t i = half; i + half < x.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = i - half; j <= i + half; ++j) s += y[j];
    sx.push_back(x[i]);
    sy.push_back(s / static_cast<double>(2 * half + 1));
  }
  ExtremaReport r;
  int prev = 0;
  for (std::size_t i = 1; i < sy.size(); ++i) {
    const double d = sy[i] - sy[i - 1];
    const int s = (d > 0.0) - (d < 0.0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) {
      ++r.count;
      r.locations.push_back(sx[i - 1]);
      r.natures.push_back(prev > 0 ? ExtremumNature::maximum : ExtremumNature::minimum);
    }
    prev = s;
  }
  return r;
}

inline ExtremaReport count_extrema(const QuotaCurve& c, std::size_t window = kDefaultSmoothingWindow) {
  const auto m = c.means();
  return count_extrema(c.quotas, m, window);
}

/// Exact version for piecewise polynomials: stationary points with a sign
/// change of the derivative, including kinks.
inline ExtremaReport count_extrema(const PiecewisePolynomial<Rational>& f) {
  ExtremaReport r;
  for (const auto& p : stationary_points(f)) {
    r.locations.push_back(p.location);
    r.natures.push_back(p.nature);
  }
  r.count = r.locations.size();
  return r;
}

}  // namespace wvpower
