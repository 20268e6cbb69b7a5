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

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "wvpower/polynomial.hpp"

namespace wvpower {

enum class ExtremumNature { maximum, minimum };

inline const char* to_string(ExtremumNature n) {
  return n == ExtremumNature::maximum ? "maximum" : "minimum";
}

struct StationaryPoint {
  double location;
  std::optional<Rational> exact;  // set when the root is rational and known exactly
  ExtremumNature nature;
};

namespace detail {

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Roots of p strictly inside (a, b). Exact for degree <= 1, otherwise located
// on a fine grid and refined by bisection.
inline void collect_roots(const Polynomial<Rational>& p, const Rational& a, const Rational& b,
                          std::vector<std::pair<double, std::optional<Rational>>>& out) {
  if (p.degree() <= 0) return;
  if (p.degree() == 1) {
    const Rational r = -p.coefficient(0) / p.coefficient(1);
    if (r > a && r < b) out.emplace_back(to_double(r), r);
    return;
  }
  constexpr int kGrid = 4096;
  const double lo = to_double(a), hi = to_double(b);
  double x0 = lo, f0 = p.eval(lo);
  for (int i = 1; i <= kGrid; ++i) {
    const double x1 = lo + (hi - lo) * i / kGrid;
    const double f1 = p.eval(x1);
    if (f1 == 0.0 && x1 < hi) {
      out.emplace_back(x1, std::nullopt);
    } else if (sign_of(f0) * sign_of(f1) < 0) {
      double l = x0, r = x1, fl = f0;
      for (int it = 0; it < 200 && r - l > 1e-15 * std::max(1.0, std::fabs(l)); ++it) {
        const double m = 0.5 * (l + r);
        const double fm = p.eval(m);
        if (sign_of(fm) == sign_of(fl)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      out.emplace_back(0.5 * (l + r), std::nullopt);
    }
    x0 = x1;
    f0 = f1;
  }
}

}  // namespace detail

/// Interior local extrema of a piecewise polynomial over the open span of its
/// breakpoints: points where the derivative changes sign, including kinks at
/// interior breakpoints.
inline std::vector<StationaryPoint> stationary_points(const PiecewisePolynomial<Rational>& f) {
  const auto d = f.derivative();
  const auto d2 = d.derivative();
  const auto& br = f.breakpoints();

  std::vector<std::pair<double, std::optional<Rational>>> cand;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    detail::collect_roots(d.pieces()[i], br[i], br[i + 1], cand);
  }
  for (std::size_t i = 1; i + 1 < br.size(); ++i) cand.emplace_back(to_double(br[i]), br[i]);
  std::sort(cand.begin(), cand.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  // Derivative sign on each side of a candidate, probed at the midpoint to
  // the neighbouring candidate (or the domain end).
  auto deriv_sign = [&](double x) { return detail::sign_of(d(x)); };
  std::vector<StationaryPoint> out;
  const double lo = f.lower(), hi = f.upper();
  for (std::size_t c = 0; c < cand.size(); ++c) {
    const double x = cand[c].first;
    const double left_end = c == 0 ? lo : cand[c - 1].first;
    const double right_end = c + 1 == cand.size() ? hi : cand[c + 1].first;
    const int sl = deriv_sign(0.5 * (left_end + x));
    const int sr = deriv_sign(0.5 * (x + right_end));
    if (sl == 0 || sr == 0 || sl == sr) continue;
    ExtremumNature nature = sl > 0 ? ExtremumNature::maximum : ExtremumNature::minimum;
    const bool at_break = cand[c].second && std::find(br.begin(), br.end(), *cand[c].second) != br.end();
    if (!at_break) {
      const double curv = d2(x);
      if (curv < 0.0) nature = ExtremumNature::maximum;
      if (curv > 0.0) nature = ExtremumNature::minimum;
    }
    out.push_back({x, cand[c].second, nature});
  }
  return out;
}

}  // namespace wvpower
