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
/// Expected ordered Banzhaf vectors for two and three players.
///
/// For n = 3 the quota range (1/2, 1] splits at 2/3. On each side every game
/// class has a probability that is a quadratic in q, and the expected ordered
/// index is the class mixture sum_c beta^c P_c(q), computed here in exact
/// rational arithmetic.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wvpower/errors.hpp"
#include "wvpower/polynomial.hpp"
#include "wvpower/stationary.hpp"

namespace wvpower {

using QuotaPolynomial = Polynomial<Rational>;
using QuotaSpline = PiecewisePolynomial<Rational>;

namespace detail {

inline void check_open_quota(double q, const char* who) {
  if (!(q > 0.5 && q <= 1.0)) {
    throw quota_out_of_range(std::string(who) + ": quota must lie in (1/2, 1]");
  }
}

}  // namespace detail

/// (E beta_1, E beta_2) for two players: (3/2 - q, q - 1/2).
inline std::pair<double, double> expected_beta_n2(double q) {
  detail::check_open_quota(q, "expected_beta_n2");
  return {1.5 - q, q - 0.5};
}

inline std::vector<QuotaSpline> expected_beta_n2_exact() {
  const std::vector<Rational> br{Rational(1, 2), Rational(1)};
  return {QuotaSpline(br, {QuotaPolynomial{Rational(3, 2), Rational(-1)}}),
          QuotaSpline(br, {QuotaPolynomial{Rational(-1, 2), Rational(1)}})};
}

struct GameClass {
  std::string label;
  std::vector<Rational> beta;             // ordered, largest player first
  std::vector<std::uint64_t> winning;     // minimal-to-full list of winning masks, bit k = k-th largest
  QuotaSpline probability;
};

struct ClassTable {
  std::size_t n;
  Rational breakpoint;
  std::vector<GameClass> classes;

  const GameClass& at(const std::string& label) const {
    for (const auto& c : classes) {
      if (c.label == label) return c;
    }
    throw invalid_arguments("class table has no class '" + label + "'");
  }

  /// Sum of all class probabilities, piece by piece.
  QuotaSpline total_probability() const {
    QuotaSpline s = classes.front().probability;
    for (std::size_t i = 1; i < classes.size(); ++i) s = s + classes[i].probability;
    return s;
  }
};

/// The five three-player classes and their probabilities on q <= 2/3 and
/// q >= 2/3.
inline ClassTable class_table_n3() {
  using R = Rational;
  const std::vector<R> br{R(1, 2), R(2, 3), R(1)};
  auto quad = [](std::int64_t a, std::int64_t b, std::int64_t c) {
    return QuotaPolynomial::quadratic(R(a), R(b), R(c));
  };
  auto spline = [&](QuotaPolynomial left, QuotaPolynomial right) {
    return QuotaSpline(br, {std::move(left), std::move(right)});
  };
  const R third(1, 3);
  ClassTable t{3, R(2, 3), {}};
  t.classes.push_back({"A", {third, third, third}, {0b111}, spline(QuotaPolynomial{}, quad(9, -12, 4))});
  t.classes.push_back({"B", {R(1, 2), R(1, 2), R(0)}, {0b011, 0b111},
                       spline(quad(12, -12, 3), quad(-15, 24, -9))});
  t.classes.push_back({"C", {R(3, 5), R(1, 5), R(1, 5)}, {0b011, 0b101, 0b111},
                       spline(quad(-24, 30, -9), quad(3, -6, 3))});
  t.classes.push_back({"D", {third, third, third}, {0b011, 0b101, 0b110, 0b111},
                       spline(quad(9, -12, 4), QuotaPolynomial{})});
  t.classes.push_back({"E", {R(1), R(0), R(0)}, {0b001, 0b011, 0b101, 0b111},
                       spline(quad(3, -6, 3), quad(3, -6, 3))});
  return t;
}

/// E(beta_k) for k = 1..3 as exact piecewise quadratics on [1/2, 1].
inline std::array<QuotaSpline, 3> expected_beta_n3_exact() {
  const ClassTable t = class_table_n3();
  std::array<std::vector<QuotaPolynomial>, 3> pieces;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t p = 0; p < 2; ++p) {
      QuotaPolynomial acc;
      for (const auto& c : t.classes) acc += c.probability.pieces()[p] * c.beta[k];
      pieces[k].push_back(acc);
    }
  }
  const auto& br = t.classes.front().probability.breakpoints();
  return {QuotaSpline(br, pieces[0]), QuotaSpline(br, pieces[1]), QuotaSpline(br, pieces[2])};
}

inline std::array<double, 3> expected_beta_n3(double q) {
  detail::check_open_quota(q, "expected_beta_n3");
  static const auto curves = expected_beta_n3_exact();
  return {curves[0](q), curves[1](q), curves[2](q)};
}

struct RankExtremum {
  std::size_t rank;
  StationaryPoint point;
};

/// Local extrema of E(beta_k) on (1/2, 1) for k = 1..3.
inline std::vector<RankExtremum> extrema_n3() {
  std::vector<RankExtremum> out;
  const auto curves = expected_beta_n3_exact();
  for (std::size_t k = 0; k < 3; ++k) {
    for (const auto& p : stationary_points(curves[k])) out.push_back({k + 1, p});
  }
  return out;
}

}  // namespace wvpower
