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
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "wvpower/errors.hpp"

namespace wvpower {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}
inline double to_double(double x) { return x; }

/// Dense univariate polynomial, coefficients in increasing degree.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }

  /// Builds a0 + a1 q + a2 q^2 from the highest coefficient down, matching
  /// how the closed forms are usually written (a q^2 + b q + c).
  static Polynomial quadratic(T a, T b, T c) { return Polynomial({c, b, a}); }

  const std::vector<T>& coefficients() const noexcept { return c_; }
  T coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  int degree() const noexcept { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }

  /// Evaluation in the coefficient type (exact for Rational).
  T at(const T& x) const {
    T acc = T(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(static_cast<std::int64_t>(i)));
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += o * T(-1); }
  Polynomial& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string(const char* var = "q") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == T(0)) continue;
      if (!first) os << " + ";
      os << "(" << c_[i] << ")";
      if (i >= 1) os << "*" << var;
      if (i >= 2) os << "^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Polynomial pieces on consecutive intervals [b_0, b_1], [b_1, b_2], ...
/// At an interior breakpoint the left piece is used.
template <class T>
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<T> breakpoints, std::vector<Polynomial<T>> pieces)
      : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breaks_.size() != pieces_.size() + 1) {
      throw invalid_arguments("piecewise polynomial: need one more breakpoint than pieces");
    }
    if (!std::is_sorted(breaks_.begin(), breaks_.end())) {
      throw invalid_arguments("piecewise polynomial: breakpoints must be increasing");
    }
  }

  const std::vector<T>& breakpoints() const noexcept { return breaks_; }
  const std::vector<Polynomial<T>>& pieces() const noexcept { return pieces_; }
  double lower() const { return to_double(breaks_.front()); }
  double upper() const { return to_double(breaks_.back()); }

  std::size_t piece_index(double x) const {
    for (std::size_t i = 1; i + 1 < breaks_.size(); ++i) {
      if (x <= to_double(breaks_[i])) return i - 1;
    }
    return pieces_.size() - 1;
  }

  double operator()(double x) const { return pieces_[piece_index(x)].eval(x); }

  PiecewisePolynomial derivative() const {
    std::vector<Polynomial<T>> d;
    for (const auto& p : pieces_) d.push_back(p.derivative());
    return PiecewisePolynomial(breaks_, std::move(d));
  }

  friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    if (a.breaks_ != b.breaks_) throw invalid_arguments("piecewise sum needs identical breakpoints");
    std::vector<Polynomial<T>> s;
    for (std::size_t i = 0; i < a.pieces_.size(); ++i) s.push_back(a.pieces_[i] + b.pieces_[i]);
    return PiecewisePolynomial(a.breaks_, std::move(s));
  }

 private:
  std::vector<T> breaks_;
  std::vector<Polynomial<T>> pieces_;
};

}  // namespace wvpower
