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

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace wvpower {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) here
  }
  return r;
}

inline BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Pochhammer symbol (x)_l = x (x+1) ... (x+l-1).
inline BigInt rising_factorial(std::uint64_t x, std::uint64_t l) {
  BigInt r = 1;
  for (std::uint64_t j = 0; j < l; ++j) r *= x + j;
  return r;
}

/// H_l = 1 + 1/2 + ... + 1/l, with H_0 = 0.
inline BigRational harmonic_number(std::uint64_t l) {
  BigRational h = 0;
  for (std::uint64_t j = 1; j <= l; ++j) h += BigRational(1, j);
  return h;
}

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& r) { return r.convert_to<double>(); }

}  // namespace wvpower
