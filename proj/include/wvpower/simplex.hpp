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
/// Weight vectors on the probability simplex: construction, uniform sampling
/// and descending order.
///
/// Uniform samples are produced from normalized i.i.d. unit exponentials,
/// which are uniformly distributed on the simplex.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wvpower/errors.hpp"
#include "wvpower/rng.hpp"
#include "wvpower/summation.hpp"

namespace wvpower {

inline constexpr double kSimplexSumTolerance = 1e-12;

/// A point of the probability simplex: n >= 1 non-negative reals summing to 1.
class WeightVector {
 public:
  /// Validates and stores \p weights. Throws invalid_dimension for an empty
  /// vector and invalid_arguments for negative, non-finite or non-normalized
  /// entries.
  explicit WeightVector(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw invalid_dimension("weight vector must have at least one entry");
    for (double x : w_) {
      if (!std::isfinite(x) || x < 0.0) {
        throw invalid_arguments("weights must be finite and non-negative");
      }
    }
    const double total = compensated_sum(w_);
    if (std::fabs(total - 1.0) > kSimplexSumTolerance) {
      throw invalid_arguments("weights must sum to 1 (got " + std::to_string(total) + ")");
    }
  }

  /// Divides non-negative \p raw by its (compensated) sum.
  static WeightVector normalized(std::vector<double> raw) {
    if (raw.empty()) throw invalid_dimension("weight vector must have at least one entry");
    for (double x : raw) {
      if (!std::isfinite(x) || x < 0.0) {
        throw invalid_arguments("weights must be finite and non-negative");
      }
    }
    const double total = compensated_sum(raw);
    if (!(total > 0.0)) throw invalid_arguments("weights must not all be zero");
    for (double& x : raw) x /= total;
    return WeightVector(std::move(raw));
  }

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> values() const noexcept { return w_; }
  auto begin() const noexcept { return w_.begin(); }
  auto end() const noexcept { return w_.end(); }

  double sum_of_squares() const noexcept {
    CompensatedSum acc;
    for (double x : w_) acc += x * x;
    return acc.value();
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<double> w_;
};

/// Weights sorted in non-increasing order together with the sorting
/// permutation: weights()[k] == source[permutation()[k]].
class OrderedWeightVector {
 public:
  OrderedWeightVector(std::vector<double> sorted, std::vector<std::size_t> permutation)
      : w_(std::move(sorted)), perm_(std::move(permutation)) {}

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t k) const { return w_[k]; }
  std::span<const double> values() const noexcept { return w_; }
  std::span<const std::size_t> permutation() const noexcept { return perm_; }

  /// Undoes the sort, recovering the source vector bit for bit.
  WeightVector unordered() const {
    std::vector<double> out(w_.size());
    for (std::size_t k = 0; k < w_.size(); ++k) out[perm_[k]] = w_[k];
    return WeightVector(std::move(out));
  }

  WeightVector as_weight_vector() const { return WeightVector(w_); }

 private:
  std::vector<double> w_;
  std::vector<std::size_t> perm_;
};

/// Draws one point uniformly from the simplex using \p engine.
template <class Engine>
WeightVector sample_uniform_simplex(std::size_t n, Engine& engine) {
  if (n == 0) throw invalid_dimension("sample_uniform_simplex: n must be >= 1");
  std::vector<double> x(n);
  CompensatedSum total;
  for (auto& xi : x) {
    xi = unit_exponential(engine);
    total += xi;
  }
  const double s = total.value();
  for (auto& xi : x) xi /= s;
  return WeightVector(std::move(x));
}

/// Draws one point uniformly from the simplex; the stream is fully determined
/// by \p seed.
inline WeightVector sample_uniform_simplex(std::size_t n, RandomSeed seed) {
  Xoshiro256 engine(seed);
  return sample_uniform_simplex(n, engine);
}

// Allocation-free variant used in the Monte Carlo hot loops. Writes the
// normalized draw into out (size n) without validation.
template <class Engine>
void sample_uniform_simplex_into(std::span<double> out, Engine& engine) {
  CompensatedSum total;
  for (auto& xi : out) {
    xi = unit_exponential(engine);
    total += xi;
  }
  const double s = total.value();
  for (auto& xi : out) xi /= s;
}

/// Sorts descending; ties keep their original index order.
inline OrderedWeightVector order_descending(const WeightVector& w) {
  std::vector<std::size_t> perm(w.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  std::vector<double> sorted(w.size());
  for (std::size_t k = 0; k < perm.size(); ++k) sorted[k] = w[perm[k]];
  return OrderedWeightVector(std::move(sorted), std::move(perm));
}

/// Returns (sum_{j=k..n} w_j / j) for k = 1..n. For uniform w this vector has
/// the same law as the descending order statistics of a uniform point.
inline std::vector<double> renyi_partial_sums(const WeightVector& w) {
  const std::size_t n = w.size();
  std::vector<double> out(n);
  double acc = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    acc += w[k] / static_cast<double>(k + 1);
    out[k] = acc;
  }
  return out;
}

}  // namespace wvpower
