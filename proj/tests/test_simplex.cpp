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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "wvpower/rng.hpp"
#include "wvpower/simplex.hpp"
#include "wvpower/summation.hpp"

namespace {

using namespace wvpower;

TEST(WeightVector, RejectsInvalidInput) {
  EXPECT_THROW(WeightVector(std::vector<double>{}), invalid_dimension);
  EXPECT_THROW(WeightVector({0.5, 0.6}), invalid_arguments);
  EXPECT_THROW(WeightVector({1.2, -0.2}), invalid_arguments);
  EXPECT_THROW(WeightVector({0.5, std::numeric_limits<double>::quiet_NaN()}), invalid_arguments);
  EXPECT_NO_THROW(WeightVector({0.5, 0.5 + 5e-13}));
}

TEST(WeightVector, NormalizedRescales) {
  const auto w = WeightVector::normalized({5, 3, 2});
  EXPECT_DOUBLE_EQ(w[0], 0.5);
  EXPECT_DOUBLE_EQ(w[1], 0.3);
  EXPECT_DOUBLE_EQ(w[2], 0.2);
  EXPECT_THROW(WeightVector::normalized({0, 0}), invalid_arguments);
}

TEST(Rng, ExponentialAtUnitUniformIsPositiveZero) {
  struct AllOnes {
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return ~result_type{0}; }
  } e;
  const double x = unit_exponential(e);
  EXPECT_EQ(x, 0.0);
  EXPECT_FALSE(std::signbit(x));
}

TEST(Rng, SameSeedSameStream) {
  Xoshiro256 a(RandomSeed{42, 3}), b(RandomSeed{42, 3}), c(RandomSeed{42, 4});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a(), y = b(), z = c();
    EXPECT_EQ(x, y);
    differs = differs || x != z;
  }
  EXPECT_TRUE(differs);
}

TEST(Sampling, SinglePlayerIsOne) {
  EXPECT_EQ(sample_uniform_simplex(1, RandomSeed{9, 0})[0], 1.0);
  EXPECT_THROW(sample_uniform_simplex(0, RandomSeed{}), invalid_dimension);
}

TEST(Sampling, DrawsSatisfyInvariants) {
  Xoshiro256 e(RandomSeed{1, 0});
  for (std::size_t n : {2u, 5u, 50u, 10000u}) {
    for (int r = 0; r < 20; ++r) {
      const auto w = sample_uniform_simplex(n, e);
      double s = 0.0;
      for (double x : w) {
        EXPECT_GE(x, 0.0);
        s += x;
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

TEST(Sampling, CoordinateMeansAreOneThird) {
  Xoshiro256 e(RandomSeed{2, 0});
  std::vector<std::vector<double>> cols(3);
  for (int i = 0; i < 100000; ++i) {
    const auto w = sample_uniform_simplex(3, e);
    for (int k = 0; k < 3; ++k) cols[k].push_back(w[k]);
  }
  for (const auto& c : cols) {
    const auto ms = oracle::mean_se(c);
    EXPECT_LT(std::fabs(ms.mean - 1.0 / 3.0), 4 * ms.se);
  }
}

TEST(Sampling, SumOfSquaresMeanForFourPlayers) {
  Xoshiro256 e(RandomSeed{3, 0});
  std::vector<double> v;
  for (int i = 0; i < 100000; ++i) v.push_back(sample_uniform_simplex(4, e).sum_of_squares());
  const auto ms = oracle::mean_se(v);
  EXPECT_LT(std::fabs(ms.mean - 0.4), 4 * ms.se);
}

TEST(Ordering, SortsWithPermutation) {
  const auto o = order_descending(WeightVector({0.2, 0.5, 0.3}));
  EXPECT_EQ(std::vector<double>(o.values().begin(), o.values().end()), (std::vector<double>{0.5, 0.3, 0.2}));
  EXPECT_EQ(std::vector<std::size_t>(o.permutation().begin(), o.permutation().end()),
            (std::vector<std::size_t>{1, 2, 0}));
}

TEST(Ordering, SortedInputGivesIdentity) {
  const auto o = order_descending(WeightVector({0.5, 0.3, 0.2}));
  EXPECT_EQ(std::vector<std::size_t>(o.permutation().begin(), o.permutation().end()),
            (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Ordering, TiesKeepOriginalOrder) {
  const auto o = order_descending(WeightVector({0.25, 0.25, 0.5}));
  EXPECT_EQ(std::vector<std::size_t>(o.permutation().begin(), o.permutation().end()),
            (std::vector<std::size_t>{2, 0, 1}));
}

TEST(Ordering, InverseRecoversInputExactly) {
  Xoshiro256 e(RandomSeed{4, 0});
  for (int r = 0; r < 200; ++r) {
    const auto w = sample_uniform_simplex(7, e);
    EXPECT_TRUE(order_descending(w).unordered() == w);
  }
}

TEST(Renyi, Examples) {
  EXPECT_EQ(renyi_partial_sums(WeightVector({1.0})), std::vector<double>{1.0});
  const auto r = renyi_partial_sums(WeightVector({0.6, 0.4}));
  EXPECT_DOUBLE_EQ(r[0], 0.8);
  EXPECT_DOUBLE_EQ(r[1], 0.2);
}

TEST(Renyi, NonIncreasingAndSumsToOne) {
  Xoshiro256 e(RandomSeed{5, 0});
  for (int i = 0; i < 500; ++i) {
    const auto r = renyi_partial_sums(sample_uniform_simplex(9, e));
    for (std::size_t k = 1; k < r.size(); ++k) EXPECT_LE(r[k], r[k - 1]);
    EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(Renyi, MatchesOrderStatisticsInDistribution) {
  constexpr std::size_t n = 5, m = 20000;
  Xoshiro256 a(RandomSeed{6, 0}), b(RandomSeed{6, 1});
  std::vector<std::vector<double>> ord(n), ren(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto o = order_descending(sample_uniform_simplex(n, a));
    const auto r = renyi_partial_sums(sample_uniform_simplex(n, b));
    for (std::size_t k = 0; k < n; ++k) {
      ord[k].push_back(o[k]);
      ren[k].push_back(r[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_LT(oracle::ks_statistic(ord[k], ren[k]), oracle::ks_critical_1pct(m, m)) << "k=" << k + 1;
  }
}

TEST(Summation, PairwiseIsExactForRepeatedValues) {
  std::vector<double> v(1 << 12, 1.0 / 3.0);
  EXPECT_EQ(pairwise_sum(v), 4096.0 * (1.0 / 3.0));
  CompensatedSum s;
  for (int i = 0; i < 10; ++i) s += 0.1;
  EXPECT_DOUBLE_EQ(s.value(), 1.0);
}

}  // namespace
