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
#include <vector>

#include "oracles.hpp"
#include "wvpower/simplex.hpp"
#include "wvpower/weightdist.hpp"

namespace {

using namespace wvpower;

double integrate_density(const OrderedWeightDensity& d, auto g) {
  auto br = d.breakpoints();
  br.insert(br.begin(), d.support_lower());
  br.push_back(d.support_upper());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    if (br[i + 1] > br[i]) s += oracle::integrate([&](double x) { return g(x) * d.density(x); }, br[i], br[i + 1]);
  }
  return s;
}

TEST(ExpectedWeights, ThreeAndSixPlayers) {
  const double e3[] = {11.0 / 18, 5.0 / 18, 2.0 / 18};
  for (std::size_t k = 1; k <= 3; ++k) EXPECT_NEAR(expected_ordered_weight(3, k), e3[k - 1], 1e-15);
  const double e6[] = {147, 87, 57, 37, 22, 10};
  for (std::size_t k = 1; k <= 6; ++k) EXPECT_NEAR(expected_ordered_weight(6, k), e6[k - 1] / 360, 1e-15);
  EXPECT_EQ(expected_ordered_weight_exact(6, 1), BigRational(147, 360));
}

TEST(ExpectedWeights, RankErrors) {
  EXPECT_THROW(expected_ordered_weight(3, 0), invalid_rank);
  EXPECT_THROW(expected_ordered_weight(3, 4), invalid_rank);
  EXPECT_THROW(expected_ordered_weight(0, 1), invalid_dimension);
}

TEST(ExpectedWeights, MatchesSampleMeans) {
  Xoshiro256 e(RandomSeed{11, 0});
  std::vector<std::vector<double>> cols(4);
  for (int i = 0; i < 100000; ++i) {
    const auto o = order_descending(sample_uniform_simplex(4, e));
    for (int k = 0; k < 4; ++k) cols[k].push_back(o[k]);
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const auto ms = oracle::mean_se(cols[k]);
    EXPECT_LT(std::fabs(ms.mean - expected_ordered_weight(4, k + 1)), 4 * ms.se);
  }
}

TEST(Density, NormalizedWithCorrectMean) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const OrderedWeightDensity d(n, k);
      EXPECT_NEAR(integrate_density(d, [](double) { return 1.0; }), 1.0, 1e-8) << n << "," << k;
      EXPECT_NEAR(integrate_density(d, [](double x) { return x; }), expected_ordered_weight(n, k), 1e-8);
    }
  }
}

TEST(Density, SupportEndpoints) {
  const OrderedWeightDensity top(5, 1), mid(5, 3);
  EXPECT_DOUBLE_EQ(top.support_lower(), 0.2);
  EXPECT_DOUBLE_EQ(top.support_upper(), 1.0);
  EXPECT_DOUBLE_EQ(mid.support_lower(), 0.0);
  EXPECT_DOUBLE_EQ(mid.support_upper(), 1.0 / 3.0);
  EXPECT_EQ(top.density(0.19), 0.0);
  EXPECT_EQ(mid.density(0.34), 0.0);
  EXPECT_GT(mid.density(0.1), 0.0);
}

TEST(Density, CdfMatchesQuadrature) {
  for (std::size_t n : {2u, 3u, 5u, 8u}) {
    for (std::size_t k = 1; k <= n; ++k) {
      const OrderedWeightDensity d(n, k);
      for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double x = d.support_lower() + t * (d.support_upper() - d.support_lower());
        double s = 0.0;
        auto br = d.breakpoints();
        br.insert(br.begin(), d.support_lower());
        for (std::size_t i = 0; i < br.size(); ++i) {
          const double a = br[i];
          const double b = i + 1 < br.size() ? std::min(br[i + 1], x) : x;
          if (b > a) s += oracle::integrate([&](double y) { return d.density(y); }, a, b);
          if (i + 1 < br.size() && br[i + 1] >= x) break;
        }
        EXPECT_NEAR(d.cdf(x), s, 1e-10) << n << "," << k << "," << x;
      }
    }
  }
}

TEST(Density, HandValues) {
  EXPECT_NEAR(ordered_weight_cdf(3, 1, 2.0 / 3.0), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(ordered_weight_cdf(2, 1, 0.75), 0.5, 1e-14);
  EXPECT_NEAR(ordered_weight_density(2, 2, 0.25), 2.0, 1e-14);
}

TEST(Density, Errors) {
  EXPECT_THROW(OrderedWeightDensity(1, 1), degenerate_distribution);
  EXPECT_THROW(OrderedWeightDensity(65, 1), accuracy_unsupported);
  EXPECT_THROW(OrderedWeightDensity(4, 5), invalid_rank);
  EXPECT_NO_THROW(OrderedWeightDensity(64, 10));
}

TEST(Density, LargeNStaysNormalized) {
  const OrderedWeightDensity d(40, 1);
  EXPECT_NEAR(integrate_density(d, [](double) { return 1.0; }), 1.0, 1e-8);
}

TEST(Moments, ClosedForms) {
  EXPECT_EQ(product_moment_exact(3, MomentIndex({2, 0, 0})), BigRational(1, 6));
  EXPECT_EQ(product_moment_exact(4, MomentIndex({1, 1, 1, 1})), BigRational(1, 4 * 5 * 6 * 7));
  EXPECT_EQ(product_moment_exact(5, MomentIndex({0, 0, 0, 0, 0})), BigRational(1));
  EXPECT_THROW(product_moment(3, MomentIndex({1, 1})), invalid_arguments);
  // sum_j E(W_j^m) agrees with the power-sum formula
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint32_t m = 1; m <= 5; ++m) {
      std::vector<std::uint32_t> e(n, 0);
      e[0] = m;
      EXPECT_EQ(power_sum_moment_exact(n, m), BigRational(n) * product_moment_exact(n, MomentIndex(e)));
    }
  }
  EXPECT_THROW(power_sum_moment(3, 0), invalid_arguments);
}

TEST(Moments, SumOfSquaresStats) {
  const auto s = sum_sq_stats(3);
  EXPECT_EQ(s.mean, 0.5);
  EXPECT_EQ(s.variance, 1.0 / 60.0);
  EXPECT_EQ(sum_sq_stats(1).variance, 0.0);
}

TEST(Moments, MatchSampling) {
  Xoshiro256 e(RandomSeed{12, 0});
  const MomentIndex m({2, 1, 0, 1});
  std::vector<double> v;
  for (int i = 0; i < 200000; ++i) {
    const auto w = sample_uniform_simplex(4, e);
    v.push_back(w[0] * w[0] * w[1] * w[3]);
  }
  const auto ms = oracle::mean_se(v);
  EXPECT_LT(std::fabs(ms.mean - product_moment(4, m)), 4 * ms.se);
}

}  // namespace
