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

#include "wvpower/analytic.hpp"
#include "wvpower/rng.hpp"
#include "wvpower/spline.hpp"

namespace {

using namespace wvpower;

std::vector<SamplePoint> sample(auto f, std::size_t count = 100) {
  std::vector<SamplePoint> p;
  for (std::size_t i = 1; i <= count; ++i) {
    const double x = 0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(count);
    p.push_back({x, f(x)});
  }
  return p;
}

TEST(Spline, RecoversLine) {
  const auto fit = fit_spline(sample([](double q) { return 1.5 - q; }));
  EXPECT_EQ(fit.pieces.size(), 1u);
  EXPECT_EQ(fit.degree, 1u);
  EXPECT_LT(fit.max_residual, 1e-12);
}

TEST(Spline, RecoversConstant) {
  const auto fit = fit_spline(sample([](double) { return 0.25; }));
  EXPECT_EQ(fit.pieces.size(), 1u);
  EXPECT_EQ(fit.degree, 0u);
}

TEST(Spline, RecoversThreePlayerCurves) {
  const auto ex = expected_beta_n3_exact();
  for (const auto& c : ex) {
    const auto fit = fit_spline(sample([&](double q) { return c(q); }));
    ASSERT_EQ(fit.pieces.size(), 2u);
    EXPECT_EQ(fit.degree, 2u);
    EXPECT_NEAR(fit.interior_breakpoints()[0], 2.0 / 3.0, 1e-6);
    EXPECT_LT(fit.max_residual, 1e-10);
    EXPECT_LT(fit.max_jump(), 1e-9);
  }
}

TEST(Spline, RandomCubic) {
  Xoshiro256 e(RandomSeed{61, 0});
  for (int r = 0; r < 10; ++r) {
    const double a = uniform_open_closed(e), b = uniform_open_closed(e), c = uniform_open_closed(e), d = uniform_open_closed(e);
    const auto fit = fit_spline(sample([&](double q) { return a + b * q + c * q * q + d * q * q * q; }));
    EXPECT_EQ(fit.pieces.size(), 1u);
    EXPECT_LT(fit.max_residual, 1e-10);
  }
}

TEST(Spline, FixedBreakpoints) {
  SplineOptions opt;
  opt.mode = BreakpointMode::fixed;
  opt.breakpoints = {0.75};
  const auto fit = fit_spline(sample([](double q) { return std::fabs(q - 0.75); }), opt);
  ASSERT_EQ(fit.pieces.size(), 2u);
  EXPECT_EQ(fit.interior_breakpoints()[0], 0.75);
  EXPECT_LT(fit.max_residual, 1e-10);
}

TEST(Spline, TooFewPoints) {
  const std::vector<SamplePoint> p{{0.6, 1.0}};
  EXPECT_THROW(fit_spline(p), invalid_arguments);
}

TEST(Extrema, SampledCurves) {
  std::vector<double> x, flat, bump;
  for (int i = 0; i < 100; ++i) {
    x.push_back(0.5 + 0.005 * (i + 1));
    flat.push_back(0.3);
    bump.push_back(-(x.back() - 0.7) * (x.back() - 0.7));
  }
  EXPECT_EQ(count_extrema(x, flat).count, 0u);
  const auto r = count_extrema(x, bump);
  ASSERT_EQ(r.count, 1u);
  EXPECT_NEAR(r.locations[0], 0.7, 0.01);
  EXPECT_EQ(r.natures[0], ExtremumNature::maximum);
  EXPECT_THROW(count_extrema(std::vector<double>(5, 0.6), std::vector<double>(5, 0.1)), invalid_arguments);
}

TEST(Extrema, ExactThreePlayerCounts) {
  const auto ex = expected_beta_n3_exact();
  EXPECT_EQ(count_extrema(ex[0]).count, 0u);
  EXPECT_EQ(count_extrema(ex[1]).count, 1u);
  EXPECT_EQ(count_extrema(ex[2]).count, 2u);
}

}  // namespace
