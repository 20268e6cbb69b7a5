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

// Monte Carlo expected ordered Banzhaf indices for three players next to the
// exact curves, and the number of local extrema on each.

#include <cstdio>

#include "wvpower/analytic.hpp"
#include "wvpower/experiments.hpp"
#include "wvpower/spline.hpp"

int main() {
  using namespace wvpower;
  const auto grid = uniform_quota_grid(20);
  const auto mc = mc_power_curve(3, grid, 1 << 14, RandomSeed{7, 0}, PowerStatistic::beta);
  std::printf("%6s %22s %22s %22s\n", "q", "k=1 mc / exact", "k=2 mc / exact", "k=3 mc / exact");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto ex = expected_beta_n3(grid[i]);
    std::printf("%6.3f", grid[i]);
    for (std::size_t k = 0; k < 3; ++k) std::printf("   %9.5f / %9.5f", mc[k].points[i].mean, ex[k]);
    std::printf("\n");
  }
  const auto exact = expected_beta_n3_exact();
  for (std::size_t k = 0; k < 3; ++k) {
    std::printf("k=%zu: %zu local extrema\n", k + 1, count_extrema(exact[k]).count);
  }
}
