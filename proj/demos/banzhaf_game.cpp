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

// Indices of one game, then its exact step curve over all quotas.

#include <iostream>

#include "wvpower/games.hpp"

int main() {
  using namespace wvpower;
  const VotingGame g(WeightVector({0.5, 0.3, 0.2}), 0.55);
  const auto p = banzhaf(g);
  std::cout << "beta:";
  for (double b : p.beta) std::cout << ' ' << b;
  std::cout << "\ncoleman: " << p.coleman << "\n";

  // Integer weights avoid rounding at ties: 5 + 3 + 2 with quota 11/20.
  const auto e = banzhaf(ExactVotingGame({5, 3, 2}, 11, 20));
  std::cout << "exact beta:";
  for (double b : e.beta) std::cout << ' ' << b;
  std::cout << "\n\nquota interval -> beta\n";
  for (const auto& step : fixed_weight_quota_curve(g.weights(), CurveFunctional::beta)) {
    std::cout << "(" << step.lower << ", " << step.upper << "]:";
    for (double b : step.values) std::cout << ' ' << b;
    std::cout << "\n";
  }
}
