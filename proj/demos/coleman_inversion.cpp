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

// Expected Coleman index for n = 6: inversion, normal approximation and
// the quota ratio at a few levels.

#include <cstdio>

#include "wvpower/coleman.hpp"

int main() {
  using namespace wvpower;
  const std::size_t n = 6;
  ColemanInverter inv(n);
  std::printf("%6s %12s %12s\n", "q", "inversion", "normal");
  for (double q = 0.55; q < 1.0; q += 0.05) {
    std::printf("%6.2f %12.6f %12.6f\n", q, inv.expected(q), expected_coleman_normal(n, q));
  }
  std::printf("%6.2f %12.6f\n\n", 1.0, inv.expected(1.0));
  for (double y : {0.05, 0.1, 0.25}) {
    const auto r = coleman_error_ratio(n, y);
    std::printf("y=%.2f  normal q=%.6f  exact q=%.6f  ratio=%.6f\n", y, r.normal_quota, r.exact_quota, r.ratio);
  }
}
