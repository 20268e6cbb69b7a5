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
/// Monte Carlo quota curves over uniformly random weights, and sampling-based
/// discovery of game classes.
///
/// Samples are split into fixed chunks by index; chunk c draws from stream c
/// of the seed. Per-chunk sums are combined in chunk order, so results do not
/// depend on the number of worker threads.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wvpower/errors.hpp"
#include "wvpower/games.hpp"
#include "wvpower/parallel.hpp"
#include "wvpower/rng.hpp"
#include "wvpower/simplex.hpp"
#include "wvpower/summation.hpp"

namespace wvpower {

inline constexpr std::uint64_t kDefaultSamples = 65536;
inline constexpr std::size_t kSampleChunk = 1024;

/// 0.505, 0.510, ..., 0.995, then 1.
inline std::vector<double> default_quota_grid() {
  std::vector<double> g;
  for (int i = 0; i < 99; ++i) g.push_back(static_cast<double>(505 + 5 * i) / 1000.0);
  g.push_back(1.0);
  return g;
}

/// `count` equispaced quotas ending at 1: 1/2 + k/(2 count), k = 1..count.
inline std::vector<double> uniform_quota_grid(std::size_t count) {
  if (count == 0) throw invalid_arguments("quota grid needs at least one point");
  std::vector<double> g;
  for (std::size_t k = 1; k <= count; ++k) {
    g.push_back(0.5 + static_cast<double>(k) / static_cast<double>(2 * count));
  }
  return g;
}

inline void validate_quota_grid(std::span<const double> quotas) {
  if (quotas.empty()) throw invalid_arguments("quota grid is empty");
  for (std::size_t i = 0; i < quotas.size(); ++i) {
    if (!(quotas[i] > 0.5 && quotas[i] <= 1.0)) {
      throw quota_out_of_range("quota grid point " + std::to_string(quotas[i]) + " not in (1/2, 1]");
    }
    if (i > 0 && !(quotas[i] > quotas[i - 1])) {
      throw invalid_arguments("quota grid must be strictly increasing");
    }
  }
}

struct CurvePoint {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

struct QuotaCurve {
  std::vector<double> quotas;
  std::string statistic;
  std::vector<CurvePoint> points;
  std::size_t n = 0;
  RandomSeed seed{};
  std::string method;

  std::size_t size() const noexcept { return quotas.size(); }
  std::vector<double> means() const {
    std::vector<double> m;
    for (const auto& p : points) m.push_back(p.mean);
    return m;
  }
};

namespace detail {

// Runs sample(engine, row) for every sample index, where row has `series`
// slots, and returns mean and standard error per slot.
template <class SampleFn>
std::vector<CurvePoint> mc_accumulate(std::size_t series, std::uint64_t samples, RandomSeed seed,
                                      std::size_t threads, SampleFn&& sample) {
  if (samples == 0) throw invalid_arguments("samples must be >= 1");
  const std::size_t chunks = static_cast<std::size_t>((samples + kSampleChunk - 1) / kSampleChunk);
  std::vector<double> means(chunks * series), m2s(chunks * series);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t begin = c * kSampleChunk;
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(kSampleChunk, samples - begin));
    Xoshiro256 engine(seed.with_stream(c));
    std::vector<double> rows(len * series);
    for (std::size_t s = 0; s < len; ++s) sample(engine, std::span<double>(rows.data() + s * series, series));
    std::vector<double> col(len), dev(len);
    for (std::size_t j = 0; j < series; ++j) {
      for (std::size_t s = 0; s < len; ++s) col[s] = rows[s * series + j];
      const double m = pairwise_sum(col) / static_cast<double>(len);
      for (std::size_t s = 0; s < len; ++s) dev[s] = (col[s] - m) * (col[s] - m);
      means[c * series + j] = m;
      m2s[c * series + j] = pairwise_sum(dev);
    }
  });
  std::vector<CurvePoint> out(series);
  const double nn = static_cast<double>(samples);
  for (std::size_t j = 0; j < series; ++j) {
    // chunk statistics merged in chunk order
    double count = 0.0, mean = 0.0, m2 = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
      const double len = static_cast<double>(std::min<std::uint64_t>(kSampleChunk, samples - c * kSampleChunk));
      const double cm = means[c * series + j];
      const double total = count + len;
      const double delta = cm - mean;
      mean = count == 0.0 ? cm : mean + delta * (len / total);
      m2 += m2s[c * series + j] + delta * delta * (count * len / total);
      count = total;
    }
    const double se = samples > 1 ? std::sqrt(m2 / (nn - 1.0) / nn) : 0.0;
    out[j] = {mean, se, samples};
  }
  return out;
}

template <class Engine>
void sample_sorted_weights(std::span<double> w, Engine& engine) {
  sample_uniform_simplex_into(w, engine);
  std::sort(w.begin(), w.end(), std::greater<>());
}

}  // namespace detail

enum class PowerStatistic { beta, psi };

inline const char* to_string(PowerStatistic s) { return s == PowerStatistic::beta ? "beta" : "psi"; }

/// One curve per rank k: the mean over random games of the k-th largest index
/// at each quota. All quotas share the same weight draws.
inline std::vector<QuotaCurve> mc_power_curve(std::size_t n, std::span<const double> quotas,
                                              std::uint64_t samples, RandomSeed seed,
                                              PowerStatistic statistic, std::size_t threads = 0) {
  if (n == 0) throw invalid_dimension("mc_power_curve: n must be >= 1");
  if (n > kQuotaCurveMaxPlayers) {
    throw budget_exceeded("mc_power_curve: n = " + std::to_string(n) + " exceeds the budget of " +
                          std::to_string(kQuotaCurveMaxPlayers) + " players");
  }
  validate_quota_grid(quotas);
  const std::size_t nq = quotas.size();
  auto pts = detail::mc_accumulate(nq * n, samples, seed, threads, [&](auto& engine, std::span<double> row) {
    std::vector<double> w(n);
    detail::sample_sorted_weights(std::span<double>(w), engine);
    const QuotaSweep sweep(w);
    const auto counts = sweep.counts(quotas);
    for (std::size_t qi = 0; qi < nq; ++qi) {
      auto p = profile_from_counts(counts[qi]);
      auto& v = statistic == PowerStatistic::beta ? p.beta : p.psi;
      std::sort(v.begin(), v.end(), std::greater<>());
      for (std::size_t k = 0; k < n; ++k) row[qi * n + k] = v[k];
    }
  });
  std::vector<QuotaCurve> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& c = out[k];
    c.quotas.assign(quotas.begin(), quotas.end());
    c.statistic = std::string(to_string(statistic)) + "_" + std::to_string(k + 1);
    c.n = n;
    c.seed = seed;
    c.method = "monte-carlo";
    for (std::size_t qi = 0; qi < nq; ++qi) c.points.push_back(pts[qi * n + k]);
  }
  return out;
}

/// Mean Coleman index over random games at each quota.
inline QuotaCurve mc_coleman_curve(std::size_t n, std::span<const double> quotas, std::uint64_t samples,
                                   RandomSeed seed, std::size_t threads = 0) {
  if (n == 0) throw invalid_dimension("mc_coleman_curve: n must be >= 1");
  if (n > kQuotaCurveMaxPlayers) {
    throw budget_exceeded("mc_coleman_curve: n = " + std::to_string(n) + " exceeds the budget of " +
                          std::to_string(kQuotaCurveMaxPlayers) + " players");
  }
  validate_quota_grid(quotas);
  auto pts = detail::mc_accumulate(quotas.size(), samples, seed, threads, [&](auto& engine, std::span<double> row) {
    std::vector<double> w(n);
    detail::sample_sorted_weights(std::span<double>(w), engine);
    const auto om = QuotaSweep(w).omegas(quotas);
    for (std::size_t qi = 0; qi < om.size(); ++qi) {
      row[qi] = std::ldexp(static_cast<double>(om[qi]), -static_cast<int>(n));
    }
  });
  QuotaCurve c;
  c.quotas.assign(quotas.begin(), quotas.end());
  c.statistic = "coleman";
  c.points = std::move(pts);
  c.n = n;
  c.seed = seed;
  c.method = "monte-carlo";
  return c;
}

// ---------------------------------------------------------------------------
// Game classes

inline constexpr std::size_t kMaxClassPlayers = 7;

/// Known numbers of distinct weighted games (up to the order isomorphism) for
/// n = 2..7; index n - 2.
inline constexpr std::array<std::size_t, 6> kClassCountCeiling{2, 5, 14, 62, 566, 11971};

/// Winning family over ordered players: bit m is set when the coalition with
/// member mask m wins (bit k of m = (k+1)-th largest player).
struct WinningFamily {
  std::array<std::uint64_t, 2> bits{};

  bool wins(std::uint64_t mask) const noexcept { return (bits[mask >> 6] >> (mask & 63)) & 1u; }
  void set(std::uint64_t mask) noexcept { bits[mask >> 6] |= std::uint64_t{1} << (mask & 63); }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits[0]) + std::popcount(bits[1]));
  }
  friend auto operator<=>(const WinningFamily&, const WinningFamily&) = default;
};

inline bool is_monotone(const WinningFamily& f, std::size_t n) {
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < count; ++m) {
    if (!f.wins(m)) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!f.wins(m | (std::uint64_t{1} << i))) return false;
    }
  }
  return true;
}

inline WinningCounts counts_of(const WinningFamily& f, std::size_t n) {
  WinningCounts c{0, std::vector<std::uint64_t>(n, 0)};
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (!f.wins(m)) continue;
    ++c.omega;
    for (std::size_t i = 0; i < n; ++i) c.per_player[i] += (m >> i) & 1u;
  }
  return c;
}

struct DiscoveredClass {
  WinningFamily family;
  std::vector<double> beta;
  std::uint64_t hits = 0;
};

struct GameClassCatalog {
  std::size_t n = 0;
  std::uint64_t budget = 0;
  RandomSeed seed{};
  std::vector<DiscoveredClass> classes;  // most frequent first

  std::size_t size() const noexcept { return classes.size(); }
};

/// Samples (weights, quota) pairs with the quota uniform on (1/2, 1) and
/// records every distinct winning family seen.
inline GameClassCatalog discover_classes(std::size_t n, std::uint64_t budget, RandomSeed seed,
                                         std::size_t threads = 0) {
  if (n < 2 || n > kMaxClassPlayers) {
    throw invalid_dimension("discover_classes: n must lie in [2, " + std::to_string(kMaxClassPlayers) + "]");
  }
  if (budget == 0) throw invalid_arguments("discover_classes: budget must be >= 1");
  constexpr std::uint64_t kChunk = 1u << 16;
  const std::size_t chunks = static_cast<std::size_t>((budget + kChunk - 1) / kChunk);
  std::vector<std::map<WinningFamily, std::uint64_t>> found(chunks);
  const std::size_t h = low_half_size(n);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t len = std::min(kChunk, budget - begin);
    Xoshiro256 engine(seed.with_stream(c));
    std::vector<double> w(n);
    auto& local = found[c];
    WinningFamily last{};
    std::uint64_t run = 0;
    for (std::uint64_t s = 0; s < len; ++s) {
      detail::sample_sorted_weights(std::span<double>(w), engine);
      double q;
      do {
        q = 0.5 + 0.5 * uniform_open_closed(engine);
      } while (q >= 1.0);
      const std::span<const double> ws(w);
      const auto lo = detail::half_subset_sums(ws.first(h));
      const auto hi = detail::half_subset_sums(ws.subspan(h));
      const double thr = std::min(q, lo.back() + hi.back());
      WinningFamily f;
      for (std::size_t b = 0; b < hi.size(); ++b) {
        for (std::size_t a = 0; a < lo.size(); ++a) {
          if (lo[a] + hi[b] >= thr) f.set((b << h) | a);
        }
      }
      if (run > 0 && f == last) {
        ++run;
        continue;
      }
      if (run > 0) local[last] += run;
      last = f;
      run = 1;
    }
    if (run > 0) local[last] += run;
  });
  std::map<WinningFamily, std::uint64_t> merged;
  for (const auto& m : found) {
    for (const auto& [f, k] : m) merged[f] += k;
  }
  GameClassCatalog cat{n, budget, seed, {}};
  for (const auto& [f, k] : merged) {
    cat.classes.push_back({f, profile_from_counts(counts_of(f, n)).beta, k});
  }
  std::stable_sort(cat.classes.begin(), cat.classes.end(),
                   [](const auto& a, const auto& b) { return a.hits > b.hits; });
  return cat;
}

}  // namespace wvpower
