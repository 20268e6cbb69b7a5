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
/// Exact computations on one weighted voting game: winning-coalition counts,
/// Penrose–Banzhaf indices, the Coleman index and fixed-weight quota curves.
///
/// A coalition wins iff its weight is >= the quota, compared without any
/// tolerance. For floating-point weights the weight of a coalition is defined
/// canonically: players are split into a low half (the first ceil(n/2)) and a
/// high half, each half's subset sum is accumulated from its highest member
/// down, and the two half sums are added. Every kernel here (naive, sweep and
/// meet-in-the-middle) compares exactly these doubles, so their counts agree
/// bit for bit.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wvpower/errors.hpp"
#include "wvpower/simplex.hpp"

namespace wvpower {

inline constexpr std::size_t kNaiveMaxPlayers = 30;
inline constexpr std::size_t kMitmMaxPlayers = 48;
inline constexpr std::size_t kQuotaCurveMaxPlayers = 30;
// banzhaf() switches from full enumeration to meet-in-the-middle above this.
inline constexpr std::size_t kNaivePreferredMaxPlayers = 20;

/// Set of players encoded as a bit mask; bit i is player i (0-based).
struct Coalition {
  std::uint64_t members = 0;

  bool contains(std::size_t i) const noexcept { return (members >> i) & 1u; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(members)); }
  friend constexpr bool operator==(const Coalition&, const Coalition&) = default;
};

inline std::size_t low_half_size(std::size_t n) noexcept { return (n + 1) / 2; }

namespace detail {

// s[m] = s[m without its lowest bit] + w[lowest bit], i.e. members are added
// from the highest index down. Must stay in sync with half_sum().
template <class T>
std::vector<T> half_subset_sums(std::span<const T> w) {
  std::vector<T> s(std::size_t{1} << w.size());
  s[0] = T{0};
  for (std::size_t m = 1; m < s.size(); ++m) {
    s[m] = s[m & (m - 1)] + w[static_cast<std::size_t>(std::countr_zero(m))];
  }
  return s;
}

template <class T>
T half_sum(std::span<const T> w, std::uint64_t mask) {
  T acc{0};
  while (mask) {
    const int top = 63 - std::countl_zero(mask);
    acc = acc + w[static_cast<std::size_t>(top)];
    mask &= ~(std::uint64_t{1} << top);
  }
  return acc;
}

template <class T>
T coalition_weight(std::span<const T> w, std::uint64_t mask) {
  const std::size_t h = low_half_size(w.size());
  const std::uint64_t low_mask = (std::uint64_t{1} << h) - 1;
  return half_sum(w.first(h), mask & low_mask) + half_sum(w.subspan(h), mask >> h);
}

}  // namespace detail

/// Winning-coalition counts: omega = |W| and omega_i = |{Q in W : i in Q}|.
struct WinningCounts {
  std::uint64_t omega = 0;
  std::vector<std::uint64_t> per_player;

  friend bool operator==(const WinningCounts&, const WinningCounts&) = default;
};

/// A weighted voting game with real weights on the simplex and a quota in
/// (1/2, 1].
class VotingGame {
 public:
  VotingGame(WeightVector weights, double quota) : w_(std::move(weights)), quota_(quota) {
    if (!(quota > 0.5 && quota <= 1.0)) {
      throw quota_out_of_range("quota must lie in (1/2, 1], got " + std::to_string(quota));
    }
    if (w_.size() > 63) throw budget_exceeded("at most 63 players are representable");
    total_ = detail::coalition_weight(w_.values(), (std::uint64_t{1} << w_.size()) - 1);
    threshold_ = std::min(quota_, total_);
  }

  const WeightVector& weights() const noexcept { return w_; }
  std::span<const double> weight_values() const noexcept { return w_.values(); }
  std::size_t players() const noexcept { return w_.size(); }
  double quota() const noexcept { return quota_; }

  /// Value coalition weights are compared against: the quota, capped at the
  /// computed weight of the grand coalition so that it always wins.
  double threshold() const noexcept { return threshold_; }

 private:
  WeightVector w_;
  double quota_;
  double total_ = 1.0;
  double threshold_ = 1.0;
};

/// Game with non-negative integer weights and a rational quota num/den; all
/// comparisons are exact. A coalition wins iff den * weight >= num * total.
class ExactVotingGame {
 public:
  ExactVotingGame(std::vector<std::int64_t> weights, std::int64_t quota_num, std::int64_t quota_den)
      : w_(std::move(weights)), num_(quota_num), den_(quota_den) {
    if (w_.empty()) throw invalid_dimension("game needs at least one player");
    if (w_.size() > 63) throw budget_exceeded("at most 63 players are representable");
    if (den_ <= 0 || num_ <= 0) throw quota_out_of_range("quota fraction must be positive");
    // (1/2, 1]: 2 num > den and num <= den
    if (!(2 * boost::multiprecision::int128_t(num_) > den_ && num_ <= den_)) {
      throw quota_out_of_range("quota must lie in (1/2, 1]");
    }
    boost::multiprecision::int128_t total = 0;
    for (auto x : w_) {
      if (x < 0) throw invalid_arguments("integer weights must be non-negative");
      total += x;
    }
    if (total <= 0) throw invalid_arguments("integer weights must not all be zero");
    if (total > std::numeric_limits<std::int64_t>::max() / 2) {
      throw invalid_arguments("integer weight total too large");
    }
    total_ = static_cast<std::int64_t>(total);
    // smallest integer s with den * s >= num * total
    const boost::multiprecision::int128_t need = boost::multiprecision::int128_t(num_) * total_;
    threshold_ = static_cast<std::int64_t>((need + den_ - 1) / den_);
  }

  std::span<const std::int64_t> weight_values() const noexcept { return w_; }
  std::size_t players() const noexcept { return w_.size(); }
  std::int64_t total_weight() const noexcept { return total_; }
  double quota() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::int64_t threshold() const noexcept { return threshold_; }

  /// Real-valued view (weights divided by their total).
  WeightVector normalized_weights() const {
    std::vector<double> x(w_.begin(), w_.end());
    return WeightVector::normalized(std::move(x));
  }

 private:
  std::vector<std::int64_t> w_;
  std::int64_t num_;
  std::int64_t den_;
  std::int64_t total_ = 0;
  std::int64_t threshold_ = 0;
};

template <class Game>
concept WeightedGame = requires(const Game& g) {
  g.weight_values();
  g.threshold();
  g.players();
};

template <WeightedGame Game>
bool is_winning(const Game& g, Coalition c) {
  return detail::coalition_weight(g.weight_values(), c.members) >= g.threshold();
}

namespace detail {

// Aggregates per-mask cross counts of each half into per-player counts.
inline void accumulate_half(std::span<const std::uint64_t> counts_by_mask, std::size_t offset,
                            std::size_t half_players, std::vector<std::uint64_t>& per_player) {
  for (std::size_t m = 0; m < counts_by_mask.size(); ++m) {
    const std::uint64_t c = counts_by_mask[m];
    if (c == 0) continue;
    for (std::size_t i = 0; i < half_players; ++i) {
      if ((m >> i) & 1u) per_player[offset + i] += c;
    }
  }
}

template <class T>
void check_players(std::span<const T> w, std::size_t budget, const char* kernel) {
  if (w.size() > budget) {
    throw budget_exceeded(std::string(kernel) + ": " + std::to_string(w.size()) +
                          " players exceed the budget of " + std::to_string(budget) +
                          (budget == kNaiveMaxPlayers ? "; use the meet-in-the-middle kernel" : ""));
  }
}

// Full 2^n enumeration of canonical coalition weights.
template <class T>
WinningCounts count_naive(std::span<const T> w, T threshold) {
  check_players(w, kNaiveMaxPlayers, "count_winning_naive");
  const std::size_t n = w.size();
  const std::size_t h = low_half_size(n);
  const auto lo = half_subset_sums(w.first(h));
  const auto hi = half_subset_sums(w.subspan(h));
  std::vector<std::uint64_t> lo_wins(lo.size(), 0);
  std::vector<std::uint64_t> hi_wins(hi.size(), 0);
  std::uint64_t omega = 0;
  for (std::size_t b = 0; b < hi.size(); ++b) {
    for (std::size_t a = 0; a < lo.size(); ++a) {
      if (lo[a] + hi[b] >= threshold) {
        ++lo_wins[a];
        ++hi_wins[b];
        ++omega;
      }
    }
  }
  WinningCounts out{omega, std::vector<std::uint64_t>(n, 0)};
  accumulate_half(lo_wins, 0, h, out.per_player);
  accumulate_half(hi_wins, h, n - h, out.per_player);
  return out;
}

}  // namespace detail

/// Meet-in-the-middle counter: both halves' subset sums are sorted once, after
/// which each quota costs O(n 2^{n/2}) via a two-pointer sweep.
template <class T>
class MitmCounter {
 public:
  explicit MitmCounter(std::span<const T> w) : n_(w.size()), h_(low_half_size(w.size())) {
    detail::check_players(w, kMitmMaxPlayers, "count_winning_mitm");
    lo_ = detail::half_subset_sums(w.first(h_));
    hi_ = detail::half_subset_sums(w.subspan(h_));
    lo_order_ = sorted_order(lo_);
    hi_order_ = sorted_order(hi_);
    lo_sorted_.resize(lo_.size());
    hi_sorted_.resize(hi_.size());
    for (std::size_t i = 0; i < lo_.size(); ++i) lo_sorted_[i] = lo_[lo_order_[i]];
    for (std::size_t i = 0; i < hi_.size(); ++i) hi_sorted_[i] = hi_[hi_order_[i]];
  }

  std::size_t players() const noexcept { return n_; }

  /// Number of winning coalitions only.
  std::uint64_t omega(T threshold) const {
    std::uint64_t total = 0;
    std::size_t idx = hi_sorted_.size();
    for (const T& a : lo_sorted_) {
      while (idx > 0 && a + hi_sorted_[idx - 1] >= threshold) --idx;
      total += hi_sorted_.size() - idx;
    }
    return total;
  }

  WinningCounts counts(T threshold) const {
    std::vector<std::uint64_t> lo_wins(lo_.size(), 0);
    std::vector<std::uint64_t> hi_wins(hi_.size(), 0);
    std::uint64_t omega = 0;
    // For each low mask: how many high masks complete it to a winner.
    std::size_t idx = hi_sorted_.size();
    for (std::size_t r = 0; r < lo_sorted_.size(); ++r) {
      while (idx > 0 && lo_sorted_[r] + hi_sorted_[idx - 1] >= threshold) --idx;
      const std::uint64_t c = hi_sorted_.size() - idx;
      lo_wins[lo_order_[r]] = c;
      omega += c;
    }
    // Symmetric pass; addition is commutative so the compared values agree.
    idx = lo_sorted_.size();
    for (std::size_t r = 0; r < hi_sorted_.size(); ++r) {
      while (idx > 0 && lo_sorted_[idx - 1] + hi_sorted_[r] >= threshold) --idx;
      hi_wins[hi_order_[r]] = lo_sorted_.size() - idx;
    }
    WinningCounts out{omega, std::vector<std::uint64_t>(n_, 0)};
    detail::accumulate_half(lo_wins, 0, h_, out.per_player);
    detail::accumulate_half(hi_wins, h_, n_ - h_, out.per_player);
    return out;
  }

 private:
  static std::vector<std::uint32_t> sorted_order(const std::vector<T>& v) {
    std::vector<std::uint32_t> order(v.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return v[a] < v[b]; });
    return order;
  }

  std::size_t n_;
  std::size_t h_;
  std::vector<T> lo_, hi_;
  std::vector<std::uint32_t> lo_order_, hi_order_;
  std::vector<T> lo_sorted_, hi_sorted_;
};

/// Counts by enumerating all 2^n coalitions. Budget: n <= 30.
template <WeightedGame Game>
WinningCounts count_winning_naive(const Game& g) {
  return detail::count_naive(g.weight_values(), g.threshold());
}

/// Counts by meet in the middle. Budget: n <= 48.
template <WeightedGame Game>
WinningCounts count_winning_mitm(const Game& g) {
  using T = std::remove_cvref_t<decltype(g.threshold())>;
  return MitmCounter<T>(g.weight_values()).counts(g.threshold());
}

/// Absolute (psi) and normalized (beta) Penrose–Banzhaf indices, the Coleman
/// index and the counts they derive from.
struct PowerProfile {
  std::vector<double> psi;
  std::vector<double> beta;
  double coleman = 0.0;
  std::uint64_t omega = 0;
  std::vector<std::uint64_t> omega_i;
};

/// psi_i = (2 omega_i - omega) / 2^{n-1}, beta = psi / sum(psi), C = omega / 2^n.
/// Integer numerators are formed first, so every entry is correctly rounded.
inline PowerProfile profile_from_counts(const WinningCounts& c) {
  const std::size_t n = c.per_player.size();
  PowerProfile p;
  p.omega = c.omega;
  p.omega_i = c.per_player;
  p.psi.resize(n);
  p.beta.assign(n, 0.0);
  std::int64_t swing_total = 0;
  std::vector<std::int64_t> swings(n);
  for (std::size_t i = 0; i < n; ++i) {
    swings[i] = 2 * static_cast<std::int64_t>(c.per_player[i]) - static_cast<std::int64_t>(c.omega);
    swing_total += swings[i];
    p.psi[i] = std::ldexp(static_cast<double>(swings[i]), -static_cast<int>(n - 1));
  }
  if (swing_total > 0) {
    for (std::size_t i = 0; i < n; ++i) {
      p.beta[i] = static_cast<double>(swings[i]) / static_cast<double>(swing_total);
    }
  }
  p.coleman = std::ldexp(static_cast<double>(c.omega), -static_cast<int>(n));
  return p;
}

template <WeightedGame Game>
PowerProfile banzhaf(const Game& g) {
  if (g.players() <= kNaivePreferredMaxPlayers) return profile_from_counts(count_winning_naive(g));
  return profile_from_counts(count_winning_mitm(g));
}

/// Players (0-based) whose Penrose–Banzhaf index is exactly zero.
template <WeightedGame Game>
std::vector<std::size_t> dummies(const Game& g) {
  const auto c = g.players() <= kNaivePreferredMaxPlayers ? count_winning_naive(g)
                                                          : count_winning_mitm(g);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.per_player.size(); ++i) {
    if (2 * c.per_player[i] == c.omega) out.push_back(i);
  }
  return out;
}

/// Hoeffding upper bound on the Coleman index, exp(-2 (q - 1/2)^2 / sum w_i^2).
inline double hoeffding_bound(const WeightVector& w, double quota) {
  if (quota < 0.5) throw quota_out_of_range("hoeffding_bound requires q >= 1/2");
  const double d = quota - 0.5;
  return std::exp(-2.0 * d * d / w.sum_of_squares());
}

inline double hoeffding_bound(const VotingGame& g) { return hoeffding_bound(g.weights(), g.quota()); }

/// Winning counts at many quotas for one weight vector. Quotas must lie in
/// (1/2, 1]; each is capped at the grand coalition's weight as in VotingGame.
class QuotaSweep {
 public:
  /// With full_sort the 2^n sums are sorted once and counts() sweeps them;
  /// this pays off when there are many quotas. Otherwise counts() runs the
  /// meet-in-the-middle counter per quota.
  explicit QuotaSweep(std::span<const double> w) : QuotaSweep(w, w.size() <= kSortedSweepMaxPlayers) {}

  QuotaSweep(std::span<const double> w, bool full_sort) : n_(w.size()) {
    if (n_ > kMitmMaxPlayers) {
      throw budget_exceeded("quota sweep: too many players (" + std::to_string(n_) + ")");
    }
    const std::uint64_t all = (std::uint64_t{1} << n_) - 1;
    total_ = detail::coalition_weight(w, all);
    mitm_.emplace(w);
    if (full_sort && n_ <= kFullSortMaxPlayers) {
      const std::size_t h = low_half_size(n_);
      const auto lo = detail::half_subset_sums(w.first(h));
      const auto hi = detail::half_subset_sums(w.subspan(h));
      sums_.resize(std::size_t{1} << n_);
      for (std::size_t b = 0; b < hi.size(); ++b) {
        for (std::size_t a = 0; a < lo.size(); ++a) sums_[(b << h) | a] = lo[a] + hi[b];
      }
      order_.resize(sums_.size());
      std::iota(order_.begin(), order_.end(), 0u);
      std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
        return sums_[a] > sums_[b] || (sums_[a] == sums_[b] && a < b);
      });
    }
  }

  static constexpr std::size_t kSortedSweepMaxPlayers = 10;
  static constexpr std::size_t kFullSortMaxPlayers = 20;

  std::size_t players() const noexcept { return n_; }
  double threshold(double quota) const noexcept { return std::min(quota, total_); }

  /// Counts for each quota, returned in the order given.
  std::vector<WinningCounts> counts(std::span<const double> quotas) const {
    std::vector<WinningCounts> out(quotas.size());
    if (sums_.empty()) {
      for (std::size_t i = 0; i < quotas.size(); ++i) out[i] = mitm_->counts(threshold(quotas[i]));
      return out;
    }
    std::vector<std::size_t> by_desc(quotas.size());
    std::iota(by_desc.begin(), by_desc.end(), std::size_t{0});
    std::stable_sort(by_desc.begin(), by_desc.end(),
                     [&](std::size_t a, std::size_t b) { return quotas[a] > quotas[b]; });
    WinningCounts running{0, std::vector<std::uint64_t>(n_, 0)};
    std::size_t p = 0;
    for (std::size_t qi : by_desc) {
      const double t = threshold(quotas[qi]);
      while (p < order_.size() && sums_[order_[p]] >= t) {
        std::uint64_t m = order_[p];
        ++running.omega;
        while (m) {
          ++running.per_player[static_cast<std::size_t>(std::countr_zero(m))];
          m &= m - 1;
        }
        ++p;
      }
      out[qi] = running;
    }
    return out;
  }

  /// omega only, for each quota in the order given.
  std::vector<std::uint64_t> omegas(std::span<const double> quotas) const {
    std::vector<std::uint64_t> out(quotas.size());
    for (std::size_t i = 0; i < quotas.size(); ++i) out[i] = mitm_->omega(threshold(quotas[i]));
    return out;
  }

 private:
  std::size_t n_;
  double total_ = 1.0;
  std::vector<double> sums_;
  std::vector<std::uint32_t> order_;
  std::optional<MitmCounter<double>> mitm_;
};

enum class CurveFunctional { psi, beta, coleman };

/// One constant piece of a fixed-weight quota curve, valid for q in
/// (lower, upper]; the value at upper itself follows the >= rule.
struct QuotaStep {
  double lower;
  double upper;
  std::vector<double> values;  // one per player, or a single Coleman value
  std::uint64_t omega;
};

/// Exact step function q -> functional(game(w, q)) on (1/2, 1]. Breakpoints
/// are the distinct coalition weights inside (1/2, 1] (plus 1 itself).
inline std::vector<QuotaStep> fixed_weight_quota_curve(const WeightVector& w, CurveFunctional f) {
  const std::size_t n = w.size();
  if (n > kQuotaCurveMaxPlayers) {
    throw budget_exceeded("fixed_weight_quota_curve: n = " + std::to_string(n) +
                          " exceeds the budget of " + std::to_string(kQuotaCurveMaxPlayers));
  }
  const std::size_t h = low_half_size(n);
  const auto lo = detail::half_subset_sums(w.values().first(h));
  const auto hi = detail::half_subset_sums(w.values().subspan(h));
  std::vector<double> sums;
  sums.reserve(lo.size() * hi.size());
  for (double b : hi) {
    for (double a : lo) sums.push_back(a + b);
  }
  std::vector<double> uppers;
  for (double s : sums) {
    if (s > 0.5 && s <= 1.0) uppers.push_back(s);
  }
  std::sort(uppers.begin(), uppers.end());
  uppers.erase(std::unique(uppers.begin(), uppers.end()), uppers.end());
  if (uppers.empty() || uppers.back() < 1.0) uppers.push_back(1.0);

  std::vector<QuotaStep> out;
  out.reserve(uppers.size());
  std::vector<double> quotas = uppers;
  std::vector<WinningCounts> counts;
  if (n <= 16) {
    counts = QuotaSweep(w.values(), true).counts(quotas);
  } else {
    MitmCounter<double> mitm(w.values());
    const double total = detail::coalition_weight(w.values(), (std::uint64_t{1} << n) - 1);
    for (double q : quotas) counts.push_back(mitm.counts(std::min(q, total)));
  }
  double lower = 0.5;
  for (std::size_t i = 0; i < uppers.size(); ++i) {
    const auto p = profile_from_counts(counts[i]);
    QuotaStep step{lower, uppers[i], {}, counts[i].omega};
    switch (f) {
      case CurveFunctional::psi: step.values = p.psi; break;
      case CurveFunctional::beta: step.values = p.beta; break;
      case CurveFunctional::coleman: step.values = {p.coleman}; break;
    }
    out.push_back(std::move(step));
    lower = uppers[i];
  }
  return out;
}

/// Value of a fixed-weight curve at q in (1/2, 1].
inline const QuotaStep& step_at(const std::vector<QuotaStep>& curve, double q) {
  const auto it = std::lower_bound(curve.begin(), curve.end(), q,
                                   [](const QuotaStep& s, double x) { return s.upper < x; });
  if (it == curve.end() || !(q > 0.5)) throw quota_out_of_range("quota outside (1/2, 1]");
  return *it;
}

enum class OptimalQuotaVariant { reciprocal, sqrt };

struct OptimalQuota {
  double value;
  bool exceeds_one;
};

/// Heuristic quota that makes beta close to w. The `reciprocal` variant
/// (1/2)(1 + 1/sum w^2) is always >= 1 and is kept only as a diagnostic; the
/// `sqrt` variant is (1/2)(1 + sqrt(sum w^2)).
inline OptimalQuota optimal_quota_diagnostic(const WeightVector& w, OptimalQuotaVariant v) {
  const double s2 = w.sum_of_squares();
  const double q = v == OptimalQuotaVariant::reciprocal ? 0.5 * (1.0 + 1.0 / s2)
                                                     : 0.5 * (1.0 + std::sqrt(s2));
  return {q, q > 1.0};
}

}  // namespace wvpower
