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

// Acceptance checks. Prints one [PASS] or [FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wvpower/analytic.hpp"
#include "wvpower/coleman.hpp"
#include "wvpower/experiments.hpp"
#include "wvpower/games.hpp"
#include "wvpower/spline.hpp"
#include "wvpower/weightdist.hpp"

namespace {

using namespace wvpower;
using R = Rational;

struct Check {
  bool ok = true;
  std::string why;
  void expect(bool cond, const std::string& msg) {
    if (!cond) why += (ok ? "" : "; ") + msg;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, auto... a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

double harmonic(std::size_t l) {
  double h = 0.0;
  for (std::size_t j = 1; j <= l; ++j) h += 1.0 / static_cast<double>(j);
  return h;
}

double integrate_density(const OrderedWeightDensity& d, const std::function<double(double)>& g) {
  auto br = d.breakpoints();
  br.insert(br.begin(), d.support_lower());
  br.push_back(d.support_upper());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    if (br[i + 1] > br[i]) s += oracle::integrate([&](double x) { return g(x) * d.density(x); }, br[i], br[i + 1]);
  }
  return s;
}

Check c1() {
  Check c;
  const double e3[] = {11, 5, 2};
  for (std::size_t k = 1; k <= 3; ++k) {
    c.expect(std::fabs(expected_ordered_weight(3, k) - e3[k - 1] / 18) < 1e-12, fmt("n=3 k=%zu", k));
  }
  const double e6[] = {147, 87, 57, 37, 22, 10};
  for (std::size_t k = 1; k <= 6; ++k) {
    c.expect(std::fabs(expected_ordered_weight(6, k) - e6[k - 1] / 360) < 1e-12, fmt("n=6 k=%zu", k));
  }
  return c;
}

Check c2() {
  Check c;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const OrderedWeightDensity d(n, k);
      const double mass = integrate_density(d, [](double) { return 1.0; });
      const double mean = integrate_density(d, [](double x) { return x; });
      const double want = (harmonic(n) - harmonic(k - 1)) / static_cast<double>(n);
      c.expect(std::fabs(mass - 1.0) < 1e-8, fmt("mass n=%zu k=%zu: %.3g", n, k, mass - 1.0));
      c.expect(std::fabs(mean - want) < 1e-8, fmt("mean n=%zu k=%zu: %.3g", n, k, mean - want));
      const double lo = k == 1 ? 1.0 / static_cast<double>(n) : 0.0;
      const double hi = 1.0 / static_cast<double>(k);
      c.expect(d.support_lower() == lo && d.support_upper() == hi, fmt("support n=%zu k=%zu", n, k));
      const double eps = 1e-9;
      c.expect(d.density(hi + eps) == 0.0 && (lo == 0.0 || d.density(lo - eps) == 0.0),
               fmt("density outside support n=%zu k=%zu", n, k));
    }
  }
  return c;
}

Check c3() {
  Check c;
  constexpr std::size_t n = 4, m = 100000, bins = 20;
  Xoshiro256 e(RandomSeed{1003, 0});
  std::vector<std::vector<double>> cols(n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto o = order_descending(sample_uniform_simplex(n, e));
    for (std::size_t k = 0; k < n; ++k) cols[k].push_back(o[k]);
  }
  double worst = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    // probability integral transform into equiprobable bins
    const OrderedWeightDensity d(n, k + 1);
    std::vector<double> counts(bins, 0.0);
    for (double x : cols[k]) {
      const auto b = std::min<std::size_t>(bins - 1, static_cast<std::size_t>(d.cdf(x) * bins));
      counts[b] += 1.0;
    }
    const double expected = static_cast<double>(m) / bins;
    double stat = 0.0;
    for (double o : counts) stat += (o - expected) * (o - expected) / expected;
    const double p = oracle::chi_square_p(stat, bins - 1);
    worst = std::min(worst, p);
    c.expect(p > 0.01, fmt("chi-square n=4 k=%zu p=%.4g", k + 1, p));
  }
  constexpr std::size_t n5 = 5, m5 = 100000;
  Xoshiro256 a(RandomSeed{1003, 1}), b(RandomSeed{1003, 2});
  std::vector<std::vector<double>> ord(n5), ren(n5);
  for (std::size_t i = 0; i < m5; ++i) {
    const auto o = order_descending(sample_uniform_simplex(n5, a));
    const auto r = renyi_partial_sums(sample_uniform_simplex(n5, b));
    for (std::size_t k = 0; k < n5; ++k) {
      ord[k].push_back(o[k]);
      ren[k].push_back(r[k]);
    }
  }
  for (std::size_t k = 0; k < n5; ++k) {
    const double ks = oracle::ks_statistic(ord[k], ren[k]);
    c.expect(ks < oracle::ks_critical_1pct(m5, m5), fmt("KS n=5 k=%zu D=%.4g", k + 1, ks));
  }
  if (c.ok) c.why = fmt("min chi-square p=%.3g", worst);
  return c;
}

Check c4() {
  Check c;
  Xoshiro256 pick(RandomSeed{1004, 0});
  double worst = 0.0;
  for (int v = 0; v < 20; ++v) {
    const std::size_t n = 1 + pick() % 6;
    std::vector<std::uint32_t> ex(n, 0);
    const std::uint32_t total = 1 + static_cast<std::uint32_t>(pick() % 6);
    for (std::uint32_t u = 0; u < total; ++u) ++ex[pick() % n];
    const MomentIndex mi(ex);
    Xoshiro256 e(RandomSeed{1004, static_cast<std::uint64_t>(v + 1)});
    std::vector<double> vals(1000000);
    std::vector<double> w(n);
    for (auto& x : vals) {
      sample_uniform_simplex_into(std::span<double>(w), e);
      double p = 1.0;
      for (std::size_t j = 0; j < n; ++j) p *= std::pow(w[j], static_cast<double>(ex[j]));
      x = p;
    }
    const auto ms = oracle::mean_se(vals);
    const double z = ms.se > 0 ? std::fabs(ms.mean - product_moment(n, mi)) / ms.se : 0.0;
    worst = std::max(worst, z);
    c.expect(z < 3.0, fmt("vector %d (n=%zu) off by %.2f SE", v, n, z));
  }
  const auto s = sum_sq_stats(3);
  c.expect(s.mean == 0.5 && s.variance == 1.0 / 60.0, "sum_sq_stats(3)");
  if (c.ok) c.why = fmt("max deviation %.2f SE", worst);
  return c;
}

Check c5() {
  Check c;
  Xoshiro256 e(RandomSeed{1005, 0});
  auto grid = default_quota_grid();
  grid.pop_back();
  for (int g = 0; g < 1000; ++g) {
    const std::size_t n = 1 + e() % 16;
    const auto w = sample_uniform_simplex(n, e);
    for (double q : grid) {
      const VotingGame game(w, q);
      const auto a = count_winning_naive(game);
      const auto b = count_winning_mitm(game);
      c.expect(a.omega == b.omega && a.per_player == b.per_player, fmt("game %d q=%.3f", g, q));
    }
  }
  const auto p = banzhaf(VotingGame(WeightVector({0.5, 0.3, 0.2}), 0.55));
  c.expect(std::fabs(p.beta[0] - 0.6) < 1e-15 && std::fabs(p.beta[1] - 0.2) < 1e-15 &&
               std::fabs(p.beta[2] - 0.2) < 1e-15,
           "(0.5,0.3,0.2 | 0.55) beta");
  return c;
}

Check c6() {
  Check c;
  const std::vector<double> qs{0.55, 0.6, 2.0 / 3.0, 0.75, 0.9, 1.0};
  const auto m2 = mc_power_curve(2, qs, 1 << 16, RandomSeed{1006, 2}, PowerStatistic::beta);
  const auto m3 = mc_power_curve(3, qs, 1 << 16, RandomSeed{1006, 3}, PowerStatistic::beta);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto [a, b] = expected_beta_n2(qs[i]);
    const double e2[] = {a, b};
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& pt = m2[k].points[i];
      c.expect(std::fabs(pt.mean - e2[k]) <= std::max(0.01, 3 * pt.standard_error), fmt("n=2 k=%zu q=%.4f", k + 1, qs[i]));
    }
    const auto e3 = expected_beta_n3(qs[i]);
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& pt = m3[k].points[i];
      c.expect(std::fabs(pt.mean - e3[k]) <= std::max(0.01, 3 * pt.standard_error), fmt("n=3 k=%zu q=%.4f", k + 1, qs[i]));
    }
  }
  const auto ex = expected_beta_n3_exact();
  for (std::size_t p = 0; p < 2; ++p) {
    c.expect(ex[0].pieces()[p] + ex[1].pieces()[p] + ex[2].pieces()[p] == QuotaPolynomial{R(1)}, "branches sum to 1");
  }
  for (std::size_t k = 0; k < 3; ++k) {
    c.expect(ex[k].pieces()[0].at(R(2, 3)) == ex[k].pieces()[1].at(R(2, 3)), fmt("continuity k=%zu", k + 1));
  }
  std::set<R> found;
  for (const auto& r : extrema_n3()) {
    if (r.point.exact) found.insert(*r.point.exact);
  }
  c.expect(found == std::set<R>{R(34, 39), R(5, 9), R(13, 18)}, "extrema locations");
  return c;
}

Check c7() {
  Check c;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.01 * i;
    c.expect(std::fabs(phi_Z(1, t) - std::cos(t / 2)) < 1e-10, fmt("phi(1, %.2f)", t));
  }
  const auto grid = uniform_quota_grid(25);
  double worst = 0.0;
  for (std::size_t n : {3u, 6u, 9u, 12u}) {
    c.expect(expected_coleman(n, 1.0) == std::ldexp(1.0, -static_cast<int>(n)), fmt("E(C)(1) n=%zu", n));
    const auto inv = expected_coleman_curve(ColemanCurveSpec{n}, grid);
    const auto mc = mc_coleman_curve(n, grid, 1 << 16, RandomSeed{1007, n});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = std::fabs(inv[i] - mc.points[i].mean);
      worst = std::max(worst, d);
      c.expect(d <= 1e-3 + 3 * mc.points[i].standard_error, fmt("n=%zu q=%.3f diff %.3g", n, grid[i], d));
    }
  }
  Xoshiro256 e(RandomSeed{1007, 100});
  for (int g = 0; g < 1000; ++g) {
    const std::size_t n = 1 + e() % 16;
    const auto w = sample_uniform_simplex(n, e);
    const double q = 0.5 + 0.5 * uniform_open_closed(e);
    const VotingGame game(w, q);
    const auto o = oracle::brute_force(std::vector<double>(w.begin(), w.end()), q);
    const double exact = std::ldexp(static_cast<double>(o.omega), -static_cast<int>(n));
    c.expect(hoeffding_bound(game) >= exact, fmt("Hoeffding game %d", g));
  }
  if (c.ok) c.why = fmt("max |inversion - MC| = %.3g", worst);
  return c;
}

Check c8() {
  Check c;
  c.expect(expected_coleman_normal(6, 0.5) == 0.5, "C1(1/2)");
  for (double y : {0.05, 0.1, 0.25}) {
    const auto r = coleman_error_ratio(6, y);
    const double back = expected_coleman(6, r.exact_quota);
    const double ref = oracle::expected_coleman(6, r.exact_quota);
    c.expect(std::fabs(back - y) <= 1e-6, fmt("y=%.2f round trip %.3g", y, back - y));
    c.expect(std::fabs(ref - y) <= 1e-5, fmt("y=%.2f oracle %.3g", y, ref - y));
    c.expect(std::fabs(expected_coleman_normal(6, r.normal_quota) - y) <= 1e-6, fmt("y=%.2f normal", y));
  }
  return c;
}

Check c9() {
  Check c;
  const auto grid = default_quota_grid();
  auto samples = [&](const QuotaSpline& f) {
    std::vector<SamplePoint> p;
    for (double q : grid) p.push_back({q, f(q)});
    return p;
  };
  const auto n2 = expected_beta_n2_exact();
  for (const auto& f : n2) {
    const auto fit = fit_spline(samples(f));
    c.expect(fit.pieces.size() == 1 && fit.degree == 1 && fit.max_residual < 1e-12, "n=2 linear fit");
  }
  const double step = grid[1] - grid[0];
  for (const auto& f : expected_beta_n3_exact()) {
    const auto fit = fit_spline(samples(f));
    const auto br = fit.interior_breakpoints();
    c.expect(fit.pieces.size() == 2 && fit.degree == 2 && br.size() == 1 &&
                 std::fabs(br[0] - 2.0 / 3.0) <= step && fit.max_residual < 1e-10,
             "n=3 two quadratics");
  }
  return c;
}

Check c10() {
  Check c;
  const std::size_t want[] = {2, 5, 14};
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto cat = discover_classes(n, 1000000, RandomSeed{1010, n});
    c.expect(cat.size() == want[n - 2], fmt("n=%zu found %zu", n, cat.size()));
    c.expect(cat.size() <= kClassCountCeiling[n - 2], fmt("ceiling n=%zu", n));
  }
  const auto three = discover_classes(3, 1000000, RandomSeed{1010, 3});
  std::set<std::vector<double>> found, table;
  for (const auto& k : three.classes) found.insert(k.beta);
  for (const auto& k : class_table_n3().classes) {
    std::vector<double> b;
    for (const auto& r : k.beta) b.push_back(to_double(r));
    table.insert(b);
  }
  c.expect(found == table, "n=3 beta vectors");
  const auto five = discover_classes(5, 100000000, RandomSeed{1010, 5});
  c.expect(five.size() == 62, fmt("n=5 found %zu", five.size()));
  for (std::size_t n : {6u, 7u}) {
    const auto cat = discover_classes(n, 1000000, RandomSeed{1010, n});
    c.expect(cat.size() <= kClassCountCeiling[n - 2], fmt("ceiling n=%zu found %zu", n, cat.size()));
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check (*)()>> criteria{
      {"expected ordered weights", c1}, {"density validity", c2},      {"sampling consistency", c3},
      {"moments", c4},                  {"index kernels", c5},         {"two and three players", c6},
      {"coleman machinery", c7},        {"normal approximation", c8}, {"spline structure", c9},
      {"class discovery", c10}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %zu %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                c.why.empty() ? "" : ": ", c.why.c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
