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

// wvpower: command-line front end.
//
// Exit codes: 0 success, 1 I/O or other failure, 2 usage or invalid
// arguments, 3 numeric convergence / accuracy, 4 budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wvpower/analytic.hpp"
#include "wvpower/coleman.hpp"
#include "wvpower/experiments.hpp"
#include "wvpower/games.hpp"
#include "wvpower/io.hpp"
#include "wvpower/simplex.hpp"
#include "wvpower/spline.hpp"
#include "wvpower/weightdist.hpp"

namespace {

using namespace wvpower;
using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kNumeric = 3, kBudget = 4 };

// ---------------------------------------------------------------------------
// Output table shared by the CSV and JSON writers.

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> comments;  // CSV '#' lines; JSON "meta"
};

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::string>) return v;
        else if constexpr (std::is_same_v<V, double>) return format_double(v);
        else return std::to_string(v);
      },
      c);
}

json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

struct Settings {
  std::string format = "auto";
  std::string output;
  std::string plot;
  std::size_t threads = 0;
};

class Sink {
 public:
  explicit Sink(const Settings& s) {
    if (!s.output.empty()) {
      file_ = std::make_unique<std::ofstream>(s.output, std::ios::binary);
      if (!*file_) throw io_error("cannot open '" + s.output + "' for writing");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

bool use_json(const Settings& s, bool json_default = false) {
  if (s.format == "json") return true;
  if (s.format == "csv") return false;
  return json_default;
}

void emit(const Table& t, const Settings& s, bool json_default = false) {
  Sink sink(s);
  auto& os = sink.out();
  if (use_json(s, json_default)) {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = cell_json(r[i]);
      rows.push_back(std::move(o));
    }
    json doc = json::object();
    if (!t.comments.empty()) doc["meta"] = t.comments;
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
    return;
  }
  for (const auto& c : t.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
    os << "\n";
  }
}

Table curve_table(std::span<const QuotaCurve> curves) {
  Table t{{"quota", "series", "mean", "standard_error", "samples"}, {}, {}};
  if (!curves.empty()) {
    const auto& c = curves.front();
    t.comments.push_back("n=" + std::to_string(c.n) + " seed=" + std::to_string(c.seed.seed) + " samples=" +
                         std::to_string(c.points.empty() ? 0 : c.points.front().samples) + " method=" + c.method);
  }
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      t.rows.push_back({c.quotas[i], c.statistic, c.points[i].mean, c.points[i].standard_error, c.points[i].samples});
    }
  }
  return t;
}

void maybe_plot(const Settings& s, const std::vector<PlotSeries>& series, const std::string& title,
                const std::string& caption) {
  if (!s.plot.empty()) emit_plot(series, s.plot, title, caption);
}

// ---------------------------------------------------------------------------
// Argument helpers

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& f : split(s, ',')) {
    if (!trim(f).empty()) out.push_back(parse_double(f));
  }
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& f : split(s, ',')) {
    const std::string t = trim(f);
    if (t.empty()) continue;
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw invalid_arguments("not an integer: '" + t + "'");
    }
    if (used != t.size()) throw invalid_arguments("not an integer: '" + t + "'");
    out.push_back(v);
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& s) {
  const auto parts = split(s, '/');
  if (parts.size() != 2) throw invalid_arguments("fraction must look like a/b: '" + s + "'");
  const auto a = parse_ints(parts[0]), b = parse_ints(parts[1]);
  if (a.size() != 1 || b.size() != 1) throw invalid_arguments("fraction must look like a/b: '" + s + "'");
  return {a[0], b[0]};
}

std::vector<double> read_weights_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io_error("cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(f, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    for (const auto& field : split(t, ',')) {
      try {
        out.push_back(parse_double(field));
      } catch (const invalid_arguments&) {
        if (!out.empty()) throw;  // a header row is tolerated before the data only
      }
    }
  }
  return out;
}

struct WeightArgs {
  std::string inline_weights;
  std::string weights_file;
  std::string weights_int;
  bool normalize = false;
  double quota = 0.0;
  std::string quota_frac;

  void add(CLI::App* cmd, bool needs_quota) {
    auto* w = cmd->add_option("--weights", inline_weights, "Comma-separated weights summing to 1");
    auto* wf = cmd->add_option("--weights-file", weights_file, "CSV file with the weights");
    auto* wi = cmd->add_option("--weights-int", weights_int, "Comma-separated non-negative integer weights");
    w->excludes(wf)->excludes(wi);
    wf->excludes(wi);
    cmd->add_flag("--normalize", normalize, "Rescale real weights to sum to 1");
    if (needs_quota) {
      auto* q = cmd->add_option("--quota", quota, "Quota in (1/2, 1]");
      auto* qf = cmd->add_option("--quota-frac", quota_frac, "Exact quota a/b (integer weights)");
      q->excludes(qf);
    }
  }

  bool exact() const { return !weights_int.empty(); }

  std::vector<double> real_values() const {
    if (!inline_weights.empty()) return parse_doubles(inline_weights);
    if (!weights_file.empty()) return read_weights_file(weights_file);
    throw invalid_arguments("give --weights, --weights-file or --weights-int");
  }

  WeightVector weight_vector() const {
    if (exact()) return exact_game_with(1, 1).normalized_weights();
    auto v = real_values();
    return normalize ? WeightVector::normalized(std::move(v)) : WeightVector(std::move(v));
  }

  ExactVotingGame exact_game_with(std::int64_t num, std::int64_t den) const {
    return ExactVotingGame(parse_ints(weights_int), num, den);
  }

  double quota_value() const {
    if (!quota_frac.empty()) {
      const auto [a, b] = parse_fraction(quota_frac);
      if (b == 0) throw invalid_arguments("quota denominator is zero");
      return static_cast<double>(a) / static_cast<double>(b);
    }
    if (quota == 0.0) throw invalid_arguments("give --quota or --quota-frac");
    return quota;
  }
};

struct GridArgs {
  std::string quotas;
  std::size_t points = 0;
  double single = 0.0;

  void add(CLI::App* cmd) {
    cmd->add_option("--quotas", quotas, "Comma-separated increasing quotas in (1/2, 1]");
    cmd->add_option("--grid-points", points, "Use K equispaced quotas 1/2 + j/(2K), j = 1..K");
    cmd->add_option("--quota", single, "Single quota");
  }

  std::vector<double> grid() const {
    if (single != 0.0) return {single};
    if (!quotas.empty()) return parse_doubles(quotas);
    if (points > 0) return uniform_quota_grid(points);
    return default_quota_grid();
  }
};

// ---------------------------------------------------------------------------
// Commands

void cmd_sample_weights(const Settings& s, std::size_t n, std::uint64_t count, std::uint64_t seed,
                        std::uint64_t stream, bool ordered) {
  if (count == 0) throw invalid_arguments("--count must be >= 1");
  Table t;
  t.columns.push_back("sample");
  for (std::size_t k = 1; k <= n; ++k) t.columns.push_back("w" + std::to_string(k));
  t.comments.push_back("n=" + std::to_string(n) + " seed=" + std::to_string(seed) + " stream=" + std::to_string(stream) +
                       (ordered ? " ordered" : ""));
  Xoshiro256 engine(RandomSeed{seed, stream});
  for (std::uint64_t i = 0; i < count; ++i) {
    auto w = sample_uniform_simplex(n, engine);
    std::vector<double> v(w.begin(), w.end());
    if (ordered) {
      const auto o = order_descending(w);
      v.assign(o.values().begin(), o.values().end());
    }
    std::vector<Cell> row{i};
    for (double x : v) row.emplace_back(x);
    t.rows.push_back(std::move(row));
  }
  emit(t, s);
}

void cmd_expected_weights(const Settings& s, std::size_t n) {
  Table t{{"k", "expected", "fraction"}, {}, {}};
  for (std::size_t k = 1; k <= n; ++k) {
    const auto e = expected_ordered_weight_exact(n, k);
    std::ostringstream frac;
    frac << e;
    t.rows.push_back({std::uint64_t{k}, to_double(e), frac.str()});
  }
  emit(t, s);
  std::vector<double> ks, vs;
  for (std::size_t k = 1; k <= n; ++k) {
    ks.push_back(static_cast<double>(k));
    vs.push_back(expected_ordered_weight(n, k));
  }
  maybe_plot(s, {{"E(W_k)", ks, vs}}, "Expected ordered weights", "n=" + std::to_string(n));
}

void cmd_weight_density(const Settings& s, std::size_t n, std::size_t k, std::size_t points, bool cdf) {
  if (points < 2) throw invalid_arguments("--points must be >= 2");
  std::vector<std::size_t> ranks;
  if (k == 0) {
    for (std::size_t j = 1; j <= n; ++j) ranks.push_back(j);
  } else {
    ranks.push_back(k);
  }
  const std::string value = cdf ? "cdf" : "density";
  Table t;
  t.columns = k == 0 ? std::vector<std::string>{"k", "x", value} : std::vector<std::string>{"x", value};
  t.comments.push_back("n=" + std::to_string(n));
  std::vector<PlotSeries> series;
  for (std::size_t r : ranks) {
    const OrderedWeightDensity d(n, r);
    PlotSeries ps{"k=" + std::to_string(r), {}, {}};
    for (std::size_t i = 0; i < points; ++i) {
      const double x = d.support_lower() + (d.support_upper() - d.support_lower()) * static_cast<double>(i) /
                                               static_cast<double>(points - 1);
      const double y = cdf ? d.cdf(x) : d.density(x);
      if (k == 0) t.rows.push_back({std::uint64_t{r}, x, y});
      else t.rows.push_back({x, y});
      ps.x.push_back(x);
      ps.y.push_back(y);
    }
    series.push_back(std::move(ps));
  }
  emit(t, s);
  maybe_plot(s, series, cdf ? "CDF of the k-th largest weight" : "Density of the k-th largest weight",
             "n=" + std::to_string(n));
}

void cmd_moments(const Settings& s, std::size_t n, const std::string& exponents, std::uint32_t power_sum,
                 bool sum_sq) {
  Table t{{"quantity", "value", "exact"}, {}, {}};
  auto text = [](const BigRational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
  };
  if (!exponents.empty()) {
    std::vector<std::uint32_t> m;
    for (auto v : parse_ints(exponents)) {
      if (v < 0) throw invalid_arguments("exponents must be non-negative");
      m.push_back(static_cast<std::uint32_t>(v));
    }
    const auto e = product_moment_exact(n, MomentIndex(m));
    t.rows.push_back({"product_moment(" + exponents + ")", to_double(e), text(e)});
  }
  if (power_sum > 0) {
    const auto e = power_sum_moment_exact(n, power_sum);
    t.rows.push_back({"power_sum(" + std::to_string(power_sum) + ")", to_double(e), text(e)});
  }
  if (sum_sq || (exponents.empty() && power_sum == 0)) {
    const auto st = sum_sq_stats(n);
    t.rows.push_back({"sum_sq_mean", st.mean, ""});
    t.rows.push_back({"sum_sq_variance", st.variance, ""});
  }
  emit(t, s);
}

void cmd_indices(const Settings& s, const WeightArgs& wa, const std::string& method) {
  PowerProfile p;
  std::vector<double> weights;
  double q = 0.0;
  auto run = [&](const auto& g) {
    if (method == "naive") return profile_from_counts(count_winning_naive(g));
    if (method == "mitm") return profile_from_counts(count_winning_mitm(g));
    return banzhaf(g);
  };
  if (wa.exact()) {
    std::int64_t num = 0, den = 1;
    if (!wa.quota_frac.empty()) {
      std::tie(num, den) = parse_fraction(wa.quota_frac);
    } else {
      throw invalid_arguments("integer weights need --quota-frac a/b");
    }
    const ExactVotingGame g = wa.exact_game_with(num, den);
    p = run(g);
    for (auto v : g.weight_values()) weights.push_back(static_cast<double>(v));
    q = g.quota();
  } else {
    const VotingGame g(wa.weight_vector(), wa.quota_value());
    p = run(g);
    weights.assign(g.weights().begin(), g.weights().end());
    q = g.quota();
  }
  const std::size_t n = weights.size();
  if (use_json(s, true)) {
    json doc = json::object();
    doc["n"] = n;
    doc["quota"] = q;
    doc["weights"] = weights;
    doc["omega"] = p.omega;
    doc["omega_i"] = p.omega_i;
    doc["psi"] = p.psi;
    doc["beta"] = p.beta;
    doc["coleman"] = p.coleman;
    std::vector<std::size_t> dum;
    for (std::size_t i = 0; i < n; ++i) {
      if (2 * p.omega_i[i] == p.omega) dum.push_back(i + 1);
    }
    doc["dummies"] = dum;
    Sink sink(s);
    sink.out() << doc.dump(2) << "\n";
    return;
  }
  Table t{{"player", "weight", "omega_i", "psi", "beta"}, {}, {}};
  t.comments.push_back("quota=" + format_double(q) + " omega=" + std::to_string(p.omega) +
                       " coleman=" + format_double(p.coleman));
  for (std::size_t i = 0; i < n; ++i) t.rows.push_back({std::uint64_t{i + 1}, weights[i], p.omega_i[i], p.psi[i], p.beta[i]});
  emit(t, s);
}

void cmd_fixed_curve(const Settings& s, const WeightArgs& wa, const std::string& statistic) {
  CurveFunctional f = CurveFunctional::beta;
  if (statistic == "psi") f = CurveFunctional::psi;
  else if (statistic == "coleman") f = CurveFunctional::coleman;
  else if (statistic != "beta") throw invalid_arguments("--statistic must be beta, psi or coleman");
  const WeightVector w = wa.weight_vector();
  const auto steps = fixed_weight_quota_curve(w, f);
  Table t{{"quota", "series", "mean", "standard_error", "samples"}, {}, {}};
  t.comments.push_back("n=" + std::to_string(w.size()) + " seed=0 samples=1 method=fixed-weights");
  t.comments.push_back("each value holds on the interval (previous quota, quota]");
  const std::size_t series = steps.front().values.size();
  std::vector<PlotSeries> plot(series);
  for (std::size_t j = 0; j < series; ++j) {
    const std::string name = f == CurveFunctional::coleman ? "coleman" : statistic + "_" + std::to_string(j + 1);
    plot[j].name = name;
    for (const auto& st : steps) {
      t.rows.push_back({st.upper, name, st.values[j], 0.0, std::uint64_t{1}});
      // step shape: flat from lower to upper
      plot[j].x.push_back(st.lower);
      plot[j].y.push_back(st.values[j]);
      plot[j].x.push_back(st.upper);
      plot[j].y.push_back(st.values[j]);
    }
  }
  emit(t, s);
  maybe_plot(s, plot, "Fixed-weight " + statistic + " curve", "n=" + std::to_string(w.size()));
}

void cmd_power_curve(const Settings& s, std::size_t n, const GridArgs& ga, std::uint64_t samples, std::uint64_t seed,
                     const std::string& statistic) {
  PowerStatistic st = PowerStatistic::beta;
  if (statistic == "psi") st = PowerStatistic::psi;
  else if (statistic != "beta") throw invalid_arguments("--statistic must be beta or psi");
  const auto grid = ga.grid();
  const auto curves = mc_power_curve(n, grid, samples, RandomSeed{seed, 0}, st, s.threads);
  emit(curve_table(curves), s);
  maybe_plot(s, plot_series(curves), "Expected ordered " + statistic, curve_caption(curves.front()));
}

void cmd_coleman_curve(const Settings& s, std::size_t n, const GridArgs& ga, const std::string& method,
                       double tolerance, double max_frequency, std::uint64_t samples, std::uint64_t seed) {
  const auto grid = ga.grid();
  QuotaCurve c;
  if (method == "monte-carlo") {
    c = mc_coleman_curve(n, grid, samples, RandomSeed{seed, 0}, s.threads);
  } else {
    ColemanCurveSpec spec{n};
    spec.integration_tolerance = tolerance;
    spec.max_frequency = max_frequency;
    spec.samples = samples;
    spec.seed = RandomSeed{seed, 0};
    if (method == "inversion") spec.method = ColemanMethod::inversion;
    else if (method == "normal") spec.method = ColemanMethod::normal;
    else if (method == "hoeffding-bound") spec.method = ColemanMethod::hoeffding_bound;
    else throw invalid_arguments("--method must be inversion, normal, hoeffding-bound or monte-carlo");
    validate_quota_grid(grid);
    const auto v = expected_coleman_curve(spec, grid);
    c.quotas = grid;
    c.n = n;
    c.seed = spec.seed;
    c.method = method;
    const std::uint64_t sm = spec.method == ColemanMethod::hoeffding_bound ? samples : 0;
    for (double x : v) c.points.push_back({x, 0.0, sm});
  }
  c.statistic = "coleman_" + method;
  c.method = method;
  const std::vector<QuotaCurve> one{c};
  emit(curve_table(one), s);
  maybe_plot(s, plot_series(one), "Expected Coleman index", curve_caption(c));
}

void cmd_classes(const Settings& s, std::size_t n, std::uint64_t budget, std::uint64_t seed) {
  const auto cat = discover_classes(n, budget, RandomSeed{seed, 0}, s.threads);
  if (use_json(s)) {
    json rows = json::array();
    for (std::size_t i = 0; i < cat.classes.size(); ++i) {
      const auto& c = cat.classes[i];
      std::vector<std::uint64_t> masks;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        if (c.family.wins(m)) masks.push_back(m);
      }
      rows.push_back({{"class_id", i + 1}, {"beta", c.beta}, {"hit_count", c.hits}, {"winning_masks", masks}});
    }
    json doc = {{"meta", {{"n", n}, {"seed", seed}, {"samples", budget}, {"classes", cat.size()}}}, {"rows", rows}};
    Sink sink(s);
    sink.out() << doc.dump(2) << "\n";
    return;
  }
  Sink sink(s);
  write_catalog_csv(sink.out(), cat);
}

void cmd_spline_fit(const Settings& s, const std::string& input, const std::string& series, unsigned max_degree,
                    const std::string& breakpoints, double penalty) {
  std::ifstream f(input);
  if (!f) throw io_error("cannot open '" + input + "'");
  const auto pts = read_samples_csv(f, series.empty() ? std::nullopt : std::optional<std::string>(series));
  SplineOptions opt;
  opt.max_degree = max_degree;
  opt.penalty = penalty;
  if (breakpoints != "auto") {
    opt.mode = BreakpointMode::fixed;
    opt.breakpoints = parse_doubles(breakpoints);
  }
  const auto fit = fit_spline(pts, opt);
  Table t{{"piece", "lower", "upper", "degree", "coefficients"}, {}, {}};
  t.comments.push_back("samples=" + std::to_string(pts.size()) + " max_residual=" + format_double(fit.max_residual) +
                       " sum_squares=" + format_double(fit.sum_squares) + " max_jump=" + format_double(fit.max_jump()));
  t.comments.push_back("coefficients are in increasing degree, in the raw x variable");
  for (std::size_t p = 0; p < fit.pieces.size(); ++p) {
    std::string coef;
    for (std::size_t i = 0; i <= fit.degree; ++i) coef += (i ? ";" : "") + format_double(fit.pieces[p].coefficient(i));
    t.rows.push_back({std::uint64_t{p + 1}, fit.knots[p], fit.knots[p + 1], std::uint64_t{fit.degree}, coef});
  }
  emit(t, s);
  if (!s.plot.empty()) {
    PlotSeries data{"data", {}, {}}, model{"fit", {}, {}};
    for (const auto& p : pts) {
      data.x.push_back(p.x);
      data.y.push_back(p.y);
      model.x.push_back(p.x);
      model.y.push_back(fit(p.x));
    }
    emit_plot({data, model}, s.plot, "Piecewise polynomial fit", "pieces=" + std::to_string(fit.pieces.size()));
  }
}

void cmd_analytic(const Settings& s, const std::string& table, std::size_t n, const GridArgs& ga, double t_value,
                  const std::string& levels, double tolerance, double max_frequency) {
  if (table == "beta") {
    if (n != 2 && n != 3) throw invalid_arguments("closed-form expected beta exists for n = 2 and n = 3 only");
    const auto grid = ga.grid();
    validate_quota_grid(grid);
    std::vector<QuotaCurve> curves(n);
    for (std::size_t k = 0; k < n; ++k) {
      curves[k].quotas = grid;
      curves[k].statistic = "beta_" + std::to_string(k + 1);
      curves[k].n = n;
      curves[k].method = "closed-form";
    }
    for (double q : grid) {
      std::vector<double> v;
      if (n == 2) {
        const auto [a, b] = expected_beta_n2(q);
        v = {a, b};
      } else {
        const auto b = expected_beta_n3(q);
        v.assign(b.begin(), b.end());
      }
      for (std::size_t k = 0; k < n; ++k) curves[k].points.push_back({v[k], 0.0, 0});
    }
    emit(curve_table(curves), s);
    maybe_plot(s, plot_series(curves), "Expected ordered beta (closed form)", "n=" + std::to_string(n));
  } else if (table == "classes") {
    const auto ct = class_table_n3();
    Table t{{"class", "beta", "winning_masks", "branch", "probability"}, {}, {}};
    t.comments.push_back("n=3; branch 1 is q <= 2/3, branch 2 is q >= 2/3; bit k of a mask is the (k+1)-th largest player");
    for (const auto& c : ct.classes) {
      std::ostringstream b, m;
      for (std::size_t k = 0; k < c.beta.size(); ++k) b << (k ? ";" : "") << c.beta[k];
      for (std::size_t i = 0; i < c.winning.size(); ++i) m << (i ? ";" : "") << c.winning[i];
      for (std::size_t p = 0; p < 2; ++p) {
        t.rows.push_back({c.label, b.str(), m.str(), std::uint64_t{p + 1}, c.probability.pieces()[p].to_string()});
      }
    }
    emit(t, s);
  } else if (table == "beta-polynomials") {
    const auto c = expected_beta_n3_exact();
    Table t{{"k", "branch", "polynomial"}, {}, {}};
    t.comments.push_back("n=3; branch 1 is q <= 2/3, branch 2 is q >= 2/3");
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t p = 0; p < 2; ++p) t.rows.push_back({std::uint64_t{k + 1}, std::uint64_t{p + 1}, c[k].pieces()[p].to_string()});
    }
    emit(t, s);
  } else if (table == "extrema") {
    Table t{{"k", "quota", "exact", "nature"}, {}, {}};
    for (const auto& e : extrema_n3()) {
      std::ostringstream ex;
      if (e.point.exact) ex << *e.point.exact;
      t.rows.push_back({std::uint64_t{e.rank}, e.point.location, ex.str(), std::string(to_string(e.point.nature))});
    }
    emit(t, s);
  } else if (table == "phi") {
    Table t{{"n", "t", "phi"}, {}, {}};
    t.rows.push_back({std::uint64_t{n}, t_value, phi_Z(n, t_value)});
    emit(t, s);
  } else if (table == "error-ratio") {
    ColemanCurveSpec spec{n};
    spec.integration_tolerance = tolerance;
    spec.max_frequency = max_frequency;
    Table t{{"y", "normal_quota", "exact_quota", "ratio"}, {}, {}};
    t.comments.push_back("n=" + std::to_string(n));
    const auto ys = levels.empty() ? std::vector<double>{0.05, 0.1, 0.25, 0.5} : parse_doubles(levels);
    for (double y : ys) {
      const auto r = coleman_error_ratio(n, y, spec);
      t.rows.push_back({y, r.normal_quota, r.exact_quota, r.ratio});
    }
    emit(t, s);
  } else {
    throw invalid_arguments("--table must be beta, beta-polynomials, classes, extrema, phi or error-ratio");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Voting power of random weighted games"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file with option defaults ([subcommand] sections allowed)");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  Settings s;
  app.add_option("--format", s.format, "Output format: csv or json (default csv; json for indices)")
      ->check(CLI::IsMember({"auto", "csv", "json"}));
  app.add_option("-o,--output", s.output, "Write results to this file instead of stdout");
  app.add_option("--plot", s.plot, "Also write an SVG chart to this path");
  app.add_option("--threads", s.threads, std::string("Worker threads (0: ") + kThreadsEnv + " or all cores)");

  std::size_t n = 0;
  std::uint64_t samples = kDefaultSamples, seed = 0;

  auto* sw = app.add_subcommand("sample-weights", "Draw uniform weight vectors");
  std::uint64_t count = 1, stream = 0;
  bool ordered = false;
  sw->add_option("--n", n, "Players")->required();
  sw->add_option("--count", count, "Number of vectors");
  sw->add_option("--seed", seed, "Seed");
  sw->add_option("--stream", stream, "Stream id");
  sw->add_flag("--ordered", ordered, "Sort each vector descending");

  auto* ew = app.add_subcommand("expected-weights", "Expected k-th largest weight");
  ew->add_option("--n", n, "Players")->required();

  auto* wd = app.add_subcommand("weight-density", "Density (or CDF) of the k-th largest weight");
  std::size_t rank = 0, points = 201;
  bool cdf = false;
  wd->add_option("--n", n, "Players")->required();
  wd->add_option("--k", rank, "Rank (omit for all ranks)");
  wd->add_option("--points", points, "Evaluation points per rank");
  wd->add_flag("--cdf", cdf, "Output the CDF instead of the density");

  auto* mo = app.add_subcommand("moments", "Moments of the weights");
  std::string exponents;
  std::uint32_t power_sum = 0;
  bool sum_sq = false;
  mo->add_option("--n", n, "Players")->required();
  mo->add_option("--exponents", exponents, "Product moment exponents m_1,...,m_n");
  mo->add_option("--power-sum", power_sum, "E(sum_j W_j^m) for this m");
  mo->add_flag("--sum-sq", sum_sq, "Mean and variance of sum_j W_j^2");

  auto* in = app.add_subcommand("indices", "Banzhaf and Coleman indices of one game");
  WeightArgs in_w;
  std::string kernel = "auto";
  in_w.add(in, true);
  in->add_option("--kernel", kernel, "naive, mitm or auto")->check(CLI::IsMember({"auto", "naive", "mitm"}));

  auto* fc = app.add_subcommand("fixed-curve", "Exact step curve of one weight vector over all quotas");
  WeightArgs fc_w;
  std::string fc_stat = "beta";
  fc_w.add(fc, false);
  fc->add_option("--statistic", fc_stat, "beta, psi or coleman");

  auto* pc = app.add_subcommand("power-curve", "Monte Carlo expected ordered indices over quotas");
  GridArgs pc_g;
  std::string pc_stat = "beta";
  pc->add_option("--n", n, "Players")->required();
  pc->add_option("--samples", samples, "Sampled weight vectors");
  pc->add_option("--seed", seed, "Seed");
  pc->add_option("--statistic", pc_stat, "beta or psi");
  pc_g.add(pc);

  auto* cc = app.add_subcommand("coleman-curve", "Expected Coleman index over quotas");
  GridArgs cc_g;
  std::string cc_method = "inversion";
  double tolerance = 1e-6, max_frequency = kPhiMaxFrequency;
  cc->add_option("--n", n, "Players")->required();
  cc->add_option("--method", cc_method, "inversion, normal, hoeffding-bound or monte-carlo");
  cc->add_option("--tolerance", tolerance, "Inversion tolerance");
  cc->add_option("--max-frequency", max_frequency, "Largest integration limit");
  cc->add_option("--samples", samples, "Samples (monte-carlo, hoeffding-bound)");
  cc->add_option("--seed", seed, "Seed");
  cc_g.add(cc);

  auto* cl = app.add_subcommand("classes", "Discover game classes by sampling");
  std::uint64_t budget = 1000000;
  cl->add_option("--n", n, "Players (2..7)")->required();
  cl->add_option("--budget", budget, "Sampled (weights, quota) pairs");
  cl->add_option("--seed", seed, "Seed");

  auto* sf = app.add_subcommand("spline-fit", "Piecewise polynomial fit of a curve CSV");
  std::string input, series, breakpoints = "auto";
  unsigned max_degree = 3;
  double penalty = SplineOptions{}.penalty;
  sf->add_option("--input", input, "CSV file (curve or x,y)")->required();
  sf->add_option("--series", series, "Series to fit when the file has several");
  sf->add_option("--max-degree", max_degree, "Largest polynomial degree");
  sf->add_option("--breakpoints", breakpoints, "auto, or comma-separated interior breakpoints");
  sf->add_option("--penalty", penalty, "Cost per coefficient or breakpoint");

  auto* an = app.add_subcommand("analytic", "Closed forms and characteristic-function results");
  GridArgs an_g;
  std::string table = "beta", levels;
  double t_value = 0.0;
  an->add_option("--table", table, "beta, beta-polynomials, classes, extrema, phi or error-ratio");
  an->add_option("--n", n, "Players");
  an->add_option("--t", t_value, "Frequency for --table phi");
  an->add_option("--levels", levels, "Levels y for --table error-ratio");
  an->add_option("--tolerance", tolerance, "Inversion tolerance");
  an->add_option("--max-frequency", max_frequency, "Largest integration limit");
  an_g.add(an);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sw) cmd_sample_weights(s, n, count, seed, stream, ordered);
    else if (*ew) cmd_expected_weights(s, n);
    else if (*wd) cmd_weight_density(s, n, rank, points, cdf);
    else if (*mo) cmd_moments(s, n, exponents, power_sum, sum_sq);
    else if (*in) cmd_indices(s, in_w, kernel);
    else if (*fc) cmd_fixed_curve(s, fc_w, fc_stat);
    else if (*pc) cmd_power_curve(s, n, pc_g, samples, seed, pc_stat);
    else if (*cc) cmd_coleman_curve(s, n, cc_g, cc_method, tolerance, max_frequency, samples, seed);
    else if (*cl) cmd_classes(s, n, budget, seed);
    else if (*sf) cmd_spline_fit(s, input, series, max_degree, breakpoints, penalty);
    else if (*an) cmd_analytic(s, table, n == 0 ? 3 : n, an_g, t_value, levels, tolerance, max_frequency);
  } catch (const budget_exceeded& e) {
    std::cerr << "budget_exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const convergence_failure& e) {
    std::cerr << "convergence_failure: " << e.what() << " (estimates " << format_double(e.previous_estimate()) << ", "
              << format_double(e.last_estimate()) << ")\n";
    return kNumeric;
  } catch (const accuracy_unsupported& e) {
    std::cerr << "accuracy_unsupported: " << e.what() << "\n";
    return kNumeric;
  } catch (const quota_out_of_range& e) {
    std::cerr << "quota_out_of_range: " << e.what() << "\n";
    return kUsage;
  } catch (const invalid_rank& e) {
    std::cerr << "invalid_rank: " << e.what() << "\n";
    return kUsage;
  } catch (const invalid_dimension& e) {
    std::cerr << "invalid_dimension: " << e.what() << "\n";
    return kUsage;
  } catch (const invalid_arguments& e) {
    std::cerr << "invalid_arguments: " << e.what() << "\n";
    return kUsage;
  } catch (const degenerate_distribution& e) {
    std::cerr << "degenerate_distribution: " << e.what() << "\n";
    return kUsage;
  } catch (const io_error& e) {
    std::cerr << "io_error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
