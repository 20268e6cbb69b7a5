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
/// CSV persistence for curves, densities and class catalogs, and a minimal
/// SVG line chart.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wvpower/errors.hpp"
#include "wvpower/experiments.hpp"
#include "wvpower/spline.hpp"

namespace wvpower {

/// Shortest round-trip-safe text: 17 significant digits.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& s) {
  const std::string t = trim(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw invalid_arguments("not a number: '" + t + "'");
  }
  if (used != t.size()) throw invalid_arguments("not a number: '" + t + "'");
  return v;
}

inline const char* kCurveHeader = "quota,series,mean,standard_error,samples";

inline void write_curve_metadata(std::ostream& os, const QuotaCurve& c) {
  os << "# n=" << c.n << " seed=" << c.seed.seed << " samples=" << (c.points.empty() ? 0 : c.points.front().samples)
     << " method=" << c.method << "\n";
}

inline void write_curves_csv(std::ostream& os, std::span<const QuotaCurve> curves) {
  if (!curves.empty()) write_curve_metadata(os, curves.front());
  os << kCurveHeader << "\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      os << format_double(c.quotas[i]) << ',' << c.statistic << ',' << format_double(c.points[i].mean) << ','
         << format_double(c.points[i].standard_error) << ',' << c.points[i].samples << "\n";
    }
  }
}

/// Reads (x, y) samples from CSV. Recognized column pairs are quota/mean
/// (curve files) and x/density or x/y. When a `series` column is present,
/// `series` selects one; it may be omitted only if the file holds one series.
/// Lines starting with '#' are ignored.
inline std::vector<SamplePoint> read_samples_csv(std::istream& is, const std::optional<std::string>& series = {}) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(is, line)) {
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    for (auto& h : split(line, ',')) header.push_back(trim(h));
    break;
  }
  if (header.empty()) throw invalid_arguments("CSV input has no header row");
  auto col = [&](std::initializer_list<const char*> names) -> std::optional<std::size_t> {
    for (const char* nm : names) {
      const auto it = std::find(header.begin(), header.end(), nm);
      if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
    }
    return std::nullopt;
  };
  const auto xc = col({"quota", "x", "q"});
  const auto yc = col({"mean", "density", "y", "value"});
  const auto sc = col({"series"});
  if (!xc || !yc) throw invalid_arguments("CSV input needs an x column (quota|x) and a y column (mean|density|y)");
  std::vector<std::pair<std::string, SamplePoint>> rows;
  std::vector<std::string> names;
  while (std::getline(is, line)) {
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const auto f = split(line, ',');
    if (f.size() != header.size()) throw invalid_arguments("CSV row has " + std::to_string(f.size()) + " fields: " + line);
    const std::string s = sc ? trim(f[*sc]) : "";
    if (std::find(names.begin(), names.end(), s) == names.end()) names.push_back(s);
    rows.push_back({s, {parse_double(f[*xc]), parse_double(f[*yc])}});
  }
  std::string want;
  if (series) {
    want = *series;
    if (std::find(names.begin(), names.end(), want) == names.end()) {
      throw invalid_arguments("CSV input has no series '" + want + "'");
    }
  } else if (names.size() > 1) {
    std::string all;
    for (const auto& nm : names) all += (all.empty() ? "" : ", ") + nm;
    throw invalid_arguments("CSV input holds several series (" + all + "); choose one");
  } else if (!names.empty()) {
    want = names.front();
  }
  std::vector<SamplePoint> out;
  for (const auto& [s, p] : rows) {
    if (s == want) out.push_back(p);
  }
  return out;
}

inline void write_catalog_csv(std::ostream& os, const GameClassCatalog& cat) {
  os << "# n=" << cat.n << " seed=" << cat.seed.seed << " samples=" << cat.budget << " method=sampling\n";
  os << "class_id,beta,hit_count\n";
  for (std::size_t i = 0; i < cat.classes.size(); ++i) {
    os << i + 1 << ',';
    const auto& b = cat.classes[i].beta;
    for (std::size_t k = 0; k < b.size(); ++k) os << (k ? ";" : "") << format_double(b[k]);
    os << ',' << cat.classes[i].hits << "\n";
  }
}

// ---------------------------------------------------------------------------
// SVG

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

inline std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title,
                              const std::string& caption) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (x1 <= x0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 <= y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  constexpr double W = 720, H = 480, L = 70, R = 160, T = 40, B = 70;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  auto num = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return std::string(b);
  };
  auto esc = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '<') o += "&lt;";
      else if (c == '>') o += "&gt;";
      else if (c == '&') o += "&amp;";
      else o += c;
    }
    return o;
  };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5, yv = y0 + (y1 - y0) * i / 5;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << H - B << "\" x2=\"" << px(xv) << "\" y2=\"" << H - B + 5 << "\" stroke=\"black\"/>";
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    os << "<line x1=\"" << L - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << L << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << L - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % std::size(palette)];
    const auto& sr = series[s];
    if (sr.x.size() == 1) {
      os << "<circle cx=\"" << px(sr.x[0]) << "\" cy=\"" << py(sr.y[0]) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    } else if (!sr.x.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < sr.x.size(); ++i) os << (i ? " " : "") << px(sr.x[i]) << ',' << py(sr.y[i]);
      os << "\"/>\n";
    }
    os << "<line x1=\"" << W - R + 15 << "\" y1=\"" << T + 10 + 18 * s << "\" x2=\"" << W - R + 35 << "\" y2=\""
       << T + 10 + 18 * s << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    os << "<text x=\"" << W - R + 40 << "\" y=\"" << T + 14 + 18 * s << "\">" << esc(sr.name) << "</text>\n";
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 20 << "\" text-anchor=\"middle\">" << esc(caption) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

/// Writes an SVG line chart. Nothing is written when there is no data.
inline void emit_plot(const std::vector<PlotSeries>& series, const std::string& path, const std::string& title,
                      const std::string& caption) {
  bool any = false;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw invalid_arguments("emit_plot: series '" + s.name + "' has mismatched x and y");
    any = any || !s.x.empty();
  }
  if (!any) throw invalid_arguments("emit_plot: nothing to plot");
  const std::string svg = render_svg(series, title, caption);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open '" + path + "' for writing");
  f << svg;
  if (!f) throw io_error("failed writing '" + path + "'");
}

inline std::vector<PlotSeries> plot_series(std::span<const QuotaCurve> curves) {
  std::vector<PlotSeries> out;
  for (const auto& c : curves) out.push_back({c.statistic, c.quotas, c.means()});
  return out;
}

inline std::string curve_caption(const QuotaCurve& c) {
  return "n=" + std::to_string(c.n) + ", seed=" + std::to_string(c.seed.seed) +
         ", samples=" + std::to_string(c.points.empty() ? 0 : c.points.front().samples);
}

}  // namespace wvpower
