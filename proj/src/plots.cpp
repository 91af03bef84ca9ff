#include "xf/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "xf/errors.hpp"

namespace xf {

namespace {

constexpr double kW = 720, kH = 520;
constexpr double kL = 80, kR = 30, kT = 44, kB = 56;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Axes {
  double u0, u1, v0, v1; // data ranges (already log10 where applicable)
  bool log_u, log_v;

  double px(double u) const {
    return kL + (u - u0) / (u1 - u0) * (kW - kL - kR);
  }
  double py(double v) const {
    return kH - kB - (v - v0) / (v1 - v0) * (kH - kT - kB);
  }
};

void pad_range(double& a, double& b) {
  if (b - a < 1e-12) {
    a -= 0.5;
    b += 0.5;
  } else {
    const double m = 0.06 * (b - a);
    a -= m;
    b += m;
  }
}

std::vector<double> ticks(double a, double b, int target = 5) {
  const double span = b - a;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  std::vector<double> out;
  for (double t = std::ceil(a / step) * step; t <= b + 1e-9 * span; t += step)
    out.push_back(t);
  return out;
}

int column_index(const ResultRecord& r, const std::string& name) {
  auto it = std::find(r.columns.begin(), r.columns.end(), name);
  if (it == r.columns.end())
    throw ValidationError(name, "record has no such column");
  return int(it - r.columns.begin());
}

void draw_frame(std::ostringstream& svg, const Axes& ax,
                const std::string& title, const std::string& xlabel,
                const std::string& ylabel) {
  svg << "<rect width='" << kW << "' height='" << kH
      << "' fill='#ffffff'/>\n";
  svg << "<text x='" << kW / 2 << "' y='24' text-anchor='middle' "
      << "font-family='sans-serif' font-size='15'>" << title << "</text>\n";
  // gridlines + tick labels
  for (double t : ticks(ax.u0, ax.u1)) {
    const double x = ax.px(t);
    svg << "<line x1='" << num(x) << "' y1='" << kT << "' x2='" << num(x)
        << "' y2='" << kH - kB << "' stroke='#dddddd'/>\n";
    const std::string label =
        ax.log_u ? "1e" + num(t) : num(t);
    svg << "<text x='" << num(x) << "' y='" << kH - kB + 18
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
        << label << "</text>\n";
  }
  for (double t : ticks(ax.v0, ax.v1)) {
    const double y = ax.py(t);
    svg << "<line x1='" << kL << "' y1='" << num(y) << "' x2='" << kW - kR
        << "' y2='" << num(y) << "' stroke='#dddddd'/>\n";
    const std::string label =
        ax.log_v ? "1e" + num(t) : num(t);
    svg << "<text x='" << kL - 6 << "' y='" << num(y + 4)
        << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
        << label << "</text>\n";
  }
  svg << "<rect x='" << kL << "' y='" << kT << "' width='" << kW - kL - kR
      << "' height='" << kH - kT - kB
      << "' fill='none' stroke='#000000'/>\n";
  svg << "<text x='" << (kL + kW - kR) / 2 << "' y='" << kH - 14
      << "' text-anchor='middle' font-family='sans-serif' font-size='13'>"
      << xlabel << "</text>\n";
  svg << "<text x='20' y='" << (kT + kH - kB) / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
      << "transform='rotate(-90 20 " << (kT + kH - kB) / 2 << ")'>" << ylabel
      << "</text>\n";
}

void polyline(std::ostringstream& svg, const Axes& ax,
              const std::vector<std::pair<double, double>>& pts,
              const std::string& stroke, bool dashed, bool markers) {
  if (pts.size() > 1) {
    svg << "<polyline fill='none' stroke='" << stroke << "' stroke-width='1.6'";
    if (dashed) svg << " stroke-dasharray='6 4'";
    svg << " points='";
    for (const auto& [u, v] : pts)
      svg << num(ax.px(u)) << "," << num(ax.py(v)) << " ";
    svg << "'/>\n";
  }
  if (markers)
    for (const auto& [u, v] : pts)
      svg << "<circle cx='" << num(ax.px(u)) << "' cy='" << num(ax.py(v))
          << "' r='3.4' fill='" << stroke << "'/>\n";
}

void legend(std::ostringstream& svg, int slot, const std::string& color,
            bool dashed, const std::string& label) {
  const double y = kT + 16 + 18 * slot;
  svg << "<line x1='" << kW - kR - 150 << "' y1='" << y << "' x2='"
      << kW - kR - 120 << "' y2='" << y << "' stroke='" << color
      << "' stroke-width='1.6'"
      << (dashed ? " stroke-dasharray='6 4'" : "") << "/>\n";
  svg << "<text x='" << kW - kR - 114 << "' y='" << y + 4
      << "' font-family='sans-serif' font-size='11'>" << label << "</text>\n";
}

std::string wrap(const std::ostringstream& body) {
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW
      << "' height='" << kH << "' viewBox='0 0 " << kW << " " << kH
      << "'>\n"
      << body.str() << "</svg>\n";
  return out.str();
}

std::string plot_decay(const ResultRecord& r) {
  const int ci_l = column_index(r, "lambda");
  const int ci_n = column_index(r, "norm");
  int ci_e = -1;
  if (std::find(r.columns.begin(), r.columns.end(), "envelope") !=
      r.columns.end())
    ci_e = column_index(r, "envelope");

  std::vector<std::pair<double, double>> data, env;
  for (const auto& row : r.rows) {
    if (!(row[ci_l] > 0) || !(row[ci_n] > 0)) continue;
    data.push_back({std::log10(row[ci_l]), std::log10(row[ci_n])});
    if (ci_e >= 0 && row[ci_e] > 0)
      env.push_back({std::log10(row[ci_l]), std::log10(row[ci_e])});
  }
  if (data.empty()) throw EmptyRecord("no positive points to draw");
  std::sort(data.begin(), data.end());
  std::sort(env.begin(), env.end());

  Axes ax{data.front().first, data.back().first, 0, 0, true, true};
  double v0 = data[0].second, v1 = data[0].second;
  for (const auto& [u, v] : data) {
    v0 = std::min(v0, v);
    v1 = std::max(v1, v);
  }
  for (const auto& [u, v] : env) {
    v0 = std::min(v0, v);
    v1 = std::max(v1, v);
  }
  pad_range(ax.u0, ax.u1);
  pad_range(v0, v1);
  ax.v0 = v0;
  ax.v1 = v1;

  std::ostringstream svg;
  draw_frame(svg, ax, r.experiment + ": weighted resolvent norm vs lambda",
             "lambda", "norm");
  polyline(svg, ax, data, "#1f6fb4", false, true);
  legend(svg, 0, "#1f6fb4", false, "measured");
  int slot = 1;
  auto it_s = r.constants.find("fit_slope");
  auto it_i = r.constants.find("fit_intercept");
  if (it_s != r.constants.end() && it_i != r.constants.end()) {
    // ols on ln-ln; convert to log10: log10 y = (i + s ln x)/ln 10
    const double s = it_s->second, ic = it_i->second;
    std::vector<std::pair<double, double>> fit;
    for (double u : {ax.u0, ax.u1})
      fit.push_back({u, (ic + s * u * std::log(10.0)) / std::log(10.0)});
    polyline(svg, ax, fit, "#c23b3b", true, false);
    legend(svg, slot++, "#c23b3b", true, "fit slope " + num(s));
  }
  if (!env.empty()) {
    polyline(svg, ax, env, "#2c8a4b", true, false);
    legend(svg, slot++, "#2c8a4b", true, "reference envelope");
  }
  return wrap(svg);
}

std::string plot_absorption(const ResultRecord& r) {
  const int ci_l = column_index(r, "lambda");
  const int ci_nu = column_index(r, "nu");
  const int ci_n = column_index(r, "norm");
  std::map<double, std::vector<std::pair<double, double>>> traces;
  for (const auto& row : r.rows)
    if (row[ci_nu] > 0 && row[ci_n] > 0)
      traces[row[ci_l]].push_back(
          {std::log10(1.0 / row[ci_nu]), std::log10(row[ci_n])});
  if (traces.empty()) throw EmptyRecord("no positive points to draw");

  double u0 = 1e300, u1 = -1e300, v0 = 1e300, v1 = -1e300;
  for (auto& [lam, pts] : traces) {
    std::sort(pts.begin(), pts.end());
    for (const auto& [u, v] : pts) {
      u0 = std::min(u0, u);
      u1 = std::max(u1, u);
      v0 = std::min(v0, v);
      v1 = std::max(v1, v);
    }
  }
  pad_range(u0, u1);
  pad_range(v0, v1);
  Axes ax{u0, u1, v0, v1, true, true};

  std::ostringstream svg;
  draw_frame(svg, ax, r.experiment + ": norm growth as absorption vanishes",
             "1/nu", "norm");
  const char* palette[] = {"#1f6fb4", "#c23b3b", "#2c8a4b",
                           "#8a5cc2", "#c2842c", "#2cB5c2"};
  int k = 0;
  for (const auto& [lam, pts] : traces) {
    const std::string color = palette[k % 6];
    polyline(svg, ax, pts, color, false, true);
    if (k < 6) legend(svg, k, color, false, "lambda " + num(lam));
    ++k;
  }
  return wrap(svg);
}

std::string plot_unbounded(const ResultRecord& r) {
  const int ci_n = column_index(r, "n");
  const int ci_v = column_index(r, "value");
  std::vector<std::pair<double, double>> data;
  for (const auto& row : r.rows)
    data.push_back({2.0 * row[ci_n] + 1.0, row[ci_v]});
  if (data.empty()) throw EmptyRecord("no points to draw");
  std::sort(data.begin(), data.end());

  Axes ax{0, data.back().first, 0, 0, false, false};
  double v1 = 0;
  for (const auto& [u, v] : data) v1 = std::max(v1, v);
  v1 = std::max(v1, 16.0 * data.back().first / 130.0);
  pad_range(ax.u0, ax.u1);
  ax.v0 = 0;
  ax.v1 = 1.08 * v1;

  std::ostringstream svg;
  draw_frame(svg, ax, r.experiment + ": commutator mass per mode", "2n+1",
             "norm squared");
  std::vector<std::pair<double, double>> bound{
      {0, 0}, {ax.u1, 16.0 * ax.u1 / 130.0}};
  polyline(svg, ax, bound, "#c23b3b", true, false);
  polyline(svg, ax, data, "#1f6fb4", false, true);
  legend(svg, 0, "#1f6fb4", false, "measured");
  legend(svg, 1, "#c23b3b", true, "lower bound 16(2n+1)/130");
  return wrap(svg);
}

} // namespace

std::string render_plot(const ResultRecord& r, const std::string& kind) {
  if (r.rows.empty()) throw EmptyRecord("record has no rows");
  if (kind == "decay") return plot_decay(r);
  if (kind == "absorption") return plot_absorption(r);
  if (kind == "unbounded") return plot_unbounded(r);
  throw ValidationError(kind, "unknown plot kind");
}

std::vector<std::string> emit_plots(const ResultRecord& r,
                                    const std::vector<std::string>& kinds,
                                    const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "plots");
  std::vector<std::string> paths;
  for (const auto& kind : kinds) {
    const std::string svg = render_plot(r, kind);
    const std::string path =
        (fs::path(dir) / "plots" / (kind + ".svg")).string();
    std::ofstream out(path, std::ios::binary);
    out << svg;
    paths.push_back(path);
  }
  return paths;
}

} // namespace xf
