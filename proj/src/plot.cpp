#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "resplit/errors.hpp"
#include "resplit/experiment.hpp"
#include "resplit/format.hpp"

namespace resplit {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 70, kRight = 120, kTop = 40, kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
constexpr double kFloor = -300.0;  // log10 of zero actions is clamped here

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double log_action(double a) { return a > 0.0 ? std::max(kFloor, std::log10(a)) : kFloor; }

}  // namespace

std::string render_plot(const ActionSeries& series, const std::vector<int>& modes,
                        const std::string& title) {
  if (series.records.empty()) throw ParameterError("plot: empty series");
  if (modes.empty()) throw ParameterError("plot: no modes requested");
  for (int m : modes) {
    if (m < 0 || m >= series.n / 2) {
      throw RangeError("plot: mode " + std::to_string(m) + " outside [0, " +
                       std::to_string(series.n / 2) + ")");
    }
  }

  const double t0 = series.records.front().t;
  double t1 = series.records.back().t;
  if (t1 <= t0) t1 = t0 + 1.0;
  double ylo = std::numeric_limits<double>::infinity();
  double yhi = -ylo;
  for (const auto& r : series.records) {
    for (int m : modes) {
      const double y = log_action(r.actions[static_cast<std::size_t>(m)]);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  ylo = std::floor(ylo);
  yhi = std::ceil(yhi);
  if (yhi <= ylo) yhi = ylo + 1.0;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * pw; };
  auto py = [&](double y) { return kTop + (yhi - y) / (yhi - ylo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
  }
  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int yticks = static_cast<int>(std::min(10.0, yhi - ylo));
  for (int i = 0; i <= yticks; ++i) {
    const double y = ylo + (yhi - ylo) * i / yticks;
    svg << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(py(y)) << "\" x2=\""
        << fmt(kLeft) << "\" y2=\"" << fmt(py(y)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(py(y) + 4)
        << "\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double t = t0 + (t1 - t0) * i / 5;
    svg << "<line x1=\"" << fmt(px(t)) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(px(t))
        << "\" y2=\"" << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(px(t)) << "\" y=\"" << fmt(kTop + ph + 20)
        << "\" text-anchor=\"middle\">" << escape(format_double(t)) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 8)
      << "\" text-anchor=\"middle\">t</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fmt(kTop + ph / 2) << ")\">log10 A_k</text>\n";

  for (std::size_t i = 0; i < modes.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (const auto& r : series.records) {
      if (!first) svg << ' ';
      first = false;
      svg << fmt(px(r.t)) << ',' << fmt(py(log_action(r.actions[static_cast<std::size_t>(modes[i])])));
    }
    svg << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(i + 1);
    svg << "<line x1=\"" << fmt(kLeft + pw + 10) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(kLeft + pw + 30) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fmt(kLeft + pw + 35) << "\" y=\"" << fmt(ly) << "\">A_" << modes[i]
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const ActionSeries& series, const std::vector<int>& modes,
               const std::filesystem::path& path, const std::string& title) {
  write_file_atomic(path, render_plot(series, modes, title));
}

}  // namespace resplit
