#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "rhoco/errors.hpp"

namespace rhoco {

/// Minimal self-contained SVG line plot, enough for regret-versus-window
/// figures: linear x, optionally logarithmic y, solid measurement series
/// and dashed overlay series (theory curves). No external assets.
class SvgLinePlot {
public:
  SvgLinePlot(std::string title, std::string x_label, std::string y_label,
              bool log_y = true)
      : title_(std::move(title)), x_label_(std::move(x_label)),
        y_label_(std::move(y_label)), log_y_(log_y) {}

  void add_series(std::string label, std::vector<double> x,
                  std::vector<double> y, bool dashed = false) {
    if (x.size() != y.size())
      throw ConfigError("SvgLinePlot: series x/y length mismatch");
    if (x.empty()) throw ConfigError("SvgLinePlot: empty series");
    series_.push_back({std::move(label), std::move(x), std::move(y), dashed});
  }

  std::string render() const {
    if (series_.empty()) throw ConfigError("SvgLinePlot: nothing to draw");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series_)
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double yv = usable_y(s.y[i]);
        if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, yv);
        ymax = std::max(ymax, yv);
      }
    if (!std::isfinite(xmin) || !std::isfinite(ymin))
      throw ConfigError("SvgLinePlot: no drawable points");
    if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
    if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }

    const double W = 760, H = 470;
    const double L = 72, R = 24, Tm = 40, B = 56;
    const double pw = W - L - R, ph = H - Tm - B;
    auto sx = [&](double v) { return L + (v - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double v) { return Tm + (ymax - v) / (ymax - ymin) * ph; };

    std::string out;
    out.reserve(16384);
    append(out,
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
           "viewBox=\"0 0 %g %g\" font-family=\"sans-serif\" font-size=\"12\">\n",
           W, H, W, H);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    append(out, "<text x=\"%g\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">%s</text>\n",
           L + pw / 2, escape(title_).c_str());

    // Frame.
    append(out,
           "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
           "stroke=\"#444\"/>\n",
           L, Tm, pw, ph);

    // X ticks at integer-friendly steps.
    const double xstep = nice_step((xmax - xmin) / 8.0);
    for (double v = std::ceil(xmin / xstep) * xstep; v <= xmax + 1e-9 * xstep;
         v += xstep) {
      append(out, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#444\"/>\n",
             sx(v), Tm + ph, sx(v), Tm + ph + 4);
      append(out, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n",
             sx(v), Tm + ph + 18, tick_label(v).c_str());
    }
    append(out, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n",
           L + pw / 2, H - 12, escape(x_label_).c_str());

    // Y ticks: decades when logarithmic, nice steps otherwise.
    if (log_y_) {
      for (int e = static_cast<int>(std::ceil(ymin - 1e-9));
           e <= static_cast<int>(std::floor(ymax + 1e-9)); ++e) {
        append(out, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#ccc\"/>\n",
               L, sy(e), L + pw, sy(e));
        append(out, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">1e%d</text>\n",
               L - 6, sy(e) + 4, e);
      }
    } else {
      const double ystep = nice_step((ymax - ymin) / 6.0);
      for (double v = std::ceil(ymin / ystep) * ystep; v <= ymax + 1e-9 * ystep;
           v += ystep) {
        append(out, "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#ccc\"/>\n",
               L, sy(v), L + pw, sy(v));
        append(out, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%s</text>\n",
               L - 6, sy(v) + 4, tick_label(v).c_str());
      }
    }
    append(out,
           "<text x=\"18\" y=\"%g\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 %g)\">%s</text>\n",
           Tm + ph / 2, Tm + ph / 2, escape(y_label_).c_str());

    // Series.
    for (std::size_t k = 0; k < series_.size(); ++k) {
      const auto& s = series_[k];
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double yv = usable_y(s.y[i]);
        if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
        append(pts, "%g,%g ", sx(s.x[i]), sy(yv));
      }
      append(out,
             "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" "
             "stroke-width=\"1.8\"%s/>\n",
             pts.c_str(), color(k), s.dashed ? " stroke-dasharray=\"6 4\"" : "");
      if (!s.dashed)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          const double yv = usable_y(s.y[i]);
          if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
          append(out, "<circle cx=\"%g\" cy=\"%g\" r=\"2.6\" fill=\"%s\"/>\n",
                 sx(s.x[i]), sy(yv), color(k));
        }
    }

    // Legend, top right inside the frame.
    double ly = Tm + 14;
    for (std::size_t k = 0; k < series_.size(); ++k) {
      const auto& s = series_[k];
      append(out,
             "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
             "stroke-width=\"1.8\"%s/>\n",
             L + pw - 150, ly - 4, L + pw - 122, ly - 4, color(k),
             s.dashed ? " stroke-dasharray=\"6 4\"" : "");
      append(out, "<text x=\"%g\" y=\"%g\">%s</text>\n", L + pw - 116, ly,
             escape(s.label).c_str());
      ly += 16;
    }

    out += "</svg>\n";
    return out;
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("SvgLinePlot: cannot open " + path);
    out << render();
    if (!out) throw ConfigError("SvgLinePlot: write failed for " + path);
  }

private:
  struct Series {
    std::string label;
    std::vector<double> x, y;
    bool dashed;
  };

  /// Log plots store log10(y); values <= 0 are dropped rather than clamped
  /// so a numerically-zero regret does not distort the axis.
  double usable_y(double v) const {
    if (!log_y_) return v;
    return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
  }

  static double nice_step(double raw) {
    if (!(raw > 0.0)) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r <= 1.0) return mag;
    if (r <= 2.0) return 2.0 * mag;
    if (r <= 5.0) return 5.0 * mag;
    return 10.0 * mag;
  }

  static std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v == 0.0 ? 0.0 : v);
    return buf;
  }

  static const char* color(std::size_t k) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[k % (sizeof(palette) / sizeof(palette[0]))];
  }

  static std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
      if (c == '&') out += "&amp;";
      else if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else out += c;
    }
    return out;
  }

  template <typename... Args>
  static void append(std::string& out, const char* fmt, Args... args) {
    char buf[1024];
    std::snprintf(buf, sizeof(buf), fmt, args...);
    out += buf;
  }

  std::string title_, x_label_, y_label_;
  bool log_y_;
  std::vector<Series> series_;
};

} // namespace rhoco
