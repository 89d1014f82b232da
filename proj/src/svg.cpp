#include "pathspace/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pathspace {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 20, kTop = 46, kBottom = 52;

const char* kPalette[] = {"#1f6f8b", "#c05746", "#5a8f3c",
                          "#7a5c9e", "#b8860b", "#444444"};
constexpr int kPaletteSize = 6;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0, hi = 1;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi <= lo) hi = lo + 1;
    const double p = 0.05 * (hi - lo);
    lo -= p;
    hi += p;
  }
  double to_px(double v, double px_lo, double px_hi) const {
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

std::string header(const std::string& title) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
       "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) +
       " " + num(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) +
       "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" +
       escape(title) + "</text>\n";
  return s;
}

std::string axes_box() {
  return "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(kWidth - kLeft - kRight) + "\" height=\"" +
         num(kHeight - kTop - kBottom) +
         "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
}

std::string y_ticks(const Range& ry) {
  std::string s;
  for (int i = 0; i <= 4; ++i) {
    const double v = ry.lo + (ry.hi - ry.lo) * i / 4.0;
    const double py = ry.to_px(v, kHeight - kBottom, kTop);
    s += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(py) + "\" x2=\"" +
         num(kLeft) + "\" y2=\"" + num(py) +
         "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">" +
         tick_label(v) + "</text>\n";
  }
  return s;
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<SvgSeries>& series) {
  if (series.empty()) throw std::invalid_argument("line chart needs a series");
  Range rx, ry;
  bool first = true;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size())
      throw std::invalid_argument("series x/y size mismatch");
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        rx.lo = rx.hi = s.x[i];
        ry.lo = ry.hi = s.y[i];
        first = false;
      }
      rx.include(s.x[i]);
      ry.include(s.y[i]);
    }
  }
  if (first) throw std::invalid_argument("line chart needs data points");
  rx.pad();
  ry.pad();

  std::string out = header(title);
  out += axes_box();
  out += y_ticks(ry);
  for (int i = 0; i <= 4; ++i) {
    const double v = rx.lo + (rx.hi - rx.lo) * i / 4.0;
    const double px = rx.to_px(v, kLeft, kWidth - kRight);
    out += "<line x1=\"" + num(px) + "\" y1=\"" + num(kHeight - kBottom) +
           "\" x2=\"" + num(px) + "\" y2=\"" + num(kHeight - kBottom + 4) +
           "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(px) + "\" y=\"" + num(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(v) + "</text>\n";
  }
  out += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" +
         num(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         escape(x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + num((kTop + kHeight - kBottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 " +
         num((kTop + kHeight - kBottom) / 2) + ")\">" +
         escape(y_label) + "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % kPaletteSize];
    std::string pts;
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (i) pts += ' ';
      pts += num(rx.to_px(s.x[i], kLeft, kWidth - kRight)) + "," +
             num(ry.to_px(s.y[i], kHeight - kBottom, kTop));
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
           std::string(color) + "\" stroke-width=\"1.5\"/>\n";
    const double ly = kTop + 16 + 16 * double(si);
    out += "<line x1=\"" + num(kLeft + 10) + "\" y1=\"" + num(ly - 4) +
           "\" x2=\"" + num(kLeft + 34) + "\" y2=\"" + num(ly - 4) +
           "\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + num(kLeft + 40) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string bar_chart_svg(const std::string& title,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& values,
                          const std::vector<double>& errors) {
  if (labels.size() != values.size() || values.empty())
    throw std::invalid_argument("bar chart needs matching labels and values");
  if (!errors.empty() && errors.size() != values.size())
    throw std::invalid_argument("bar chart error band size mismatch");

  Range ry;
  ry.lo = 0;
  ry.hi = values[0];
  for (size_t i = 0; i < values.size(); ++i) {
    const double e = errors.empty() ? 0.0 : 3.0 * errors[i];
    ry.include(values[i] + e);
    ry.include(values[i] - e);
  }
  ry.pad();

  std::string out = header(title);
  out += axes_box();
  out += y_ticks(ry);

  const double span = kWidth - kLeft - kRight;
  const double slot = span / double(values.size());
  const double bar_w = slot * 0.6;
  const double base = ry.to_px(0.0, kHeight - kBottom, kTop);
  for (size_t i = 0; i < values.size(); ++i) {
    const double cx = kLeft + slot * (double(i) + 0.5);
    const double top = ry.to_px(values[i], kHeight - kBottom, kTop);
    const double y0 = std::min(base, top), h = std::abs(base - top);
    out += "<rect x=\"" + num(cx - bar_w / 2) + "\" y=\"" + num(y0) +
           "\" width=\"" + num(bar_w) + "\" height=\"" + num(h) +
           "\" fill=\"" + std::string(kPalette[i % kPaletteSize]) +
           "\" fill-opacity=\"0.85\"/>\n";
    if (!errors.empty() && errors[i] > 0) {
      const double e_hi = ry.to_px(values[i] + 3.0 * errors[i],
                                   kHeight - kBottom, kTop);
      const double e_lo = ry.to_px(values[i] - 3.0 * errors[i],
                                   kHeight - kBottom, kTop);
      out += "<line x1=\"" + num(cx) + "\" y1=\"" + num(e_hi) + "\" x2=\"" +
             num(cx) + "\" y2=\"" + num(e_lo) +
             "\" stroke=\"#111\" stroke-width=\"1.5\"/>\n";
      out += "<line x1=\"" + num(cx - 6) + "\" y1=\"" + num(e_hi) +
             "\" x2=\"" + num(cx + 6) + "\" y2=\"" + num(e_hi) +
             "\" stroke=\"#111\" stroke-width=\"1.5\"/>\n";
      out += "<line x1=\"" + num(cx - 6) + "\" y1=\"" + num(e_lo) +
             "\" x2=\"" + num(cx + 6) + "\" y2=\"" + num(e_lo) +
             "\" stroke=\"#111\" stroke-width=\"1.5\"/>\n";
    }
    out += "<text x=\"" + num(cx) + "\" y=\"" + num(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           escape(labels[i]) + "</text>\n";
    out += "<text x=\"" + num(cx) + "\" y=\"" + num(y0 - 6) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(values[i]) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace pathspace
