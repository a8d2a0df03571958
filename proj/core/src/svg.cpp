#include "hymlab/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "hymlab/errors.hpp"

namespace hymlab {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void absorb(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  // Degenerate spans widen so the projection below stays finite.
  void finalize() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-300) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }

  double frac(double v) const { return (v - lo) / (hi - lo); }
};

}  // namespace

std::string svg_line_plot(const std::string& title,
                          const std::vector<SvgSeries>& series, int width,
                          int height) {
  for (const auto& s : series)
    if (s.x.size() != s.y.size())
      throw ValidationError("svg_line_plot: series '" + s.label +
                            "' has mismatched x/y sizes");

  const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 45.0;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;

  Range rx, ry;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      rx.absorb(s.x[i]);
      ry.absorb(s.y[i]);
    }
  rx.finalize();
  ry.finalize();

  auto px = [&](double v) { return ml + pw * rx.frac(v); };
  auto py = [&](double v) { return mt + ph * (1.0 - ry.frac(v)); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(ml) + "\" y=\"22\" font-family=\"sans-serif\" "
         "font-size=\"15\" fill=\"#222\">" + title + "</text>\n";
  out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" +
         fmt(pw) + "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"#444\"/>\n";

  // min/max tick labels on both axes
  out += "<text x=\"" + fmt(ml) + "\" y=\"" + fmt(mt + ph + 18.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">" +
         fmt(rx.lo) + "</text>\n";
  out += "<text x=\"" + fmt(ml + pw) + "\" y=\"" + fmt(mt + ph + 18.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
         "fill=\"#444\">" + fmt(rx.hi) + "</text>\n";
  out += "<text x=\"" + fmt(ml - 6.0) + "\" y=\"" + fmt(mt + ph) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
         "fill=\"#444\">" + fmt(ry.lo) + "</text>\n";
  out += "<text x=\"" + fmt(ml - 6.0) + "\" y=\"" + fmt(mt + 10.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
         "fill=\"#444\">" + fmt(ry.hi) + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % kPaletteSize];
    if (!s.x.empty()) {
      out += "<polyline fill=\"none\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) out += ' ';
        out += fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
      }
      out += "\"/>\n";
    }
    const double lx = ml + pw - 150.0;
    const double ly = mt + 16.0 + 16.0 * static_cast<double>(k);
    out += "<rect x=\"" + fmt(lx) + "\" y=\"" + fmt(ly - 9.0) +
           "\" width=\"14\" height=\"4\" fill=\"";
    out += color;
    out += "\"/>\n";
    out += "<text x=\"" + fmt(lx + 20.0) + "\" y=\"" + fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">" +
           s.label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hymlab
