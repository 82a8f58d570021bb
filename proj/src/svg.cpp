#include "critpoint/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "critpoint/types.hpp"

namespace critpoint {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(int decade) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "1e%d", decade);
  return buf;
}

struct Box {
  double lx0, lx1, ly0, ly1;  // log10 data window
};

// Clip the segment (a0,b0)-(a1,b1) to the box in log coordinates.
bool clip_segment(const Box& box, double& a0, double& b0, double& a1, double& b1) {
  const double dx = a1 - a0, dy = b1 - b0;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a0 - box.lx0, box.lx1 - a0, b0 - box.ly0, box.ly1 - b0};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      if (r > t1) return false;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
  }
  const double na0 = a0 + t0 * dx, nb0 = b0 + t0 * dy;
  const double na1 = a0 + t1 * dx, nb1 = b0 + t1 * dy;
  a0 = na0;
  b0 = nb0;
  a1 = na1;
  b1 = nb1;
  return true;
}

}  // namespace

std::string render_loglog_svg(const SvgPlot& plot) {
  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double w = plot.width, h = plot.height;

  Box box{0.0, 1.0, 0.0, 1.0};
  bool have = false;
  for (const auto& s : plot.series)
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0) || !(y > 0.0)) continue;
      const double lx = std::log10(x), ly = std::log10(y);
      if (!have) {
        box = {lx, lx, ly, ly};
        have = true;
      } else {
        box.lx0 = std::min(box.lx0, lx);
        box.lx1 = std::max(box.lx1, lx);
        box.ly0 = std::min(box.ly0, ly);
        box.ly1 = std::max(box.ly1, ly);
      }
    }
  if (!have) box = {0.0, 1.0, 0.0, 1.0};  // no data: axes over one decade
  const double padx = std::max(0.25, 0.05 * (box.lx1 - box.lx0));
  const double pady = std::max(0.25, 0.05 * (box.ly1 - box.ly0));
  box.lx0 -= padx;
  box.lx1 += padx;
  box.ly0 -= pady;
  box.ly1 += pady;

  const auto px = [&](double lx) {
    return ml + (lx - box.lx0) / (box.lx1 - box.lx0) * (w - ml - mr);
  };
  const auto py = [&](double ly) {
    return h - mb - (ly - box.ly0) / (box.ly1 - box.ly0) * (h - mt - mb);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" +
         fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
         plot.title + "</text>\n";

  for (int k = static_cast<int>(std::ceil(box.lx0)); k <= std::floor(box.lx1); ++k) {
    const double x = px(k);
    out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(h - mb) + "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(h - mb + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + fmt_tick(k) + "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(box.ly0)); k <= std::floor(box.ly1); ++k) {
    const double y = py(k);
    out += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(w - mr) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + fmt(ml - 6) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + fmt_tick(k) + "</text>\n";
  }
  out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(w - ml - mr) +
         "\" height=\"" + fmt(h - mt - mb) + "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"" + fmt(w / 2) + "\" y=\"" + fmt(h - 12) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + plot.xlabel + "</text>\n";
  out += "<text x=\"16\" y=\"" + fmt(h / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " +
         fmt(h / 2) + ")\">" + plot.ylabel + "</text>\n";

  for (const auto& gd : plot.guides) {
    double a0 = box.lx0, a1 = box.lx1;
    double b0 = std::log10(gd.y0) + gd.slope * (a0 - std::log10(gd.x0));
    double b1 = std::log10(gd.y0) + gd.slope * (a1 - std::log10(gd.x0));
    if (!clip_segment(box, a0, b0, a1, b1)) continue;
    out += "<line x1=\"" + fmt(px(a0)) + "\" y1=\"" + fmt(py(b0)) + "\" x2=\"" +
           fmt(px(a1)) + "\" y2=\"" + fmt(py(b1)) +
           "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
    out += "<text x=\"" + fmt(px(a1) - 4) + "\" y=\"" + fmt(py(b1) - 6) +
           "\" text-anchor=\"end\" font-size=\"11\" fill=\"#555555\">" + gd.label +
           "</text>\n";
  }

  double legend_y = mt + 16;
  for (const auto& s : plot.series) {
    std::string path;
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0) || !(y > 0.0)) continue;
      const double cx = px(std::log10(x)), cy = py(std::log10(y));
      path += (first ? "M" : " L") + fmt(cx) + " " + fmt(cy);
      first = false;
      out += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"3\" fill=\"" +
             s.color + "\"/>\n";
    }
    if (!path.empty())
      out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color +
             "\" stroke-width=\"1.5\"/>\n";
    out += "<line x1=\"" + fmt(w - mr - 150) + "\" y1=\"" + fmt(legend_y) + "\" x2=\"" +
           fmt(w - mr - 126) + "\" y2=\"" + fmt(legend_y) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt(w - mr - 120) + "\" y=\"" + fmt(legend_y + 4) +
           "\" font-size=\"11\">" + s.label + "</text>\n";
    legend_y += 16;
  }

  out += "</svg>\n";
  return out;
}

void write_loglog_svg(const std::string& path, const SvgPlot& plot) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw argument_error("cannot open '" + path + "' for writing");
  out << render_loglog_svg(plot);
}

}  // namespace critpoint
