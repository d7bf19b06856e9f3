#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "crossres/io.hpp"
#include "crossres/metrics.hpp"

namespace crossres {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const Drawing& drawing, const SvgOptions& options) {
  const Graph& g = *drawing.graph;
  const int n = g.vertex_count();

  double min_x = 0, min_y = 0, w = 1, h = 1;
  if (n > 0) {
    BoundingBox box = bounding_box(drawing);
    double pad = 0.05 * std::max(box.width(), box.height());
    if (pad == 0.0) pad = 1.0;
    min_x = box.min_x - pad;
    min_y = box.min_y - pad;
    w = box.width() + 2 * pad;
    h = box.height() + 2 * pad;
  }
  double scale = std::max(w, h);
  double stroke_width = 0.002 * scale;
  double radius = 0.006 * scale;

  std::vector<bool> highlighted(g.edge_count(), false);
  if (options.highlight != nullptr) {
    for (const CriticalPair& pair : options.highlight->pairs) {
      if (pair.edge_a >= 0) highlighted[pair.edge_a] = true;
      if (pair.edge_b >= 0) highlighted[pair.edge_b] = true;
    }
  }

  std::ostringstream out;
  int height_px =
      static_cast<int>(std::lround(options.width_px * (h / w)));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << options.width_px << "\" height=\"" << std::max(height_px, 1)
      << "\" viewBox=\"" << num(min_x) << " " << num(min_y) << " " << num(w)
      << " " << num(h) << "\">\n";
  // flip y so larger y is drawn upwards
  out << "<g transform=\"translate(0," << num(2 * min_y + h)
      << ") scale(1,-1)\">\n";
  for (int e = 0; e < g.edge_count(); ++e) {
    Segment s = drawing.segment(e);
    bool hot = highlighted[e];
    out << "<line x1=\"" << num(s.a.x) << "\" y1=\"" << num(s.a.y)
        << "\" x2=\"" << num(s.b.x) << "\" y2=\"" << num(s.b.y)
        << "\" stroke=\"" << (hot ? options.highlight_stroke : options.stroke)
        << "\" stroke-width=\"" << num(hot ? 2 * stroke_width : stroke_width)
        << "\"/>\n";
  }
  for (int v = 0; v < n; ++v) {
    out << "<circle cx=\"" << num(drawing.positions[v].x) << "\" cy=\""
        << num(drawing.positions[v].y) << "\" r=\"" << num(radius)
        << "\" fill=\"" << options.stroke << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace crossres
