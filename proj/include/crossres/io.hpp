#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "crossres/drawing.hpp"
#include "crossres/graph.hpp"

namespace crossres {

struct CriticalSet;  // metrics.hpp

enum class GraphFormat { edgelist, graphml, gml };

/// Picks a format from the file extension; defaults to edgelist.
GraphFormat guess_format(const std::string& path);

/// Parses a graph document. Self-loops and duplicate edges are rejected.
GraphPtr load_graph(std::istream& in, GraphFormat format);
GraphPtr load_graph_file(const std::string& path);

/// Writes the layout JSON document
///   {"nodes":[{"id":0,"x":..,"y":..},...],"edges":[[u,v],...]}
/// with coordinates at 17 significant digits, so save/load round-trips
/// bit-exactly.
void save_layout(const Drawing& drawing, std::ostream& out);
void save_layout_file(const Drawing& drawing, const std::string& path);

Drawing load_layout(std::istream& in);
Drawing load_layout_file(const std::string& path);

struct SvgOptions {
  int width_px = 800;
  std::string stroke = "#333333";
  std::string highlight_stroke = "#d62728";
  const CriticalSet* highlight = nullptr;  // edges of these pairs stand out
};

/// SVG 1.1 document: one line per edge, one circle per vertex, viewBox equal
/// to the bounding box padded by 5%.
std::string render_svg(const Drawing& drawing, const SvgOptions& options = {});

}  // namespace crossres
