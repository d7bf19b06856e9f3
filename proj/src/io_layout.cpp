#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossres/errors.hpp"
#include "crossres/io.hpp"

namespace crossres {

namespace {

std::string format_coordinate(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

void save_layout(const Drawing& drawing, std::ostream& out) {
  const Graph& g = *drawing.graph;
  out << "{\"nodes\":[";
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v > 0) out << ",";
    out << "{\"id\":" << v << ",\"x\":" << format_coordinate(drawing.positions[v].x)
        << ",\"y\":" << format_coordinate(drawing.positions[v].y) << "}";
  }
  out << "],\"edges\":[";
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e > 0) out << ",";
    out << "[" << g.edge(e).u << "," << g.edge(e).v << "]";
  }
  out << "]}\n";
  if (!out) throw Error("save_layout: write failure");
}

void save_layout_file(const Drawing& drawing, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open layout file for writing: " + path);
  save_layout(drawing, out);
}

Drawing load_layout(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("layout: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges")) {
    throw ParseError("layout: expected object with 'nodes' and 'edges'");
  }

  const auto& nodes = doc["nodes"];
  std::vector<Vec2> positions(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  for (const auto& node : nodes) {
    if (!node.contains("id") || !node.contains("x") || !node.contains("y")) {
      throw ParseError("layout: node record needs id, x, y");
    }
    long id = node["id"].get<long>();
    if (id < 0 || id >= static_cast<long>(nodes.size()) || seen[id]) {
      throw ParseError("layout: node ids must be dense and unique");
    }
    seen[id] = true;
    positions[id] = {node["x"].get<double>(), node["y"].get<double>()};
  }

  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("layout: edge records are [u,v] pairs");
    }
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }

  GraphPtr graph;
  try {
    graph = Graph::make(static_cast<int>(nodes.size()), std::move(edges));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return make_drawing(std::move(graph), std::move(positions));
}

Drawing load_layout_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open layout file: " + path);
  return load_layout(in);
}

}  // namespace crossres
