#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "crossres/errors.hpp"
#include "crossres/io.hpp"

namespace crossres {

namespace {

GraphPtr build_graph(int n, std::vector<Edge> edges) {
  try {
    return Graph::make(n, std::move(edges));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

// ---- edge list: "u v" per line, '#' starts a comment -----------------------

GraphPtr load_edgelist(std::istream& in) {
  std::vector<Edge> edges;
  int max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long u, v;
    if (!(ls >> u)) continue;  // blank line
    if (!(ls >> v)) {
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": expected two vertex ids");
    }
    std::string rest;
    if (ls >> rest) {
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": trailing token '" + rest + "'");
    }
    if (u < 0 || v < 0) {
      throw ParseError("edge list line " + std::to_string(lineno) +
                       ": negative vertex id");
    }
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  return build_graph(max_id + 1, std::move(edges));
}

// ---- GraphML subset: <node id=..> and <edge source=.. target=..> tags ------

std::map<std::string, std::string> parse_attributes(const std::string& tag) {
  std::map<std::string, std::string> attrs;
  std::size_t i = 0;
  while (i < tag.size()) {
    while (i < tag.size() && (std::isspace(static_cast<unsigned char>(tag[i])) ||
                              tag[i] == '/'))
      ++i;
    std::size_t eq = tag.find('=', i);
    if (eq == std::string::npos) break;
    std::string name = tag.substr(i, eq - i);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
      name.pop_back();
    std::size_t q1 = tag.find_first_of("\"'", eq);
    if (q1 == std::string::npos) throw ParseError("graphml: unquoted attribute");
    char quote = tag[q1];
    std::size_t q2 = tag.find(quote, q1 + 1);
    if (q2 == std::string::npos) throw ParseError("graphml: unterminated attribute");
    attrs[name] = tag.substr(q1 + 1, q2 - q1 - 1);
    i = q2 + 1;
  }
  return attrs;
}

GraphPtr load_graphml(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  std::map<std::string, int> ids;
  std::vector<Edge> edges;

  std::size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    std::size_t end = text.find('>', pos);
    if (end == std::string::npos) throw ParseError("graphml: unterminated tag");
    std::string tag = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.rfind("node", 0) == 0 &&
        (tag.size() == 4 || !std::isalnum(static_cast<unsigned char>(tag[4])))) {
      auto attrs = parse_attributes(tag.substr(4));
      auto it = attrs.find("id");
      if (it == attrs.end()) throw ParseError("graphml: node without id");
      if (!ids.emplace(it->second, static_cast<int>(ids.size())).second) {
        throw ParseError("graphml: duplicate node id '" + it->second + "'");
      }
    } else if (tag.rfind("edge", 0) == 0 &&
               (tag.size() == 4 ||
                !std::isalnum(static_cast<unsigned char>(tag[4])))) {
      auto attrs = parse_attributes(tag.substr(4));
      auto s = attrs.find("source");
      auto t = attrs.find("target");
      if (s == attrs.end() || t == attrs.end()) {
        throw ParseError("graphml: edge without source/target");
      }
      auto su = ids.find(s->second);
      auto sv = ids.find(t->second);
      if (su == ids.end() || sv == ids.end()) {
        throw ParseError("graphml: unresolvable vertex id in edge");
      }
      edges.push_back({su->second, sv->second});
    }
  }
  return build_graph(static_cast<int>(ids.size()), std::move(edges));
}

// ---- GML subset: graph [ node [ id N ] edge [ source A target B ] ] --------

struct GmlLexer {
  explicit GmlLexer(std::istream& in) : in_(in) {}

  // token kinds: "[", "]", word, number, quoted string; empty at eof
  std::string next() {
    char c;
    while (in_.get(c)) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (c == '[' || c == ']') return std::string(1, c);
      if (c == '"') {
        std::string s;
        while (in_.get(c) && c != '"') s.push_back(c);
        return "\"" + s;  // marked as string literal
      }
      std::string tok(1, c);
      while (in_.get(c)) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '[' || c == ']') {
          if (c == '[' || c == ']') in_.unget();
          break;
        }
        tok.push_back(c);
      }
      return tok;
    }
    return {};
  }

 private:
  std::istream& in_;
};

// Skips a value: scalar token or a bracketed block (recursively).
void gml_skip_value(GmlLexer& lex) {
  std::string tok = lex.next();
  if (tok.empty()) throw ParseError("gml: unexpected end of input");
  if (tok == "[") {
    int depth = 1;
    while (depth > 0) {
      std::string t = lex.next();
      if (t.empty()) throw ParseError("gml: unbalanced brackets");
      if (t == "[") ++depth;
      if (t == "]") --depth;
    }
  }
}

long gml_expect_int(GmlLexer& lex, const std::string& key) {
  std::string tok = lex.next();
  try {
    std::size_t used = 0;
    long value = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return value;
  } catch (const std::exception&) {
    throw ParseError("gml: expected integer after '" + key + "'");
  }
}

GraphPtr load_gml(std::istream& in) {
  GmlLexer lex(in);
  std::map<long, int> ids;
  std::vector<std::pair<long, long>> raw_edges;

  std::string tok;
  while (!(tok = lex.next()).empty() && tok != "graph") {
  }
  if (tok.empty()) throw ParseError("gml: no graph block");
  if (lex.next() != "[") throw ParseError("gml: expected '[' after graph");

  while (true) {
    tok = lex.next();
    if (tok.empty()) throw ParseError("gml: unbalanced graph block");
    if (tok == "]") break;
    if (tok == "node") {
      if (lex.next() != "[") throw ParseError("gml: expected '[' after node");
      std::optional<long> id;
      std::string key;
      while ((key = lex.next()) != "]") {
        if (key.empty()) throw ParseError("gml: unbalanced node block");
        if (key == "id") {
          id = gml_expect_int(lex, key);
        } else {
          gml_skip_value(lex);
        }
      }
      if (!id) throw ParseError("gml: node without id");
      if (!ids.emplace(*id, static_cast<int>(ids.size())).second) {
        throw ParseError("gml: duplicate node id " + std::to_string(*id));
      }
    } else if (tok == "edge") {
      if (lex.next() != "[") throw ParseError("gml: expected '[' after edge");
      std::optional<long> source, target;
      std::string key;
      while ((key = lex.next()) != "]") {
        if (key.empty()) throw ParseError("gml: unbalanced edge block");
        if (key == "source") {
          source = gml_expect_int(lex, key);
        } else if (key == "target") {
          target = gml_expect_int(lex, key);
        } else {
          gml_skip_value(lex);
        }
      }
      if (!source || !target) {
        throw ParseError("gml: edge without source/target");
      }
      raw_edges.emplace_back(*source, *target);
    } else {
      gml_skip_value(lex);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (auto [s, t] : raw_edges) {
    auto su = ids.find(s);
    auto sv = ids.find(t);
    if (su == ids.end() || sv == ids.end()) {
      throw ParseError("gml: unresolvable vertex id in edge");
    }
    edges.push_back({su->second, sv->second});
  }
  return build_graph(static_cast<int>(ids.size()), std::move(edges));
}

}  // namespace

GraphFormat guess_format(const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(c));
  if (ext == "graphml" || ext == "xml") return GraphFormat::graphml;
  if (ext == "gml") return GraphFormat::gml;
  return GraphFormat::edgelist;
}

GraphPtr load_graph(std::istream& in, GraphFormat format) {
  switch (format) {
    case GraphFormat::edgelist:
      return load_edgelist(in);
    case GraphFormat::graphml:
      return load_graphml(in);
    case GraphFormat::gml:
      return load_gml(in);
  }
  throw ParseError("unknown graph format");
}

GraphPtr load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  return load_graph(in, guess_format(path));
}

}  // namespace crossres
