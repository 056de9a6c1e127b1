#include "heatcut/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "heatcut/errors.hpp"
#include "json.hpp"

namespace heatcut {

namespace {

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

WeightedGraph parse_edge_list(std::istream& in) {
  WeightedGraph g;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  int max_index = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line)) continue;
    std::istringstream ls(line);
    if (!header_seen) {
      std::string mode;
      ls >> mode;
      if (mode == "directed") {
        g.directed = true;
      } else if (mode == "undirected") {
        g.directed = false;
      } else {
        fail(Errc::parse_error,
             "line " + std::to_string(lineno) + ": expected header 'directed' or 'undirected', got '" + mode + "'");
      }
      std::string extra;
      if (ls >> extra) {
        fail(Errc::parse_error, "line " + std::to_string(lineno) + ": trailing tokens after header");
      }
      header_seen = true;
      continue;
    }
    Edge e;
    if (!(ls >> e.source >> e.target)) {
      fail(Errc::parse_error, "line " + std::to_string(lineno) + ": expected 'u v [w]'");
    }
    if (!(ls >> e.weight)) e.weight = 1.0;
    if (e.source < 0 || e.target < 0) {
      fail(Errc::parse_error, "line " + std::to_string(lineno) + ": negative state index");
    }
    if (!(e.weight > 0.0)) {
      fail(Errc::parse_error, "line " + std::to_string(lineno) + ": weight must be strictly positive");
    }
    max_index = std::max({max_index, e.source, e.target});
    g.edges.push_back(e);
  }
  if (!header_seen) fail(Errc::parse_error, "missing 'directed'/'undirected' header line");
  if (g.edges.empty()) fail(Errc::parse_error, "graph has no edges");
  g.n = max_index + 1;
  return g;
}

WeightedGraph parse_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    fail(Errc::parse_error, std::string("invalid JSON: ") + ex.what());
  }
  WeightedGraph g;
  try {
    g.n = doc.at("n").get<int>();
    g.directed = doc.at("directed").get<bool>();
    for (const auto& item : doc.at("edges")) {
      Edge e;
      e.source = item.at(0).get<int>();
      e.target = item.at(1).get<int>();
      e.weight = item.size() > 2 ? item.at(2).get<double>() : 1.0;
      g.edges.push_back(e);
    }
  } catch (const nlohmann::json::exception& ex) {
    fail(Errc::parse_error, std::string("bad graph document: ") + ex.what());
  }
  validate_graph(g);
  return g;
}

WeightedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) fail(Errc::parse_error, "'" + path + "' is empty");
  if (text[first] == '{') return parse_graph_json(text);
  std::istringstream stream(text);
  return parse_edge_list(stream);
}

void validate_graph(const WeightedGraph& g) {
  require(g.n > 0, Errc::parse_error, "graph must have at least one state");
  std::vector<char> has_out(static_cast<std::size_t>(g.n), 0);
  for (const auto& e : g.edges) {
    require(e.source >= 0 && e.source < g.n && e.target >= 0 && e.target < g.n, Errc::parse_error,
            "edge index out of range");
    require(e.weight > 0.0, Errc::parse_error, "weight must be strictly positive");
    has_out[static_cast<std::size_t>(e.source)] = 1;
    if (!g.directed) has_out[static_cast<std::size_t>(e.target)] = 1;
  }
  for (int x = 0; x < g.n; ++x) {
    if (!has_out[static_cast<std::size_t>(x)]) {
      fail(Errc::isolated_state, "state " + std::to_string(x) + " has no outgoing edge");
    }
  }
}

}  // namespace heatcut
