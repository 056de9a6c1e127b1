#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heatcut {

struct Edge {
  int source = 0;
  int target = 0;
  double weight = 1.0;
};

/// Weighted graph as ingested; duplicate edges are summed when the transition
/// kernel is built. Self-loops are permitted.
struct WeightedGraph {
  int n = 0;
  bool directed = false;
  std::vector<Edge> edges;
};

/// Text format: optional `#` comment lines, a header line `directed` or
/// `undirected`, then one edge per line as `u v [w]` (w defaults to 1.0).
/// The state count is max index + 1.
WeightedGraph parse_edge_list(std::istream& in);

/// JSON document {"n": int, "directed": bool, "edges": [[u, v, w], ...]};
/// the weight entry is optional per edge.
WeightedGraph parse_graph_json(const std::string& text);

/// Loads either format: files whose first non-space byte is '{' are JSON.
WeightedGraph load_graph_file(const std::string& path);

/// Index bounds, positive weights, and positive out-weight for every state.
void validate_graph(const WeightedGraph& g);

}  // namespace heatcut
