#pragma once

// Finite irreflexive symmetric graphs with named vertices, the line-based
// text format (`v <name>` / `e <a> <b>`, `#` comments) and brute-force
// isomorphism testing for the small graphs used throughout.

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "groupgraph/budget.hpp"

namespace gg {

class Graph {
 public:
  Graph() = default;

  void add_vertex(const std::string& name);
  /// Undirected edge; rejects self-loops and undeclared endpoints.
  void add_edge(const std::string& a, const std::string& b);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }  // sorted
  /// Edges as index pairs (i, j) with i < j into vertices(), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  bool has_vertex(const std::string& name) const;
  bool adjacent(std::size_t i, std::size_t j) const;

  static Graph parse(const std::string& text);
  /// Canonical text: sorted vertex lines then sorted edge lines. Bit-exact.
  std::string to_text() const;

  static Graph path(std::size_t n);      // a0-a1-...-a(n-1)
  static Graph complete(std::size_t n);  // K_n
  static Graph edgeless(std::size_t n);

 private:
  void reindex();
  std::vector<std::string> vertices_;                       // sorted, unique
  std::vector<std::pair<std::size_t, std::size_t>> edges_;  // i < j, sorted, unique
};

bool graphs_isomorphic(const Graph& a, const Graph& b, Budget* budget = nullptr);

}  // namespace gg
