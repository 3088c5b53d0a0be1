#include "groupgraph/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace gg {

void Graph::add_vertex(const std::string& name) {
  if (name.empty()) throw InputError("graph: empty vertex name");
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), name);
  if (it != vertices_.end() && *it == name) return;
  // remap edge indices past the insertion point
  const std::size_t pos = static_cast<std::size_t>(it - vertices_.begin());
  for (auto& [a, b] : edges_) {
    if (a >= pos) ++a;
    if (b >= pos) ++b;
  }
  vertices_.insert(it, name);
}

bool Graph::has_vertex(const std::string& name) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), name);
}

void Graph::add_edge(const std::string& a, const std::string& b) {
  if (a == b) throw InputError("graph: self-loop on vertex '" + a + "' rejected");
  if (!has_vertex(a)) throw InputError("graph: unknown vertex '" + a + "'");
  if (!has_vertex(b)) throw InputError("graph: unknown vertex '" + b + "'");
  const std::size_t ia =
      static_cast<std::size_t>(std::lower_bound(vertices_.begin(), vertices_.end(), a) - vertices_.begin());
  const std::size_t ib =
      static_cast<std::size_t>(std::lower_bound(vertices_.begin(), vertices_.end(), b) - vertices_.begin());
  auto e = std::minmax(ia, ib);
  std::pair<std::size_t, std::size_t> edge{e.first, e.second};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), edge);
  if (it == edges_.end() || *it != edge) edges_.insert(it, edge);
}

bool Graph::adjacent(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  auto e = std::minmax(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(e.first, e.second));
}

Graph Graph::parse(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<std::string, std::string>> pending_edges;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      std::string name;
      if (!(ls >> name)) throw InputError("graph line " + std::to_string(lineno) + ": v needs a name");
      g.add_vertex(name);
    } else if (tag == "e") {
      std::string a, b;
      if (!(ls >> a >> b))
        throw InputError("graph line " + std::to_string(lineno) + ": e needs two names");
      pending_edges.emplace_back(a, b);
    } else {
      throw InputError("graph line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra)
      throw InputError("graph line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
  }
  for (const auto& [a, b] : pending_edges) g.add_edge(a, b);
  return g;
}

std::string Graph::to_text() const {
  std::ostringstream out;
  for (const auto& v : vertices_) out << "v " << v << "\n";
  for (const auto& [a, b] : edges_) out << "e " << vertices_[a] << " " << vertices_[b] << "\n";
  return out.str();
}

Graph Graph::path(std::size_t n) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("a" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i)
    g.add_edge("a" + std::to_string(i), "a" + std::to_string(i + 1));
  return g;
}

Graph Graph::complete(std::size_t n) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("a" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      g.add_edge("a" + std::to_string(i), "a" + std::to_string(j));
  return g;
}

Graph Graph::edgeless(std::size_t n) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("a" + std::to_string(i));
  return g;
}

bool graphs_isomorphic(const Graph& a, const Graph& b, Budget* budget) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const std::size_t n = a.vertex_count();
  // degree-sequence prefilter
  auto degrees = [](const Graph& g) {
    std::vector<std::size_t> d(g.vertex_count(), 0);
    for (const auto& [x, y] : g.edges()) {
      ++d[x];
      ++d[y];
    }
    std::vector<std::size_t> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  };
  if (degrees(a) != degrees(b)) return false;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (budget) budget->charge();
    bool ok = true;
    for (const auto& [x, y] : a.edges())
      if (!b.adjacent(perm[x], perm[y])) {
        ok = false;
        break;
      }
    if (ok) return true;  // edge counts match, so edge preservation is enough
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace gg
