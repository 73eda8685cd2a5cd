#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fibreprod/words.hpp"

namespace fibreprod {

// Directed multigraph with marked initial/final vertex sets.  Vertex and edge
// ids are opaque ints that stay stable under subgraph operations.
class Digraph {
public:
  struct EdgeEnds {
    int src = 0;
    int dst = 0;
    friend bool operator==(const EdgeEnds&, const EdgeEnds&) = default;
  };

  void add_vertex(int v);
  void add_edge(int e, int src, int dst);
  void erase_edge(int e);
  bool has_vertex(int v) const { return vertices_.count(v) != 0; }
  bool has_edge(int e) const { return edges_.count(e) != 0; }

  int o(int e) const { return ends(e).src; }
  int t(int e) const { return ends(e).dst; }
  const EdgeEnds& ends(int e) const;

  const std::set<int>& vertices() const { return vertices_; }
  const std::map<int, EdgeEnds>& edges() const { return edges_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<int>& fstar(int v) const;  // outgoing edge ids, sorted
  const std::vector<int>& bstar(int v) const;  // incoming edge ids, sorted
  int odeg(int v) const { return static_cast<int>(fstar(v).size()); }
  int ideg(int v) const { return static_cast<int>(bstar(v).size()); }

  std::set<int> initial;  // marked start vertices
  std::set<int> final_;   // marked end vertices

  // Subgraph induced by the given edges; keeps their endpoints plus
  // extra_vertices, and intersects the marks.
  Digraph edge_subgraph(const std::set<int>& keep_edges,
                        const std::set<int>& extra_vertices = {}) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ &&
           a.initial == b.initial && a.final_ == b.final_;
  }

private:
  std::set<int> vertices_;
  std::map<int, EdgeEnds> edges_;
  std::map<int, std::vector<int>> out_, in_;
};

// Edge path.  A length-zero path is anchored at `origin`.
struct Path {
  int origin = 0;
  std::vector<int> edges;

  int size() const { return static_cast<int>(edges.size()); }
  bool empty() const { return edges.empty(); }
  int o(const Digraph& g) const { return edges.empty() ? origin : g.o(edges.front()); }
  int t(const Digraph& g) const { return edges.empty() ? origin : g.t(edges.back()); }
  // Vertex visited after i edges, 0 <= i <= size().
  int vertex_at(const Digraph& g, int i) const;
  bool valid(const Digraph& g) const;

  friend bool operator==(const Path&, const Path&) = default;
};

// Graph map: vertex and edge assignments commuting with endpoints.
struct GraphMap {
  Digraph source;
  Digraph target;
  std::map<int, int> vmap;
  std::map<int, int> emap;

  int v(int u) const { return vmap.at(u); }
  int e(int f) const { return emap.at(f); }
  Word apply(const Path& p) const;  // edge labels of the image path
};

enum class MapClass { NotAMap, Map, ForwardsImmersion, Immersion };

// Classifies m: commutation with o and t, then injectivity on forward stars,
// then injectivity on both stars.
MapClass check_map(const GraphMap& m);

bool is_forwards_immersion(const GraphMap& m);
bool is_immersion(const GraphMap& m);

// Vertices with no incoming or no outgoing edges.
std::set<int> boundary(const Digraph& g);

// Vertices where ideg != 1 or odeg != 1.
std::set<int> branch_vertices(const Digraph& g);

// Union of images of cycles: edges whose endpoints share a strongly
// connected component that contains a cycle.
Digraph core(const Digraph& g);

// core plus every edge on a path from an initial to a final vertex; vertices
// that are both initial and final survive even when isolated.
Digraph rcore(const Digraph& g);

// Restricts a map to a subgraph of its source.
GraphMap restrict_map(const GraphMap& m, const Digraph& sub);

GraphMap core_map(const GraphMap& m);
GraphMap rcore_map(const GraphMap& m);

// Maximal segments between branch vertices and cycles avoiding them.
struct BranchElement {
  bool cycle = false;
  std::vector<int> edges;  // consecutive; for cycles, closed up
  int size() const { return static_cast<int>(edges.size()); }
};

struct BranchDecomposition {
  std::vector<BranchElement> elements;
  std::map<int, std::pair<int, int>> position;  // edge id -> (element, index)
  std::vector<int> isolated_vertices;           // vertices missed by all edges

  int num_segments() const;
  int num_cycles() const;
  int size() const { return static_cast<int>(elements.size()); }

  // Element and offset containing an edge; requires no cycle elements.
  std::pair<int, int> locate(int e) const;
};

BranchDecomposition branch_decomposition(const Digraph& g);

struct Betti {
  int b0 = 0;  // weak connected components
  int b1 = 0;  // b0 - |V| + |E|
};

Betti betti(const Digraph& g);

// Weak (undirected) components: vertex -> component id, ids dense from 0 in
// order of smallest member vertex.
std::map<int, int> weak_components(const Digraph& g);

std::vector<Digraph> split_components(const Digraph& g);

// |bar V| <= 2(b1 - b0) + 2 * sum of deg over boundary vertices, and
// |bar E - bar E_c| <= 3(b1 - b0) + 2 * that sum; holds when g == rcore(g).
struct BettiBoundCheck {
  long long vbar_lhs = 0, vbar_rhs = 0;
  long long ebar_lhs = 0, ebar_rhs = 0;
  bool ok() const { return vbar_lhs <= vbar_rhs && ebar_lhs <= ebar_rhs; }
};

BettiBoundCheck betti_bound_check(const Digraph& g);

// All paths f in m.source with m(f) == target_path; split into those avoiding
// branch vertices of the source (slift) and the rest (olift).
struct Lifts {
  std::vector<Path> slift;
  std::vector<Path> olift;
  std::vector<Path> all() const;
};

Lifts lifts(const GraphMap& m, const Path& target_path);

}  // namespace fibreprod
