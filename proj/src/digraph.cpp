#include "fibreprod/digraph.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fibreprod {

void Digraph::add_vertex(int v) { vertices_.insert(v); }

void Digraph::add_edge(int e, int src, int dst) {
  if (edges_.count(e)) throw std::invalid_argument("duplicate edge id");
  if (!has_vertex(src) || !has_vertex(dst))
    throw std::invalid_argument("edge endpoint not a vertex");
  edges_[e] = {src, dst};
  out_[src].push_back(e);
  in_[dst].push_back(e);
  std::sort(out_[src].begin(), out_[src].end());
  std::sort(in_[dst].begin(), in_[dst].end());
}

void Digraph::erase_edge(int e) {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw std::invalid_argument("no such edge");
  auto& o = out_[it->second.src];
  o.erase(std::find(o.begin(), o.end(), e));
  auto& i = in_[it->second.dst];
  i.erase(std::find(i.begin(), i.end(), e));
  edges_.erase(it);
}

const Digraph::EdgeEnds& Digraph::ends(int e) const {
  auto it = edges_.find(e);
  if (it == edges_.end()) throw std::invalid_argument("no such edge");
  return it->second;
}

const std::vector<int>& Digraph::fstar(int v) const {
  static const std::vector<int> kEmpty;
  auto it = out_.find(v);
  return it == out_.end() ? kEmpty : it->second;
}

const std::vector<int>& Digraph::bstar(int v) const {
  static const std::vector<int> kEmpty;
  auto it = in_.find(v);
  return it == in_.end() ? kEmpty : it->second;
}

Digraph Digraph::edge_subgraph(const std::set<int>& keep_edges,
                               const std::set<int>& extra_vertices) const {
  Digraph out;
  for (int v : extra_vertices) {
    if (!has_vertex(v)) throw std::invalid_argument("extra vertex not present");
    out.add_vertex(v);
  }
  for (int e : keep_edges) {
    const EdgeEnds& ee = ends(e);
    out.add_vertex(ee.src);
    out.add_vertex(ee.dst);
  }
  for (int e : keep_edges) out.add_edge(e, ends(e).src, ends(e).dst);
  for (int v : initial)
    if (out.has_vertex(v)) out.initial.insert(v);
  for (int v : final_)
    if (out.has_vertex(v)) out.final_.insert(v);
  return out;
}

int Path::vertex_at(const Digraph& g, int i) const {
  if (i < 0 || i > size()) throw std::invalid_argument("path position out of range");
  if (i == 0) return o(g);
  return g.t(edges[static_cast<size_t>(i) - 1]);
}

bool Path::valid(const Digraph& g) const {
  if (edges.empty()) return g.has_vertex(origin);
  for (size_t i = 0; i < edges.size(); ++i) {
    if (!g.has_edge(edges[i])) return false;
    if (i > 0 && g.t(edges[i - 1]) != g.o(edges[i])) return false;
  }
  return true;
}

Word GraphMap::apply(const Path& p) const {
  Word out;
  for (int e : p.edges) out.push_back(emap.at(e));
  return out;
}

MapClass check_map(const GraphMap& m) {
  for (const auto& [v, img] : m.vmap)
    if (!m.source.has_vertex(v) || !m.target.has_vertex(img)) return MapClass::NotAMap;
  if (m.vmap.size() != m.source.vertices().size()) return MapClass::NotAMap;
  if (m.emap.size() != m.source.edges().size()) return MapClass::NotAMap;
  for (const auto& [e, img] : m.emap) {
    if (!m.source.has_edge(e) || !m.target.has_edge(img)) return MapClass::NotAMap;
    if (m.vmap.at(m.source.o(e)) != m.target.o(img)) return MapClass::NotAMap;
    if (m.vmap.at(m.source.t(e)) != m.target.t(img)) return MapClass::NotAMap;
  }
  auto star_injective = [&](bool forward) {
    for (int v : m.source.vertices()) {
      const std::vector<int>& star = forward ? m.source.fstar(v) : m.source.bstar(v);
      std::set<int> images;
      for (int e : star)
        if (!images.insert(m.emap.at(e)).second) return false;
    }
    return true;
  };
  if (!star_injective(true)) return MapClass::Map;
  if (!star_injective(false)) return MapClass::ForwardsImmersion;
  return MapClass::Immersion;
}

bool is_forwards_immersion(const GraphMap& m) {
  MapClass c = check_map(m);
  return c == MapClass::ForwardsImmersion || c == MapClass::Immersion;
}

bool is_immersion(const GraphMap& m) { return check_map(m) == MapClass::Immersion; }

std::set<int> boundary(const Digraph& g) {
  std::set<int> out;
  for (int v : g.vertices())
    if (g.ideg(v) == 0 || g.odeg(v) == 0) out.insert(v);
  return out;
}

std::set<int> branch_vertices(const Digraph& g) {
  std::set<int> out;
  for (int v : g.vertices())
    if (g.ideg(v) != 1 || g.odeg(v) != 1) out.insert(v);
  return out;
}

namespace {

// Tarjan strongly connected components; returns vertex -> component id.
std::map<int, int> scc_ids(const Digraph& g) {
  std::map<int, int> index, low, comp;
  std::vector<int> stack;
  std::set<int> on_stack;
  int next_index = 0, next_comp = 0;

  // Iterative DFS to avoid recursion depth limits.
  struct Frame {
    int v;
    size_t edge_pos;
  };
  for (int root : g.vertices()) {
    if (index.count(root)) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack.insert(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      const std::vector<int>& star = g.fstar(f.v);
      if (f.edge_pos < star.size()) {
        int w = g.t(star[f.edge_pos++]);
        if (!index.count(w)) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack.insert(w);
          frames.push_back({w, 0});
        } else if (on_stack.count(w)) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack.erase(w);
            comp[w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return comp;
}

std::set<int> reachable(const Digraph& g, const std::set<int>& from, bool forward) {
  std::set<int> seen = from;
  std::vector<int> queue(from.begin(), from.end());
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int e : forward ? g.fstar(v) : g.bstar(v)) {
      int w = forward ? g.t(e) : g.o(e);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return seen;
}

}  // namespace

Digraph core(const Digraph& g) {
  std::map<int, int> comp = scc_ids(g);
  std::set<int> keep;
  for (const auto& [e, ends] : g.edges())
    if (comp.at(ends.src) == comp.at(ends.dst)) keep.insert(e);
  return g.edge_subgraph(keep);
}

Digraph rcore(const Digraph& g) {
  std::map<int, int> comp = scc_ids(g);
  std::set<int> fwd = reachable(g, g.initial, true);
  std::set<int> bwd = reachable(g, g.final_, false);
  std::set<int> keep;
  for (const auto& [e, ends] : g.edges()) {
    if (comp.at(ends.src) == comp.at(ends.dst)) keep.insert(e);
    if (fwd.count(ends.src) && bwd.count(ends.dst)) keep.insert(e);
  }
  // Length-zero accepting paths keep doubly marked vertices alive.
  std::set<int> extra;
  for (int v : g.initial)
    if (g.final_.count(v)) extra.insert(v);
  return g.edge_subgraph(keep, extra);
}

GraphMap restrict_map(const GraphMap& m, const Digraph& sub) {
  GraphMap out;
  out.source = sub;
  out.target = m.target;
  for (int v : sub.vertices()) out.vmap[v] = m.vmap.at(v);
  for (const auto& [e, ends] : sub.edges()) {
    (void)ends;
    out.emap[e] = m.emap.at(e);
  }
  return out;
}

GraphMap core_map(const GraphMap& m) { return restrict_map(m, core(m.source)); }
GraphMap rcore_map(const GraphMap& m) { return restrict_map(m, rcore(m.source)); }

int BranchDecomposition::num_segments() const {
  int n = 0;
  for (const BranchElement& e : elements) n += e.cycle ? 0 : 1;
  return n;
}

int BranchDecomposition::num_cycles() const {
  return static_cast<int>(elements.size()) - num_segments();
}

std::pair<int, int> BranchDecomposition::locate(int e) const {
  if (num_cycles() > 0)
    throw std::invalid_argument("edge positions are ambiguous with cycle elements");
  return position.at(e);
}

BranchDecomposition branch_decomposition(const Digraph& g) {
  BranchDecomposition out;
  std::set<int> branch = branch_vertices(g);
  std::set<int> used;
  auto emit = [&](BranchElement el) {
    int idx = static_cast<int>(out.elements.size());
    for (int i = 0; i < el.size(); ++i) {
      used.insert(el.edges[static_cast<size_t>(i)]);
      out.position.emplace(el.edges[static_cast<size_t>(i)], std::make_pair(idx, i));
    }
    out.elements.push_back(std::move(el));
  };
  // Segments start at branch vertices and run until the next one.
  for (int v : branch) {
    for (int e : g.fstar(v)) {
      BranchElement el;
      int cur = e;
      while (true) {
        el.edges.push_back(cur);
        int w = g.t(cur);
        if (branch.count(w)) break;
        cur = g.fstar(w)[0];  // interior vertices have ideg == odeg == 1
      }
      emit(std::move(el));
    }
  }
  // Remaining edges lie on cycles that avoid branch vertices entirely.
  for (const auto& [e, ends] : g.edges()) {
    (void)ends;
    if (used.count(e)) continue;
    BranchElement el;
    el.cycle = true;
    int cur = e;
    do {
      el.edges.push_back(cur);
      cur = g.fstar(g.t(cur))[0];
    } while (cur != e);
    emit(std::move(el));
  }
  for (int v : g.vertices())
    if (g.ideg(v) == 0 && g.odeg(v) == 0) out.isolated_vertices.push_back(v);
  return out;
}

Betti betti(const Digraph& g) {
  // Weak components by union-find over edge endpoints.
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int v : g.vertices()) parent[v] = v;
  for (const auto& [e, ends] : g.edges()) {
    (void)e;
    parent[find(ends.src)] = find(ends.dst);
  }
  std::set<int> roots;
  for (int v : g.vertices()) roots.insert(find(v));
  Betti out;
  out.b0 = static_cast<int>(roots.size());
  out.b1 = out.b0 - g.num_vertices() + g.num_edges();
  return out;
}

std::map<int, int> weak_components(const Digraph& g) {
  std::map<int, int> comp;
  int next = 0;
  for (int root : g.vertices()) {
    if (comp.count(root)) continue;
    std::vector<int> queue{root};
    comp[root] = next;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int e : g.fstar(v))
        if (!comp.count(g.t(e))) comp[g.t(e)] = next, queue.push_back(g.t(e));
      for (int e : g.bstar(v))
        if (!comp.count(g.o(e))) comp[g.o(e)] = next, queue.push_back(g.o(e));
    }
    ++next;
  }
  return comp;
}

std::vector<Digraph> split_components(const Digraph& g) {
  std::map<int, int> comp = weak_components(g);
  int n = 0;
  for (const auto& [v, c] : comp) {
    (void)v;
    n = std::max(n, c + 1);
  }
  std::vector<std::set<int>> edge_sets(static_cast<size_t>(n));
  std::vector<std::set<int>> vertex_sets(static_cast<size_t>(n));
  for (int v : g.vertices()) vertex_sets[static_cast<size_t>(comp.at(v))].insert(v);
  for (const auto& [e, ends] : g.edges())
    edge_sets[static_cast<size_t>(comp.at(ends.src))].insert(e);
  std::vector<Digraph> out;
  for (int i = 0; i < n; ++i)
    out.push_back(g.edge_subgraph(edge_sets[static_cast<size_t>(i)],
                                  vertex_sets[static_cast<size_t>(i)]));
  return out;
}

BettiBoundCheck betti_bound_check(const Digraph& gin) {
  // Isolated vertices (trivial admissible paths kept by rcore) would break the
  // inequality, so the bound is evaluated on the positive-degree part.
  std::set<int> keep;
  for (const auto& [e, ends] : gin.edges()) keep.insert(e);
  Digraph g = gin.edge_subgraph(keep);
  Betti b = betti(g);
  long long deg_sum = 0;
  for (int v : boundary(g)) deg_sum += g.ideg(v) + g.odeg(v);
  BranchDecomposition bd = branch_decomposition(g);
  BettiBoundCheck out;
  out.vbar_lhs = static_cast<long long>(branch_vertices(g).size());
  out.vbar_rhs = 2LL * (b.b1 - b.b0) + 2 * deg_sum;
  out.ebar_lhs = bd.num_segments();
  out.ebar_rhs = 3LL * (b.b1 - b.b0) + 2 * deg_sum;
  return out;
}

std::vector<Path> Lifts::all() const {
  std::vector<Path> out = slift;
  out.insert(out.end(), olift.begin(), olift.end());
  return out;
}

Lifts lifts(const GraphMap& m, const Path& target_path) {
  if (!target_path.valid(m.target)) throw std::invalid_argument("invalid target path");
  Lifts out;
  int start_image = target_path.o(m.target);
  std::set<int> branch = branch_vertices(m.source);
  // DFS over partial lifts; forwards immersions make this near-linear, the
  // general case simply branches.
  std::function<void(Path&, int)> extend = [&](Path& partial, int pos) {
    if (pos == target_path.size()) {
      bool avoids = !branch.count(partial.o(m.source));
      for (int i = 1; i <= partial.size() && avoids; ++i)
        avoids = !branch.count(partial.vertex_at(m.source, i));
      (avoids ? out.slift : out.olift).push_back(partial);
      return;
    }
    int at = partial.t(m.source);
    for (int e : m.source.fstar(at)) {
      if (m.emap.at(e) != target_path.edges[static_cast<size_t>(pos)]) continue;
      partial.edges.push_back(e);
      extend(partial, pos + 1);
      partial.edges.pop_back();
    }
  };
  for (const auto& [v, img] : m.vmap) {
    if (img != start_image) continue;
    Path p;
    p.origin = v;
    extend(p, 0);
  }
  return out;
}

}  // namespace fibreprod
