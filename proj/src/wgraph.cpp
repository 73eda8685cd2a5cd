#include "fibreprod/wgraph.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace fibreprod {

namespace {

std::optional<WPath> try_w_factorise(const Path& f, const GraphMap& gamma,
                                     const Word& w) {
  int W = w.size();
  Word label = gamma.apply(f);
  int L = label.size();
  int best_p = -1, best_h = -1;
  for (int p = 0; p < W; ++p) {
    bool match = true;
    for (int t = 0; t < L && match; ++t) match = label[t] == w[(p + t) % W];
    if (!match) continue;
    int h = p == 0 ? 0 : W - p;
    if (p != 0 && L < h) continue;  // never reaches the basepoint
    if (h > best_h) {
      best_h = h;
      best_p = p;
    }
  }
  if (best_p < 0) return std::nullopt;
  WPath out;
  out.path = f;
  out.phase0 = best_p;
  out.w_head = best_p == 0 ? Word{} : w.slice(best_p, W);
  out.n = (L - best_h) / W;
  out.w_tail = w.prefix((L - best_h) % W);
  return out;
}

// w-length of a path of length L starting at circle position i; -1 when the
// path never reaches the basepoint.
int wlen_from(int i, int L, int W) {
  if (i == 0) return L / W;
  if (L < W - i) return -1;
  return (L - (W - i)) / W;
}

bool has_directed_cycle(const Digraph& g) {
  std::map<int, int> color;  // 0 new, 1 open, 2 done
  for (int s : g.vertices()) {
    if (color[s]) continue;
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < g.fstar(v).size()) {
        int x = g.t(g.fstar(v)[idx++]);
        if (color[x] == 1) return true;
        if (color[x] == 0) {
          color[x] = 1;
          stack.push_back({x, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

// Length of the directed cycle of g, 0 when acyclic.
int directed_cycle_length(const Digraph& g) {
  for (int s : g.vertices()) {
    std::map<int, int> at_step;
    int v = s, step = 0;
    while (true) {
      auto [it, fresh] = at_step.insert({v, step});
      if (!fresh) return step - it->second;
      if (g.fstar(v).empty()) break;
      if (g.odeg(v) > 1) throw std::logic_error("branching walk");
      v = g.t(g.fstar(v)[0]);
      ++step;
    }
  }
  return 0;
}

// Longest directed path lengths from each vertex of an acyclic graph.
std::map<int, int> longest_paths(const Digraph& g) {
  std::map<int, int> len;
  std::function<int(int)> go = [&](int v) -> int {
    auto it = len.find(v);
    if (it != len.end()) return it->second;
    int best = 0;
    for (int e : g.fstar(v)) best = std::max(best, 1 + go(g.t(e)));
    len[v] = best;
    return best;
  };
  for (int v : g.vertices()) go(v);
  return len;
}

GraphMap reverse_map(const GraphMap& m) {
  auto flip = [](const Digraph& g) {
    Digraph r;
    for (int v : g.vertices()) r.add_vertex(v);
    for (const auto& [e, ends] : g.edges()) r.add_edge(e, ends.dst, ends.src);
    r.initial = g.final_;
    r.final_ = g.initial;
    return r;
  };
  return GraphMap{flip(m.source), flip(m.target), m.vmap, m.emap};
}

}  // namespace

WPath w_factorise(const Path& f, const GraphMap& gamma, const Word& w) {
  if (w.empty() || !period_profile(w).primitive)
    throw std::invalid_argument("imprimitive loop");
  if (!f.valid(gamma.source)) throw std::invalid_argument("invalid path");
  std::optional<WPath> out = try_w_factorise(f, gamma, w);
  if (!out) throw std::invalid_argument("not a w-path");
  return *out;
}

bool is_simple_w_path(const Digraph& g, const Path& f, int wlen) {
  int L = f.size();
  for (int p = 0; p <= L; ++p)
    for (int q = p + wlen; q < L; q += wlen)
      if (f.vertex_at(g, p) == f.vertex_at(g, q)) return false;
  return true;
}

OmegaGraph omega(const GraphMap& gamma, const Word& w, int k) {
  if (w.empty() || !period_profile(w).primitive)
    throw std::invalid_argument("imprimitive loop");
  OmegaGraph out;
  out.k = k;
  out.circle = make_circle(gamma.target, w);
  out.fp = fibre_product(gamma, out.circle.to_delta);
  int W = w.size();
  std::set<int> keep_e, keep_v;
  for (const Digraph& comp : split_components(out.fp.product)) {
    std::set<int> covered;
    for (const auto& [e, ends] : comp.edges()) {
      (void)ends;
      covered.insert(out.fp.epair.at(e).second);
    }
    if (static_cast<int>(covered.size()) != W) continue;
    bool cyc = has_directed_cycle(comp);
    bool functional = true;
    for (int v : comp.vertices())
      if (comp.odeg(v) > 1) functional = false;
    OmegaShape shape = !functional ? OmegaShape::Other
                       : cyc       ? OmegaShape::CycleWithTrees
                                   : OmegaShape::Tree;
    int mw = -1;
    if (!cyc) {
      std::map<int, int> len = longest_paths(comp);
      mw = 0;
      for (int v : comp.vertices())
        mw = std::max(mw, wlen_from(out.fp.vpair.at(v).second, len[v], W));
    }
    if (mw != -1 && mw < k) continue;
    out.components.push_back(comp);
    out.shapes.push_back(shape);
    out.max_wlen.push_back(mw);
    for (const auto& [e, ends] : comp.edges()) {
      (void)ends;
      keep_e.insert(e);
    }
    for (int v : comp.vertices()) keep_v.insert(v);
  }
  out.graph = out.fp.product.edge_subgraph(keep_e, keep_v);
  out.p_gamma = restrict_map(out.fp.p_gamma, out.graph);
  out.p_w = restrict_map(out.fp.p_lambda, out.graph);
  return out;
}

std::set<int> w_sinks(const GraphMap& gamma, const Word& w) {
  int W = w.size();
  if (W == 0) throw std::invalid_argument("empty loop");
  const Digraph& g = gamma.source;
  BranchDecomposition bd = branch_decomposition(g);
  std::set<int> short_edges;
  for (const BranchElement& el : bd.elements)
    if (el.size() < W) short_edges.insert(el.edges.begin(), el.edges.end());
  Digraph gw = g.edge_subgraph(short_edges);
  std::set<int> vbar = branch_vertices(g);

  std::set<int> sinks;
  for (int u : gw.vertices()) {
    if (!vbar.count(u)) continue;
    for (int p0 = 0; p0 < W; ++p0) {
      int h = p0 == 0 ? 0 : W - p0;
      std::vector<int> verts{u};
      std::function<void(int, int)> dfs = [&](int at, int len) {
        if (len >= h + W && vbar.count(at))
          sinks.insert(verts[static_cast<size_t>(h + W)]);
        if (len == h + 2 * W - 1) return;
        for (int e : gw.fstar(at)) {
          if (gamma.emap.at(e) != w[(p0 + len) % W]) continue;
          verts.push_back(gw.t(e));
          dfs(gw.t(e), len + 1);
          verts.pop_back();
        }
      };
      dfs(u, 0);
    }
  }
  return sinks;
}

std::pair<int, std::set<int>> w_sinks_general(const GraphMap& gamma, const Word& w) {
  int W = w.size();
  BranchDecomposition bd = branch_decomposition(gamma.source);
  std::vector<Word> xs;
  for (const BranchElement& el : bd.elements) {
    if (el.size() >= W) continue;
    Word label;
    for (int e : el.edges) label.push_back(gamma.emap.at(e));
    xs.push_back(std::move(label));
  }
  int i = good_cyclic_shift(w, xs);
  return {i, w_sinks(gamma, i == 0 ? w : rotate(w, i))};
}

GammaWFactorisation gamma_w_factorise(const Path& f, const GraphMap& gamma,
                                      const Word& w) {
  int W = w.size();
  if (W == 0) throw std::invalid_argument("empty loop");
  const Digraph& g = gamma.source;
  if (!f.valid(g)) throw std::invalid_argument("invalid path");

  GammaWFactorisation out;
  out.bd = branch_decomposition(g);
  std::set<int> vbar = branch_vertices(g);
  int L = f.size();

  std::vector<int> cuts;
  for (int p = 0; p <= L; ++p)
    if (vbar.count(f.vertex_at(g, p))) cuts.push_back(p);
  auto elem_of = [&](int edge) { return out.bd.position.at(edge).first; };

  if (cuts.empty()) {
    out.degenerate = true;
    out.head = f;
    out.e0 = f.empty() ? -1 : elem_of(f.edges.front());
    return out;
  }

  int a = cuts.front(), b = cuts.back();
  out.head.origin = f.vertex_at(g, 0);
  out.head.edges.assign(f.edges.begin(), f.edges.begin() + a);
  out.e0 = a > 0 ? elem_of(f.edges.front()) : -1;
  out.tail.origin = f.vertex_at(g, b);
  out.tail.edges.assign(f.edges.begin() + b, f.edges.end());
  out.en = b < L ? elem_of(f.edges[static_cast<size_t>(b)]) : -1;

  std::vector<std::pair<int, int>> spans;  // global position ranges of w-parts
  Path cur;
  cur.origin = f.vertex_at(g, a);
  int cur_start = a;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    int x = cuts[i], y = cuts[i + 1];
    int el = elem_of(f.edges[static_cast<size_t>(x)]);
    if (out.bd.elements[static_cast<size_t>(el)].size() < W) {
      cur.edges.insert(cur.edges.end(), f.edges.begin() + x, f.edges.begin() + y);
    } else {
      out.w_parts.push_back(cur);
      spans.push_back({cur_start, x});
      out.mids.push_back(el);
      cur = Path{f.vertex_at(g, y), {}};
      cur_start = y;
    }
  }
  out.w_parts.push_back(cur);
  spans.push_back({cur_start, b});

  if (std::optional<WPath> wp = try_w_factorise(f, gamma, w)) {
    int s0 = wp->w_head.size();
    for (auto [lo, hi] : spans) {
      // full copies of w between consecutive basepoint visits inside [lo, hi]
      int j0 = lo <= s0 ? 0 : (lo - s0 + W - 1) / W;
      int j1 = hi < s0 ? -1 : (hi - s0) / W;
      j1 = std::min(j1, wp->n);
      out.w_wlens.push_back(std::max(0, j1 - j0));
    }
  }
  return out;
}

namespace {

struct ExtEnum {
  std::set<int> lengths;
  long long period = 0;
};

// All w-lengths of paths in omega ending at (u, v) whose projection is a
// left submaximal w-path, plus the cycle w-length of their component.
ExtEnum ext_enumerate(const GraphMap& gamma, const Word& w, int u, int v) {
  if (!is_forwards_immersion(gamma))
    throw std::invalid_argument("extension languages need a forwards immersion");
  OmegaGraph om = omega(gamma, w, 0);
  ExtEnum out;
  auto it = om.fp.vid.find({u, v});
  if (it == om.fp.vid.end() || !om.graph.has_vertex(it->second)) return out;
  int target = it->second;
  int W = w.size();
  const Digraph& G = om.graph;

  for (const Digraph& comp : om.components)
    if (comp.has_vertex(target)) {
      int cl = directed_cycle_length(comp);
      if (cl % W != 0) throw std::logic_error("fractional cycle wrap");
      out.period = cl / W;
    }

  std::set<int> vbar = branch_vertices(gamma.source);
  auto gvert = [&](int ov) { return om.fp.vpair.at(ov).first; };

  std::vector<int> rev{target};  // path vertices, end first
  std::set<int> visited{target};
  bool end_dup = false;

  auto may_prepend = [&](int y) {
    return !visited.count(y) || (y == target && !end_dup);
  };
  auto record = [&]() {
    int start = rev.back();
    int L = static_cast<int>(rev.size()) - 1;
    int n = wlen_from(om.phase(start), L, W);
    if (n < 0) return;  // not a w-path
    int g0 = gvert(start);
    bool leftsub = vbar.count(g0) || gamma.source.initial.count(g0);
    if (!leftsub) {  // left maximal: no simple one-edge left extension
      for (int e : G.bstar(start))
        if (may_prepend(G.o(e))) return;
      leftsub = true;
    }
    if (leftsub) out.lengths.insert(n);
  };
  std::function<void()> dfs = [&]() {
    record();
    int start = rev.back();
    for (int e : G.bstar(start)) {
      int y = G.o(e);
      if (!may_prepend(y)) continue;
      bool used = y == target && visited.count(y);
      if (used)
        end_dup = true;
      else
        visited.insert(y);
      rev.push_back(y);
      dfs();
      rev.pop_back();
      if (used)
        end_dup = false;
      else
        visited.erase(y);
    }
  };
  dfs();
  return out;
}

std::set<int> submax_right(const GraphMap& gamma, const Word& w) {
  OmegaGraph om = omega(gamma, w, 0);
  const Digraph& G = om.graph;
  int W = w.size();
  std::set<int> vbar = branch_vertices(gamma.source);
  auto gvert = [&](int ov) { return om.fp.vpair.at(ov).first; };

  std::set<int> result;
  for (int s : G.vertices()) {
    std::vector<int> pverts{s};
    std::set<int> visited{s};

    auto record = [&]() {
      int L = static_cast<int>(pverts.size()) - 1;
      int n = wlen_from(om.phase(s), L, W);
      if (n < 1) return;
      bool meets = false;
      for (int pv : pverts)
        if (vbar.count(gvert(pv))) {
          meets = true;
          break;
        }
      if (!meets) return;
      int g0 = gvert(s);
      if (!vbar.count(g0) && !gamma.source.initial.count(g0)) {
        // need left maximality: every one-edge left extension repeats an
        // interior vertex
        for (int e : G.bstar(s)) {
          int y = G.o(e);
          long cnt = std::count(pverts.begin(), pverts.end(), y);
          if (cnt == 0 || (cnt == 1 && y == pverts.back())) return;
        }
      }
      result.insert(n);
    };
    std::function<void(int)> dfs = [&](int at) {
      bool extended = false;
      for (int e : G.fstar(at)) {
        int x = G.t(e);
        pverts.push_back(x);
        if (visited.count(x)) {
          record();  // ends at a repeat: maximal
        } else {
          visited.insert(x);
          dfs(x);
          visited.erase(x);
        }
        pverts.pop_back();
        extended = true;
      }
      if (!extended) record();
    };
    dfs(s);
  }
  return result;
}

}  // namespace

std::set<int> submaximal_w_lengths(const GraphMap& gamma, const Word& w, Side side) {
  if (w.empty() || !period_profile(w).primitive)
    throw std::invalid_argument("imprimitive loop");
  if (!is_forwards_immersion(gamma))
    throw std::invalid_argument("submaximal lengths need a forwards immersion");
  if (side == Side::Right) return submax_right(gamma, w);
  return submax_right(reverse_map(gamma), w.reversed());
}

bool ExtLanguage::contains(long long n) const {
  for (long long o : offsets) {
    if (o == n) return true;
    if (period > 0 && n > o && (n - o) % period == 0) return true;
  }
  return false;
}

ExtLanguage extension_language(const GraphMap& gamma, const Word& w, int u, int v) {
  ExtEnum en = ext_enumerate(gamma, w, u, v);
  ExtLanguage out;
  out.period = en.period;
  if (en.period == 0) {
    out.offsets.assign(en.lengths.begin(), en.lengths.end());
  } else {
    std::map<long long, long long> best;  // residue -> minimum
    for (int n : en.lengths) {
      long long r = n % en.period;
      auto [it, fresh] = best.insert({r, n});
      if (!fresh) it->second = std::min(it->second, static_cast<long long>(n));
    }
    for (auto& [r, o] : best) {
      (void)r;
      out.offsets.push_back(o);
    }
    std::sort(out.offsets.begin(), out.offsets.end());
  }
  return out;
}

std::set<int> extension_lengths(const GraphMap& gamma, const Word& w, int u, int v) {
  return ext_enumerate(gamma, w, u, v).lengths;
}

}  // namespace fibreprod
