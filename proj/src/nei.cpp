#include "fibreprod/nei.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace fibreprod {

namespace {

// Vertices of a circle graph in walk order from its smallest vertex, with the
// label word alongside.
struct CircleOrder {
  std::vector<int> verts;
  Word label;
};

CircleOrder circle_order(const GraphMap& m) {
  const Digraph& g = m.source;
  if (g.num_vertices() == 0 || g.num_edges() != g.num_vertices())
    throw std::invalid_argument("not a circle");
  for (int v : g.vertices())
    if (g.ideg(v) != 1 || g.odeg(v) != 1) throw std::invalid_argument("not a circle");
  CircleOrder out;
  int start = *g.vertices().begin();
  int at = start;
  do {
    out.verts.push_back(at);
    int e = g.fstar(at)[0];
    out.label.push_back(m.emap.at(e));
    at = g.t(e);
  } while (at != start);
  if (static_cast<int>(out.verts.size()) != g.num_vertices())
    throw std::invalid_argument("not a circle");
  return out;
}

// Rotation r with label read from position r equal to w repeated; -1 if none.
int align_rotation(const Word& label, const Word& w) {
  int L = label.size(), W = w.size();
  if (W == 0 || L % W != 0) return -1;
  for (int r = 0; r < L; ++r) {
    bool ok = true;
    for (int t = 0; t < L && ok; ++t) ok = label[(r + t) % L] == w[t % W];
    if (ok) return r;
  }
  return -1;
}

// Minimal number of windows of win consecutive positions on a circle of
// circumference len needed to cover the given positions.
int circular_cover(const std::set<int>& positions, int len, int win) {
  if (positions.empty()) return 0;
  if (win >= len) return 1;
  int best = static_cast<int>(positions.size());
  std::vector<int> ps(positions.begin(), positions.end());
  for (int anchor : ps) {
    int used = 0;
    int covered_until = -1;  // exclusive offset from anchor
    for (size_t i = 0; i < ps.size(); ++i) {
      int off = ((ps[i] - anchor) % len + len) % len;
      if (off < covered_until) continue;
      ++used;
      covered_until = off + win;
    }
    best = std::min(best, used);
  }
  return best;
}

}  // namespace

Dfa make_dfa(const GraphMap& m) {
  if (m.target.num_vertices() != 1)
    throw std::invalid_argument("automaton target must be a one-vertex rose");
  if (check_map(m) == MapClass::NotAMap) throw std::invalid_argument("not a graph map");
  if (!is_forwards_immersion(m)) throw std::invalid_argument("nondeterministic automaton");
  if (m.source.initial.size() != 1)
    throw std::invalid_argument("automaton needs exactly one initial state");
  return Dfa{m, *m.source.initial.begin()};
}

bool rabin_scott(const Dfa& a, const Dfa& b) {
  if (a.map.target.edges() != b.map.target.edges())
    throw std::invalid_argument("alphabet mismatch");
  const Digraph& G = a.map.source;
  const Digraph& L = b.map.source;
  std::set<std::pair<int, int>> seen{{a.start, b.start}};
  std::deque<std::pair<int, int>> queue{{a.start, b.start}};
  while (!queue.empty()) {
    auto [u, v] = queue.front();
    queue.pop_front();
    if (G.final_.count(u) && L.final_.count(v)) return true;
    for (int ea : G.fstar(u)) {
      int letter = a.map.emap.at(ea);
      for (int eb : L.fstar(v)) {
        if (b.map.emap.at(eb) != letter) continue;
        std::pair<int, int> next{G.t(ea), L.t(eb)};
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  return false;
}

bool w_cycle_accepting(const GraphMap& c1, const GraphMap& c2, const Word& w, int k) {
  if (w.empty() || !period_profile(w).primitive)
    throw std::invalid_argument("imprimitive loop");
  int W = w.size();
  CircleOrder o1 = circle_order(c1), o2 = circle_order(c2);
  int r1 = align_rotation(o1.label, w), r2 = align_rotation(o2.label, w);
  if (r1 < 0 || r2 < 0) throw std::invalid_argument("not a w-cycle");
  int L1 = o1.label.size(), L2 = o2.label.size();
  int m = L1 / W, n = L2 / W;
  long long q = std::gcd(m, n);

  // positions after aligning the read to start with w
  auto positions = [](const CircleOrder& o, int r, const std::set<int>& marks) {
    std::set<int> out;
    int L = static_cast<int>(o.verts.size());
    for (int p = 0; p < L; ++p)
      if (marks.count(o.verts[static_cast<size_t>((r + p) % L)])) out.insert(p);
    return out;
  };
  std::set<int> i1 = positions(o1, r1, c1.source.initial);
  std::set<int> i2 = positions(o2, r2, c2.source.initial);
  std::set<int> f1 = positions(o1, r1, c1.source.final_);
  std::set<int> f2 = positions(o2, r2, c2.source.final_);

  if (k >= 0 && circular_cover(i1, L1, W) + circular_cover(i2, L2, W) > k)
    throw std::invalid_argument("initial states exceed the segment cover");

  // block differences mod q realised by initial pairs with a shared offset
  // and by final pairs with a shared offset
  auto diffs = [&](const std::set<int>& s1, const std::set<int>& s2) {
    std::set<long long> out;
    for (int p1 : s1)
      for (int p2 : s2)
        if (p1 % W == p2 % W) out.insert((((p1 / W - p2 / W) % q) + q) % q);
    return out;
  };
  std::set<long long> di = diffs(i1, i2), df = diffs(f1, f2);
  for (long long d : di)
    if (df.count(d)) return true;
  return false;
}

Path forced_path(const FibreProduct& fp, int product_edge, long long l) {
  const Digraph& P = fp.product;
  std::set<int> vbg = branch_vertices(fp.gamma.source);
  std::set<int> vbl = branch_vertices(fp.lambda.source);
  auto branch_pair = [&](int pv) {
    auto [u, v] = fp.vpair.at(pv);
    return vbg.count(u) && vbl.count(v);
  };
  Path g;
  g.origin = P.o(product_edge);
  g.edges.push_back(product_edge);
  while (static_cast<long long>(g.edges.size()) < l) {
    int at = P.t(g.edges.back());
    if (branch_pair(at)) break;
    if (P.fstar(at).empty()) break;
    if (P.fstar(at).size() > 1) throw std::logic_error("forced path branched");
    g.edges.push_back(P.fstar(at)[0]);
  }
  return g;
}

namespace {

// Accepting-path decision for one pair of long cycles with explicit marks
// given as positions along the respective circles.
bool pair_accepting(const FibreProduct& fp, const LongCycle& cg, const LongCycle& cl,
                    const std::set<int>& ig, const std::set<int>& fg,
                    const std::set<int>& il, const std::set<int>& fl) {
  if (ig.empty() || fg.empty() || il.empty() || fl.empty()) return false;
  if (!cyclic_conjugate(cg.label, cl.label)) return false;
  const Digraph& delta = fp.gamma.target;
  Circle c1 = make_circle(delta, fp.gamma.apply(cg.circle));
  Circle c2 = make_circle(delta, fp.lambda.apply(cl.circle));
  c1.to_delta.source.initial = ig;
  c1.to_delta.source.final_ = fg;
  c2.to_delta.source.initial = il;
  c2.to_delta.source.final_ = fl;
  return w_cycle_accepting(c1.to_delta, c2.to_delta, cg.label);
}

std::set<int> over_edge(const LongCycle& c, int edge) {
  std::set<int> out;
  for (int p = 0; p < c.circle.size(); ++p)
    if (c.circle.edges[static_cast<size_t>(p)] == edge) out.insert(p);
  return out;
}

std::set<int> over_vertices(const Digraph& g, const LongCycle& c,
                            const std::set<int>& vs) {
  std::set<int> out;
  for (int p = 0; p < c.circle.size(); ++p)
    if (vs.count(c.circle.vertex_at(g, p))) out.insert(p);
  return out;
}

}  // namespace

bool s_connectivity(const FibreProduct& fp, const LongCycles& lcg,
                    const LongCycles& lcl, int product_edge, int product_vertex) {
  auto [eg, el] = fp.epair.at(product_edge);
  auto [xg, xl] = fp.vpair.at(product_vertex);
  for (const LongCycle& cg : lcg.cycles) {
    std::set<int> ig = over_edge(cg, eg);
    if (ig.empty()) continue;
    std::set<int> fg = over_vertices(fp.gamma.source, cg, {xg});
    if (fg.empty()) continue;
    for (const LongCycle& cl : lcl.cycles) {
      std::set<int> il = over_edge(cl, el);
      if (il.empty()) continue;
      std::set<int> fl = over_vertices(fp.lambda.source, cl, {xl});
      if (pair_accepting(fp, cg, cl, ig, fg, il, fl)) return true;
    }
  }
  return false;
}

SPartition adjacency_partition(const FibreProduct& fp, const LongCycles& lcg,
                               const LongCycles& lcl) {
  SPartition out;
  std::set<int> vbg = branch_vertices(fp.gamma.source);
  std::set<int> vbl = branch_vertices(fp.lambda.source);
  std::vector<int> branch_pairs;
  for (int v : fp.product.vertices()) {
    auto [u, x] = fp.vpair.at(v);
    if (vbg.count(u) && vbl.count(x)) branch_pairs.push_back(v);
  }
  std::vector<int> candidates;
  for (int v : branch_pairs)
    for (int d : fp.product.fstar(v)) candidates.push_back(d);

  if (lcg.cycles.empty() || lcl.cycles.empty()) return out;
  for (int d : candidates)
    if (s_connectivity(fp, lcg, lcl, d, fp.product.t(d))) out.es.insert(d);

  // one component per block: edges sharing a component are mutually reachable
  std::map<int, int> parent;
  for (int d : out.es) parent[d] = d;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> es(out.es.begin(), out.es.end());
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i + 1; j < es.size(); ++j)
      if (find(es[i]) != find(es[j]) &&
          s_connectivity(fp, lcg, lcl, es[i], fp.product.o(es[j])))
        parent[find(es[i])] = find(es[j]);

  std::map<int, int> block_of_root;
  for (int d : es) {
    int r = find(d);
    auto [it, fresh] = block_of_root.insert({r, out.blocks});
    if (fresh) ++out.blocks;
    out.eblock[d] = it->second;
  }
  for (int v : branch_pairs)
    for (int d : es)
      if (s_connectivity(fp, lcg, lcl, d, v)) {
        out.vs.insert(v);
        out.vblock[v] = out.eblock.at(d);
        break;
      }
  return out;
}

NeiResult nei(const Dfa& a, const Dfa& b) {
  if (a.map.target.edges() != b.map.target.edges())
    throw std::invalid_argument("alphabet mismatch");
  const Digraph& G = a.map.source;
  const Digraph& L = b.map.source;
  NeiResult res;
  res.m = (betti(G).b1 + static_cast<long long>(boundary(G).size())) +
          (betti(L).b1 + static_cast<long long>(boundary(L).size()));
  res.n = G.num_edges() + L.num_edges();
  if (G.final_.count(a.start) && L.final_.count(b.start)) {
    res.answer = true;
    res.branch = "eps";
    return res;
  }

  FibreProduct fp = fibre_product(a.map, b.map);
  LongCycles lcg = long_cycles(a.map);
  LongCycles lcl = long_cycles(b.map);
  SPartition part = adjacency_partition(fp, lcg, lcl);

  BranchDecomposition bdG = branch_decomposition(G);
  BranchDecomposition bdL = branch_decomposition(L);
  long long ebarG = bdG.size(), ebarL = bdL.size();
  long long cG = ebarG + static_cast<long long>(G.initial.size());
  long long cL = ebarL + static_cast<long long>(L.initial.size());
  long long cap = 508 * cG * cL * (ebarL * G.num_edges() + ebarG * L.num_edges()) + 1;

  std::set<int> vbg = branch_vertices(G), vbl = branch_vertices(L);
  auto branch_pair = [&](int pv) {
    auto [u, v] = fp.vpair.at(pv);
    return vbg.count(u) && vbl.count(v);
  };
  auto final_pair = [&](int pv) {
    auto [u, v] = fp.vpair.at(pv);
    return G.final_.count(u) && L.final_.count(v);
  };

  int xy = fp.vid.at({a.start, b.start});
  std::deque<int> queue;
  std::set<int> queued, odir;
  auto enqueue = [&](int d) {
    if (!odir.count(d) && queued.insert(d).second) queue.push_back(d);
  };
  for (int d : fp.product.fstar(xy)) enqueue(d);

  std::set<int> theta_v, theta_e;
  auto absorb = [&](const Path& g, int upto) {
    theta_v.insert(g.vertex_at(fp.product, 0));
    for (int p = 0; p < upto; ++p) {
      theta_e.insert(g.edges[static_cast<size_t>(p)]);
      theta_v.insert(g.vertex_at(fp.product, p + 1));
    }
  };

  while (!queue.empty()) {
    int d = queue.front();
    queue.pop_front();
    queued.erase(d);
    if (!odir.insert(d).second) throw std::logic_error("direction explored twice");
    ++res.steps;
    if (part.es.count(d)) {
      int j = part.eblock.at(d);
      for (const auto& [v, blk] : part.vblock)
        if (blk == j)
          for (int d2 : fp.product.fstar(v)) enqueue(d2);
    } else {
      Path g = forced_path(fp, d, cap);
      int tg = g.t(fp.product);
      if (branch_pair(tg)) {
        absorb(g, g.size());
        for (int d2 : fp.product.fstar(tg)) enqueue(d2);
      } else {
        int j = 0;
        for (int p = 0; p <= g.size(); ++p)
          if (final_pair(g.vertex_at(fp.product, p))) j = p;
        absorb(g, j);
      }
    }
  }

  for (int v : theta_v)
    if (final_pair(v)) {
      res.answer = true;
      res.branch = "A";
      return res;
    }

  std::set<int> origins;
  for (int d : odir) origins.insert(fp.product.o(d));
  for (int pv : origins) {
    auto [ug, ul] = fp.vpair.at(pv);
    for (const LongCycle& cg : lcg.cycles) {
      std::set<int> ig = over_vertices(G, cg, {ug});
      std::set<int> fg = over_vertices(G, cg, G.final_);
      if (ig.empty() || fg.empty()) continue;
      for (const LongCycle& cl : lcl.cycles) {
        std::set<int> il = over_vertices(L, cl, {ul});
        std::set<int> fl = over_vertices(L, cl, L.final_);
        if (pair_accepting(fp, cg, cl, ig, fg, il, fl)) {
          res.answer = true;
          res.branch = "B";
          return res;
        }
      }
    }
  }
  res.branch = "none";
  return res;
}

}  // namespace fibreprod
