#include "fibreprod/freegroup.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace fibreprod {

namespace {

int lab_or_zero(const InvolutiveGraph& g, int e) {
  return g.elabel.empty() ? 0 : g.elabel.at(e);
}

bool is_marked(const InvolutiveGraph& g, int v) {
  return g.g.initial.count(v) != 0 || g.g.final_.count(v) != 0 ||
         v == g.basepoint;
}

// Deterministic label trace from a vertex; nullopt when it dies.
std::optional<int> trace(const InvolutiveGraph& g, int from, const Word& w) {
  int v = from;
  for (int letter : w.letters()) {
    int next = -1;
    for (int e : g.g.fstar(v)) {
      if (g.elabel.at(e) == letter) {
        next = g.g.t(e);
        break;
      }
    }
    if (next < 0) return std::nullopt;
    v = next;
  }
  return v;
}

struct Uf {
  std::map<int, int> p;

  int find(int x) {
    if (!p.count(x)) p[x] = x;
    while (p[x] != x) {
      p[x] = p[p[x]];
      x = p[x];
    }
    return x;
  }

  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

void validate_involutive(const InvolutiveGraph& g) {
  if (g.vinv.size() != g.g.vertices().size() ||
      g.einv.size() != g.g.edges().size()) {
    throw std::logic_error("involution domain mismatch");
  }
  for (int v : g.g.vertices()) {
    int w = g.vinv.at(v);
    if (!g.g.has_vertex(w) || g.vinv.at(w) != v) {
      throw std::logic_error("vertex involution broken");
    }
  }
  for (const auto& [e, ends] : g.g.edges()) {
    int ei = g.einv.at(e);
    if (ei == e || !g.g.has_edge(ei) || g.einv.at(ei) != e) {
      throw std::logic_error("edge involution broken");
    }
    if (ends.src != g.vinv.at(g.g.t(ei))) {
      throw std::logic_error("o(e) != t(e^-1)^-1");
    }
    if (!g.elabel.empty()) {
      int l = g.elabel.at(e);
      if (l == 0 || g.elabel.at(ei) != -l) {
        throw std::logic_error("label involution broken");
      }
    }
  }
  if (g.basepoint >= 0 &&
      (!g.g.has_vertex(g.basepoint) || g.vinv.at(g.basepoint) != g.basepoint)) {
    throw std::logic_error("basepoint not fixed");
  }
}

bool is_reduced(const Word& g) {
  for (int i = 0; i + 1 < g.size(); ++i) {
    if (g[i] == -g[i + 1]) return false;
  }
  return true;
}

Word free_reduce(const Word& g) {
  std::vector<int> out;
  for (int letter : g.letters()) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return Word(out);
}

Word inverse(const Word& g) {
  std::vector<int> out;
  for (int i = g.size() - 1; i >= 0; --i) out.push_back(-g[i]);
  return Word(out);
}

SubgroupGraph stallings_fold(const std::vector<Word>& generators,
                             int ambient_rank) {
  int r = ambient_rank;
  for (const Word& w : generators) {
    if (!is_reduced(w)) throw std::invalid_argument("unreduced generator");
    for (int letter : w.letters()) {
      if (letter == 0) throw std::invalid_argument("zero letter");
      if (ambient_rank > 0 && std::abs(letter) > ambient_rank) {
        throw std::invalid_argument("letter out of range");
      }
      r = std::max(r, std::abs(letter));
    }
  }

  Digraph g;
  g.add_vertex(0);
  std::map<int, int> einv, elabel;
  int nv = 1, ne = 0;
  for (const Word& w : generators) {
    if (w.empty()) continue;
    int prev = 0;
    for (int i = 0; i < w.size(); ++i) {
      int next = i + 1 == w.size() ? 0 : nv++;
      if (!g.has_vertex(next)) g.add_vertex(next);
      int e = ne++, ei = ne++;
      g.add_edge(e, prev, next);
      g.add_edge(ei, next, prev);
      einv[e] = ei;
      einv[ei] = e;
      elabel[e] = w[i];
      elabel[ei] = -w[i];
      prev = next;
    }
  }

  // Fold: identify targets of equally labeled edges with identified origins.
  Uf uf;
  std::set<int> alive;
  for (const auto& [e, ends] : g.edges()) alive.insert(e);
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> seen;
    for (int e : alive) {
      std::pair<int, int> key{uf.find(g.o(e)), elabel.at(e)};
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, e);
        continue;
      }
      uf.unite(g.t(it->second), g.t(e));
      alive.erase(einv.at(e));
      alive.erase(e);
      changed = true;
      break;
    }
  }

  Digraph q;
  for (int v : g.vertices()) q.add_vertex(uf.find(v));
  for (int e : alive) q.add_edge(e, uf.find(g.o(e)), uf.find(g.t(e)));
  int base = uf.find(0);

  // Relative core: trim hanging trees away from the basepoint.
  bool trimmed = true;
  while (trimmed) {
    trimmed = false;
    for (int v : q.vertices()) {
      if (v == base || q.odeg(v) != 1) continue;
      int e = q.fstar(v)[0];
      q.erase_edge(e);
      q.erase_edge(einv.at(e));
      trimmed = true;
      break;
    }
  }
  std::set<int> keep;
  for (const auto& [e, ends] : q.edges()) keep.insert(e);
  q = q.edge_subgraph(keep, {base});
  q.initial = {base};
  q.final_ = {base};

  SubgroupGraph res;
  res.graph.g = q;
  res.graph.basepoint = base;
  for (int v : q.vertices()) res.graph.vinv[v] = v;
  for (const auto& [e, ends] : q.edges()) {
    res.graph.einv[e] = einv.at(e);
    res.graph.elabel[e] = elabel.at(e);
  }
  res.ambient_rank = r;
  res.generators = generators;
  validate_involutive(res.graph);
  return res;
}

bool contains(const SubgroupGraph& A, const Word& g) {
  if (!is_reduced(g)) throw std::invalid_argument("unreduced word");
  auto z = trace(A.graph, A.graph.basepoint, g);
  return z.has_value() && *z == A.graph.basepoint;
}

InvolutiveGraph st(const InvolutiveGraph& g) {
  auto rep = [&](int v) { return std::min(v, g.vinv.at(v)); };
  InvolutiveGraph r;
  for (int v : g.g.vertices()) {
    if (!r.g.has_vertex(rep(v))) r.g.add_vertex(rep(v));
  }
  for (const auto& [e, ends] : g.g.edges()) {
    r.g.add_edge(e, rep(ends.src), rep(ends.dst));
  }
  for (int v : g.g.initial) r.g.initial.insert(rep(v));
  for (int v : g.g.final_) r.g.final_.insert(rep(v));
  r.einv = g.einv;
  for (int v : r.g.vertices()) r.vinv[v] = v;
  r.elabel = g.elabel;
  r.basepoint = g.basepoint < 0 ? -1 : rep(g.basepoint);
  return r;
}

InvolutiveGraph sp(const InvolutiveGraph& g) {
  validate_involutive(g);
  InvolutiveGraph r = g;
  int nextv = r.g.vertices().empty() ? 0 : *r.g.vertices().rbegin() + 1;
  int nexte = r.g.edges().empty() ? 0 : r.g.edges().rbegin()->first + 1;
  for (;;) {
    int v = -1, e1 = -1, e2 = -1;
    for (int u : r.g.vertices()) {
      if (!r.fixed(u) || is_marked(r, u)) continue;
      if (r.g.ideg(u) != 2 || r.g.odeg(u) != 2) continue;
      int f = r.g.bstar(u)[0], h = r.g.bstar(u)[1];
      if (h == r.einv.at(f)) continue;  // a loop pair: unsplittable
      v = u;
      e1 = f;
      e2 = r.einv.at(h);
      break;
    }
    if (v < 0) break;

    int e1i = r.einv.at(e1), e2i = r.einv.at(e2);
    int a1 = nexte++, a1i = nexte++, a2 = nexte++, a2i = nexte++;
    int vp = nextv++, vm = nextv++;
    int src1 = r.g.o(e1), dst1 = r.g.t(e1i);
    int dst2 = r.g.t(e2), src2 = r.g.o(e2i);
    bool labeled = !r.elabel.empty();
    int l1 = labeled ? r.elabel.at(e1) : 0, l2 = labeled ? r.elabel.at(e2) : 0;

    std::set<int> keep, extra;
    for (const auto& [e, ends] : r.g.edges()) {
      if (e != e1 && e != e1i && e != e2 && e != e2i) keep.insert(e);
    }
    for (int u : r.g.vertices()) {
      if (u != v) extra.insert(u);
    }
    Digraph ng = r.g.edge_subgraph(keep, extra);
    ng.add_vertex(vp);
    ng.add_vertex(vm);
    ng.add_edge(a1, src1, vp);
    ng.add_edge(a1i, vm, dst1);
    ng.add_edge(a2, vp, dst2);
    ng.add_edge(a2i, src2, vm);
    r.g = ng;

    for (int e : {e1, e1i, e2, e2i}) {
      r.einv.erase(e);
      r.elabel.erase(e);
    }
    r.einv[a1] = a1i;
    r.einv[a1i] = a1;
    r.einv[a2] = a2i;
    r.einv[a2i] = a2;
    r.vinv.erase(v);
    r.vinv[vp] = vm;
    r.vinv[vm] = vp;
    if (labeled) {
      r.elabel[a1] = l1;
      r.elabel[a1i] = -l1;
      r.elabel[a2] = l2;
      r.elabel[a2i] = -l2;
    }
  }
  validate_involutive(r);
  return r;
}

std::set<int> involutive_branch_vertices(const InvolutiveGraph& g) {
  std::set<int> out;
  for (int v : g.g.vertices()) {
    if (g.g.ideg(v) != 1 || g.g.odeg(v) != 1) {
      out.insert(v);
    } else if (g.fixed(v) && g.einv.at(g.g.bstar(v)[0]) == g.g.fstar(v)[0]) {
      out.insert(v);  // dead end of an undirected segment
    }
  }
  return out;
}

int rank(const InvolutiveGraph& g) {
  if (g.g.num_vertices() == 0) throw std::invalid_argument("empty graph");
  if (weak_components(g.g).at(*g.g.vertices().rbegin()) != 0 ||
      betti(g.g).b0 != 1) {
    throw std::invalid_argument("disconnected graph");
  }
  std::set<int> branch = involutive_branch_vertices(g);
  long long segments = 0;
  std::set<int> orbits;
  for (int v : branch) {
    segments += g.g.odeg(v);
    orbits.insert(std::min(v, g.vinv.at(v)));
  }
  if (segments % 2 != 0) throw std::logic_error("odd segment count");
  int rk = branch.empty()
               ? 1
               : static_cast<int>(segments / 2 - orbits.size() + 1);
  InvolutiveGraph s = st(g);
  int euler = s.g.num_edges() / 2 - s.g.num_vertices() + 1;
  if (rk != euler) throw std::logic_error("rank formulas disagree");
  return rk;
}

int rank(const SubgroupGraph& A) { return rank(A.graph); }

namespace {

// Canonical encoding of a connected involutive graph from a start vertex,
// by bidirectional BFS with label-ordered neighbor visits.
std::vector<long long> inv_encoding(const InvolutiveGraph& g, int start) {
  std::map<int, int> idx{{start, 0}};
  std::vector<int> order{start};
  for (size_t q = 0; q < order.size(); ++q) {
    int v = order[q];
    std::vector<std::pair<int, int>> outs, ins;
    for (int e : g.g.fstar(v)) outs.push_back({lab_or_zero(g, e), g.g.t(e)});
    for (int e : g.g.bstar(v)) ins.push_back({lab_or_zero(g, e), g.g.o(e)});
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    for (size_t i = 1; i < outs.size(); ++i) {
      if (outs[i].first == outs[i - 1].first) {
        throw std::logic_error("label-deterministic stars required");
      }
    }
    for (size_t i = 1; i < ins.size(); ++i) {
      if (ins[i].first == ins[i - 1].first) {
        throw std::logic_error("label-deterministic stars required");
      }
    }
    for (const auto& group : {outs, ins}) {
      for (const auto& [l, w] : group) {
        if (!idx.count(w)) {
          idx[w] = static_cast<int>(order.size());
          order.push_back(w);
        }
      }
    }
  }
  if (static_cast<int>(order.size()) != g.g.num_vertices()) {
    throw std::invalid_argument("disconnected graph");
  }

  std::vector<long long> enc{g.g.num_vertices(), g.g.num_edges()};
  std::vector<std::array<long long, 3>> triples;
  for (const auto& [e, ends] : g.g.edges()) {
    triples.push_back({idx.at(ends.src), idx.at(ends.dst),
                       static_cast<long long>(lab_or_zero(g, e))});
  }
  std::sort(triples.begin(), triples.end());
  for (const auto& t : triples) enc.insert(enc.end(), t.begin(), t.end());

  // Edge keys (origin index, label) are unique under determinism.
  std::vector<std::array<long long, 4>> epairs;
  for (const auto& [e, ends] : g.g.edges()) {
    int ei = g.einv.at(e);
    if (e > ei) continue;
    std::array<long long, 4> p{idx.at(ends.src),
                               static_cast<long long>(lab_or_zero(g, e)),
                               idx.at(g.g.o(ei)),
                               static_cast<long long>(lab_or_zero(g, ei))};
    std::array<long long, 4> swapped{p[2], p[3], p[0], p[1]};
    epairs.push_back(std::min(p, swapped));
  }
  std::sort(epairs.begin(), epairs.end());
  for (const auto& p : epairs) enc.insert(enc.end(), p.begin(), p.end());

  std::vector<std::pair<long long, long long>> vpairs;
  for (int v : g.g.vertices()) {
    long long a = idx.at(v), b = idx.at(g.vinv.at(v));
    if (a <= b) vpairs.push_back({a, b});
  }
  std::sort(vpairs.begin(), vpairs.end());
  for (const auto& [a, b] : vpairs) {
    enc.push_back(a);
    enc.push_back(b);
  }

  enc.push_back(g.basepoint < 0 ? -1 : idx.at(g.basepoint));
  for (const auto* marks : {&g.g.initial, &g.g.final_}) {
    std::vector<long long> m;
    for (int v : *marks) m.push_back(idx.at(v));
    std::sort(m.begin(), m.end());
    enc.push_back(static_cast<long long>(m.size()));
    enc.insert(enc.end(), m.begin(), m.end());
  }
  return enc;
}

std::vector<long long> inv_canon(const InvolutiveGraph& g) {
  if (g.basepoint >= 0) return inv_encoding(g, g.basepoint);
  std::vector<long long> best;
  for (int v : g.g.vertices()) {
    auto enc = inv_encoding(g, v);
    if (best.empty() || enc < best) best = std::move(enc);
  }
  return best;
}

}  // namespace

bool isomorphic(const InvolutiveGraph& a, const InvolutiveGraph& b) {
  if (a.g.num_vertices() != b.g.num_vertices() ||
      a.g.num_edges() != b.g.num_edges()) {
    return false;
  }
  if ((a.basepoint >= 0) != (b.basepoint >= 0)) return false;
  if (a.g.num_vertices() == 0) return true;
  return inv_canon(a) == inv_canon(b);
}

int rose_edge(int letter) {
  return letter > 0 ? 2 * (letter - 1) : 2 * (-letter) - 1;
}

int rose_letter(int edge) { return edge % 2 == 0 ? edge / 2 + 1 : -(edge / 2 + 1); }

Digraph rose(int r) {
  Digraph g;
  g.add_vertex(0);
  for (int e = 0; e < 2 * r; ++e) g.add_edge(e, 0, 0);
  return g;
}

GraphMap to_rose(const InvolutiveGraph& g, int r) {
  GraphMap m;
  m.source = g.g;
  m.target = rose(r);
  for (int v : g.g.vertices()) m.vmap[v] = 0;
  for (const auto& [e, ends] : g.g.edges()) {
    int l = g.elabel.at(e);
    if (l == 0 || std::abs(l) > r) throw std::invalid_argument("label out of range");
    m.emap[e] = rose_edge(l);
  }
  return m;
}

namespace {

Word cyclic_reduce(const Word& w) {
  Word c = free_reduce(w);
  while (c.size() >= 2 && c[0] == -c[c.size() - 1]) c = c.slice(1, c.size() - 1);
  return c;
}

Word canonical_cyclic(const Word& w) {
  if (w.empty()) return w;
  Word best = w;
  for (const Word& base : {w, inverse(w)}) {
    for (int i = 0; i < base.size(); ++i) {
      Word r = rotate(base, i);
      if (r < best) best = r;
    }
  }
  return best;
}

// Canonical encoding of a strongly connected labeled component by
// label-ordered BFS, minimized over start vertices.
std::vector<long long> comp_encoding(const Digraph& k,
                                     const std::map<int, int>& lab, int start) {
  std::map<int, int> idx{{start, 0}};
  std::vector<int> order{start};
  for (size_t q = 0; q < order.size(); ++q) {
    std::vector<std::pair<int, int>> outs;
    for (int e : k.fstar(order[q])) outs.push_back({lab.at(e), k.t(e)});
    std::sort(outs.begin(), outs.end());
    for (const auto& [l, w] : outs) {
      if (!idx.count(w)) {
        idx[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  }
  if (static_cast<int>(order.size()) != k.num_vertices()) {
    throw std::logic_error("component not strongly connected");
  }
  std::vector<long long> enc{k.num_vertices(), k.num_edges()};
  std::vector<std::array<long long, 3>> triples;
  for (const auto& [e, ends] : k.edges()) {
    triples.push_back({idx.at(ends.src), idx.at(ends.dst),
                       static_cast<long long>(lab.at(e))});
  }
  std::sort(triples.begin(), triples.end());
  for (const auto& t : triples) enc.insert(enc.end(), t.begin(), t.end());
  return enc;
}

std::vector<long long> comp_canon(const Digraph& k,
                                  const std::map<int, int>& lab) {
  std::vector<long long> best;
  for (int v : k.vertices()) {
    auto enc = comp_encoding(k, lab, v);
    if (best.empty() || enc < best) best = std::move(enc);
  }
  return best;
}

}  // namespace

std::vector<IntersectionClass> intersection_classes(const SubgroupGraph& A,
                                                    const SubgroupGraph& B) {
  if (A.ambient_rank != B.ambient_rank) {
    throw std::invalid_argument("mismatched ambient ranks");
  }
  int r = A.ambient_rank;
  InvolutiveGraph sa = sp(A.graph), sb = sp(B.graph);
  sa.g.initial.clear();
  sa.g.final_.clear();
  sb.g.initial.clear();
  sb.g.final_.clear();
  FibreProduct fp = fibre_product(to_rose(sa, r), to_rose(sb, r));
  Digraph c = core(fp.product);
  std::vector<Digraph> comps = split_components(c);

  std::map<int, int> comp_of;
  for (size_t i = 0; i < comps.size(); ++i) {
    for (int v : comps[i].vertices()) comp_of[v] = static_cast<int>(i);
  }
  auto pvinv = [&](int v) {
    auto [x, y] = fp.vpair.at(v);
    return fp.vid.at({sa.vinv.at(x), sb.vinv.at(y)});
  };

  std::map<std::vector<long long>, IntersectionClass> classes;
  for (size_t i = 0; i < comps.size(); ++i) {
    const Digraph& k = comps[i];
    int mirror = comp_of.at(pvinv(*k.vertices().begin()));
    if (mirror < static_cast<int>(i)) continue;  // orbit already handled
    bool self_inverse = mirror == static_cast<int>(i);

    std::map<int, int> labels;
    for (const auto& [e, ends] : k.edges()) {
      labels[e] = rose_letter(fp.to_delta.emap.at(e));
    }

    bool circle = !self_inverse;
    for (int v : k.vertices()) {
      if (k.ideg(v) != 1 || k.odeg(v) != 1) circle = false;
    }

    int rk;
    if (self_inverse) {
      std::set<int> orbits;
      for (int v : k.vertices()) orbits.insert(std::min(v, pvinv(v)));
      rk = k.num_edges() / 2 - static_cast<int>(orbits.size()) + 1;
    } else {
      rk = k.num_edges() - k.num_vertices() + 1;
    }
    // Contractible components carry only the trivial intersection.
    if (rk == 0) continue;

    std::vector<long long> key;
    Word circle_label;
    if (circle) {
      int v0 = *k.vertices().begin(), v = v0;
      Word w;
      do {
        int e = k.fstar(v)[0];
        w.push_back(labels.at(e));
        v = k.t(e);
      } while (v != v0);
      circle_label = canonical_cyclic(w);
      key.push_back(0);
      for (int l : circle_label.letters()) key.push_back(l);
    } else {
      std::map<int, int> rlabels;
      Digraph rev;
      for (int v : k.vertices()) rev.add_vertex(v);
      for (const auto& [e, ends] : k.edges()) {
        rev.add_edge(e, ends.dst, ends.src);
        rlabels[e] = -labels.at(e);
      }
      key.push_back(1);
      auto enc = std::min(comp_canon(k, labels), comp_canon(rev, rlabels));
      key.insert(key.end(), enc.begin(), enc.end());
    }

    auto it = classes.find(key);
    if (it == classes.end()) {
      IntersectionClass cls;
      cls.rep = k;
      cls.labels = labels;
      cls.cyclic = circle;
      cls.cyclic_label = circle_label;
      cls.rank = rk;
      cls.multiplicity = 1;
      classes.emplace(std::move(key), std::move(cls));
    } else {
      if (it->second.rank != rk) throw std::logic_error("class rank mismatch");
      ++it->second.multiplicity;
    }
  }

  std::vector<IntersectionClass> out;
  for (auto& [key, cls] : classes) out.push_back(std::move(cls));
  return out;
}

std::optional<int> relative_order(const SubgroupGraph& A, const Word& g) {
  if (g.empty()) throw std::invalid_argument("empty word");
  if (!is_reduced(g)) throw std::invalid_argument("unreduced word");
  for (int letter : g.letters()) {
    if (letter == 0 || std::abs(letter) > A.ambient_rank) {
      throw std::invalid_argument("letter out of range");
    }
  }
  Word u, c = g;
  while (c.size() >= 2 && c[0] == -c[c.size() - 1]) {
    u.push_back(c[0]);
    c = c.slice(1, c.size() - 1);
  }
  int base = A.graph.basepoint;
  auto start = trace(A.graph, base, u);
  if (!start) return std::nullopt;
  Word uinv = inverse(u);
  std::set<int> seen;
  int y = *start;
  for (int n = 1; n <= A.graph.g.num_vertices() + 1; ++n) {
    auto next = trace(A.graph, y, c);
    if (!next) return std::nullopt;
    y = *next;
    auto back = trace(A.graph, y, uinv);
    if (back && *back == base) return n;
    if (!seen.insert(y).second) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<CyclicClass> maximal_cyclic_classes(const SubgroupGraph& A) {
  int rk = rank(A);
  if (rk == 0) return {};
  InvolutiveGraph s = sp(A.graph);
  LongCycles lc = long_cycles(to_rose(s, A.ambient_rank), 12 * rk);
  std::map<std::vector<int>, std::set<int>> classes;
  std::map<std::vector<int>, Word> words;
  for (const LongCycle& cyc : lc.cycles) {
    Word w;
    for (int e : cyc.label.letters()) w.push_back(rose_letter(e));
    Word reduced = cyclic_reduce(w);
    if (reduced.empty()) continue;
    Word canon = canonical_cyclic(reduced);
    classes[canon.letters()].insert(cyc.degree);
    words.emplace(canon.letters(), canon);
  }
  std::vector<CyclicClass> out;
  for (const auto& [key, degrees] : classes) {
    for (int d : degrees) out.push_back({words.at(key), d});
  }
  return out;
}

std::set<int> spectrum_superset(const SubgroupGraph& A) {
  int rk = rank(A);
  if (rk < 1) throw std::invalid_argument("rank zero subgroup");
  std::set<int> n;
  for (int i = 1; i < 12 * rk; ++i) n.insert(i);
  for (const CyclicClass& cls : maximal_cyclic_classes(A)) n.insert(cls.index);
  return n;
}

}  // namespace fibreprod
