#include "fibreprod/longcycles.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibreprod {

namespace {

Word path_label(const GraphMap& m, const std::vector<int>& edges) {
  Word out;
  for (int e : edges) out.push_back(m.emap.at(e));
  return out;
}

// Smallest p dividing |label| with label == (label[:p])^(|label|/p); this is
// the cyclic primitive root when the word is read around a closed cycle.
int cyclic_root(const Word& label) {
  int n = label.size();
  for (int p = 1; p <= n; ++p)
    if (n % p == 0 && has_period(label, p)) return p;
  return n;
}

// Deterministic walk along w^∞ from (start, phase 0); returns the closed path
// back to the start state if one exists within the cap, otherwise nullopt.
std::optional<Path> close_w_cycle(const GraphMap& gamma, const Digraph& g, int start,
                                  const Word& w, long long max_edges) {
  std::set<std::pair<int, int>> visited{{start, 0}};
  Path path;
  path.origin = start;
  int at = start;
  long long steps = 0;
  while (steps < max_edges) {
    int want = w[static_cast<int>(steps % w.size())];
    int next_edge = -1;
    for (int e : g.fstar(at))
      if (gamma.emap.at(e) == want) {
        next_edge = e;
        break;  // forwards immersion: at most one match
      }
    if (next_edge == -1) return std::nullopt;
    path.edges.push_back(next_edge);
    at = g.t(next_edge);
    ++steps;
    std::pair<int, int> state{at, static_cast<int>(steps % w.size())};
    if (state == std::pair<int, int>{start, 0}) return path;
    if (!visited.insert(state).second) return std::nullopt;  // looped elsewhere
  }
  return std::nullopt;
}

}  // namespace

LongCycles long_cycles(const GraphMap& gamma) {
  return long_cycles(gamma, 12 * betti(gamma.source).b1);
}

LongCycles long_cycles(const GraphMap& gamma, int threshold) {
  if (!is_forwards_immersion(gamma))
    throw std::invalid_argument("long cycles need a forwards immersion");
  LongCycles out;
  out.beta1 = betti(gamma.source).b1;
  out.threshold = threshold;
  if (threshold <= 0) threshold = 1;

  GraphMap cg = core_map(gamma);
  BranchDecomposition bd = branch_decomposition(cg.source);

  std::vector<LongCycle> candidates;
  for (const BranchElement& el : bd.elements) {
    Word label = path_label(cg, el.edges);
    if (el.cycle) {
      int p = cyclic_root(label);
      int d = label.size() / p;
      if (d < threshold) continue;
      LongCycle lc;
      lc.circle.origin = cg.source.o(el.edges.front());
      lc.circle.edges = el.edges;
      lc.label = label.prefix(p);
      lc.degree = d;
      candidates.push_back(std::move(lc));
      continue;
    }
    int per = period_profile(label).per;
    if (el.size() < 2 * per) continue;
    Word w = label.prefix(per);
    // Length cap from the simple-w-path bound.
    long long blocks = 4LL * bd.size() + 1;
    for (const BranchElement& other : bd.elements) blocks += other.size() / per;
    std::optional<Path> cycle =
        close_w_cycle(cg, cg.source, cg.source.o(el.edges.front()), w, blocks * per);
    if (!cycle) continue;
    int d = cycle->size() / per;
    if (d < threshold) continue;
    LongCycle lc;
    lc.circle = *cycle;
    lc.label = w;
    lc.degree = d;
    candidates.push_back(std::move(lc));
  }

  // The same unbased cycle may be discovered from several starting segments,
  // rotated; deduplicate by cyclic equality of the edge sequences.
  for (const LongCycle& c : candidates) {
    bool dup = false;
    for (const LongCycle& kept : out.cycles)
      if (cyclic_conjugate(Word(c.circle.edges), Word(kept.circle.edges))) {
        dup = true;
        break;
      }
    if (!dup) out.cycles.push_back(c);
  }
  return out;
}

bool factors_through(const Path& f, const LongCycles& lc) {
  if (f.empty()) return false;
  for (const LongCycle& c : lc.cycles) {
    if (f.size() % c.circle.size() != 0) continue;
    int d = f.size() / c.circle.size();
    if (cyclic_conjugate(Word(c.circle.edges).pow(d), Word(f.edges))) return true;
  }
  return false;
}

Digraph s_image(const FibreProduct& fp, const LongCycles& lc_gamma,
                const LongCycles& lc_lambda) {
  std::set<int> edges;
  const Digraph& delta = fp.gamma.target;
  for (const LongCycle& c : lc_gamma.cycles) {
    Circle cg = make_circle(delta, fp.gamma.apply(c.circle));
    for (const LongCycle& d : lc_lambda.cycles) {
      Circle cl = make_circle(delta, fp.lambda.apply(d.circle));
      FibreProduct small = fibre_product(cg.to_delta, cl.to_delta);
      Digraph cr = core(small.product);
      for (const auto& [pe, ends] : cr.edges()) {
        (void)ends;
        auto [i, j] = small.epair.at(pe);
        edges.insert(fp.eid.at({c.circle.edges[static_cast<size_t>(i)],
                                d.circle.edges[static_cast<size_t>(j)]}));
      }
    }
  }
  return fp.product.edge_subgraph(edges);
}

ComponentBoundCheck w_cycles_bound_check(const GraphMap& gamma, const Word& w) {
  if (!is_immersion(gamma))
    throw std::invalid_argument("the cycle-count bound needs an immersion");
  if (!period_profile(w).primitive) throw std::invalid_argument("imprimitive loop");
  Circle s1 = make_circle(gamma.target, w);
  FibreProduct fp = fibre_product(gamma, s1.to_delta);
  ComponentBoundCheck out;
  out.count = betti(core(fp.product)).b0;
  out.beta1 = betti(gamma.source).b1;
  return out;
}

ComponentBoundCheck long_components_check(const GraphMap& gamma,
                                          const std::vector<Circle>& circles) {
  if (!is_immersion(gamma))
    throw std::invalid_argument("the component bound needs an immersion");
  ComponentBoundCheck out;
  out.beta1 = betti(gamma.source).b1;
  for (const Circle& c : circles) {
    Word label;
    for (int i = 0; i < c.size; ++i) label.push_back(c.to_delta.emap.at(i));
    if (!period_profile(label).primitive)
      throw std::invalid_argument("imprimitive circle label");
    FibreProduct fp = fibre_product(gamma, c.to_delta);
    for (const Digraph& comp : split_components(core(fp.product))) {
      bool circle_comp = comp.num_edges() > 0;
      for (int v : comp.vertices())
        if (comp.ideg(v) != 1 || comp.odeg(v) != 1) circle_comp = false;
      if (!circle_comp) continue;
      if (comp.num_edges() / c.size >= 12 * out.beta1) ++out.count;
    }
  }
  return out;
}

}  // namespace fibreprod
