#include <algorithm>
#include <functional>

#include "doctest.h"
#include "fibreprod/gen.hpp"

using namespace fibreprod;

namespace {

bool subgraph_of(const Digraph& a, const Digraph& b) {
  for (int v : a.vertices()) {
    if (!b.has_vertex(v)) return false;
  }
  for (const auto& [e, ends] : a.edges()) {
    if (!b.has_edge(e) || !(b.ends(e) == ends)) return false;
  }
  return true;
}

// Every label-matching path in m.source over target_path, by plain DFS.
int brute_lift_count(const GraphMap& m, const Path& tp) {
  int count = 0;
  std::function<void(int, int)> go = [&](int v, int pos) {
    if (pos == tp.size()) {
      ++count;
      return;
    }
    for (int e : m.source.fstar(v)) {
      if (m.e(e) == tp.edges[static_cast<size_t>(pos)]) go(m.source.t(e), pos + 1);
    }
  };
  for (int v : m.source.vertices()) {
    if (m.v(v) == tp.vertex_at(m.target, 0)) go(v, 0);
  }
  return count;
}

}  // namespace

TEST_CASE("map classification on small examples") {
  Digraph rose = gen_rose_delta(2);

  GraphMap two_loops;  // two loops with distinct labels: immersion
  two_loops.target = rose;
  two_loops.source.add_vertex(0);
  two_loops.source.add_edge(0, 0, 0);
  two_loops.source.add_edge(1, 0, 0);
  two_loops.vmap[0] = 0;
  two_loops.emap[0] = 0;
  two_loops.emap[1] = 1;
  CHECK(check_map(two_loops) == MapClass::Immersion);

  GraphMap clash = two_loops;  // same label twice: just a map
  clash.emap[1] = 0;
  CHECK(check_map(clash) == MapClass::Map);

  GraphMap funnel;  // distinct out-labels, equal in-labels
  funnel.target = rose;
  for (int v : {0, 1, 2}) {
    funnel.source.add_vertex(v);
    funnel.vmap[v] = 0;
  }
  funnel.source.add_edge(0, 0, 2);
  funnel.source.add_edge(1, 1, 2);
  funnel.emap[0] = 0;
  funnel.emap[1] = 0;
  CHECK(check_map(funnel) == MapClass::ForwardsImmersion);
  CHECK(is_forwards_immersion(funnel));
  CHECK(!is_immersion(funnel));

  GraphMap broken = funnel;  // endpoint mismatch
  broken.vmap.clear();
  broken.vmap[0] = 0;
  CHECK(check_map(broken) == MapClass::NotAMap);
}

TEST_CASE("core and rcore on a cycle with a marked segment") {
  Digraph g;
  for (int v = 0; v < 5; ++v) g.add_vertex(v);
  g.add_edge(0, 0, 1);  // 3-cycle 0 -> 1 -> 2 -> 0
  g.add_edge(1, 1, 2);
  g.add_edge(2, 2, 0);
  g.add_edge(3, 3, 4);  // disjoint marked segment
  g.initial = {3};
  g.final_ = {4};

  Digraph c = core(g);
  CHECK(c.num_edges() == 3);
  CHECK(!c.has_vertex(3));
  Digraph rc = rcore(g);
  CHECK(rc.num_edges() == 4);
  CHECK(rc.initial == std::set<int>{3});

  CHECK(core(c) == c);
  CHECK(rcore(rc) == rc);

  Digraph acyclic;
  for (int v = 0; v < 3; ++v) acyclic.add_vertex(v);
  acyclic.add_edge(0, 0, 1);
  acyclic.add_edge(1, 1, 2);
  CHECK(core(acyclic).num_vertices() == 0);
  CHECK(rcore(acyclic).num_vertices() == 0);

  acyclic.initial = {0, 2};
  acyclic.final_ = {2};
  Digraph rc2 = rcore(acyclic);  // path 0 -> 2 plus the trivial path at 2
  CHECK(rc2.num_edges() == 2);
  CHECK(rc2.has_vertex(2));
}

TEST_CASE("core and rcore are idempotent and nested on random graphs") {
  Gen rng(201);
  for (int it = 0; it < 200; ++it) {
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap m = gen_forwards_immersion(rng, rng.range(1, 4), rng.range(1, 25), t);
    Digraph c = core(m.source), rc = rcore(m.source);
    CHECK(subgraph_of(c, rc));
    CHECK(subgraph_of(rc, m.source));
    CHECK(core(c) == c);
    CHECK(rcore(rc) == rc);
    // Every core edge lies on an actual directed cycle back to its origin.
    for (const auto& [e, ends] : c.edges()) {
      std::set<int> seen{ends.dst};
      std::vector<int> stack{ends.dst};
      bool closes = ends.dst == ends.src;
      while (!stack.empty() && !closes) {
        int v = stack.back();
        stack.pop_back();
        for (int f : c.fstar(v)) {
          if (c.t(f) == ends.src) closes = true;
          if (seen.insert(c.t(f)).second) stack.push_back(c.t(f));
        }
      }
      CHECK(closes);
    }
  }
}

TEST_CASE("branch decomposition partitions the edges") {
  Gen rng(202);
  for (int it = 0; it < 200; ++it) {
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap m = gen_forwards_immersion(rng, rng.range(1, 4), rng.range(1, 25), t);
    const Digraph& g = m.source;
    BranchDecomposition bd = branch_decomposition(g);
    std::set<int> vbar = branch_vertices(g);

    std::set<int> seen;
    for (size_t i = 0; i < bd.elements.size(); ++i) {
      const BranchElement& el = bd.elements[i];
      REQUIRE(!el.edges.empty());
      for (size_t k = 0; k < el.edges.size(); ++k) {
        int e = el.edges[k];
        CHECK(seen.insert(e).second);
        CHECK(bd.position.at(e) ==
              std::pair<int, int>(static_cast<int>(i), static_cast<int>(k)));
        if (k + 1 < el.edges.size()) {
          int next = el.edges[k + 1];
          CHECK(g.t(e) == g.o(next));
          CHECK(!vbar.count(g.t(e)));  // interior vertices are regular
        }
      }
      if (el.cycle) {
        CHECK(g.t(el.edges.back()) == g.o(el.edges.front()));
        CHECK(!vbar.count(g.o(el.edges.front())));
      } else {
        bool ends_at_branch = vbar.count(g.o(el.edges.front())) &&
                              vbar.count(g.t(el.edges.back()));
        CHECK(ends_at_branch);
      }
    }
    CHECK(static_cast<int>(seen.size()) == g.num_edges());
    CHECK(bd.num_segments() + bd.num_cycles() == bd.size());

    for (int v : bd.isolated_vertices) {
      CHECK(g.ideg(v) == 0);
      CHECK(g.odeg(v) == 0);
    }
  }
}

TEST_CASE("betti numbers and components") {
  Digraph g;
  for (int v = 0; v < 4; ++v) g.add_vertex(v);
  g.add_edge(0, 0, 1);
  g.add_edge(1, 1, 0);
  g.add_edge(2, 2, 2);
  Betti b = betti(g);
  CHECK(b.b0 == 3);  // {0,1}, {2}, {3}
  CHECK(b.b1 == 2);
  auto wc = weak_components(g);
  CHECK(wc.at(0) == wc.at(1));
  CHECK(wc.at(0) != wc.at(2));
  auto comps = split_components(g);
  CHECK(comps.size() == 3);
  int edge_total = 0;
  for (const auto& c : comps) edge_total += c.num_edges();
  CHECK(edge_total == g.num_edges());
}

TEST_CASE("betti bound holds on relative cores") {
  Gen rng(203);
  for (int it = 0; it < 400; ++it) {
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap m = gen_forwards_immersion(rng, rng.range(1, 4), rng.range(1, 30), t);
    BettiBoundCheck bc = betti_bound_check(rcore(m.source));
    CHECK(bc.ok());
  }
}

TEST_CASE("lifts agree with a brute DFS and split on branch vertices") {
  Gen rng(204);
  for (int it = 0; it < 200; ++it) {
    Topology t = static_cast<Topology>(rng.below(5));
    int alphabet = rng.range(1, 3);
    GraphMap m = gen_forwards_immersion(rng, alphabet, rng.range(1, 12), t);
    Path tp;
    tp.origin = 0;
    int len = rng.range(1, 5);
    for (int i = 0; i < len; ++i) tp.edges.push_back(rng.below(alphabet));
    Lifts ls = lifts(m, tp);
    CHECK(static_cast<int>(ls.all().size()) == brute_lift_count(m, tp));
    std::set<int> vbar = branch_vertices(m.source);
    for (const Path& p : ls.slift) {
      CHECK(p.valid(m.source));
      CHECK(m.apply(p) == Word(tp.edges));
      for (int i = 0; i <= p.size(); ++i) CHECK(!vbar.count(p.vertex_at(m.source, i)));
    }
    for (const Path& p : ls.olift) {
      CHECK(p.valid(m.source));
      bool hits = false;
      for (int i = 0; i <= p.size(); ++i) {
        if (vbar.count(p.vertex_at(m.source, i))) hits = true;
      }
      CHECK(hits);
    }
  }
}
