#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "fibreprod/gen.hpp"
#include "fibreprod/wgraph.hpp"

using namespace fibreprod;

namespace {

Path circle_path(int start, int len, int size) {
  Path p;
  p.origin = start;
  for (int i = 0; i < len; ++i) p.edges.push_back((start + i) % size);
  return p;
}

bool proper_suffix_of(const Word& a, const Word& w) {
  return a.size() < w.size() && w.suffix(a.size()) == a;
}

bool proper_prefix_of(const Word& a, const Word& w) {
  return a.size() < w.size() && w.prefix(a.size()) == a;
}

}  // namespace

TEST_CASE("w factorisation of full and rotated circle paths") {
  Gen rng(401);
  for (int it = 0; it < 100; ++it) {
    Word w = gen_primitive_word(rng, 2, rng.range(2, 6));
    int W = w.size();
    Circle c = make_circle(gen_rose_delta(2), w.pow(2));

    WPath full = w_factorise(circle_path(0, 2 * W, 2 * W), c.to_delta, w);
    CHECK(full.w_head.empty());
    CHECK(full.n == 2);
    CHECK(full.w_tail.empty());
    CHECK(full.phase0 == 0);

    WPath rot = w_factorise(circle_path(1, 2 * W, 2 * W), c.to_delta, w);
    CHECK(rot.w_head == w.suffix(W - 1));
    CHECK(rot.n == 1);
    CHECK(rot.w_tail == w.prefix(1));
    CHECK(rot.phase0 == 1);
  }
}

TEST_CASE("w factorisation reconstructs the label") {
  Gen rng(402);
  for (int it = 0; it < 300; ++it) {
    Word w = gen_primitive_word(rng, 2, rng.range(1, 6));
    int W = w.size();
    int deg = rng.range(2, 4);
    Circle c = make_circle(gen_rose_delta(2), w.pow(deg));
    int start = rng.below(deg * W);
    int len = rng.range(1, deg * W);
    Path f = circle_path(start, len, deg * W);
    Word label = c.to_delta.apply(f);
    // The accepted parses read the label as (proper suffix of w)·w^n·(proper
    // prefix of w) with the longest possible head; a fragment with no such
    // parse is rejected.
    int best = -1;
    for (int a = std::min(len, W - 1); a >= 0 && best < 0; --a) {
      if (w.suffix(a) != label.prefix(a)) continue;
      Word rest = label.slice(a, len);
      if (w.pow(len / W + 1).prefix(rest.size()) == rest) best = a;
    }
    if (best < 0) {
      CHECK_THROWS_AS(w_factorise(f, c.to_delta, w), std::invalid_argument);
      continue;
    }
    WPath wp = w_factorise(f, c.to_delta, w);
    CHECK(wp.w_head + w.pow(wp.n) + wp.w_tail == label);
    CHECK((wp.w_head.empty() || proper_suffix_of(wp.w_head, w)));
    CHECK((wp.w_tail.empty() || proper_prefix_of(wp.w_tail, w)));
    if (len >= W) {
      CHECK(wp.phase0 == start % W);
    } else {
      CHECK(wp.w_head.size() == best);
    }
  }
}

TEST_CASE("omega components cover the circle and have the stated shapes") {
  Gen rng(403);
  for (int it = 0; it < 120; ++it) {
    int alphabet = rng.range(2, 3);
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap g = gen_forwards_immersion(rng, alphabet, rng.range(1, 14), t);
    Word w = gen_primitive_word(rng, alphabet, rng.range(1, 5));
    OmegaGraph om = omega(g, w, 0);
    REQUIRE(om.components.size() == om.shapes.size());
    REQUIRE(om.components.size() == om.max_wlen.size());
    for (size_t i = 0; i < om.components.size(); ++i) {
      const Digraph& comp = om.components[i];
      // Projection hits every circle edge.
      std::set<int> hit;
      for (const auto& [e, ends] : comp.edges()) {
        (void)ends;
        hit.insert(om.p_w.emap.at(e));
      }
      CHECK(static_cast<int>(hit.size()) == om.circle.size);

      bool has_cycle = core(comp).num_edges() > 0;
      CHECK((om.max_wlen[i] == -1) == has_cycle);
      if (om.shapes[i] == OmegaShape::Tree) CHECK(!has_cycle);
      if (om.shapes[i] == OmegaShape::CycleWithTrees) CHECK(has_cycle);
    }
  }
}

TEST_CASE("sink sets respect the short element budget") {
  Gen rng(404);
  for (int it = 0; it < 150; ++it) {
    int alphabet = rng.range(2, 3);
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap g = gen_forwards_immersion(rng, alphabet, rng.range(1, 16), t);
    Word w = gen_primitive_word(rng, alphabet, rng.range(1, 5));

    BranchDecomposition bd = branch_decomposition(g.source);
    std::set<int> short_edges;
    for (const auto& el : bd.elements) {
      if (el.size() < w.size()) short_edges.insert(el.edges.begin(), el.edges.end());
    }
    int ebar_w = branch_decomposition(g.source.edge_subgraph(short_edges)).size();

    CHECK(static_cast<int>(w_sinks(g, w).size()) <= 2 * ebar_w);
    auto [shift, sinks] = w_sinks_general(g, w);
    CHECK(shift >= 0);
    CHECK(shift < w.size());
    CHECK(static_cast<int>(sinks.size()) <= 2 * ebar_w);
  }
}

TEST_CASE("gamma w factorisation reassembles the path") {
  Gen rng(405);
  for (int it = 0; it < 200; ++it) {
    int alphabet = rng.range(2, 3);
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap g = gen_forwards_immersion(rng, alphabet, rng.range(2, 14), t);
    Word w = gen_primitive_word(rng, alphabet, rng.range(1, 4));

    // Random walk in the source.
    std::vector<int> verts(g.source.vertices().begin(), g.source.vertices().end());
    Path f;
    f.origin = verts[static_cast<size_t>(rng.below(static_cast<int>(verts.size())))];
    int v = f.origin;
    int len = rng.range(1, 20);
    for (int i = 0; i < len; ++i) {
      const auto& out = g.source.fstar(v);
      if (out.empty()) break;
      int e = out[static_cast<size_t>(rng.below(static_cast<int>(out.size())))];
      f.edges.push_back(e);
      v = g.source.t(e);
    }
    if (f.empty()) continue;

    GammaWFactorisation gw = gamma_w_factorise(f, g, w);
    std::vector<int> rebuilt;
    if (gw.degenerate) {
      rebuilt = gw.head.edges;
    } else {
      rebuilt = gw.head.edges;
      for (int i = 0; i < gw.n(); ++i) {
        const auto& part = gw.w_parts[static_cast<size_t>(i)];
        rebuilt.insert(rebuilt.end(), part.edges.begin(), part.edges.end());
        if (i < static_cast<int>(gw.mids.size())) {
          const auto& el = gw.bd.elements[static_cast<size_t>(gw.mids[static_cast<size_t>(i)])];
          rebuilt.insert(rebuilt.end(), el.edges.begin(), el.edges.end());
        }
      }
      rebuilt.insert(rebuilt.end(), gw.tail.edges.begin(), gw.tail.edges.end());
    }
    CHECK(rebuilt == f.edges);
    if (!gw.w_wlens.empty()) CHECK(gw.w_wlens.size() == gw.w_parts.size());
  }
}

TEST_CASE("submaximal lengths stay within the branch budget") {
  Gen rng(406);
  for (int it = 0; it < 150; ++it) {
    int alphabet = rng.range(2, 3);
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap g = gen_forwards_immersion(rng, alphabet, rng.range(1, 16), t);
    Word w = gen_primitive_word(rng, alphabet, rng.range(1, 5));
    long long budget = 10LL * branch_decomposition(g.source).size() +
                       3LL * static_cast<long long>(g.source.initial.size());
    for (Side side : {Side::Right, Side::Left}) {
      auto lens = submaximal_w_lengths(g, w, side);
      CHECK(static_cast<long long>(lens.size()) <= budget);
      for (int n : lens) CHECK(n >= 1);
    }
  }
}

TEST_CASE("extension language agrees with exhaustive enumeration") {
  Gen rng(407);
  for (int it = 0; it < 120; ++it) {
    int alphabet = rng.range(2, 3);
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap g = gen_forwards_immersion(rng, alphabet, rng.range(1, 10), t);
    Word w = gen_primitive_word(rng, alphabet, rng.range(1, 4));
    std::vector<int> verts(g.source.vertices().begin(), g.source.vertices().end());
    int u = verts[static_cast<size_t>(rng.below(static_cast<int>(verts.size())))];
    int phase = rng.below(w.size());

    ExtLanguage lang = extension_language(g, w, u, phase);
    std::set<int> lens = extension_lengths(g, w, u, phase);
    for (int n : lens) CHECK(lang.contains(n));
    for (long long o : lang.offsets) {
      CHECK(lens.count(static_cast<int>(o)));
      if (lang.period > 0) CHECK(lang.contains(o + 3 * lang.period));
    }
    if (!lang.offsets.empty()) CHECK(!lang.contains(lang.offsets.front() - 1));
    if (lang.period == 0) {
      // Finite language: exactly the offsets.
      CHECK(std::set<int>(lens.begin(), lens.end()) ==
            std::set<int>(lang.offsets.begin(), lang.offsets.end()));
    }
  }
}
