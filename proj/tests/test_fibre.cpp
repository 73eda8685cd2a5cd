#include <map>

#include "doctest.h"
#include "fibreprod/gen.hpp"

using namespace fibreprod;

namespace {

GraphMap random_forwards(Gen& rng, int alphabet, int max_edges) {
  Topology t = static_cast<Topology>(rng.below(5));
  return gen_forwards_immersion(rng, alphabet, max_edges, t);
}

}  // namespace

TEST_CASE("fibre product satisfies the edge count identity") {
  Gen rng(301);
  for (int it = 0; it < 150; ++it) {
    int alphabet = rng.range(1, 4);
    GraphMap g = random_forwards(rng, alphabet, 15);
    GraphMap l = random_forwards(rng, alphabet, 15);
    FibreProduct fp = fibre_product(g, l);

    std::map<int, int> gcnt, lcnt;
    for (const auto& [e, img] : g.emap) {
      (void)e;
      ++gcnt[img];
    }
    for (const auto& [e, img] : l.emap) {
      (void)e;
      ++lcnt[img];
    }
    long long expect = 0;
    for (const auto& [d, ends] : g.target.edges()) {
      (void)ends;
      expect += 1LL * gcnt[d] * lcnt[d];
    }
    CHECK(fp.product.num_edges() == expect);

    CHECK(check_map(fp.p_gamma) != MapClass::NotAMap);
    CHECK(check_map(fp.p_lambda) != MapClass::NotAMap);
    CHECK(check_map(fp.to_delta) != MapClass::NotAMap);
    for (const auto& [e, pair] : fp.epair) {
      CHECK(fp.p_gamma.emap.at(e) == pair.first);
      CHECK(fp.p_lambda.emap.at(e) == pair.second);
      CHECK(fp.to_delta.emap.at(e) == g.emap.at(pair.first));
      CHECK(g.emap.at(pair.first) == l.emap.at(pair.second));
      CHECK(fp.eid.at(pair) == e);
    }
    for (const auto& [v, pair] : fp.vpair) {
      CHECK(g.vmap.at(pair.first) == l.vmap.at(pair.second));
      CHECK(fp.vid.at(pair) == v);
    }

    // Marks are the products of the marks.
    for (const auto& [v, pair] : fp.vpair) {
      bool init = g.source.initial.count(pair.first) &&
                  l.source.initial.count(pair.second);
      bool fin = g.source.final_.count(pair.first) &&
                 l.source.final_.count(pair.second);
      CHECK(static_cast<bool>(fp.product.initial.count(v)) == init);
      CHECK(static_cast<bool>(fp.product.final_.count(v)) == fin);
    }

    CHECK(theta(fp) == rcore(fp.product));
  }
}

TEST_CASE("theta segments are directed segments with consistent flags") {
  Gen rng(302);
  for (int it = 0; it < 80; ++it) {
    int alphabet = rng.range(2, 3);
    GraphMap g = random_forwards(rng, alphabet, 10);
    GraphMap l = random_forwards(rng, alphabet, 10);
    FibreProduct fp = fibre_product(g, l);
    Digraph th = theta(fp);
    BranchDecomposition bg = branch_decomposition(g.source);
    BranchDecomposition bl = branch_decomposition(l.source);
    for (const auto& e : bg.elements) {
      if (e.cycle) continue;
      for (const auto& f : bl.elements) {
        if (f.cycle) continue;
        std::set<int> ee(e.edges.begin(), e.edges.end());
        std::set<int> fe(f.edges.begin(), f.edges.end());
        for (const ThetaComponent& tc : theta_segments(fp, th, e, f)) {
          REQUIRE(tc.path.valid(th));
          REQUIRE(tc.path.size() >= 1);
          for (int pe : tc.path.edges) {
            CHECK(ee.count(fp.epair.at(pe).first));
            CHECK(fe.count(fp.epair.at(pe).second));
          }
          if (tc.sub) {
            // The Lambda projection spans f end to end.
            CHECK(fp.epair.at(tc.path.edges.front()).second == f.edges.front());
            CHECK(fp.epair.at(tc.path.edges.back()).second == f.edges.back());
          }
          if (tc.super_) {
            CHECK(fp.epair.at(tc.path.edges.front()).first == e.edges.front());
            CHECK(fp.epair.at(tc.path.edges.back()).first == e.edges.back());
          }
        }
      }
    }
  }
}

TEST_CASE("structure bounds hold on random forwards immersion pairs") {
  Gen rng(303);
  for (int it = 0; it < 100; ++it) {
    int alphabet = rng.range(2, 4);
    GraphMap g = random_forwards(rng, alphabet, 12);
    GraphMap l = random_forwards(rng, alphabet, 12);
    FibreProduct fp = fibre_product(g, l);
    Digraph s = s_image(fp, long_cycles(g), long_cycles(l));
    StructureReport sr = structure_report(fp, s);
    for (const BoundCheck& c : sr.checks) {
      INFO(c.name, ": ", c.lhs, " vs ", c.rhs);
      CHECK(c.ok);
    }
    CHECK(homotopy_class_count(fp) >= 0);
  }
}

TEST_CASE("make_circle lays the loop out in order") {
  Digraph rose = gen_rose_delta(3);
  Word loop{0, 2, 2, 1};
  Circle c = make_circle(rose, loop);
  CHECK(c.size == 4);
  CHECK(c.graph.num_vertices() == 4);
  CHECK(c.graph.num_edges() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(c.graph.o(i) == i);
    CHECK(c.graph.t(i) == (i + 1) % 4);
    CHECK(c.to_delta.emap.at(i) == loop[i]);
  }
  CHECK(is_forwards_immersion(c.to_delta));
}
