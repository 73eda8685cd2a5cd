#include "doctest.h"
#include "fibreprod/gen.hpp"
#include "fibreprod/json_io.hpp"
#include "fibreprod/verify.hpp"

using namespace fibreprod;

TEST_CASE("graph, map, dfa and word round trips") {
  Gen rng(801);
  for (int it = 0; it < 100; ++it) {
    int alphabet = rng.range(1, 4);
    Topology t = static_cast<Topology>(rng.below(5));
    GraphMap m = gen_forwards_immersion(rng, alphabet, rng.range(1, 20), t);

    CHECK(digraph_from_json(to_json(m.source)) == m.source);

    GraphMap m2 = graphmap_from_json(to_json(m));
    CHECK(m2.source == m.source);
    CHECK(m2.target == m.target);
    CHECK(m2.vmap == m.vmap);
    CHECK(m2.emap == m.emap);

    Dfa d = gen_dfa(rng, alphabet, rng.range(1, 20), t);
    Dfa d2 = dfa_from_json(to_json(d));
    CHECK(d2.start == d.start);
    CHECK(d2.map.source == d.map.source);
    CHECK(d2.map.emap == d.map.emap);

    Word w = gen_word(rng, alphabet, rng.range(0, 10));
    CHECK(word_from_json(to_json(w)) == w);
  }
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(digraph_from_json(json::parse("{}")), std::invalid_argument);
  CHECK_THROWS_AS(digraph_from_json(json::parse("[1,2]")), std::invalid_argument);
  // Edge endpoint outside the vertex set.
  json bad = {{"schema", kSchema},
              {"kind", "graph"},
              {"vertices", {0}},
              {"edges", {{{"id", 0}, {"src", 0}, {"dst", 7}}}},
              {"initial", json::array()},
              {"final", json::array()}};
  CHECK_THROWS_AS(digraph_from_json(bad), std::invalid_argument);
  CHECK_THROWS_AS(dfa_from_json(json::parse("{\"kind\":\"dfa\"}")),
                  std::invalid_argument);
}

TEST_CASE("fingerprints are stable and sensitive") {
  json a = {{"x", 1}, {"y", {1, 2, 3}}};
  CHECK(fingerprint(a) == fingerprint(a));
  CHECK(fingerprint(a).size() == 16);
  json b = a;
  b["x"] = 2;
  CHECK(fingerprint(a) != fingerprint(b));
}

TEST_CASE("generator streams are reproducible") {
  Gen r1(99), r2(99);
  for (int i = 0; i < 200; ++i) CHECK(r1.range(0, 1000) == r2.range(0, 1000));
  Gen r3(100);
  bool differs = false;
  Gen r4(99);
  for (int i = 0; i < 200; ++i) {
    if (r3.range(0, 1000) != r4.range(0, 1000)) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("verification reports are deterministic and sorted") {
  Gen rng(802);
  GraphMap g = gen_forwards_immersion(rng, 2, 8, Topology::CycleCore);
  GraphMap l = gen_forwards_immersion(rng, 2, 8, Topology::CircleTail);
  json inst = {{"schema", kSchema},
               {"type", "pair"},
               {"gamma", to_json(g)},
               {"lambda", to_json(l)}};
  Report r1 = verify_instance(inst);
  Report r2 = verify_instance(inst);
  CHECK(to_json(r1).dump() == to_json(r2).dump());
  for (size_t i = 1; i < r1.checks.size(); ++i) {
    CHECK(r1.checks[i - 1].name <= r1.checks[i].name);
  }
  CHECK(r1.fingerprint == fingerprint(inst));
  CHECK_THROWS_AS(verify_instance(json::parse("{\"type\":\"nope\"}")),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_instance(json::parse("[]")), std::invalid_argument);
}
