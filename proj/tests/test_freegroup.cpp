#include <numeric>

#include "doctest.h"
#include "fibreprod/freegroup.hpp"
#include "fibreprod/gen.hpp"

using namespace fibreprod;

namespace {

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const Word& p : parts) out = out + p;
  return out;
}

// Random product of generators and their inverses, freely reduced.
Word random_element(Gen& rng, const std::vector<Word>& gens, int factors) {
  Word out;
  for (int i = 0; i < factors; ++i) {
    const Word& g = gens[static_cast<size_t>(rng.below(static_cast<int>(gens.size())))];
    out = out + (rng.coin() ? g : inverse(g));
  }
  return free_reduce(out);
}

}  // namespace

TEST_CASE("free reduction and inversion") {
  CHECK(free_reduce(Word{1, -1}).empty());
  CHECK(free_reduce(Word{1, 2, -2, -1, 1}) == Word{1});
  CHECK(is_reduced(Word{1, 2, -1}));
  CHECK(!is_reduced(Word{1, -1}));
  CHECK(inverse(Word{1, 2, -3}) == Word{3, -2, -1});
  CHECK(free_reduce(concat({Word{1, 2}, inverse(Word{1, 2})})).empty());
}

TEST_CASE("membership in the folded graph matches word combinatorics") {
  std::vector<Word> gens{Word{1, 1}, Word{2}};  // ⟨a², b⟩
  SubgroupGraph A = stallings_fold(gens, 2);
  validate_involutive(A.graph);
  CHECK(rank(A) == 2);
  CHECK(contains(A, Word{1, 1}));
  CHECK(contains(A, Word{2}));
  CHECK(!contains(A, Word{1}));
  CHECK(!contains(A, Word{1, 2}));
  CHECK(contains(A, free_reduce(Word{2, 1, 1, -2})));
  CHECK(!contains(A, Word{1, 2, 1}));  // a b a leaves the graph at the midpoint
  CHECK(!contains(A, Word{2, 1}));

  // Index-two subgroup of F₂ has rank 3.
  SubgroupGraph B = stallings_fold({Word{1, 1}, Word{2}, Word{1, 2, -1}}, 2);
  CHECK(rank(B) == 3);

  // Membership closes under products on random subgroups.
  Gen rng(701);
  for (int it = 0; it < 200; ++it) {
    int r = rng.range(1, 4);
    auto g = gen_subgroup_gens(rng, r, rng.range(1, 3), 6);
    SubgroupGraph S = stallings_fold(g, r);
    validate_involutive(S.graph);
    Word x = random_element(rng, g, rng.range(1, 4));
    if (!x.empty()) CHECK(contains(S, x));
  }
}

TEST_CASE("vertex splitting and merging are mutually inverse") {
  Gen rng(702);
  for (int it = 0; it < 150; ++it) {
    int r = rng.range(1, 4);
    auto gens = gen_subgroup_gens(rng, r, rng.range(1, 4), 8);
    SubgroupGraph A = stallings_fold(gens, r);
    InvolutiveGraph split = sp(A.graph);
    validate_involutive(split);
    InvolutiveGraph merged = st(split);
    validate_involutive(merged);
    CHECK(isomorphic(merged, A.graph));
    CHECK(rank(split) == rank(A.graph));
    // No splittable vertex remains.
    for (int v : split.g.vertices()) {
      if (!split.fixed(v) || v == split.basepoint) continue;
      if (split.g.ideg(v) != 2 || split.g.odeg(v) != 2) continue;
      const auto& in = split.g.bstar(v);
      CHECK(split.inv_e(in[0]) == in[1]);
    }
  }
}

TEST_CASE("relative orders on pinned subgroups") {
  SubgroupGraph A = stallings_fold({Word{1, 1}, Word{2}}, 2);
  CHECK(relative_order(A, Word{1}) == 2);
  CHECK(relative_order(A, Word{2}) == 1);
  CHECK(!relative_order(A, free_reduce(Word{1, 2})).has_value());

  SubgroupGraph P = stallings_fold({Word{1}.pow(6)}, 2);
  CHECK(relative_order(P, Word{1}) == 6);
  CHECK(relative_order(P, Word{1, 1}) == 3);
  CHECK(relative_order(P, Word{1}.pow(4)) == 3);
  CHECK(relative_order(P, Word{1}.pow(5)) == 6);
  CHECK(!relative_order(P, Word{2}).has_value());
  // Conjugates: orders are computed relative to the cyclic reduction's trace.
  CHECK(relative_order(P, concat({Word{2}, Word{1}.pow(3), Word{-2}})) == std::nullopt);
}

TEST_CASE("relative order of powers divides out the gcd") {
  Gen rng(703);
  for (int it = 0; it < 100; ++it) {
    int o = rng.range(2, 12);
    SubgroupGraph A = stallings_fold({Word{1}.pow(o), Word{2}}, 2);
    REQUIRE(relative_order(A, Word{1}) == o);
    for (int k = 1; k <= o; ++k) {
      CHECK(relative_order(A, Word{1}.pow(k)) == o / std::gcd(o, k));
    }
  }
}

TEST_CASE("intersection classes of pinned pairs") {
  SubgroupGraph A = stallings_fold({Word{1, 1}}, 2);
  SubgroupGraph B = stallings_fold({Word{1, 1, 1}}, 2);
  auto classes = intersection_classes(A, B);
  // ⟨a²⟩ ∩ ⟨a³⟩ᵍ is nontrivial only for g ∈ ⟨a⟩, always ⟨a⁶⟩.
  long long total_rank = 0;
  for (const auto& c : classes) total_rank += 1LL * c.multiplicity * c.rank;
  CHECK(total_rank == 1);

  SubgroupGraph F = stallings_fold({Word{1}, Word{2}}, 2);
  auto whole = intersection_classes(F, F);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].rank == 2);
  CHECK(whole[0].multiplicity == 1);
}

TEST_CASE("intersection ranks obey the strengthened product bound") {
  Gen rng(704);
  for (int it = 0; it < 200; ++it) {
    int r = rng.range(1, 4);
    SubgroupGraph A = stallings_fold(gen_subgroup_gens(rng, r, rng.range(1, 4), 8), r);
    SubgroupGraph B = stallings_fold(gen_subgroup_gens(rng, r, rng.range(1, 4), 8), r);
    long long rka = rank(A), rkb = rank(B);
    long long sum = 0;
    for (const auto& c : intersection_classes(A, B)) {
      CHECK(c.rank >= 1);
      CHECK(c.multiplicity >= 1);
      sum += 1LL * c.multiplicity * std::max<long long>(c.rank - 1, 0);
    }
    CHECK(sum <= 2 * std::max(rka - 1, 0LL) * std::max(rkb - 1, 0LL));
  }
}

TEST_CASE("maximal cyclic classes and the order spectrum superset") {
  SubgroupGraph A = stallings_fold({Word{1}.pow(13)}, 2);
  auto classes = maximal_cyclic_classes(A);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].index == 13);
  CHECK((classes[0].word == Word{1} || classes[0].word == Word{-1}));
  auto spec = spectrum_superset(A);
  CHECK(spec.count(13));
  for (int i = 1; i < 12; ++i) CHECK(spec.count(i));

  SubgroupGraph low = stallings_fold({Word{1}.pow(5)}, 2);
  CHECK(maximal_cyclic_classes(low).empty());

  // Spectrum superset really covers the finite relative orders.
  Gen rng(705);
  for (int it = 0; it < 60; ++it) {
    int r = rng.range(1, 3);
    SubgroupGraph S = stallings_fold(gen_subgroup_gens(rng, r, rng.range(1, 3), 6), r);
    if (rank(S) == 0) continue;
    auto sup = spectrum_superset(S);
    for (int probe = 0; probe < 10; ++probe) {
      Word g = gen_signed_word(rng, r, rng.range(1, 4));
      auto o = relative_order(S, g);
      if (!o) continue;
      bool divides = false;
      for (int s : sup) {
        if (s % *o == 0) divides = true;
      }
      CHECK(divides);
    }
  }
}

TEST_CASE("isomorphism distinguishes labeled graphs") {
  SubgroupGraph A = stallings_fold({Word{1, 2}}, 2);
  SubgroupGraph B = stallings_fold({Word{1, 2}}, 2);
  CHECK(isomorphic(A.graph, B.graph));
  SubgroupGraph C = stallings_fold({Word{2, 1}}, 2);
  CHECK(!isomorphic(A.graph, C.graph));  // based isomorphism sees the order
  SubgroupGraph D = stallings_fold({Word{1, 1}}, 2);
  CHECK(!isomorphic(A.graph, D.graph));
}
