#include <numeric>
#include <set>

#include "doctest.h"
#include "fibreprod/gen.hpp"
#include "fibreprod/words.hpp"

using namespace fibreprod;

namespace {

// Brute-force proper periods of w.
std::vector<int> brute_periods(const Word& w) {
  std::vector<int> out;
  for (int p = 1; p < w.size(); ++p) {
    bool ok = true;
    for (int i = 0; i + p < w.size() && ok; ++i) ok = w[i] == w[i + p];
    if (ok) out.push_back(p);
  }
  return out;
}

std::set<int> brute_sub(const Word& v, const Word& w) {
  std::set<int> out;
  for (int i = 0; i + w.size() <= v.size(); ++i) {
    if (v.slice(i, i + w.size()) == w) out.insert(i);
  }
  return out;
}

}  // namespace

TEST_CASE("word slicing and powers") {
  Word w{0, 1, 2};
  CHECK(w.slice(1, 3) == Word{1, 2});
  CHECK(w.prefix(0).empty());
  CHECK(w.suffix(2) == Word{1, 2});
  CHECK(w.pow(2) == Word{0, 1, 2, 0, 1, 2});
  CHECK(w.reversed() == Word{2, 1, 0});
  CHECK(rotate(w, 1) == Word{1, 2, 0});
  CHECK(rotate(w, 0) == w);
}

TEST_CASE("period profile matches brute force") {
  Gen rng(101);
  for (int it = 0; it < 400; ++it) {
    Word w = gen_word(rng, rng.range(1, 3), rng.range(1, 30));
    PeriodProfile pp = period_profile(w);
    std::vector<int> brute = brute_periods(w);
    CHECK(pp.proper_periods == brute);
    int per = brute.empty() ? w.size() : brute.front();
    CHECK(pp.per == per);
    CHECK(pp.ord == w.size() / per);
    bool prim = true;
    for (int p : brute) {
      if (w.size() % p == 0) prim = false;
    }
    CHECK(pp.primitive == prim);
    for (int p = 1; p <= w.size(); ++p) {
      bool has = p == w.size() ||
                 std::count(brute.begin(), brute.end(), p) > 0;
      CHECK(has_period(w, p) == has);
    }
  }
}

TEST_CASE("two long periods collapse to their gcd") {
  Gen rng(102);
  for (int it = 0; it < 400; ++it) {
    // Plant a period p, then look for a second one.
    int p = rng.range(1, 6);
    Word seed = gen_word(rng, 2, p);
    Word w;
    int len = rng.range(p + 1, 40);
    for (int i = 0; i < len; ++i) w.push_back(seed[i % p]);
    PeriodProfile pp = period_profile(w);
    for (int a : pp.proper_periods) {
      for (int b : pp.proper_periods) {
        int g = std::gcd(a, b);
        if (w.size() >= a + b - g) CHECK(fine_wilf_collapse(w, a, b));
        if (fine_wilf_collapse(w, a, b)) CHECK(has_period(w, g));
      }
    }
  }
}

TEST_CASE("cyclic conjugator is the shortest connecting word") {
  Gen rng(103);
  for (int it = 0; it < 500; ++it) {
    Word u = gen_word(rng, rng.range(1, 3), rng.range(1, 16));
    Word v = rotate(u, rng.below(u.size()));
    auto c = cyclic_conjugate(u, v);
    REQUIRE(c.has_value());
    CHECK(*c + u == v + *c);
    // Minimality: no strictly shorter prefix of v works.
    for (int k = 0; k < c->size(); ++k) {
      Word d = v.prefix(k);
      CHECK(d + u != v + d);
    }
  }
  CHECK(!cyclic_conjugate(Word{0, 0, 1}, Word{0, 1, 1}).has_value());
  CHECK(!cyclic_conjugate(Word{0}, Word{0, 0}).has_value());
}

TEST_CASE("overlap sets match their definitions") {
  Gen rng(104);
  for (int it = 0; it < 300; ++it) {
    Word v = gen_word(rng, rng.range(1, 3), rng.range(1, 24));
    Word w = gen_word(rng, rng.range(1, 3), rng.range(1, 24));
    OverlapSets os = overlap_sets(v, w);
    std::set<int> sub = brute_sub(v, w);
    CHECK(std::set<int>(os.sub.begin(), os.sub.end()) == sub);
    std::set<int> pref;
    for (int i = 1; i <= std::min(v.size(), w.size()); ++i) {
      if (v.prefix(i) == w.suffix(i)) pref.insert(i);
    }
    CHECK(std::set<int>(os.pref.begin(), os.pref.end()) == pref);
    std::set<int> suff;
    for (int i = std::max(0, v.size() - w.size()); i < v.size(); ++i) {
      if (v.slice(i, v.size()) == w.prefix(v.size() - i)) suff.insert(i);
    }
    CHECK(std::set<int>(os.suff.begin(), os.suff.end()) == suff);
  }
}

TEST_CASE("crossing indices form the brute set as one progression") {
  Gen rng(105);
  for (int it = 0; it < 300; ++it) {
    Word v = gen_word(rng, rng.range(1, 3), rng.range(1, 40));
    Word w = gen_word(rng, rng.range(1, 3), rng.range(1, 40));
    std::set<int> sub = brute_sub(v, w);
    PeriodProfile pp = period_profile(w);
    for (int j = 0; j < v.size(); ++j) {
      std::set<long long> brute;
      for (int i : sub) {
        if (i <= j && j < i + w.size()) brute.insert(i);
      }
      auto ap = crossing_indices(v, w, j);
      std::set<long long> got;
      if (ap) {
        for (long long x : ap->materialize()) got.insert(x);
        if (ap->p >= 1) CHECK(ap->q >= pp.per);
        CHECK(ap->p <= pp.ord);
      }
      CHECK(got == brute);
    }
  }
}

TEST_CASE("decompositions cover the overlap sets within their budgets") {
  Gen rng(106);
  for (int it = 0; it < 500; ++it) {
    Word v = gen_word(rng, rng.range(1, 3), rng.range(1, 64));
    Word w = gen_word(rng, rng.range(1, 3), rng.range(1, 64));
    OverlapSets os = overlap_sets(v, w);

    auto subd = sub_decomposition(v, w);
    std::set<long long> covered;
    for (const auto& ap : subd) {
      for (long long x : ap.materialize_clamped(0, v.size())) covered.insert(x);
    }
    CHECK(covered == std::set<long long>(os.sub.begin(), os.sub.end()));
    CHECK(static_cast<int>(subd.size()) <= v.size() / w.size());
    for (size_t i = 1; i < subd.size(); ++i) {
      CHECK(subd[i].r - subd[i - 1].r >= w.size());
    }

    auto sufd = suff_decomposition(v, w);
    covered.clear();
    for (const auto& ap : sufd) {
      for (long long x : ap.materialize_clamped(0, v.size())) covered.insert(x);
    }
    CHECK(covered == std::set<long long>(os.suff.begin(), os.suff.end()));
    int lg = 0;
    for (int x = std::min(v.size(), w.size()); x > 1; x /= 2) ++lg;
    CHECK(static_cast<int>(sufd.size()) <= std::max(1, lg));
    if (std::min(v.size(), w.size()) >= 2) {
      CHECK(static_cast<int>(sufd.size()) <= lg);
    }
    for (size_t i = 1; i < sufd.size(); ++i) {
      CHECK(sufd[i].q <= sufd[i - 1].q / 2);
    }
  }
}

TEST_CASE("good cyclic shift is the least qualifying rotation") {
  Gen rng(107);
  auto crossings = [](const Word& w0, const Word& x) {
    auto ap = crossing_indices(w0 + w0, x, w0.size() - 1);
    return ap ? ap->p + 1 : 0;
  };
  for (int it = 0; it < 300; ++it) {
    Word w = gen_primitive_word(rng, rng.range(2, 3), rng.range(1, 12));
    std::vector<Word> xs;
    int nx = rng.range(0, 3);
    for (int i = 0; i < nx; ++i) {
      xs.push_back(gen_word(rng, 2, rng.range(1, 2 * w.size())));
    }
    int i = good_cyclic_shift(w, xs);
    CHECK(i >= 0);
    CHECK(i < w.size());
    for (const Word& x : xs) CHECK(crossings(rotate(w, i), x) <= 2);
    for (int k = 0; k < i; ++k) {
      bool bad = false;
      for (const Word& x : xs) {
        if (crossings(rotate(w, k), x) > 2) bad = true;
      }
      CHECK(bad);
    }
  }
}

TEST_CASE("maximal power factors match a brute search") {
  Gen rng(108);
  for (int it = 0; it < 300; ++it) {
    Word w = gen_primitive_word(rng, 2, rng.range(1, 6));
    Word x = gen_word(rng, 2, rng.range(1, 20));
    Word big = w.pow(x.size() / w.size() + 3);
    int left = 0, right = 0;
    for (int k = 0; k <= x.size(); ++k) {
      if (!brute_sub(big, x.prefix(k)).empty()) left = k;
      if (!brute_sub(big, x.suffix(k)).empty()) right = k;
    }
    CHECK(max_w_factorisation(x, w, Side::Left) == left);
    CHECK(max_w_factorisation(x, w, Side::Right) == right);
  }
}
