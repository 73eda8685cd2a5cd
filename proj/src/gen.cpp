#include "fibreprod/gen.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibreprod {

int Gen::below(int n) {
  if (n <= 0) throw std::invalid_argument("empty range");
  uint64_t nn = static_cast<uint64_t>(n);
  uint64_t limit = UINT64_MAX / nn * nn;
  for (;;) {
    uint64_t r = eng_();
    if (r < limit) return static_cast<int>(r % nn);
  }
}

int Gen::range(int lo, int hi) { return lo + below(hi - lo + 1); }

Word gen_word(Gen& rng, int alphabet, int len) {
  std::vector<int> letters;
  for (int i = 0; i < len; ++i) letters.push_back(rng.below(alphabet));
  return Word(letters);
}

Word gen_primitive_word(Gen& rng, int alphabet, int len) {
  if (alphabet <= 1 || len <= 1) return gen_word(rng, std::max(1, alphabet), 1);
  for (int tries = 0; tries < 100; ++tries) {
    Word w = gen_word(rng, alphabet, len);
    if (period_profile(w).primitive) return w;
  }
  throw std::logic_error("primitive sampling failed");
}

Word gen_signed_word(Gen& rng, int rank, int len) {
  std::vector<int> letters;
  for (int i = 0; i < len; ++i) {
    for (;;) {
      int v = rng.below(2 * rank);
      int letter = v < rank ? v + 1 : -(v - rank + 1);
      if (!letters.empty() && letters.back() == -letter) continue;
      letters.push_back(letter);
      break;
    }
  }
  return Word(letters);
}

Digraph gen_rose_delta(int alphabet) {
  Digraph d;
  d.add_vertex(0);
  for (int e = 0; e < alphabet; ++e) d.add_edge(e, 0, 0);
  return d;
}

namespace {

struct Builder {
  Digraph g;
  std::map<int, int> letters;               // edge -> letter
  std::set<std::pair<int, int>> out_used;   // (vertex, letter)
  std::set<std::pair<int, int>> in_used;
  int ne = 0;
  int max_edges;
  bool backward_injective = false;

  explicit Builder(int cap) : max_edges(cap) {}

  bool add(int src, int dst, int letter) {
    if (ne >= max_edges) return false;
    if (out_used.count({src, letter})) return false;
    if (backward_injective && in_used.count({dst, letter})) return false;
    if (!g.has_vertex(src)) g.add_vertex(src);
    if (!g.has_vertex(dst)) g.add_vertex(dst);
    g.add_edge(ne, src, dst);
    letters[ne] = letter;
    out_used.insert({src, letter});
    in_used.insert({dst, letter});
    ++ne;
    return true;
  }
};

GraphMap finish(Gen& rng, Builder& b, int alphabet) {
  GraphMap m;
  m.source = b.g;
  m.target = gen_rose_delta(alphabet);
  for (int v : b.g.vertices()) {
    m.vmap[v] = 0;
    if (rng.below(4) == 0) m.source.initial.insert(v);
    if (rng.below(4) == 0) m.source.final_.insert(v);
  }
  m.emap = b.letters;
  return m;
}

void build_tree(Gen& rng, Builder& b, int alphabet) {
  int n = rng.range(1, std::max(1, b.max_edges) + 1);
  b.g.add_vertex(0);
  for (int v = 1; v < n; ++v) {
    for (int tries = 0; tries < 8; ++tries) {
      if (b.add(rng.below(v), v, rng.below(alphabet))) break;
    }
  }
}

void build_circle_tail(Gen& rng, Builder& b, int alphabet) {
  int c = rng.range(1, std::max(1, b.max_edges));
  b.g.add_vertex(0);
  for (int i = 0; i < c; ++i) b.add(i, (i + 1) % c, rng.below(alphabet));
  int next = c;
  if (rng.coin()) {  // tail feeding into the circle
    int len = rng.range(1, 3), at = rng.below(c);
    for (int i = 0; i < len; ++i) {
      int v = next++;
      b.add(v, i == len - 1 ? at : next, rng.below(alphabet));
    }
  }
  if (rng.coin()) {  // tail leaving the circle
    int len = rng.range(1, 3), at = rng.below(c), prev = at;
    for (int i = 0; i < len; ++i) {
      int v = next++;
      bool ok = false;
      for (int tries = 0; tries < 8 && !ok; ++tries) {
        ok = b.add(prev, v, rng.below(alphabet));
      }
      if (!ok) break;
      prev = v;
    }
  }
}

void build_cycle_core(Gen& rng, Builder& b, int alphabet) {
  b.g.add_vertex(0);
  int next = 1;
  int loops = rng.range(1, 3);
  for (int l = 0; l < loops; ++l) {
    std::vector<int> pool(b.g.vertices().begin(), b.g.vertices().end());
    int anchor = pool[rng.below(static_cast<int>(pool.size()))];
    int len = rng.range(1, std::max(1, b.max_edges / (loops + 1)));
    int prev = anchor;
    bool ok = true;
    for (int i = 0; i < len && ok; ++i) {
      int dst = i == len - 1 ? anchor : next;
      ok = false;
      for (int tries = 0; tries < 8 && !ok; ++tries) {
        ok = b.add(prev, dst, rng.below(alphabet));
      }
      if (ok && dst == next) prev = next++;
    }
  }
}

void build_cover_product(Gen& rng, Builder& b, int alphabet) {
  int m = rng.range(1, 4), n = rng.range(1, 4);
  for (int v = 0; v < m * n; ++v) b.g.add_vertex(v);
  for (int letter = 0; letter < alphabet; ++letter) {
    if (!rng.coin()) continue;
    int s1 = rng.below(m), s2 = rng.below(n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        b.add(i * n + j, (i + s1) % m * n + (j + s2) % n, letter);
      }
    }
  }
}

void build_mixed(Gen& rng, Builder& b, int alphabet) {
  int n = rng.range(1, std::max(2, b.max_edges / 2));
  for (int v = 0; v < n; ++v) b.g.add_vertex(v);
  for (int v = 0; v < n; ++v) {
    for (int letter = 0; letter < alphabet; ++letter) {
      if (rng.below(3) == 0) b.add(v, rng.below(n), letter);
    }
  }
}

}  // namespace

GraphMap gen_forwards_immersion(Gen& rng, int alphabet, int max_edges,
                                Topology t) {
  Builder b(max_edges);
  switch (t) {
    case Topology::Tree: build_tree(rng, b, alphabet); break;
    case Topology::CircleTail: build_circle_tail(rng, b, alphabet); break;
    case Topology::CycleCore: build_cycle_core(rng, b, alphabet); break;
    case Topology::CoverProduct: build_cover_product(rng, b, alphabet); break;
    case Topology::Mixed: build_mixed(rng, b, alphabet); break;
  }
  if (b.g.num_vertices() == 0) b.g.add_vertex(0);
  return finish(rng, b, alphabet);
}

GraphMap gen_immersion(Gen& rng, int alphabet, int max_edges) {
  Builder b(max_edges);
  b.backward_injective = true;
  build_mixed(rng, b, alphabet);
  if (b.g.num_vertices() == 0) b.g.add_vertex(0);
  return finish(rng, b, alphabet);
}

Dfa gen_dfa(Gen& rng, int alphabet, int max_edges, Topology t) {
  GraphMap m = gen_forwards_immersion(rng, alphabet, max_edges, t);
  std::vector<int> verts(m.source.vertices().begin(), m.source.vertices().end());
  m.source.initial = {verts[rng.below(static_cast<int>(verts.size()))]};
  m.source.final_.clear();
  for (int v : verts) {
    if (rng.below(3) == 0) m.source.final_.insert(v);
  }
  return make_dfa(m);
}

GraphMap gen_marked_circle(Gen& rng, int alphabet, const Word& w, int degree) {
  Circle c = make_circle(gen_rose_delta(alphabet), w.pow(degree));
  GraphMap m = c.to_delta;
  for (int v : m.source.vertices()) {
    if (rng.below(4) == 0) m.source.initial.insert(v);
    if (rng.below(4) == 0) m.source.final_.insert(v);
  }
  return m;
}

GraphMap wedge_of_powers(const std::vector<Word>& loops, int alphabet) {
  GraphMap m;
  m.target = gen_rose_delta(alphabet);
  m.source.add_vertex(0);
  m.vmap[0] = 0;
  int nv = 1, ne = 0;
  for (const Word& w : loops) {
    if (w.empty()) throw std::invalid_argument("empty loop word");
    int prev = 0;
    for (int i = 0; i < w.size(); ++i) {
      int dst = i + 1 == w.size() ? 0 : nv;
      if (dst == nv) {
        m.source.add_vertex(nv);
        m.vmap[nv] = 0;
        ++nv;
      }
      m.source.add_edge(ne, prev, dst);
      m.emap[ne] = w[i];
      ++ne;
      prev = dst;
    }
  }
  if (!is_forwards_immersion(m)) {
    throw std::invalid_argument("loop words collide on first letters");
  }
  return m;
}

std::vector<Word> gen_subgroup_gens(Gen& rng, int rank, int count, int maxlen) {
  std::vector<Word> gens;
  for (int i = 0; i < count; ++i) {
    gens.push_back(gen_signed_word(rng, rank, rng.range(1, maxlen)));
  }
  return gens;
}

LowerBoundFamily lower_bound_family(int k, int m, const std::vector<int>& primes) {
  if (k < 1 || m < 1) throw std::invalid_argument("need k, m >= 1");
  if (static_cast<int>(primes.size()) < k + m) {
    throw std::invalid_argument("need k + m primes");
  }
  LowerBoundFamily fam;
  fam.k = k;
  fam.m = m;
  fam.primes.assign(primes.begin(), primes.begin() + k + m);
  std::vector<int> letters;
  for (int i = 0; i < k + m; ++i) letters.push_back(i);
  fam.w = Word(letters);

  std::vector<Word> gloops, lloops;
  for (int i = 1; i <= k; ++i) {
    gloops.push_back(rotate(fam.w, i % (k + m)).pow(primes[i - 1]));
  }
  for (int i = k + 1; i <= k + m; ++i) {
    lloops.push_back(rotate(fam.w, i % (k + m)).pow(primes[i - 1]));
  }
  fam.gamma = wedge_of_powers(gloops, k + m);
  fam.lambda = wedge_of_powers(lloops, k + m);
  return fam;
}

}  // namespace fibreprod
