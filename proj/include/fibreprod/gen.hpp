#pragma once

#include <cstdint>
#include <random>

#include "fibreprod/freegroup.hpp"
#include "fibreprod/nei.hpp"

namespace fibreprod {

// Seed-deterministic random source; bounded draws use rejection sampling so
// results do not depend on the standard library's distribution internals.
class Gen {
public:
  explicit Gen(uint64_t seed) : eng_(seed) {}

  int below(int n);                // uniform in [0, n), n >= 1
  int range(int lo, int hi);       // uniform in [lo, hi]
  bool coin() { return below(2) == 1; }

private:
  std::mt19937_64 eng_;
};

// Random word over letters 0..alphabet-1.
Word gen_word(Gen& rng, int alphabet, int len);

// Primitive word of the given length (length 1 when alphabet == 1 forces it).
Word gen_primitive_word(Gen& rng, int alphabet, int len);

// Freely reduced word over signed letters ±1..rank.
Word gen_signed_word(Gen& rng, int rank, int len);

// One-vertex target with `alphabet` loops, ids 0..alphabet-1.
Digraph gen_rose_delta(int alphabet);

enum class Topology { Tree, CircleTail, CycleCore, CoverProduct, Mixed };

// Labeled graph over the one-vertex target, injective on forward stars, with
// random initial/final marks.
GraphMap gen_forwards_immersion(Gen& rng, int alphabet, int max_edges,
                                Topology t);

// Additionally injective on backward stars.
GraphMap gen_immersion(Gen& rng, int alphabet, int max_edges);

Dfa gen_dfa(Gen& rng, int alphabet, int max_edges, Topology t);

// Circle labeled w^degree over the one-vertex target with `alphabet` loops,
// with random initial/final marks on the circle.
GraphMap gen_marked_circle(Gen& rng, int alphabet, const Word& w, int degree);

// Wedge of loops at a single vertex reading the given words; the words must
// have pairwise distinct first letters.  Marks are empty.
GraphMap wedge_of_powers(const std::vector<Word>& loops, int alphabet);

// Random freely reduced generating sets for subgroup experiments.
std::vector<Word> gen_subgroup_gens(Gen& rng, int rank, int count, int maxlen);

// The sharp-count family: w = 1..k+m read around one circle per rotation
// power.  gamma reads rotations 1..k to powers primes[0..k), lambda reads
// rotations k+1..k+m to powers primes[k..k+m).  Requires k+m distinct primes.
struct LowerBoundFamily {
  GraphMap gamma, lambda;
  Word w;  // letters 1..k+m as rose loop ids 0..k+m-1
  std::vector<int> primes;
  int k = 0, m = 0;
};

LowerBoundFamily lower_bound_family(int k, int m, const std::vector<int>& primes);

}  // namespace fibreprod
