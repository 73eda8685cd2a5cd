#pragma once

#include <string>

#include "fibreprod/longcycles.hpp"

namespace fibreprod {

// Deterministic automaton over a one-vertex rose: a forwards immersion with
// exactly one initial state and any set of final states.
struct Dfa {
  GraphMap map;
  int start = 0;
};

Dfa make_dfa(const GraphMap& m);

// Product BFS baseline decision for L(a) ∩ L(b) != ∅.
bool rabin_scott(const Dfa& a, const Dfa& b);

// Accepting-path decision for a pair of circles labelled by powers of the
// primitive loop w (words over the shared target's edge ids), with initial
// and final marks on the circle sources.  k >= 0 additionally requires the
// initial states of both circles to fit in at most k segments of |w|
// consecutive vertices; k < 0 skips that check.
bool w_cycle_accepting(const GraphMap& c1, const GraphMap& c2, const Word& w,
                       int k = -1);

// From a product edge, follow unique continuations while the endpoint stays
// outside the branch-pair vertices, up to l edges in total.
Path forced_path(const FibreProduct& fp, int product_edge, long long l);

// Whether some path in the product starting with the given edge and ending
// at the given vertex lifts to the core of the product of the two long-cycle
// families.
bool s_connectivity(const FibreProduct& fp, const LongCycles& lcg,
                    const LongCycles& lcl, int product_edge, int product_vertex);

// Branch-pair vertices and their outgoing product edges covered by the image
// of the long-cycle product, partitioned by its components.
struct SPartition {
  std::set<int> vs;                   // product vertices
  std::set<int> es;                   // product edges
  std::map<int, int> vblock, eblock;  // member -> block id, dense from 0
  int blocks = 0;
};

SPartition adjacency_partition(const FibreProduct& fp, const LongCycles& lcg,
                               const LongCycles& lcl);

struct NeiResult {
  bool answer = false;
  std::string branch;  // "eps", "A", "B" or "none"
  long long m = 0, n = 0;
  int steps = 0;
};

// Structure-aware intersection non-emptiness; always agrees with rabin_scott.
NeiResult nei(const Dfa& a, const Dfa& b);

}  // namespace fibreprod
