#pragma once

#include "fibreprod/fibre.hpp"

namespace fibreprod {

// A primitive cycle in Γ whose label is a high power of a primitive loop.
struct LongCycle {
  Path circle;  // closed edge path in core(Γ), primitive as a cycle
  Word label;   // primitive loop w in Δ-edge ids; cycle label reads w^degree
  int degree = 0;
};

struct LongCycles {
  std::vector<LongCycle> cycles;
  int beta1 = 0;      // β₁ of the full input graph
  int threshold = 0;  // minimal qualifying degree
};

// Finds, on core(Γ), every primitive cycle whose label degree reaches the
// threshold (default 12·β₁(Γ)), deduplicated as unbased cycles.  Requires a
// forwards immersion.
LongCycles long_cycles(const GraphMap& gamma);
LongCycles long_cycles(const GraphMap& gamma, int threshold);

// Whether the closed path f is, up to basepoint rotation, a power of one of
// the found cycles.
bool factors_through(const Path& f, const LongCycles& lc);

// Image in the product of the core of the pairwise product of the two
// long-cycle families; always a subgraph of theta.
Digraph s_image(const FibreProduct& fp, const LongCycles& lc_gamma,
                const LongCycles& lc_lambda);

struct ComponentBoundCheck {
  int count = 0;
  int beta1 = 0;
  bool ok() const { return count <= beta1; }
};

// β₀(core(Γ ×_Δ S¹)) ≤ β₁(Γ) for immersions γ and primitive loops w.
ComponentBoundCheck w_cycles_bound_check(const GraphMap& gamma, const Word& w);

// Circle components of core(Γ ×_Δ 𝕊) of degree ≥ 12·β₁(Γ) number at most
// β₁(Γ); 𝕊 given as disjoint circles with primitive labels.
ComponentBoundCheck long_components_check(const GraphMap& gamma,
                                          const std::vector<Circle>& circles);

}  // namespace fibreprod
