#pragma once

#include <string>

#include "fibreprod/digraph.hpp"

namespace fibreprod {

// Pullback of two graph maps with a common target: vertices are pairs with
// equal images, edges likewise.  Pair ids are assigned densely in sorted pair
// order, with the pair lookup tables kept alongside.
struct FibreProduct {
  GraphMap gamma;   // retained input Γ -> Δ
  GraphMap lambda;  // retained input Λ -> Δ
  Digraph product;
  GraphMap p_gamma;   // product -> Γ
  GraphMap p_lambda;  // product -> Λ
  GraphMap to_delta;  // γ ∘ p_gamma (== λ ∘ p_lambda)

  std::map<int, std::pair<int, int>> vpair, epair;
  std::map<std::pair<int, int>, int> vid, eid;
};

FibreProduct fibre_product(const GraphMap& gamma, const GraphMap& lambda);

// rcore of the product (the graph the structure theory lives on).
Digraph theta(const FibreProduct& fp);

// A component of the part of theta sitting over a pair of branch elements,
// together with the classification flags it satisfies.
struct ThetaComponent {
  Path path;  // directed segment in theta
  bool sub = false;       // Λ-projection spans f end to end
  bool super_ = false;    // Γ-projection spans e end to end
  bool pref = false;      // starts at o(e), ends at t(f)
  bool suff = false;      // starts at o(f), ends at t(e)
  bool boundary = false;  // touches the boundary of theta
};

// Components of p_Γ⁻¹(e) ∩ p_Λ⁻¹(f) inside th (usually theta(fp) or a
// subgraph of it).  Requires e, f non-cycle elements; every component is
// checked to be a directed segment.
std::vector<ThetaComponent> theta_segments(const FibreProduct& fp, const Digraph& th,
                                           const BranchElement& e, const BranchElement& f);

// theta minus the edges of s_image (the long-cycle product image).
Digraph theta_s(const FibreProduct& fp, const Digraph& s_image);

// Free-homotopy-class style count over the components of theta: one for all
// contractible components together, one per cyclic-conjugacy class of circle
// labels, one per remaining component.
int homotopy_class_count(const FibreProduct& fp);

struct BoundCheck {
  std::string name;
  long long lhs = 0;
  long long rhs = 0;
  bool ok = false;
};

struct StructureReport {
  std::vector<BoundCheck> checks;
  bool all_ok() const;
  const BoundCheck& check(const std::string& name) const;
};

// Evaluates every structure bound (edge-count identity, branch-vertex and
// segment counts of theta, total and cyclic size of theta^s, per-pair class
// bounds, boundary component count, lift counts) against its stated constant.
// Requires gamma, lambda forwards immersions; s_image as in theta_s.
StructureReport structure_report(const FibreProduct& fp, const Digraph& s_image);

// A circle with k vertices 0..k-1 and edges i: i -> i+1 mod k, labeled into
// delta by a closed edge path.
struct Circle {
  Digraph graph;
  GraphMap to_delta;
  int size = 0;
};

// loop_edges must be a nonempty closed edge path in delta.
Circle make_circle(const Digraph& delta, const Word& loop_edges);

}  // namespace fibreprod
