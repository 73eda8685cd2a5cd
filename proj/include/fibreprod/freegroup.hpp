#pragma once

#include <optional>

#include "fibreprod/longcycles.hpp"

namespace fibreprod {

// Graph with an involution on edges and vertices: o(e) = t(e⁻¹)⁻¹,
// (e⁻¹)⁻¹ = e ≠ e⁻¹, (v⁻¹)⁻¹ = v.  Stallings graphs are the special case
// with identity vertex involution.  Edge labels are signed letters (letter i
// stands for the i-th free generator, -i for its inverse) and satisfy
// label(e⁻¹) = -label(e); the label table may be empty for unlabeled graphs.
struct InvolutiveGraph {
  Digraph g;
  std::map<int, int> einv, vinv;
  std::map<int, int> elabel;
  int basepoint = -1;  // -1 when absent; fixed by the involution when set

  int label(int e) const { return elabel.at(e); }
  int inv_e(int e) const { return einv.at(e); }
  int inv_v(int v) const { return vinv.at(v); }
  bool fixed(int v) const { return vinv.at(v) == v; }
};

// Checks every structural invariant; throws std::logic_error on violation.
void validate_involutive(const InvolutiveGraph& g);

// Based, folded, relatively core Stallings graph of a subgroup of the free
// group of the given rank.
struct SubgroupGraph {
  InvolutiveGraph graph;
  int ambient_rank = 0;
  std::vector<Word> generators;
};

// Free-group words over signed letters.
bool is_reduced(const Word& g);
Word free_reduce(const Word& g);
Word inverse(const Word& g);

// Wedge of subdivided generator loops, folded to an immersion and trimmed to
// its relative core.  ambient_rank 0 means "deduce from the letters".
// Throws std::invalid_argument on an unreduced generator or a letter out of
// range.
SubgroupGraph stallings_fold(const std::vector<Word>& generators,
                             int ambient_rank = 0);

// Membership: a reduced word lies in the subgroup iff it traces a basepoint
// loop.  Requires g reduced.
bool contains(const SubgroupGraph& A, const Word& g);

// Quotient identifying v with v⁻¹ (identity vertex involution afterwards).
InvolutiveGraph st(const InvolutiveGraph& g);

// Iterates the local vertex-splitting rewrite on unmarked fixed vertices
// with bstar(v) = {e₁, e₂⁻¹}, fstar(v) = {e₁⁻¹, e₂} until none remains;
// the result is unique.  st(sp(g)) is isomorphic to g for Stallings inputs.
InvolutiveGraph sp(const InvolutiveGraph& g);

// Vertices with ideg != 1 or odeg != 1, plus the valence-one fixed vertices
// whose unique out-edge is the inverse of their unique in-edge.
std::set<int> involutive_branch_vertices(const InvolutiveGraph& g);

// Rank of the fundamental group of a connected graph with involution:
// (number of branch-to-branch segments)/2 - (involution orbits of branch
// vertices) + 1, cross-checked against the Euler rank |E|/2 - |V| + 1 of the
// st image.  Throws std::invalid_argument when disconnected.
int rank(const InvolutiveGraph& g);
int rank(const SubgroupGraph& A);

// Label- and involution-preserving isomorphism of connected graphs; based
// when both carry basepoints.  Requires label-deterministic stars.
bool isomorphic(const InvolutiveGraph& a, const InvolutiveGraph& b);

// One-vertex graph with one loop per signed letter of rank r.
Digraph rose(int r);
int rose_edge(int letter);   // signed letter -> loop id
int rose_letter(int edge);   // loop id -> signed letter
GraphMap to_rose(const InvolutiveGraph& g, int r);

// Conjugacy class of a component of core(sp(A) x sp(B)), with the rank of
// the subgroup it represents and how many components (up to the involution)
// fall in the class.
struct IntersectionClass {
  Digraph rep;
  std::map<int, int> labels;  // edge -> signed letter
  bool cyclic = false;
  Word cyclic_label;  // canonical rotation, when cyclic
  int rank = 0;
  int multiplicity = 0;
};

// Conjugacy classes of the nontrivial intersections A ∩ B^g.  Cyclic classes
// are grouped by their cyclic word up to rotation and inversion, the rest by
// unbased label-preserving isomorphism.  Throws std::invalid_argument on
// mismatched ambient ranks.
std::vector<IntersectionClass> intersection_classes(const SubgroupGraph& A,
                                                    const SubgroupGraph& B);

// Least n >= 1 with gⁿ ∈ A, or nullopt when no power lands in A.  Requires
// g reduced and nonempty.
std::optional<int> relative_order(const SubgroupGraph& A, const Word& g);

// A conjugacy class of maximal cyclic subgroups ⟨word⟩ with finite index
// `index` over its intersection with A.
struct CyclicClass {
  Word word;  // cyclically reduced, canonical up to rotation and inversion
  int index = 0;
};

// Classes with index >= 12·rank(A), found by the long-cycle search on sp(A)
// and deduplicated up to inversion; at most rank(A) many.
std::vector<CyclicClass> maximal_cyclic_classes(const SubgroupGraph& A);

// {1, ..., 12·rank(A)-1} together with the maximal-cyclic indices; every
// finite relative order divides an element.  Throws std::invalid_argument
// when rank(A) == 0.
std::set<int> spectrum_superset(const SubgroupGraph& A);

}  // namespace fibreprod
