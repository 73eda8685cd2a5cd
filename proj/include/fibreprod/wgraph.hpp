#pragma once

#include "fibreprod/fibre.hpp"

namespace fibreprod {

// A path whose label reads around the loop w: label = w_head · w^n · w_tail
// with w_head a proper suffix and w_tail a proper prefix of w.
struct WPath {
  Path path;
  Word w_head;
  int n = 0;
  Word w_tail;
  int phase0 = 0;  // position in w at the start of the path
};

// The unique such factorisation of f under gamma; paths whose lift into the
// labeling circle never touches the basepoint are rejected.  When the label
// is shorter than |w| and several parses exist, the one maximizing |w_head|
// is returned.  Requires w primitive.
WPath w_factorise(const Path& f, const GraphMap& gamma, const Word& w);

// No two positions of f at the same offset mod wlen visit the same vertex,
// except that the final position may repeat one earlier vertex.
bool is_simple_w_path(const Digraph& g, const Path& f, int wlen);

enum class OmegaShape { Tree, CycleWithTrees, Other };

// The subgraph of Γ ×_Δ S¹ made of the components whose projection covers
// every edge of the circle, filtered down to components supporting a path of
// w-length >= k (cyclic components support every k).
struct OmegaGraph {
  Circle circle;
  FibreProduct fp;  // Γ ×_Δ S¹, unfiltered
  Digraph graph;    // union of the kept components
  GraphMap p_gamma;  // graph -> Γ
  GraphMap p_w;      // graph -> S¹
  std::vector<Digraph> components;
  std::vector<OmegaShape> shapes;
  std::vector<int> max_wlen;  // per component; -1 when unbounded
  int k = 0;

  int phase(int v) const { return fp.vpair.at(v).second; }
};

OmegaGraph omega(const GraphMap& gamma, const Word& w, int k = 0);

// Vertices v admitting a path f inside the union of the short branch
// elements (length < |w|), with endpoints at branch vertices, label
// w'·w·w'', and v = f(|w'·w|).
std::set<int> w_sinks(const GraphMap& gamma, const Word& w);

// A rotation index i such that rotate(w, i) keeps the sink set within
// 2·(number of short branch elements), for arbitrary graph maps.
std::pair<int, std::set<int>> w_sinks_general(const GraphMap& gamma, const Word& w);

// Factorisation of f at its visits to branch vertices, grouping maximal runs
// through short elements (length < |w|) as w-parts and keeping each full
// traversal of a long element as a separate middle part.
struct GammaWFactorisation {
  BranchDecomposition bd;
  bool degenerate = false;  // f avoids all branch vertices: head holds f
  Path head;                // trailing part of element e0
  int e0 = -1;              // element index of head, -1 when head is empty
  Path tail;                // leading part of element en
  int en = -1;
  std::vector<int> mids;     // interior long elements, in traversal order
  std::vector<Path> w_parts;  // mids.size() + 1 runs, possibly empty
  std::vector<int> w_wlens;   // w-lengths of w_parts; empty if f is no w-path

  int l() const { return head.size(); }
  int m() const { return tail.size(); }
  int n() const { return static_cast<int>(w_parts.size()); }
};

GammaWFactorisation gamma_w_factorise(const Path& f, const GraphMap& gamma,
                                      const Word& w);

// w-lengths n >= 1 of maximal simple w-paths meeting a branch vertex whose
// far endpoint is submaximal.  Side::Right: right-maximal paths, left ends
// submaximal against initial vertices; Side::Left: the mirror, against final
// vertices.  Requires a forwards immersion and primitive w.
std::set<int> submaximal_w_lengths(const GraphMap& gamma, const Word& w,
                                   Side side = Side::Right);

// {offsets} · (period)* as a set of non-negative integers.
struct ExtLanguage {
  std::vector<long long> offsets;  // sorted, distinct
  long long period = 0;            // 0 denotes the finite set

  bool contains(long long n) const;
};

// Language covering the w-lengths of paths in omega ending at (u, v) whose
// Γ-projection is a left submaximal w-path; period = w-length of the cycle
// of the component of (u, v), 0 for tree components or when (u, v) is not
// in omega.
ExtLanguage extension_language(const GraphMap& gamma, const Word& w, int u, int v);

// The raw set of such w-lengths, by exhaustive enumeration.
std::set<int> extension_lengths(const GraphMap& gamma, const Word& w, int u, int v);

}  // namespace fibreprod
