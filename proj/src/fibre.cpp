#include "fibreprod/fibre.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibreprod {

FibreProduct fibre_product(const GraphMap& gamma, const GraphMap& lambda) {
  if (!(gamma.target == lambda.target))
    throw std::invalid_argument("fibre product needs a common target");
  FibreProduct fp;
  fp.gamma = gamma;
  fp.lambda = lambda;

  int next_v = 0;
  for (const auto& [u, du] : gamma.vmap)
    for (const auto& [v, dv] : lambda.vmap)
      if (du == dv) {
        int id = next_v++;
        fp.vpair[id] = {u, v};
        fp.vid[{u, v}] = id;
        fp.product.add_vertex(id);
      }
  int next_e = 0;
  for (const auto& [e, de] : gamma.emap)
    for (const auto& [f, df] : lambda.emap)
      if (de == df) {
        int id = next_e++;
        fp.epair[id] = {e, f};
        fp.eid[{e, f}] = id;
        fp.product.add_edge(id, fp.vid.at({gamma.source.o(e), lambda.source.o(f)}),
                            fp.vid.at({gamma.source.t(e), lambda.source.t(f)}));
      }
  for (int u : gamma.source.initial)
    for (int v : lambda.source.initial) {
      auto it = fp.vid.find({u, v});
      if (it != fp.vid.end()) fp.product.initial.insert(it->second);
    }
  for (int u : gamma.source.final_)
    for (int v : lambda.source.final_) {
      auto it = fp.vid.find({u, v});
      if (it != fp.vid.end()) fp.product.final_.insert(it->second);
    }

  fp.p_gamma.source = fp.p_lambda.source = fp.to_delta.source = fp.product;
  fp.p_gamma.target = gamma.source;
  fp.p_lambda.target = lambda.source;
  fp.to_delta.target = gamma.target;
  for (const auto& [id, pr] : fp.vpair) {
    fp.p_gamma.vmap[id] = pr.first;
    fp.p_lambda.vmap[id] = pr.second;
    fp.to_delta.vmap[id] = gamma.vmap.at(pr.first);
  }
  for (const auto& [id, pr] : fp.epair) {
    fp.p_gamma.emap[id] = pr.first;
    fp.p_lambda.emap[id] = pr.second;
    fp.to_delta.emap[id] = gamma.emap.at(pr.first);
  }
  return fp;
}

Digraph theta(const FibreProduct& fp) { return rcore(fp.product); }

std::vector<ThetaComponent> theta_segments(const FibreProduct& fp, const Digraph& th,
                                           const BranchElement& e, const BranchElement& f) {
  if (e.cycle || f.cycle)
    throw std::invalid_argument("theta segments need non-cycle elements");
  const Digraph& g_src = fp.gamma.source;
  const Digraph& l_src = fp.lambda.source;
  std::set<int> keep;
  for (int a : e.edges)
    for (int b : f.edges) {
      auto it = fp.eid.find({a, b});
      if (it != fp.eid.end() && th.has_edge(it->second)) keep.insert(it->second);
    }
  Digraph sub = th.edge_subgraph(keep);
  std::set<int> bd = boundary(th);
  int oe = g_src.o(e.edges.front()), te = g_src.t(e.edges.back());
  int of = l_src.o(f.edges.front()), tf = l_src.t(f.edges.back());

  auto gproj = [&](int pv) { return fp.vpair.at(pv).first; };
  auto lproj = [&](int pv) { return fp.vpair.at(pv).second; };

  std::vector<ThetaComponent> out;
  for (const Digraph& comp : split_components(sub)) {
    // Interior vertices never branch, so each component is a directed
    // segment, or a closed cycle when both elements are loops at branch
    // vertices; cycles are read as closed paths cut at the seam.
    for (int v : comp.vertices())
      if (comp.ideg(v) > 1 || comp.odeg(v) > 1)
        throw std::logic_error("theta component is not a segment");
    int start = -1;
    for (int v : comp.vertices())
      if (comp.ideg(v) == 0) start = v;
    if (start == -1) {
      for (int v : comp.vertices())
        if (gproj(v) == oe && (start == -1 || lproj(v) == of)) {
          start = v;
          if (lproj(v) == of) break;
        }
      if (start == -1) start = *comp.vertices().begin();
    }
    ThetaComponent tc;
    tc.path.origin = start;
    int at = start;
    while (comp.odeg(at) == 1 &&
           tc.path.edges.size() < static_cast<size_t>(comp.num_edges())) {
      int edge = comp.fstar(at)[0];
      tc.path.edges.push_back(edge);
      at = comp.t(edge);
    }
    if (tc.path.edges.size() != static_cast<size_t>(comp.num_edges()))
      throw std::logic_error("theta component is not a segment");

    int o_pv = tc.path.o(fp.product), t_pv = tc.path.t(fp.product);
    tc.sub = lproj(o_pv) == of && lproj(t_pv) == tf;
    tc.super_ = gproj(o_pv) == oe && gproj(t_pv) == te;
    tc.pref = gproj(o_pv) == oe && lproj(t_pv) == tf;
    tc.suff = lproj(o_pv) == of && gproj(t_pv) == te;
    tc.boundary = bd.count(o_pv) || bd.count(t_pv);
    out.push_back(std::move(tc));
  }
  return out;
}

Digraph theta_s(const FibreProduct& fp, const Digraph& s_image) {
  Digraph th = theta(fp);
  std::set<int> keep;
  for (const auto& [e, ends] : th.edges()) {
    (void)ends;
    keep.insert(e);
  }
  for (const auto& [e, ends] : s_image.edges()) {
    (void)ends;
    if (!th.has_edge(e)) throw std::invalid_argument("s image is not a subgraph of theta");
    keep.erase(e);
  }
  std::set<int> verts(th.vertices().begin(), th.vertices().end());
  return th.edge_subgraph(keep, verts);
}

namespace {

// Label word read once around a circle component, starting at its smallest
// vertex; requires every vertex to have ideg == odeg == 1.
Word circle_label(const Digraph& comp, const GraphMap& to_delta) {
  Word out;
  int start = *comp.vertices().begin();
  int at = start;
  do {
    int e = comp.fstar(at)[0];
    out.push_back(to_delta.emap.at(e));
    at = comp.t(e);
  } while (at != start);
  return out;
}

bool is_circle(const Digraph& comp) {
  if (comp.num_edges() == 0) return false;
  for (int v : comp.vertices())
    if (comp.ideg(v) != 1 || comp.odeg(v) != 1) return false;
  return true;
}

}  // namespace

int homotopy_class_count(const FibreProduct& fp) {
  Digraph th = theta(fp);
  bool any_contractible = false;
  std::vector<Word> circle_labels;
  int non_cyclic = 0;
  for (const Digraph& comp : split_components(th)) {
    if (betti(comp).b1 == 0) {
      any_contractible = true;
    } else if (is_circle(comp)) {
      circle_labels.push_back(circle_label(comp, fp.to_delta));
    } else {
      ++non_cyclic;
    }
  }
  // Group circle labels up to rotation.
  int classes = 0;
  std::vector<bool> seen(circle_labels.size(), false);
  for (size_t i = 0; i < circle_labels.size(); ++i) {
    if (seen[i]) continue;
    ++classes;
    for (size_t j = i + 1; j < circle_labels.size(); ++j)
      if (!seen[j] && cyclic_conjugate(circle_labels[i], circle_labels[j])) seen[j] = true;
  }
  return (any_contractible ? 1 : 0) + classes + non_cyclic;
}

bool StructureReport::all_ok() const {
  for (const BoundCheck& c : checks)
    if (!c.ok) return false;
  return true;
}

const BoundCheck& StructureReport::check(const std::string& name) const {
  for (const BoundCheck& c : checks)
    if (c.name == name) return c;
  throw std::invalid_argument("no such check: " + name);
}

StructureReport structure_report(const FibreProduct& fp, const Digraph& s_image) {
  if (!is_forwards_immersion(fp.gamma) || !is_forwards_immersion(fp.lambda))
    throw std::invalid_argument("structure report needs forwards immersions");
  StructureReport rep;
  auto add = [&](const std::string& name, long long lhs, long long rhs) {
    rep.checks.push_back({name, lhs, rhs, lhs <= rhs});
  };

  const Digraph& G = fp.gamma.source;
  const Digraph& L = fp.lambda.source;
  BranchDecomposition bdG = branch_decomposition(G);
  BranchDecomposition bdL = branch_decomposition(L);
  long long ebarG = bdG.size(), ebarL = bdL.size();
  long long cG = ebarG + static_cast<long long>(G.initial.size());
  long long cL = ebarL + static_cast<long long>(L.initial.size());

  // Multiplicative edge-count identity of the full product.
  long long fibre_sum = 0;
  for (const auto& [de, ends] : fp.gamma.target.edges()) {
    (void)ends;
    long long a = 0, b = 0;
    for (const auto& [e, img] : fp.gamma.emap) {
      (void)e;
      a += img == de;
    }
    for (const auto& [f, img] : fp.lambda.emap) {
      (void)f;
      b += img == de;
    }
    fibre_sum += a * b;
  }
  add("edge_count_identity_diff",
      std::llabs(fp.product.num_edges() - fibre_sum), 0);

  Digraph th = theta(fp);
  Digraph ths = theta_s(fp, s_image);
  BranchDecomposition bdT = branch_decomposition(th);
  BranchDecomposition bdTs = branch_decomposition(ths);

  long long ve_rhs =
      4 * (static_cast<long long>(G.initial.size()) * static_cast<long long>(L.initial.size()) +
           ebarG * ebarL);
  add("theta_branch_vertices", static_cast<long long>(branch_vertices(th).size()), ve_rhs);
  add("theta_segments", bdT.num_segments(), ve_rhs);

  add("theta_s_edges", ths.num_edges(),
      508 * cG * cL * (ebarL * G.num_edges() + ebarG * L.num_edges()));
  add("theta_s_cycles", bdTs.num_cycles(), 500 * (ebarG * ebarL) * (ebarG * ebarL));

  // Per-pair class bounds over the segment elements.
  long long worst_sub_l = 0, worst_sub_r = 1, worst_super_l = 0, worst_super_r = 1;
  long long worst_ps_l = 0, worst_ps_r = 1;
  long long boundary_components = 0;
  bool any_fail = false;
  for (const BranchElement& e : bdG.elements) {
    if (e.cycle) continue;
    for (const BranchElement& f : bdL.elements) {
      if (f.cycle) continue;
      long long sub_e = 0, super_e = 0, ps_e = 0;
      for (const ThetaComponent& tc : theta_segments(fp, ths, e, f)) {
        if (tc.sub) sub_e += tc.path.size();
        if (tc.super_) super_e += tc.path.size();
        if (tc.pref || tc.suff) ps_e += tc.path.size();
      }
      for (const ThetaComponent& tc : theta_segments(fp, th, e, f))
        if (tc.boundary) ++boundary_components;
      long long mn = std::min(e.size(), f.size());
      auto track = [&](long long lhs, long long rhs, long long& wl, long long& wr) {
        if (lhs > rhs) any_fail = true;
        if (lhs * wr > wl * rhs) {  // keep the worst ratio
          wl = lhs;
          wr = rhs;
        }
      };
      track(sub_e, 100 * cG * cL * e.size(), worst_sub_l, worst_sub_r);
      track(super_e, 100 * cG * cL * f.size(), worst_super_l, worst_super_r);
      track(ps_e, 200 * cG * cL * mn, worst_ps_l, worst_ps_r);
    }
  }
  (void)any_fail;
  add("class_sub_worst_pair", worst_sub_l, worst_sub_r);
  add("class_super_worst_pair", worst_super_l, worst_super_r);
  add("class_pref_suff_worst_pair", worst_ps_l, worst_ps_r);
  add("boundary_components", boundary_components,
      8 * cG * cL * std::min(G.num_edges(), L.num_edges()));

  // Lift counts: elements of Ē(Γ) lifted into theta^s whose Λ-projection
  // passes a branch vertex of Λ.
  GraphMap pg_s = restrict_map(fp.p_gamma, ths);
  std::set<int> lbranch = branch_vertices(L);
  long long worst_lift = 0;
  for (const BranchElement& e : bdG.elements) {
    if (e.cycle) continue;
    Path target;
    target.edges = e.edges;
    long long n = 0;
    for (const Path& lift : lifts(pg_s, target).all()) {
      bool passes = false;
      for (int i = 0; i <= lift.size() && !passes; ++i)
        passes = lbranch.count(fp.vpair.at(lift.vertex_at(ths, i)).second) != 0;
      n += passes;
    }
    worst_lift = std::max(worst_lift, n);
  }
  add("branching_lifts_worst_element", worst_lift, 500 * cG * cL * ebarL);

  return rep;
}

Circle make_circle(const Digraph& delta, const Word& loop_edges) {
  if (loop_edges.empty()) throw std::invalid_argument("empty loop");
  int k = loop_edges.size();
  for (int i = 0; i < k; ++i) {
    int e = loop_edges[i];
    int f = loop_edges[(i + 1) % k];
    if (!delta.has_edge(e) || !delta.has_edge(f) || delta.t(e) != delta.o(f))
      throw std::invalid_argument("loop is not a closed edge path");
  }
  Circle c;
  c.size = k;
  for (int i = 0; i < k; ++i) c.graph.add_vertex(i);
  for (int i = 0; i < k; ++i) c.graph.add_edge(i, i, (i + 1) % k);
  c.to_delta.source = c.graph;
  c.to_delta.target = delta;
  for (int i = 0; i < k; ++i) {
    c.to_delta.vmap[i] = delta.o(loop_edges[i]);
    c.to_delta.emap[i] = loop_edges[i];
  }
  return c;
}

}  // namespace fibreprod
