#include "fibreprod/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "fibreprod/freegroup.hpp"
#include "fibreprod/gen.hpp"
#include "fibreprod/wgraph.hpp"

namespace fibreprod {

bool Report::all_ok() const {
  for (const auto& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

namespace {

void add(Report& rep, const std::string& name, long long lhs, long long rhs,
         bool ok) {
  rep.checks.push_back({name, lhs, rhs, ok});
}

void add_le(Report& rep, const std::string& name, long long lhs, long long rhs) {
  add(rep, name, lhs, rhs, lhs <= rhs);
}

void verify_pair(Report& rep, const json& inst) {
  GraphMap gamma = graphmap_from_json(inst.at("gamma"));
  GraphMap lambda = graphmap_from_json(inst.at("lambda"));
  if (!(gamma.target == lambda.target)) {
    throw std::invalid_argument("targets differ");
  }
  if (!is_forwards_immersion(gamma) || !is_forwards_immersion(lambda)) {
    throw std::invalid_argument("forwards immersions required");
  }
  FibreProduct fp = fibre_product(gamma, lambda);
  LongCycles lg = long_cycles(gamma), ll = long_cycles(lambda);
  Digraph s = s_image(fp, lg, ll);
  StructureReport sr = structure_report(fp, s);
  for (const auto& c : sr.checks) rep.checks.push_back(c);
  add_le(rep, "long_cycles_gamma", static_cast<long long>(lg.cycles.size()),
         lg.beta1);
  add_le(rep, "long_cycles_lambda", static_cast<long long>(ll.cycles.size()),
         ll.beta1);
  BettiBoundCheck bg = betti_bound_check(rcore(gamma.source));
  add_le(rep, "rcore_vbar_gamma", bg.vbar_lhs, bg.vbar_rhs);
  add_le(rep, "rcore_ebar_gamma", bg.ebar_lhs, bg.ebar_rhs);
  BettiBoundCheck bl = betti_bound_check(rcore(lambda.source));
  add_le(rep, "rcore_vbar_lambda", bl.vbar_lhs, bl.vbar_rhs);
  add_le(rep, "rcore_ebar_lambda", bl.ebar_lhs, bl.ebar_rhs);
}

void verify_wgraph(Report& rep, const json& inst) {
  GraphMap gamma = graphmap_from_json(inst.at("gamma"));
  Word w = word_from_json(inst.at("w"));
  if (!is_forwards_immersion(gamma)) {
    throw std::invalid_argument("forwards immersion required");
  }
  if (w.empty() || !period_profile(w).primitive) {
    throw std::invalid_argument("primitive w required");
  }

  BranchDecomposition bd = branch_decomposition(gamma.source);
  std::set<int> vbar = branch_vertices(gamma.source);

  OmegaGraph om = omega(gamma, w, 3);
  long long branching = 0;
  for (const Digraph& k : om.components) {
    bool meets = false;
    for (int v : k.vertices()) {
      if (vbar.count(om.p_gamma.vmap.at(v))) meets = true;
    }
    if (meets) ++branching;
  }
  add_le(rep, "omega3_branch_components", branching, 2LL * bd.size());

  std::set<int> short_edges;
  for (const auto& el : bd.elements) {
    if (el.size() < w.size()) short_edges.insert(el.edges.begin(), el.edges.end());
  }
  Digraph gw = gamma.source.edge_subgraph(short_edges);
  long long ebar_w = branch_decomposition(gw).size();
  add_le(rep, "w_sinks", static_cast<long long>(w_sinks(gamma, w).size()),
         2 * ebar_w);
  auto [shift, sinks] = w_sinks_general(gamma, w);
  (void)shift;
  add_le(rep, "w_sinks_general", static_cast<long long>(sinks.size()),
         2 * ebar_w);

  long long submax = static_cast<long long>(submaximal_w_lengths(gamma, w).size());
  add_le(rep, "submaximal_integers", submax,
         10LL * bd.size() + 3LL * gamma.source.initial.size());

  if (is_immersion(gamma)) {
    ComponentBoundCheck cb = w_cycles_bound_check(gamma, w);
    add_le(rep, "w_cycle_components", cb.count, cb.beta1);
  }
}

void verify_dfa_pair(Report& rep, const json& inst) {
  Dfa a = dfa_from_json(inst.at("a"));
  Dfa b = dfa_from_json(inst.at("b"));
  bool got = nei(a, b).answer;
  bool want = rabin_scott(a, b);
  add(rep, "nei_matches_oracle", got ? 1 : 0, want ? 1 : 0, got == want);
}

void verify_words(Report& rep, const json& inst) {
  Word v = word_from_json(inst.at("v"));
  Word w = word_from_json(inst.at("w"));
  if (v.empty() || w.empty()) throw std::invalid_argument("empty word");
  OverlapSets os = overlap_sets(v, w);

  auto progs_union = [](const std::vector<ArithProg>& ps, long long lo,
                        long long hi) {
    std::set<long long> u;
    for (const auto& p : ps) {
      for (long long x : p.materialize_clamped(lo, hi)) u.insert(x);
    }
    return u;
  };

  std::vector<ArithProg> sub = sub_decomposition(v, w);
  std::set<long long> sub_union = progs_union(sub, 0, v.size());
  std::set<long long> sub_brute(os.sub.begin(), os.sub.end());
  add(rep, "sub_cover_exact", static_cast<long long>(sub_union.size()),
      static_cast<long long>(sub_brute.size()), sub_union == sub_brute);
  add_le(rep, "sub_cover_count", static_cast<long long>(sub.size()),
         v.size() / w.size());

  std::vector<ArithProg> suf = suff_decomposition(v, w);
  std::set<long long> suf_union = progs_union(suf, 0, v.size());
  std::set<long long> suf_brute(os.suff.begin(), os.suff.end());
  add(rep, "suff_cover_exact", static_cast<long long>(suf_union.size()),
      static_cast<long long>(suf_brute.size()), suf_union == suf_brute);
  long long log2v = 0, log2w = 0;
  for (long long x = v.size(); x > 1; x /= 2) ++log2v;
  for (long long x = w.size(); x > 1; x /= 2) ++log2w;
  add_le(rep, "suff_cover_count", static_cast<long long>(suf.size()),
         std::max(1LL, std::min(log2v, log2w)));

  long long mismatches = 0;
  for (int j = 0; j < v.size(); ++j) {
    std::set<long long> brute;
    for (int i : os.sub) {
      if (i <= j && j < i + w.size()) brute.insert(i);
    }
    std::set<long long> got;
    if (auto ap = crossing_indices(v, w, j)) {
      for (long long x : ap->materialize()) got.insert(x);
    }
    if (got != brute) ++mismatches;
  }
  add(rep, "crossing_matches_brute", mismatches, 0, mismatches == 0);
}

void verify_lower_bound(Report& rep, const json& inst) {
  int k = inst.at("k").get<int>(), m = inst.at("m").get<int>();
  std::vector<int> primes;
  for (const auto& p : inst.at("primes")) primes.push_back(p.get<int>());
  LowerBoundFamily fam = lower_bound_family(k, m, primes);
  FibreProduct fp = fibre_product(fam.gamma, fam.lambda);
  std::vector<Digraph> comps = split_components(core(fp.product));
  add(rep, "component_count", static_cast<long long>(comps.size()),
      static_cast<long long>(k) * m, static_cast<long long>(comps.size()) == 1LL * k * m);

  // Each component must be a circle conjugate to w^{p_i p_j}, all distinct.
  std::vector<Word> labels;
  bool circles = true;
  for (const Digraph& c : comps) {
    for (int v : c.vertices()) {
      if (c.ideg(v) != 1 || c.odeg(v) != 1) circles = false;
    }
    if (!circles) break;
    int v0 = *c.vertices().begin(), v = v0;
    Word lab;
    do {
      int e = c.fstar(v)[0];
      lab.push_back(fp.to_delta.emap.at(e));
      v = c.t(e);
    } while (v != v0);
    labels.push_back(lab);
  }
  bool powers = circles;
  if (circles) {
    std::set<std::pair<int, int>> used;
    for (const Word& lab : labels) {
      bool found = false;
      for (int i = 1; i <= k && !found; ++i) {
        for (int j = k + 1; j <= k + m && !found; ++j) {
          if (used.count({i, j})) continue;
          Word expect = fam.w.pow(primes[i - 1] * primes[j - 1]);
          if (lab.size() == expect.size() && cyclic_conjugate(lab, expect)) {
            used.insert({i, j});
            found = true;
          }
        }
      }
      if (!found) powers = false;
    }
  }
  add(rep, "labels_are_powers", powers ? 1 : 0, 1, powers);

  long long conjugate_pairs = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    for (size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i].size() == labels[j].size() &&
          cyclic_conjugate(labels[i], labels[j])) {
        ++conjugate_pairs;
      }
    }
  }
  add(rep, "labels_pairwise_nonconjugate", conjugate_pairs, 0,
      conjugate_pairs == 0);
}

void verify_subgroup_pair(Report& rep, const json& inst) {
  std::vector<Word> agens, bgens;
  for (const auto& g : inst.at("a_gens")) agens.push_back(word_from_json(g));
  for (const auto& g : inst.at("b_gens")) bgens.push_back(word_from_json(g));
  int ambient = inst.value("ambient_rank", 0);
  SubgroupGraph a = stallings_fold(agens, ambient);
  SubgroupGraph b = stallings_fold(bgens, std::max(ambient, a.ambient_rank));
  if (a.ambient_rank != b.ambient_rank) {
    a = stallings_fold(agens, b.ambient_rank);
  }
  long long rka = rank(a), rkb = rank(b);
  auto classes = intersection_classes(a, b);
  long long rbar_sum = 0, rank_sum = 0;
  for (const auto& c : classes) {
    rbar_sum += 1LL * c.multiplicity * std::max(c.rank - 1, 0);
    rank_sum += 1LL * c.multiplicity * c.rank;
  }
  add_le(rep, "hn_reduced_rank_sum", rbar_sum,
         2 * std::max(rka - 1, 0LL) * std::max(rkb - 1, 0LL));
  add_le(rep, "intersection_rank_sum", rank_sum,
         40538LL * (rka * rkb) * (rka * rkb) * 16);
}

}  // namespace

Report verify_instance(const json& instance) {
  if (!instance.is_object() || !instance.contains("type")) {
    throw std::invalid_argument("instance needs a type");
  }
  Report rep;
  rep.type = instance.at("type").get<std::string>();
  rep.fingerprint = fingerprint(instance);
  if (rep.type == "pair") {
    verify_pair(rep, instance);
  } else if (rep.type == "wgraph") {
    verify_wgraph(rep, instance);
  } else if (rep.type == "dfa_pair") {
    verify_dfa_pair(rep, instance);
  } else if (rep.type == "words") {
    verify_words(rep, instance);
  } else if (rep.type == "lower_bound") {
    verify_lower_bound(rep, instance);
  } else if (rep.type == "subgroup_pair") {
    verify_subgroup_pair(rep, instance);
  } else {
    throw std::invalid_argument("unknown instance type");
  }
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const BoundCheck& a, const BoundCheck& b) { return a.name < b.name; });
  return rep;
}

json to_json(const Report& r) {
  json j;
  j["schema"] = kSchema;
  j["type"] = r.type;
  j["fingerprint"] = r.fingerprint;
  j["checks"] = json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}});
  }
  j["ok"] = r.all_ok();
  return j;
}

}  // namespace fibreprod
