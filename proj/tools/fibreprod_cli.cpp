#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fibreprod/freegroup.hpp"
#include "fibreprod/gen.hpp"
#include "fibreprod/verify.hpp"
#include "fibreprod/wgraph.hpp"

namespace {

using fibreprod::json;

json read_json(const std::string& path) {
  if (path.empty() || path == "-") {
    return json::parse(std::cin);
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

// "a b^-1 a" or compact "aB a"; letters a..z, uppercase inverts.
fibreprod::Word parse_group_word(const std::string& text) {
  std::vector<int> letters;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      std::string base = tok.substr(0, caret);
      if (base.size() != 1 || base[0] < 'a' || base[0] > 'z') {
        throw std::invalid_argument("bad token: " + tok);
      }
      int letter = base[0] - 'a' + 1;
      int exp = std::stoi(tok.substr(caret + 1));
      int step = exp >= 0 ? letter : -letter;
      for (int i = 0; i < std::abs(exp); ++i) letters.push_back(step);
      continue;
    }
    for (char c : tok) {
      if (c >= 'a' && c <= 'z') {
        letters.push_back(c - 'a' + 1);
      } else if (c >= 'A' && c <= 'Z') {
        letters.push_back(-(c - 'A' + 1));
      } else {
        throw std::invalid_argument("bad letter in token: " + tok);
      }
    }
  }
  return fibreprod::Word(letters);
}

std::vector<fibreprod::Word> parse_gens(const std::vector<std::string>& texts) {
  std::vector<fibreprod::Word> gens;
  for (const auto& t : texts) gens.push_back(parse_group_word(t));
  return gens;
}

std::string letters_str(const fibreprod::Word& w) {
  std::string s;
  for (int l : w.letters()) {
    if (l > 0 && l <= 26) {
      s.push_back(static_cast<char>('a' + l - 1));
    } else if (l < 0 && l >= -26) {
      s.push_back(static_cast<char>('A' - l - 1));
    } else {
      return w.str();
    }
  }
  return s;
}

json gen_instance(fibreprod::Gen& rng, const std::string& type, int k, int m) {
  using namespace fibreprod;
  json inst;
  inst["schema"] = kSchema;
  inst["type"] = type;
  if (type == "pair") {
    int alphabet = rng.range(2, 4);
    auto topo = [&] {
      return static_cast<Topology>(rng.below(5));
    };
    inst["gamma"] = to_json(gen_forwards_immersion(rng, alphabet, 30, topo()));
    inst["lambda"] = to_json(gen_forwards_immersion(rng, alphabet, 30, topo()));
  } else if (type == "wgraph") {
    int alphabet = rng.range(2, 4);
    inst["gamma"] = to_json(gen_forwards_immersion(
        rng, alphabet, 30, static_cast<Topology>(rng.below(5))));
    inst["w"] = to_json(gen_primitive_word(rng, alphabet, rng.range(1, 6)));
  } else if (type == "dfa_pair") {
    int alphabet = rng.range(1, 4);
    auto topo = [&] { return static_cast<Topology>(rng.below(5)); };
    inst["a"] = to_json(gen_dfa(rng, alphabet, 40, topo()));
    inst["b"] = to_json(gen_dfa(rng, alphabet, 40, topo()));
  } else if (type == "words") {
    int alphabet = rng.range(2, 3);
    inst["v"] = to_json(gen_word(rng, alphabet, rng.range(1, 64)));
    inst["w"] = to_json(gen_word(rng, alphabet, rng.range(1, 64)));
  } else if (type == "lower_bound") {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    if (k < 1) k = rng.range(1, 2);
    if (m < 1) m = rng.range(1, 2);
    inst["k"] = k;
    inst["m"] = m;
    inst["primes"] = json::array();
    for (int i = 0; i < k + m; ++i) inst["primes"].push_back(primes[i]);
  } else if (type == "subgroup_pair") {
    int rank = rng.range(1, 4);
    inst["ambient_rank"] = rank;
    inst["a_gens"] = json::array();
    for (const Word& g : gen_subgroup_gens(rng, rank, rng.range(1, 4), 8)) {
      inst["a_gens"].push_back(to_json(g));
    }
    inst["b_gens"] = json::array();
    for (const Word& g : gen_subgroup_gens(rng, rank, rng.range(1, 4), 8)) {
      inst["b_gens"].push_back(to_json(g));
    }
  } else {
    throw std::invalid_argument("unknown instance type " + type);
  }
  return inst;
}

int run(int argc, char** argv) {
  using namespace fibreprod;
  CLI::App app{"structure theory of graph immersions: products, w-graphs, "
               "long cycles, intersection non-emptiness, subgroup graphs"};
  app.require_subcommand(1);

  // graph
  std::string graph_in;
  auto* cmd_graph = app.add_subcommand("graph", "normalize a graph and report invariants");
  cmd_graph->add_option("--in", graph_in, "input file, - for stdin");

  // product
  std::string prod_gamma, prod_lambda;
  auto* cmd_product = app.add_subcommand("product", "fibre product of two maps");
  cmd_product->add_option("--gamma", prod_gamma)->required();
  cmd_product->add_option("--lambda", prod_lambda)->required();

  // wgraph
  std::string wg_map, wg_word;
  auto* cmd_wgraph = app.add_subcommand("wgraph", "circle product structure for a loop word");
  cmd_wgraph->add_option("--map", wg_map)->required();
  cmd_wgraph->add_option("--w", wg_word, "comma separated target edge ids")->required();

  // long-cycles
  std::string lc_map;
  auto* cmd_lc = app.add_subcommand("long-cycles", "high-degree primitive cycles");
  cmd_lc->add_option("--map", lc_map)->required();

  // nei
  std::string nei_a, nei_b;
  auto* cmd_nei = app.add_subcommand("nei", "intersection non-emptiness of two DFAs");
  cmd_nei->add_option("--a", nei_a)->required();
  cmd_nei->add_option("--b", nei_b)->required();

  // gen
  uint64_t seed = 0;
  std::string gen_type;
  int gen_count = 1, gen_k = 0, gen_m = 0;
  auto* cmd_gen = app.add_subcommand("gen", "seed-deterministic instance generator");
  cmd_gen->add_option("--seed", seed);
  cmd_gen->add_option("--type", gen_type)->required();
  cmd_gen->add_option("--count", gen_count);
  cmd_gen->add_option("--k", gen_k);
  cmd_gen->add_option("--m", gen_m);

  // subgroup
  auto* cmd_sub = app.add_subcommand("subgroup", "subgroup graph operations");
  cmd_sub->require_subcommand(1);
  std::vector<std::string> sub_gens, sub_other;
  std::string sub_word;
  int sub_rank = 0;
  for (const char* name : {"fold", "rank", "intersect", "rel-order",
                           "max-cyclic", "spectrum"}) {
    auto* c = cmd_sub->add_subcommand(name);
    c->add_option("--gens", sub_gens, "generators, e.g. \"a b^-1 a\" or \"aB a\"");
    c->add_option("--other-gens", sub_other, "second subgroup's generators");
    c->add_option("--word", sub_word, "group word");
    c->add_option("--ambient-rank", sub_rank);
  }

  // verify
  std::string verify_in;
  auto* cmd_verify = app.add_subcommand("verify", "run every applicable bound check");
  cmd_verify->add_option("--in", verify_in, "input file, - for stdin");

  CLI11_PARSE(app, argc, argv);

  // Sequential runner; FIBREPROD_THREADS caps parallelism and 1 is always
  // a legal cap, so it is honored trivially.
  if (const char* t = std::getenv("FIBREPROD_THREADS")) {
    if (std::atoi(t) < 1) throw std::invalid_argument("bad FIBREPROD_THREADS");
  }

  json out;
  if (cmd_graph->parsed()) {
    Digraph g = digraph_from_json(read_json(graph_in));
    out["graph"] = to_json(g);
    Betti b = betti(g);
    out["betti"] = {{"b0", b.b0}, {"b1", b.b1}};
    out["core_edges"] = core(g).num_edges();
    out["rcore_edges"] = rcore(g).num_edges();
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (cmd_product->parsed()) {
    GraphMap gamma = graphmap_from_json(read_json(prod_gamma));
    GraphMap lambda = graphmap_from_json(read_json(prod_lambda));
    FibreProduct fp = fibre_product(gamma, lambda);
    out["product"] = to_json(fp.product);
    Digraph th = theta(fp);
    out["theta_edges"] = th.num_edges();
    out["homotopy_classes"] = homotopy_class_count(fp);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (cmd_wgraph->parsed()) {
    GraphMap gamma = graphmap_from_json(read_json(wg_map));
    std::vector<int> letters;
    std::istringstream ss(wg_word);
    for (std::string tok; std::getline(ss, tok, ',');) letters.push_back(std::stoi(tok));
    Word w{std::move(letters)};
    OmegaGraph om = omega(gamma, w);
    out["components"] = om.components.size();
    out["shapes"] = json::array();
    for (OmegaShape s : om.shapes) {
      out["shapes"].push_back(s == OmegaShape::Tree ? "tree"
                              : s == OmegaShape::CycleWithTrees ? "cycle_with_trees"
                                                                : "other");
    }
    out["w_sinks"] = json::array();
    for (int v : w_sinks(gamma, w)) out["w_sinks"].push_back(v);
    out["submaximal_w_lengths"] = json::array();
    for (int n : submaximal_w_lengths(gamma, w)) out["submaximal_w_lengths"].push_back(n);
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (cmd_lc->parsed()) {
    GraphMap gamma = graphmap_from_json(read_json(lc_map));
    LongCycles lc = long_cycles(gamma);
    out["beta1"] = lc.beta1;
    out["threshold"] = lc.threshold;
    out["cycles"] = json::array();
    for (const LongCycle& c : lc.cycles) {
      out["cycles"].push_back({{"label", to_json(c.label)},
                               {"degree", c.degree},
                               {"edges", c.circle.edges}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (cmd_nei->parsed()) {
    Dfa a = dfa_from_json(read_json(nei_a));
    Dfa b = dfa_from_json(read_json(nei_b));
    NeiResult res = nei(a, b);
    bool oracle = rabin_scott(a, b);
    out["answer"] = res.answer;
    out["branch"] = res.branch;
    out["oracle"] = oracle;
    std::cout << out.dump(2) << "\n";
    if (res.answer != oracle) {
      std::cerr << "decision disagrees with the product oracle\n";
      return 1;
    }
    return res.answer ? 0 : 1;
  }
  if (cmd_gen->parsed()) {
    Gen rng(seed);
    if (gen_count == 1) {
      out = gen_instance(rng, gen_type, gen_k, gen_m);
    } else {
      out["schema"] = kSchema;
      out["instances"] = json::array();
      for (int i = 0; i < gen_count; ++i) {
        out["instances"].push_back(gen_instance(rng, gen_type, gen_k, gen_m));
      }
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (cmd_sub->parsed()) {
    SubgroupGraph A = stallings_fold(parse_gens(sub_gens), sub_rank);
    CLI::App* op = cmd_sub->get_subcommands().front();
    const std::string& name = op->get_name();
    if (name == "fold") {
      out["graph"] = to_json(A.graph.g);
      out["basepoint"] = A.graph.basepoint;
      out["labels"] = json::array();
      for (const auto& [e, l] : A.graph.elabel) out["labels"].push_back({e, l});
      out["rank"] = rank(A);
    } else if (name == "rank") {
      out["rank"] = rank(A);
    } else if (name == "intersect") {
      SubgroupGraph B = stallings_fold(parse_gens(sub_other), A.ambient_rank);
      if (B.ambient_rank != A.ambient_rank) {
        A = stallings_fold(parse_gens(sub_gens), B.ambient_rank);
      }
      out["classes"] = json::array();
      for (const auto& c : intersection_classes(A, B)) {
        json cls;
        cls["rank"] = c.rank;
        cls["multiplicity"] = c.multiplicity;
        cls["cyclic"] = c.cyclic;
        if (c.cyclic) cls["label"] = letters_str(c.cyclic_label);
        out["classes"].push_back(cls);
      }
    } else if (name == "rel-order") {
      auto o = relative_order(A, parse_group_word(sub_word));
      out["order"] = o ? json(*o) : json("inf");
    } else if (name == "max-cyclic") {
      out["classes"] = json::array();
      for (const auto& c : maximal_cyclic_classes(A)) {
        out["classes"].push_back({{"word", letters_str(c.word)}, {"index", c.index}});
      }
    } else if (name == "spectrum") {
      out["superset"] = json::array();
      for (int n : spectrum_superset(A)) out["superset"].push_back(n);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (cmd_verify->parsed()) {
    json in = read_json(verify_in);
    bool ok = true;
    if (in.is_object() && in.contains("instances")) {
      out["schema"] = kSchema;
      out["reports"] = json::array();
      for (const auto& inst : in.at("instances")) {
        Report rep = verify_instance(inst);
        ok = ok && rep.all_ok();
        out["reports"].push_back(to_json(rep));
      }
    } else {
      Report rep = verify_instance(in);
      ok = rep.all_ok();
      out = to_json(rep);
    }
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
