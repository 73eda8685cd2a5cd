#include "fibreprod/json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace fibreprod {

namespace {

void check_schema(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchema) {
    throw std::invalid_argument("unknown schema tag");
  }
}

// Missing keys and type mismatches surface as std::invalid_argument.
template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace

json to_json(const Digraph& g) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "graph";
  j["vertices"] = json::array();
  for (int v : g.vertices()) j["vertices"].push_back(v);
  j["edges"] = json::array();
  for (const auto& [e, ends] : g.edges()) {
    j["edges"].push_back({{"id", e}, {"src", ends.src}, {"dst", ends.dst}});
  }
  j["initial"] = json::array();
  for (int v : g.initial) j["initial"].push_back(v);
  j["final"] = json::array();
  for (int v : g.final_) j["final"].push_back(v);
  return j;
}

Digraph digraph_from_json(const json& j) {
  return guarded([&] {
  check_schema(j);
  Digraph g;
  for (const auto& v : j.at("vertices")) g.add_vertex(v.get<int>());
  for (const auto& e : j.at("edges")) {
    int id = e.at("id").get<int>();
    int src = e.at("src").get<int>(), dst = e.at("dst").get<int>();
    if (!g.has_vertex(src) || !g.has_vertex(dst)) {
      throw std::invalid_argument("edge endpoint missing");
    }
    if (g.has_edge(id)) throw std::invalid_argument("duplicate edge id");
    g.add_edge(id, src, dst);
  }
  for (const auto& v : j.value("initial", json::array())) {
    int u = v.get<int>();
    if (!g.has_vertex(u)) throw std::invalid_argument("initial vertex missing");
    g.initial.insert(u);
  }
  for (const auto& v : j.value("final", json::array())) {
    int u = v.get<int>();
    if (!g.has_vertex(u)) throw std::invalid_argument("final vertex missing");
    g.final_.insert(u);
  }
  return g;
  });
}

json to_json(const GraphMap& m) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "map";
  j["source"] = to_json(m.source);
  j["target"] = to_json(m.target);
  j["vmap"] = json::array();
  for (const auto& [v, img] : m.vmap) j["vmap"].push_back({v, img});
  j["emap"] = json::array();
  for (const auto& [e, img] : m.emap) j["emap"].push_back({e, img});
  return j;
}

GraphMap graphmap_from_json(const json& j) {
  return guarded([&] {
  check_schema(j);
  GraphMap m;
  m.source = digraph_from_json(j.at("source"));
  m.target = digraph_from_json(j.at("target"));
  for (const auto& p : j.at("vmap")) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("bad vmap");
    m.vmap[p[0].get<int>()] = p[1].get<int>();
  }
  for (const auto& p : j.at("emap")) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("bad emap");
    m.emap[p[0].get<int>()] = p[1].get<int>();
  }
  if (check_map(m) == MapClass::NotAMap) {
    throw std::invalid_argument("assignments do not form a graph map");
  }
  return m;
  });
}

json to_json(const Dfa& d) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = "dfa";
  j["alphabet"] = d.map.target.num_edges();
  j["states"] = json::array();
  for (int v : d.map.source.vertices()) j["states"].push_back(v);
  j["transitions"] = json::array();
  for (const auto& [e, ends] : d.map.source.edges()) {
    j["transitions"].push_back({{"src", ends.src},
                                {"letter", d.map.emap.at(e)},
                                {"dst", ends.dst}});
  }
  j["start"] = d.start;
  j["accept"] = json::array();
  for (int v : d.map.source.final_) j["accept"].push_back(v);
  return j;
}

Dfa dfa_from_json(const json& j) {
  return guarded([&] {
  check_schema(j);
  int k = j.at("alphabet").get<int>();
  if (k < 0) throw std::invalid_argument("negative alphabet");
  GraphMap m;
  m.target.add_vertex(0);
  for (int e = 0; e < k; ++e) m.target.add_edge(e, 0, 0);
  for (const auto& v : j.at("states")) m.source.add_vertex(v.get<int>());
  int ne = 0;
  for (const auto& t : j.at("transitions")) {
    int src = t.at("src").get<int>(), dst = t.at("dst").get<int>();
    int letter = t.at("letter").get<int>();
    if (!m.source.has_vertex(src) || !m.source.has_vertex(dst)) {
      throw std::invalid_argument("transition endpoint missing");
    }
    if (letter < 0 || letter >= k) throw std::invalid_argument("letter out of range");
    int e = ne++;
    m.source.add_edge(e, src, dst);
    m.emap[e] = letter;
  }
  for (int v : m.source.vertices()) m.vmap[v] = 0;
  int start = j.at("start").get<int>();
  if (!m.source.has_vertex(start)) throw std::invalid_argument("start state missing");
  m.source.initial = {start};
  for (const auto& v : j.at("accept")) {
    int u = v.get<int>();
    if (!m.source.has_vertex(u)) throw std::invalid_argument("accept state missing");
    m.source.final_.insert(u);
  }
  return make_dfa(m);
  });
}

json to_json(const Word& w) {
  json j = json::array();
  for (int letter : w.letters()) j.push_back(letter);
  return j;
}

Word word_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_array()) throw std::invalid_argument("expected a letter array");
    std::vector<int> letters;
    for (const auto& v : j) letters.push_back(v.get<int>());
    return Word(letters);
  });
}

std::string fingerprint(const json& j) {
  std::string s = j.dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace fibreprod
