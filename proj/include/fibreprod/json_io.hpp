#pragma once

#include "fibreprod/nei.hpp"
#include "json.hpp"

namespace fibreprod {

using nlohmann::json;

// Schema tag carried by every emitted document.
inline constexpr const char* kSchema = "fibreprod/1";

json to_json(const Digraph& g);
Digraph digraph_from_json(const json& j);

json to_json(const GraphMap& m);
GraphMap graphmap_from_json(const json& j);

json to_json(const Dfa& d);
Dfa dfa_from_json(const json& j);

json to_json(const Word& w);
Word word_from_json(const json& j);

// FNV-1a hash of the canonical dump, as fixed-width hex.
std::string fingerprint(const json& j);

}  // namespace fibreprod
