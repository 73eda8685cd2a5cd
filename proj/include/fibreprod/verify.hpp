#pragma once

#include "fibreprod/json_io.hpp"

namespace fibreprod {

// Outcome of running every applicable bound check on one instance.
struct Report {
  std::string type;
  std::string fingerprint;
  std::vector<BoundCheck> checks;  // sorted by name

  bool all_ok() const;
};

// Dispatches on instance["type"]: "pair", "wgraph", "dfa_pair", "words",
// "lower_bound" or "subgroup_pair".  Throws std::invalid_argument on
// malformed input.
Report verify_instance(const json& instance);

json to_json(const Report& r);

}  // namespace fibreprod
