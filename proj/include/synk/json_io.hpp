// Canonical JSON encoding of simplicial and Kripke models.
#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "synk/kripke.hpp"
#include "synk/simplicial.hpp"
#include "synk/unravel.hpp"

namespace synk {

using Json = nlohmann::json;

/// A parsed but unvalidated simplicial model.
struct SimplicialData {
  Universe universe;
  std::vector<Simplex> simplices;
  std::map<std::string, std::set<std::string>> valuation;
};

/// Throws ModelError on malformed documents.
SimplicialData simplicial_data_from_json(const Json& j);
/// Parses and validates; invalid complexes throw ModelError naming the violated condition.
SimplicialModel simplicial_from_json(const Json& j);
Json simplicial_to_json(const SimplicialModel& m);

/// "mode" is "explicit" (listed relations) or "generated" (the default).
PreModel kripke_from_json(const Json& j);
/// Self-pairs labelled by one group are written under "selfloops".
Json kripke_to_json(const PreModel& m);
Json unravelling_to_json(const Unravelling& u);

Json pattern_to_json(const AgentPattern& g, const Universe& u);
AgentPattern pattern_from_json(const Json& j, const Universe& u);

using AnyModel = std::variant<SimplicialModel, PreModel>;

/// Documents with "simplices" are simplicial, those with "worlds" are Kripke.
AnyModel model_from_json(const Json& j);
Json model_to_json(const AnyModel& m);

/// Two-space indentation, sorted keys, trailing newline.
std::string canonical_dump(const Json& j);
/// Throws std::runtime_error when the file cannot be read or parsed.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace synk
