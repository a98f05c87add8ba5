// Built-in example models.
#pragma once

#include <string>
#include <vector>

#include "synk/json_io.hpp"

namespace synk {

struct CorpusEntry {
  std::string name;
  std::string description;
  /// "complex", "kappa" (κ but not δ), "proper" or "delta" (δ but not proper).
  std::string level;
};

const std::vector<CorpusEntry>& corpus();
/// Throws std::invalid_argument for unknown names.
AnyModel load_example(const std::string& name);

}  // namespace synk
