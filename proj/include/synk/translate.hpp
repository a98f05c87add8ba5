// The δ-translation of proper δ-models into simplicial models.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synk/kripke.hpp"
#include "synk/simplicial.hpp"

namespace synk {

struct TranslateOptions {
  /// Run the construction even when the input is not a proper δ-model.
  bool skip_gate = false;
  /// Enumeration: order[i] is the world enumerated (i+1)-th. Empty means file order.
  std::vector<std::size_t> order;
};

/// One execution of the replacement step for agent set B on pair (i,j),
/// in enumeration indices (1-based): (B,j) leaves S_j and (B,k) enters it.
struct Replacement {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  AgentSet b;
  bool removed = false;  // (B,j) was present
  std::optional<std::uint32_t> displaced;  // another color of B already in S_j
};

struct Translation {
  PreModel source;
  /// simplices[w] is the image of world w (source world order).
  std::vector<Simplex> simplices;
  std::optional<SimplicialModel> target;  // empty when the output is not a complex
  std::string target_error;
  std::vector<std::size_t> order;
  std::map<std::string, std::string> mapping;  // world -> simplex name
  std::vector<Replacement> trace;
};

/// Throws FrameError if the input is not a proper δ-model (unless skipped) or a
/// world has no unique maximal alive agent set.
Translation delta_translate(const PreModel& m, const TranslateOptions& opts = {});

struct CertCheck {
  std::string id;  // a..g
  std::string title;
  bool ok = true;
  std::string witness;
};

struct Certificate {
  std::vector<CertCheck> checks;
  std::size_t suite_size = 0;
  bool passed() const;
  std::string text() const;
};

/// Certifies a translation: simplex conditions, complex condition, T1, T2,
/// equality of indistinguishability, the translation conditions via face
/// intersection, and truth agreement on the formula suite of `suite_depth`.
Certificate verify_translation(const Translation& t, std::size_t suite_depth);

}  // namespace synk
