// Depth-bounded unravelling of κ-models into history models.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "synk/kripke.hpp"

namespace synk {

struct Step {
  std::size_t from = 0;
  AgentPattern pattern;
  std::size_t to = 0;
  auto operator<=>(const Step&) const = default;
  bool operator==(const Step&) const = default;
};

using History = std::vector<Step>;

/// The non-empty patterns relating u and v that are maximal under inclusion.
/// Throws FrameError if a maximal pattern is not closed under subsets (which
/// K4 forces in every κ-model). At most 5 agents.
std::vector<AgentPattern> maximal_patterns(const PreModel& m, std::size_t u, std::size_t v);

/// All histories with 1..d steps in breadth-first order (prefix-closed).
/// Throws std::invalid_argument for d < 1 and std::length_error past `budget`.
std::vector<History> histories(const PreModel& m, std::size_t d, std::size_t budget = 400000);

/// h2 = h ∥ (ℓ(h), U, x) with g ⊆ U.
bool arrow(const History& h, const History& h2, const AgentPattern& g);

std::string history_name(const PreModel& m, const History& h);

struct Unravelling {
  PreModel model;  // worlds are histories, edges join each history to its parent
  std::vector<History> histories;
  std::vector<std::size_t> last;      // ℓ(h) per history
  std::vector<long> parent;           // -1 for one-step histories
  std::vector<char> interior;         // length ≤ depth-1
  std::size_t depth = 0;

  std::vector<std::size_t> interior_worlds() const;
};

Unravelling unravel_model(const PreModel& m, std::size_t d, std::size_t budget = 400000);

/// First pair (u,v) of worlds flagged in `subset` where D fails, together with
/// the pattern of all groups B with u ~_{{B}} v.
struct DWitness {
  std::size_t u = 0;
  std::size_t v = 0;
  AgentPattern pattern;
};
std::optional<DWitness> check_d_on(const PreModel& m, const std::vector<char>& subset);

struct BisimViolation {
  std::string kind;  // Atom, Forth, Back
  std::size_t w = 0;
  std::size_t v = 0;
  AgentPattern pattern;
  std::string detail;
};

/// Patterns used for bisimulation checks: every non-empty pattern over at
/// most 3 agents, else the joint edge support with its single-group patterns.
std::vector<AgentPattern> bisim_patterns(const PreModel& m, const PreModel& n);

/// Checks that `f` (indexed by m's worlds) is a functional bisimulation from
/// m to n. Back is only checked at worlds flagged in `back_domain` when given.
std::optional<BisimViolation> check_functional_bisim(const PreModel& m, const PreModel& n,
                                                     const std::vector<std::size_t>& f,
                                                     const std::vector<AgentPattern>& patterns,
                                                     const std::vector<char>* back_domain = nullptr);

}  // namespace synk
