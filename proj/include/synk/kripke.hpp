// Kripke pre-models with pattern-indexed relations and their frame checks.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "synk/agents.hpp"
#include "synk/formula.hpp"
#include "synk/simplicial.hpp"
#include "synk/structure.hpp"

namespace synk {

/// `listed`: each pattern's relation is the symmetric-transitive closure of
/// the pairs listed under exactly that pattern; unlisted patterns are empty.
/// `generated`: the listed pairs are generators, closed under K3, K4 and
/// symmetric-transitive closure. That closure is computed directly: w ~_G v
/// iff w,v are joined by a path of generators whose patterns H each satisfy
/// G ⊆ downset(H).
enum class RelationMode { listed, generated };

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  AgentPattern pattern;
  bool operator==(const Edge&) const = default;
};

class PreModel : public Structure {
 public:
  PreModel() = default;
  /// Throws ModelError on duplicate/unknown worlds.
  PreModel(Universe u, std::vector<std::string> worlds, RelationMode mode, std::vector<Edge> edges,
           std::map<std::string, std::set<std::string>> valuation);

  const Universe& universe() const override { return universe_; }
  std::size_t world_count() const override { return worlds_.size(); }
  const std::string& world_name(std::size_t w) const override { return worlds_[w]; }
  Partition relation(const AgentPattern& g) const override;
  bool holds(std::size_t w, const std::string& prop) const override;
  bool knows_proposition(const std::string& prop) const override;

  RelationMode mode() const { return mode_; }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::map<std::string, std::set<std::string>>& valuation() const { return valuation_; }
  std::set<std::string> props_at(std::size_t w) const;
  std::set<std::string> propositions() const;
  /// Distinct patterns labelling edges.
  std::vector<AgentPattern> support() const;
  /// Whether the generator `e` reaches pattern `g` (g ⊆ downset(e.pattern)).
  bool covers(std::size_t edge, const AgentPattern& g) const;

 private:
  Universe universe_;
  std::vector<std::string> worlds_;
  RelationMode mode_ = RelationMode::generated;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> down_codes_;  // small universes only
  std::map<std::string, std::set<std::string>> valuation_;
};

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Materializes a generated model as a listed one over every pattern whose
/// relation is non-empty (including the empty pattern). Limited to 4 agents
/// and `budget` listed pairs; throws std::length_error beyond that.
PreModel close_relations(const PreModel& m, std::size_t budget = 1u << 20);

bool eval_kripke(const PreModel& m, std::string_view world, const Formula& f, bool strict = false);

/// Worlds w with w ~_G w, in world order.
std::vector<std::size_t> alive_set(const PreModel& m, const AgentPattern& g);

enum class FrameLevel { kappa, delta, proper };

struct Verdict {
  std::string property;
  std::optional<bool> ok;  // empty when not checked at this level
  std::vector<std::size_t> worlds;
  std::vector<AgentPattern> patterns;
  std::string witness;
};

struct FrameReport {
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;

  bool passed() const;
  const Verdict& get(std::string_view property) const;
  const Verdict* first_failure() const;
};

/// Patterns over which frame conditions quantify: every non-empty pattern
/// when there are at most 4 agents, otherwise the edge support together with
/// its single-group sub-patterns (a warning is appended).
std::vector<AgentPattern> check_universe(const PreModel& m, std::vector<std::string>* warnings);

FrameReport check_frame(const PreModel& m, FrameLevel level);

/// w̄: all B with w ~_{{B}} w.
AgentPattern bar(const PreModel& m, std::size_t w);
/// w ≡ v: equal bars and w ~_{w̄} v.
bool equiv(const PreModel& m, std::size_t w, std::size_t v);

struct ValuationClash {
  std::size_t w = 0;
  std::size_t v = 0;
  std::string prop;
};

struct QuotientResult {
  std::optional<PreModel> model;
  /// Index of each world's class in the quotient (least member first).
  std::vector<std::size_t> class_of;
  std::optional<ValuationClash> clash;
  std::vector<std::string> diagnostics;
};

/// M^ρ. Throws FrameError when the input is not a δ-model.
QuotientResult quotient(const PreModel& m);

std::string format_worlds(const Structure& m, const std::vector<std::size_t>& worlds);

}  // namespace synk
