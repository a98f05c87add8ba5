// Partial equivalence relations over world indices and a set-based
// evaluator shared by simplicial and Kripke models.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "synk/agents.hpp"
#include "synk/formula.hpp"

namespace synk {

/// A symmetric, transitive relation on {0..n-1}. Worlds outside the domain
/// (not related to anything, not even themselves) carry class id -1.
class Partition {
 public:
  Partition() = default;
  /// Class ids are renumbered in order of first appearance.
  explicit Partition(std::vector<int> class_ids);

  static Partition empty(std::size_t n);
  static Partition total(std::size_t n);
  static Partition identity(std::size_t n);
  /// Symmetric-transitive closure of the given pairs (self pairs allowed).
  static Partition closure(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  std::size_t size() const { return ids_.size(); }
  int class_of(std::size_t w) const { return ids_[w]; }
  bool in_domain(std::size_t w) const { return ids_[w] >= 0; }
  bool related(std::size_t u, std::size_t v) const { return ids_[u] >= 0 && ids_[u] == ids_[v]; }
  std::size_t class_count() const { return classes_; }
  const std::vector<int>& ids() const { return ids_; }
  std::vector<std::vector<std::size_t>> classes() const;

  /// True when every related pair of this is related in `other`.
  bool subset_of(const Partition& other) const;
  /// First pair (u,v) related here but not in `other`.
  std::optional<std::pair<std::size_t, std::size_t>> missing_in(const Partition& other) const;
  Partition intersect(const Partition& other) const;

  bool operator==(const Partition& o) const { return ids_ == o.ids_; }

 private:
  std::vector<int> ids_;
  std::size_t classes_ = 0;
};

/// A finite model seen through its accessibility relations.
class Structure {
 public:
  virtual ~Structure() = default;
  virtual const Universe& universe() const = 0;
  virtual std::size_t world_count() const = 0;
  virtual const std::string& world_name(std::size_t w) const = 0;
  virtual Partition relation(const AgentPattern& g) const = 0;
  virtual bool holds(std::size_t w, const std::string& prop) const = 0;
  /// Whether the proposition occurs anywhere in the valuation.
  virtual bool knows_proposition(const std::string& prop) const = 0;

  std::optional<std::size_t> world_index(std::string_view name) const;
  /// Like world_index but throws std::invalid_argument.
  std::size_t require_world(std::string_view name) const;
};

class UnknownProposition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Computes truth sets of formulas over a structure, memoized per node. The
/// structure must outlive the evaluator.
class Evaluator {
 public:
  explicit Evaluator(const Structure& s, bool strict = false);

  /// One flag per world.
  const std::vector<char>& extension(const Formula& f);
  bool holds(std::size_t w, const Formula& f) { return extension(f)[w] != 0; }
  /// First world where `f` fails, if any.
  std::optional<std::size_t> first_failure(const Formula& f);
  const Partition& relation(const AgentPattern& g);

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  const Structure& s_;
  bool strict_;
  std::unordered_map<const void*, std::pair<Formula, std::vector<char>>> memo_;
  std::map<AgentPattern, Partition> relations_;
  std::vector<std::string> warnings_;
  bool warned_empty_ = false;
};

}  // namespace synk
