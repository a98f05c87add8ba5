// Agent sets, agent patterns and the pattern algebra used by the [G] modality.
#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace synk {

inline constexpr std::size_t kMaxAgents = 16;

/// A subset of the agent universe, stored as a bitmask over agent indices.
class AgentSet {
 public:
  constexpr AgentSet() = default;
  constexpr explicit AgentSet(std::uint16_t bits) : bits_(bits) {}

  static constexpr AgentSet single(std::size_t agent) {
    return AgentSet(static_cast<std::uint16_t>(1u << agent));
  }

  constexpr std::uint16_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(std::size_t agent) const { return (bits_ >> agent) & 1u; }
  constexpr bool subset_of(AgentSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr AgentSet operator|(AgentSet o) const { return AgentSet(bits_ | o.bits_); }
  constexpr AgentSet operator&(AgentSet o) const { return AgentSet(bits_ & o.bits_); }

  std::vector<std::size_t> members() const;

  constexpr auto operator<=>(const AgentSet&) const = default;

 private:
  std::uint16_t bits_ = 0;
};

/// All non-empty subsets of `s`, in increasing bitmask order.
std::vector<AgentSet> nonempty_subsets(AgentSet s);

/// A finite set of non-empty agent sets. Groups are kept sorted by bitmask
/// and deduplicated, so structural equality is set equality.
class AgentPattern {
 public:
  AgentPattern() = default;
  AgentPattern(std::initializer_list<AgentSet> groups);
  explicit AgentPattern(std::vector<AgentSet> groups);

  const std::vector<AgentSet>& groups() const { return groups_; }
  std::size_t size() const { return groups_.size(); }
  bool empty() const { return groups_.empty(); }
  auto begin() const { return groups_.begin(); }
  auto end() const { return groups_.end(); }

  bool contains(AgentSet group) const;
  bool subset_of(const AgentPattern& other) const;
  /// Union of all member groups.
  AgentSet agents() const;

  AgentPattern with(AgentSet group) const;
  AgentPattern without(AgentSet group) const;
  AgentPattern united(const AgentPattern& other) const;

  /// Bit i set iff the group with bitmask i+1 is a member. Only defined for
  /// universes of at most 5 agents (31 possible groups).
  std::uint32_t small_code() const;
  static AgentPattern from_small_code(std::uint32_t code);

  bool operator==(const AgentPattern&) const = default;
  std::strong_ordering operator<=>(const AgentPattern& o) const;

 private:
  std::vector<AgentSet> groups_;
};

struct AgentPatternHash {
  std::size_t operator()(const AgentPattern& p) const noexcept;
};

/// G^C: the non-empty subsets of `universe` not contained in any member of `g`.
AgentPattern pattern_complement(const AgentPattern& g, AgentSet universe);
/// G*: one singleton group per agent occurring in `g`.
AgentPattern pattern_star(const AgentPattern& g);
/// The members of `g` that are maximal under inclusion.
AgentPattern pattern_max(const AgentPattern& g);
/// One singleton group per member of `a`.
AgentPattern singleton_pattern(AgentSet a);
/// Every non-empty agent set contained in some member of `g`.
AgentPattern downset(const AgentPattern& g);

/// All non-empty patterns over `universe`. Only sensible for small universes;
/// throws std::length_error above 4 agents.
std::vector<AgentPattern> all_patterns(AgentSet universe);

/// The ordered list of agent names that a model declares.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  AgentSet full() const;
  /// True when every agent name is one character, which enables the compact
  /// juxtaposition syntax `[ab,c]`.
  bool single_char() const;

  /// Throws std::invalid_argument on an unknown name.
  AgentSet set_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(AgentSet s) const;

  std::string format_set(AgentSet s) const;
  std::string format_pattern(const AgentPattern& p) const;

  bool operator==(const Universe&) const = default;

 private:
  std::vector<std::string> names_;
};

/// Display order for groups: larger groups first, then by agent order.
bool display_before(AgentSet a, AgentSet b);

}  // namespace synk
