#include "synk/agents.hpp"

#include <algorithm>

namespace synk {

std::vector<std::size_t> AgentSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kMaxAgents; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::vector<AgentSet> nonempty_subsets(AgentSet s) {
  std::vector<AgentSet> out;
  // Enumerate submasks in increasing order.
  const std::uint32_t full = s.bits();
  std::uint32_t sub = 0;
  do {
    sub = (sub - full) & full;
    if (sub != 0) out.emplace_back(static_cast<std::uint16_t>(sub));
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

AgentPattern::AgentPattern(std::initializer_list<AgentSet> groups)
    : AgentPattern(std::vector<AgentSet>(groups)) {}

AgentPattern::AgentPattern(std::vector<AgentSet> groups) : groups_(std::move(groups)) {
  for (AgentSet g : groups_) {
    if (g.empty()) throw std::invalid_argument("agent pattern contains the empty group");
  }
  std::sort(groups_.begin(), groups_.end());
  groups_.erase(std::unique(groups_.begin(), groups_.end()), groups_.end());
}

bool AgentPattern::contains(AgentSet group) const {
  return std::binary_search(groups_.begin(), groups_.end(), group);
}

bool AgentPattern::subset_of(const AgentPattern& other) const {
  return std::includes(other.groups_.begin(), other.groups_.end(), groups_.begin(),
                       groups_.end());
}

AgentSet AgentPattern::agents() const {
  AgentSet u;
  for (AgentSet g : groups_) u = u | g;
  return u;
}

AgentPattern AgentPattern::with(AgentSet group) const {
  if (group.empty()) throw std::invalid_argument("agent pattern contains the empty group");
  AgentPattern out = *this;
  auto it = std::lower_bound(out.groups_.begin(), out.groups_.end(), group);
  if (it == out.groups_.end() || *it != group) out.groups_.insert(it, group);
  return out;
}

AgentPattern AgentPattern::without(AgentSet group) const {
  AgentPattern out = *this;
  auto it = std::lower_bound(out.groups_.begin(), out.groups_.end(), group);
  if (it != out.groups_.end() && *it == group) out.groups_.erase(it);
  return out;
}

AgentPattern AgentPattern::united(const AgentPattern& other) const {
  AgentPattern out;
  std::set_union(groups_.begin(), groups_.end(), other.groups_.begin(), other.groups_.end(),
                 std::back_inserter(out.groups_));
  return out;
}

std::uint32_t AgentPattern::small_code() const {
  std::uint32_t code = 0;
  for (AgentSet g : groups_) {
    if (g.bits() > 31) throw std::out_of_range("pattern has no small code");
    code |= 1u << (g.bits() - 1);
  }
  return code;
}

AgentPattern AgentPattern::from_small_code(std::uint32_t code) {
  AgentPattern out;
  for (std::uint32_t i = 0; i < 31; ++i) {
    if ((code >> i) & 1u) out.groups_.emplace_back(static_cast<std::uint16_t>(i + 1));
  }
  return out;
}

std::strong_ordering AgentPattern::operator<=>(const AgentPattern& o) const {
  return std::lexicographical_compare_three_way(groups_.begin(), groups_.end(),
                                                o.groups_.begin(), o.groups_.end());
}

std::size_t AgentPatternHash::operator()(const AgentPattern& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (AgentSet g : p) {
    h ^= g.bits();
    h *= 0x100000001b3ull;
  }
  return h;
}

AgentPattern pattern_complement(const AgentPattern& g, AgentSet universe) {
  std::vector<AgentSet> out;
  for (AgentSet h : nonempty_subsets(universe)) {
    bool covered = std::any_of(g.begin(), g.end(), [h](AgentSet b) { return h.subset_of(b); });
    if (!covered) out.push_back(h);
  }
  return AgentPattern(std::move(out));
}

AgentPattern pattern_star(const AgentPattern& g) { return singleton_pattern(g.agents()); }

AgentPattern pattern_max(const AgentPattern& g) {
  std::vector<AgentSet> out;
  for (AgentSet a : g) {
    bool dominated = std::any_of(g.begin(), g.end(),
                                 [a](AgentSet b) { return a != b && a.subset_of(b); });
    if (!dominated) out.push_back(a);
  }
  return AgentPattern(std::move(out));
}

AgentPattern singleton_pattern(AgentSet a) {
  std::vector<AgentSet> out;
  for (std::size_t i : a.members()) out.push_back(AgentSet::single(i));
  return AgentPattern(std::move(out));
}

AgentPattern downset(const AgentPattern& g) {
  std::vector<AgentSet> out;
  for (AgentSet a : g) {
    auto subs = nonempty_subsets(a);
    out.insert(out.end(), subs.begin(), subs.end());
  }
  return AgentPattern(std::move(out));
}

std::vector<AgentPattern> all_patterns(AgentSet universe) {
  if (universe.size() > 4) throw std::length_error("pattern enumeration limited to 4 agents");
  auto groups = nonempty_subsets(universe);
  const std::size_t n = groups.size();
  std::vector<AgentPattern> out;
  out.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t code = 1; code < (1u << n); ++code) {
    std::vector<AgentSet> members;
    for (std::size_t i = 0; i < n; ++i) {
      if ((code >> i) & 1u) members.push_back(groups[i]);
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("agent universe is empty");
  if (names_.size() > kMaxAgents) {
    throw std::invalid_argument("at most 16 agents are supported");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("agent name is empty");
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) {
        throw std::invalid_argument("duplicate agent name '" + names_[i] + "'");
      }
    }
  }
}

std::optional<std::size_t> Universe::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

AgentSet Universe::full() const {
  return AgentSet(static_cast<std::uint16_t>((1u << names_.size()) - 1));
}

bool Universe::single_char() const {
  return std::all_of(names_.begin(), names_.end(),
                     [](const std::string& n) { return n.size() == 1; });
}

AgentSet Universe::set_of(const std::vector<std::string>& names) const {
  AgentSet s;
  for (const auto& n : names) {
    auto i = index_of(n);
    if (!i) throw std::invalid_argument("unknown agent '" + n + "'");
    s = s | AgentSet::single(*i);
  }
  return s;
}

std::vector<std::string> Universe::names_of(AgentSet s) const {
  std::vector<std::string> out;
  for (std::size_t i : s.members()) out.push_back(name(i));
  return out;
}

std::string Universe::format_set(AgentSet s) const {
  std::string out;
  if (single_char()) {
    for (std::size_t i : s.members()) out += name(i);
    return out;
  }
  out = "{";
  bool first = true;
  for (std::size_t i : s.members()) {
    if (!first) out += ",";
    out += name(i);
    first = false;
  }
  return out + "}";
}

bool display_before(AgentSet a, AgentSet b) {
  if (a.size() != b.size()) return a.size() > b.size();
  auto ma = a.members();
  auto mb = b.members();
  return ma < mb;
}

std::string Universe::format_pattern(const AgentPattern& p) const {
  std::vector<AgentSet> groups = p.groups();
  std::sort(groups.begin(), groups.end(), display_before);
  std::string out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += ",";
    out += format_set(groups[i]);
  }
  return out;
}

}  // namespace synk
