#include "synk/simplicial.hpp"

#include <algorithm>

namespace synk {

Simplex::Simplex(std::string n, std::vector<Face> f) : name(std::move(n)), faces(std::move(f)) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
}

bool Simplex::has(const Face& f) const { return std::binary_search(faces.begin(), faces.end(), f); }

std::optional<std::uint32_t> Simplex::color_of(AgentSet a) const {
  auto it = std::lower_bound(faces.begin(), faces.end(), Face{a, 0});
  if (it != faces.end() && it->agents == a) return it->color;
  return std::nullopt;
}

Face Simplex::max_face() const {
  Face best = faces.front();
  for (const Face& f : faces) {
    if (f.agents.size() > best.agents.size()) best = f;
  }
  return best;
}

std::string format_face(const Face& f, const Universe& u) {
  return u.format_set(f.agents) + std::to_string(f.color);
}

std::string auto_name(const Simplex& s, const Universe& u) { return format_face(s.max_face(), u); }

std::optional<Violation> validate_simplex(const Simplex& s, const Universe& u) {
  const std::string who = s.name.empty() ? std::string("simplex") : "simplex '" + s.name + "'";
  if (s.faces.empty()) return Violation{"S1", who + " has no faces"};
  for (const Face& f : s.faces) {
    if (f.agents.empty()) return Violation{"S2", who + " has a face with no agents"};
    if (!f.agents.subset_of(u.full())) return Violation{"S3", who + " mentions undeclared agents"};
  }
  std::size_t top = 0;
  for (const Face& f : s.faces) top = std::max(top, f.agents.size());
  std::vector<Face> maxima;
  for (const Face& f : s.faces) {
    if (f.agents.size() == top) maxima.push_back(f);
  }
  if (maxima.size() != 1) {
    return Violation{"S1", who + " has several maximal faces: " + format_face(maxima[0], u) +
                               " and " + format_face(maxima[1], u)};
  }
  const Face mx = maxima.front();
  for (std::size_t i = 1; i < s.faces.size(); ++i) {
    if (s.faces[i].agents == s.faces[i - 1].agents) {
      return Violation{"S2", who + " has two colors for " + u.format_set(s.faces[i].agents) + ": " +
                                 format_face(s.faces[i - 1], u) + " and " +
                                 format_face(s.faces[i], u)};
    }
  }
  for (const Face& f : s.faces) {
    for (AgentSet c : nonempty_subsets(f.agents)) {
      if (!s.color_of(c)) {
        return Violation{"S2", who + " has face " + format_face(f, u) + " but no face for " +
                                   u.format_set(c)};
      }
    }
  }
  for (const Face& f : s.faces) {
    if (!f.agents.subset_of(mx.agents)) {
      return Violation{"S3", who + " has face " + format_face(f, u) +
                                 " outside its maximal face " + format_face(mx, u)};
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate_complex(const std::vector<Simplex>& simplices,
                                          const Universe& u) {
  for (const Simplex& s : simplices) {
    if (auto v = validate_simplex(s, u)) return v;
  }
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Simplex& s = simplices[j];
      const Simplex& t = simplices[i];
      if (!s.name.empty() && s.name == t.name) {
        return Violation{"name", "two simplices are named '" + s.name + "'"};
      }
      if (s.faces == t.faces) {
        return Violation{"C", "simplices '" + s.name + "' and '" + t.name + "' are identical"};
      }
      for (const Face& shared : s.faces) {
        if (!t.has(shared)) continue;
        for (AgentSet b : nonempty_subsets(shared.agents)) {
          auto cs = s.color_of(b);
          auto ct = t.color_of(b);
          if (cs != ct) {
            return Violation{
                "C", "simplices '" + s.name + "' and '" + t.name + "' share " +
                         format_face(shared, u) + " but disagree below it: " +
                         format_face(Face{b, *cs}, u) + " vs " + format_face(Face{b, *ct}, u)};
          }
        }
      }
    }
  }
  return std::nullopt;
}

AgentPattern projection(const Simplex& s) {
  std::vector<AgentSet> groups;
  for (const Face& f : s.faces) groups.push_back(f.agents);
  return AgentPattern(std::move(groups));
}

bool indist(const Simplex& s, const Simplex& t, const AgentPattern& g) {
  for (AgentSet b : g) {
    auto cs = s.color_of(b);
    if (!cs || cs != t.color_of(b)) return false;
  }
  return true;
}

SimplicialModel::SimplicialModel(Universe u, std::vector<Simplex> simplices,
                                 std::map<std::string, std::set<std::string>> valuation)
    : universe_(std::move(u)), simplices_(std::move(simplices)), valuation_(std::move(valuation)) {
  for (Simplex& s : simplices_) {
    if (s.name.empty() && !s.faces.empty()) s.name = auto_name(s, universe_);
  }
  if (auto v = validate_complex(simplices_, universe_)) {
    throw ModelError(v->condition + " violated: " + v->detail);
  }
  for (const auto& [world, props] : valuation_) {
    if (!world_index(world)) throw ModelError("valuation names unknown simplex '" + world + "'");
  }
}

Partition relation_of(const std::vector<Simplex>& simplices, const AgentPattern& g) {
  std::map<std::vector<std::uint32_t>, int> keys;
  std::vector<int> ids(simplices.size(), -1);
  for (std::size_t w = 0; w < simplices.size(); ++w) {
    std::vector<std::uint32_t> key;
    bool present = true;
    for (AgentSet b : g) {
      auto c = simplices[w].color_of(b);
      if (!c) {
        present = false;
        break;
      }
      key.push_back(*c);
    }
    if (!present) continue;
    ids[w] = keys.emplace(std::move(key), static_cast<int>(keys.size())).first->second;
  }
  return Partition(std::move(ids));
}

Partition SimplicialModel::relation(const AgentPattern& g) const { return relation_of(simplices_, g); }

bool SimplicialModel::holds(std::size_t w, const std::string& prop) const {
  auto it = valuation_.find(simplices_[w].name);
  return it != valuation_.end() && it->second.count(prop) > 0;
}

bool SimplicialModel::knows_proposition(const std::string& prop) const {
  return propositions().count(prop) > 0;
}

std::set<std::string> SimplicialModel::propositions() const {
  std::set<std::string> out;
  for (const auto& [w, props] : valuation_) out.insert(props.begin(), props.end());
  return out;
}

bool eval_simplicial(const SimplicialModel& m, std::string_view simplex, const Formula& f,
                     bool strict) {
  Evaluator ev(m, strict);
  return ev.holds(m.require_world(simplex), f);
}

Validity valid_on(const Structure& m, const Formula& f, bool strict) {
  Evaluator ev(m, strict);
  Validity out;
  if (auto w = ev.first_failure(f)) {
    out.valid = false;
    out.counterexample = m.world_name(*w);
  }
  return out;
}

}  // namespace synk
