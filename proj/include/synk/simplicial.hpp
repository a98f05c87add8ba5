// Simplices over colored faces, complexes, and simplicial models.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "synk/agents.hpp"
#include "synk/formula.hpp"
#include "synk/structure.hpp"

namespace synk {

/// A colored face (A,i). Colors are opaque labels.
struct Face {
  AgentSet agents;
  std::uint32_t color = 0;
  auto operator<=>(const Face&) const = default;
};

struct Simplex {
  std::string name;
  std::vector<Face> faces;  // sorted, unique

  Simplex() = default;
  Simplex(std::string name, std::vector<Face> faces);

  bool has(const Face& f) const;
  /// Color of the face with agent set `a`, if present.
  std::optional<std::uint32_t> color_of(AgentSet a) const;
  /// The face with the largest agent set. Only meaningful once S1 holds.
  Face max_face() const;
};

/// A violated well-formedness condition with a human-readable witness.
struct Violation {
  std::string condition;  // S1, S2, S3, C, name
  std::string detail;
};

std::optional<Violation> validate_simplex(const Simplex& s, const Universe& u);
/// Checks every simplex and then condition C plus distinct maxima and names.
std::optional<Violation> validate_complex(const std::vector<Simplex>& simplices, const Universe& u);

/// S°: the agent sets occurring among the faces.
AgentPattern projection(const Simplex& s);
/// G ⊆ (S∩T)° with faces compared by agent set and color.
bool indist(const Simplex& s, const Simplex& t, const AgentPattern& g);
/// ~_G over a list of simplices: S ~_G T iff G ⊆ (S∩T)°.
Partition relation_of(const std::vector<Simplex>& simplices, const AgentPattern& g);
/// The usual display name of a simplex, e.g. "abc0" from its maximal face.
std::string auto_name(const Simplex& s, const Universe& u);
std::string format_face(const Face& f, const Universe& u);

class SimplicialModel : public Structure {
 public:
  SimplicialModel() = default;
  /// Validates the complex and the valuation keys; throws std::invalid_argument.
  SimplicialModel(Universe u, std::vector<Simplex> simplices,
                  std::map<std::string, std::set<std::string>> valuation);

  const Universe& universe() const override { return universe_; }
  std::size_t world_count() const override { return simplices_.size(); }
  const std::string& world_name(std::size_t w) const override { return simplices_[w].name; }
  Partition relation(const AgentPattern& g) const override;
  bool holds(std::size_t w, const std::string& prop) const override;
  bool knows_proposition(const std::string& prop) const override;

  const std::vector<Simplex>& simplices() const { return simplices_; }
  const Simplex& simplex(std::size_t w) const { return simplices_[w]; }
  const std::map<std::string, std::set<std::string>>& valuation() const { return valuation_; }
  std::set<std::string> propositions() const;

 private:
  Universe universe_;
  std::vector<Simplex> simplices_;
  std::map<std::string, std::set<std::string>> valuation_;
};

/// Thrown when loading or building a model that breaks its invariants.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool eval_simplicial(const SimplicialModel& m, std::string_view simplex, const Formula& f,
                     bool strict = false);

struct Validity {
  bool valid = true;
  std::optional<std::string> counterexample;  // first failing world
};

Validity valid_on(const Structure& m, const Formula& f, bool strict = false);
inline Validity valid_on_simplicial(const SimplicialModel& m, const Formula& f, bool strict = false) {
  return valid_on(m, f, strict);
}

}  // namespace synk
