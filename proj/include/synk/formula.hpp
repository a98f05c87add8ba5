// Formulas of the synergistic-knowledge language and their text syntax.
//
// The AST has four primitive constructors: atom, negation, conjunction and
// the pattern-indexed box. Everything else (false, true, or, implies, alive,
// dead) is desugared on construction and re-sugared by the printer.
#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "synk/agents.hpp"

namespace synk {

/// Proposition backing falsum. It is not a valid identifier, so user formulas
/// cannot mention it.
inline constexpr std::string_view kReservedAtom = "$bot";

enum class FormulaKind { atom, neg, conj, box };

class Formula {
 public:
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula box(AgentPattern g, Formula f);

  static Formula bot();
  static Formula top();
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  /// not [G] false
  static Formula alive(AgentPattern g);
  /// Conjunction of not alive({B}) over B in G; `top()` when G is empty.
  static Formula dead(const AgentPattern& g);
  /// Left-nested conjunction; `top()` for an empty list.
  static Formula conj_all(const std::vector<Formula>& parts);
  /// Left-nested disjunction; `bot()` for an empty list.
  static Formula disj_all(const std::vector<Formula>& parts);

  FormulaKind kind() const;
  const std::string& atom_name() const;
  Formula child() const;  // neg, box
  Formula left() const;   // conj
  Formula right() const;  // conj
  const AgentPattern& pattern() const;  // box

  /// Nesting depth of operators; atoms have depth 0.
  std::size_t depth() const;
  /// Identity of the shared node, used as a memoization key.
  const void* id() const { return node_.get(); }

  bool operator==(const Formula& other) const;
  std::size_t hash() const;

  /// Every box pattern occurring in the formula.
  std::vector<AgentPattern> patterns() const;
  /// Every user-visible proposition name occurring in the formula.
  std::vector<std::string> atoms() const;

  // Re-sugaring views used by the printer.
  bool is_bot() const;
  bool is_top() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the ASCII grammar:
///   formula := impl ; impl := or ("->" impl)? ; or := and ("|" and)* ;
///   and := unary ("&" unary)* ;
///   unary := "~" unary | "[" pattern "]" unary | "alive" "(" pattern ")"
///          | "dead" "(" pattern ")" | "true" | "false" | ident | "(" formula ")"
///   pattern := group ("," group)* | <empty> ;
///   group := agentword | "{" ident ("," ident)* "}"
/// Agent words juxtapose single-character agent names.
Formula parse_formula(std::string_view text, const Universe& universe);

/// Parses a bare pattern such as `ab,ac,bc` or `{p1,p2},{p3}`.
AgentPattern parse_pattern(std::string_view text, const Universe& universe);

/// Prints a formula in the syntax accepted by parse_formula, re-sugaring
/// false/true/alive/or/implies.
std::string print_formula(const Formula& f, const Universe& universe);

}  // namespace synk
