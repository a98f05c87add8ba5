#include "synk/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace synk {

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  AgentPattern pattern;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  std::size_t depth = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::atom;
  n->hash = mix(1, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::neg;
  n->depth = f.node_->depth + 1;
  n->hash = mix(2, f.node_->hash);
  n->a = std::move(f.node_);
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::conj;
  n->depth = std::max(a.node_->depth, b.node_->depth) + 1;
  n->hash = mix(mix(3, a.node_->hash), b.node_->hash);
  n->a = std::move(a.node_);
  n->b = std::move(b.node_);
  return Formula(std::move(n));
}

Formula Formula::box(AgentPattern g, Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::box;
  n->depth = f.node_->depth + 1;
  n->hash = mix(mix(4, AgentPatternHash{}(g)), f.node_->hash);
  n->pattern = std::move(g);
  n->a = std::move(f.node_);
  return Formula(std::move(n));
}

Formula Formula::bot() {
  Formula p = atom(std::string(kReservedAtom));
  return conj(p, neg(p));
}

Formula Formula::top() { return neg(bot()); }

Formula Formula::disj(Formula a, Formula b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }

Formula Formula::implies(Formula a, Formula b) { return neg(conj(std::move(a), neg(std::move(b)))); }

Formula Formula::alive(AgentPattern g) { return neg(box(std::move(g), bot())); }

Formula Formula::dead(const AgentPattern& g) {
  std::vector<Formula> parts;
  for (AgentSet b : g) parts.push_back(neg(alive(AgentPattern{b})));
  return conj_all(parts);
}

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return bot();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

FormulaKind Formula::kind() const { return node_->kind; }

const std::string& Formula::atom_name() const { return node_->name; }

Formula Formula::child() const { return Formula(node_->a); }

Formula Formula::left() const { return Formula(node_->a); }

Formula Formula::right() const { return Formula(node_->b); }

const AgentPattern& Formula::pattern() const { return node_->pattern; }

std::size_t Formula::depth() const { return node_->depth; }

std::size_t Formula::hash() const { return node_->hash; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  const Node* x = node_.get();
  const Node* y = other.node_.get();
  if (x->kind != y->kind || x->depth != y->depth) return false;
  switch (x->kind) {
    case FormulaKind::atom:
      return x->name == y->name;
    case FormulaKind::neg:
      return Formula(x->a) == Formula(y->a);
    case FormulaKind::conj:
      return Formula(x->a) == Formula(y->a) && Formula(x->b) == Formula(y->b);
    case FormulaKind::box:
      return x->pattern == y->pattern && Formula(x->a) == Formula(y->a);
  }
  return false;
}

std::vector<AgentPattern> Formula::patterns() const {
  std::set<AgentPattern> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->kind == FormulaKind::box) seen.insert(n->pattern);
    if (n->a) stack.push_back(n->a.get());
    if (n->b) stack.push_back(n->b.get());
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::string> Formula::atoms() const {
  std::set<std::string> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->kind == FormulaKind::atom && n->name != kReservedAtom) seen.insert(n->name);
    if (n->a) stack.push_back(n->a.get());
    if (n->b) stack.push_back(n->b.get());
  }
  return {seen.begin(), seen.end()};
}

bool Formula::is_bot() const {
  const Node* n = node_.get();
  if (n->kind != FormulaKind::conj) return false;
  const Node* l = n->a.get();
  const Node* r = n->b.get();
  return l->kind == FormulaKind::atom && l->name == kReservedAtom && r->kind == FormulaKind::neg &&
         r->a->kind == FormulaKind::atom && r->a->name == kReservedAtom;
}

bool Formula::is_top() const { return node_->kind == FormulaKind::neg && Formula(node_->a).is_bot(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Level { kImpl = 0, kOr = 1, kAnd = 2, kUnary = 3 };

class Printer {
 public:
  explicit Printer(const Universe& u) : u_(u) {}

  std::string print(const Formula& f, int ctx) const {
    int level = kUnary;
    std::string body = render(f, level);
    if (level < ctx) return "(" + body + ")";
    return body;
  }

 private:
  std::string render(const Formula& f, int& level) const {
    level = kUnary;
    if (f.is_bot()) return "false";
    switch (f.kind()) {
      case FormulaKind::atom:
        return f.atom_name();
      case FormulaKind::box: {
        Formula body = f.child();
        return "[" + u_.format_pattern(f.pattern()) + "]" + print(body, kUnary);
      }
      case FormulaKind::conj: {
        Formula l = f.left();
        Formula r = f.right();
        level = kAnd;
        return print(l, kAnd) + " & " + print(r, kUnary);
      }
      case FormulaKind::neg: {
        Formula x = f.child();
        if (x.is_bot()) return "true";
        if (x.kind() == FormulaKind::box) {
          Formula inner = x.child();
          if (inner.is_bot()) return "alive(" + u_.format_pattern(x.pattern()) + ")";
        }
        if (x.kind() == FormulaKind::conj) {
          Formula l = x.left();
          Formula r = x.right();
          if (r.kind() == FormulaKind::neg && !l.is_bot()) {
            Formula rb = r.child();
            if (l.kind() == FormulaKind::neg) {
              Formula lb = l.child();
              level = kOr;
              return print(lb, kOr) + " | " + print(rb, kAnd);
            }
            level = kImpl;
            return print(l, kOr) + " -> " + print(rb, kImpl);
          }
        }
        return "~" + print(x, kUnary);
      }
    }
    return {};
  }

  const Universe& u_;
};

}  // namespace

std::string print_formula(const Formula& f, const Universe& universe) {
  return Printer(universe).print(f, kImpl);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
 public:
  Parser(std::string_view text, const Universe& u) : text_(text), u_(u) {}

  Formula parse_all() {
    Formula f = impl();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

  AgentPattern pattern_all() {
    AgentPattern p = pattern(0);
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string ident() {
    skip();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula impl() {
    Formula lhs = disj();
    if (accept("->")) return Formula::implies(std::move(lhs), impl());
    return lhs;
  }

  Formula disj() {
    Formula acc = conj();
    while (accept("|")) acc = Formula::disj(std::move(acc), conj());
    return acc;
  }

  Formula conj() {
    Formula acc = unary();
    while (accept("&")) acc = Formula::conj(std::move(acc), unary());
    return acc;
  }

  Formula unary() {
    skip();
    if (accept("~")) return Formula::neg(unary());
    if (accept("[")) {
      AgentPattern g = pattern(']');
      expect("]");
      return Formula::box(std::move(g), unary());
    }
    if (accept("(")) {
      Formula f = impl();
      expect(")");
      return f;
    }
    std::string word = ident();
    if (word == "true") return Formula::top();
    if (word == "false") return Formula::bot();
    if (word == "alive" || word == "dead") {
      expect("(");
      AgentPattern g = pattern(')');
      expect(")");
      return word == "alive" ? Formula::alive(std::move(g)) : Formula::dead(g);
    }
    return Formula::atom(std::move(word));
  }

  AgentPattern pattern(char close) {
    std::vector<AgentSet> groups;
    skip();
    if (pos_ < text_.size() && text_[pos_] == close) return AgentPattern();
    if (close == 0 && pos_ == text_.size()) return AgentPattern();
    groups.push_back(group());
    while (accept(",")) groups.push_back(group());
    return AgentPattern(std::move(groups));
  }

  AgentSet agent(const std::string& name, std::size_t at) {
    auto i = u_.index_of(name);
    if (!i) {
      pos_ = at;
      fail("unknown agent '" + name + "'");
    }
    return AgentSet::single(*i);
  }

  AgentSet group() {
    skip();
    if (pos_ >= text_.size() || text_[pos_] == ',' || text_[pos_] == ']' || text_[pos_] == ')') {
      fail("empty group in agent pattern");
    }
    if (accept("{")) {
      AgentSet s;
      do {
        skip();
        std::size_t at = pos_;
        s = s | agent(ident(), at);
      } while (accept(","));
      expect("}");
      return s;
    }
    std::size_t at = pos_;
    if (!std::isalnum(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '_') {
      fail("expected agent group");
    }
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      ++pos_;
    }
    std::string word(text_.substr(at, pos_ - at));
    if (u_.index_of(word)) return agent(word, at);
    if (!u_.single_char()) {
      pos_ = at;
      fail("unknown agent '" + word + "' (multi-character names need braces)");
    }
    AgentSet s;
    for (std::size_t k = 0; k < word.size(); ++k) s = s | agent(std::string(1, word[k]), at + k);
    return s;
  }

  std::string_view text_;
  const Universe& u_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Universe& universe) {
  return Parser(text, universe).parse_all();
}

AgentPattern parse_pattern(std::string_view text, const Universe& universe) {
  return Parser(text, universe).pattern_all();
}

}  // namespace synk
