// Reference implementations computed straight from the definitions, used to
// cross-check the library. Deliberately naive: no caches, no partitions.
#pragma once

#include <functional>
#include <map>
#include <vector>

#include "synk/kripke.hpp"
#include "synk/simplicial.hpp"

namespace oracle {

using synk::AgentPattern;
using synk::AgentSet;
using Matrix = std::vector<std::vector<bool>>;

inline bool has_face(const synk::Simplex& s, AgentSet a, std::uint32_t c) {
  for (const auto& f : s.faces) {
    if (f.agents == a && f.color == c) return true;
  }
  return false;
}

/// G ⊆ (S∩T)° by scanning faces.
inline bool indist(const synk::Simplex& s, const synk::Simplex& t, const AgentPattern& g) {
  for (AgentSet b : g) {
    bool shared = false;
    for (const auto& f : s.faces) {
      if (f.agents == b && has_face(t, f.agents, f.color)) shared = true;
    }
    if (!shared) return false;
  }
  return true;
}

inline Matrix simplicial_relation(const std::vector<synk::Simplex>& c, const AgentPattern& g) {
  Matrix m(c.size(), std::vector<bool>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) m[i][j] = oracle::indist(c[i], c[j], g);
  }
  return m;
}

/// Every pattern (including the empty one) over the first n agents.
inline std::vector<AgentPattern> every_pattern(std::size_t n) {
  std::vector<AgentSet> groups;
  for (std::uint32_t b = 1; b < (1u << n); ++b) groups.emplace_back(static_cast<std::uint16_t>(b));
  std::vector<AgentPattern> out;
  for (std::uint32_t code = 0; code < (1u << groups.size()); ++code) {
    std::vector<AgentSet> pick;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if ((code >> i) & 1u) pick.push_back(groups[i]);
    }
    out.emplace_back(pick);
  }
  return out;
}

inline void close_symmetric_transitive(Matrix& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (r[i][j]) r[j][i] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) r[i][j] = true;
      }
    }
  }
}

inline bool pattern_subset(const AgentPattern& g, const AgentPattern& h) {
  for (AgentSet b : g) {
    bool found = false;
    for (AgentSet a : h) found = found || a == b;
    if (!found) return false;
  }
  return true;
}

/// Least relation map containing the generators and closed under
/// symmetric-transitive closure, K3 and K4, by fixpoint iteration.
inline std::map<AgentPattern, Matrix> generated_closure(const synk::PreModel& m) {
  const std::size_t n = m.world_count();
  const auto pats = every_pattern(m.universe().size());
  std::map<AgentPattern, Matrix> rel;
  for (const auto& g : pats) rel[g] = Matrix(n, std::vector<bool>(n));
  for (const auto& e : m.edges()) rel[e.pattern][e.u][e.v] = true;
  for (bool changed = true; changed;) {
    changed = false;
    auto before = rel;
    for (auto& [g, r] : rel) close_symmetric_transitive(r);
    for (const auto& h : pats) {
      for (const auto& g : pats) {
        if (!pattern_subset(g, h)) continue;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (rel[h][i][j]) rel[g][i][j] = true;
          }
        }
      }
    }
    for (const auto& g : pats) {
      for (AgentSet a : g) {
        for (std::uint16_t b = 1; b <= a.bits(); ++b) {
          AgentSet bs(b);
          if (!bs.subset_of(a)) continue;
          AgentPattern gb = g.with(bs);
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              if (rel[g][i][j]) rel[gb][i][j] = true;
            }
          }
        }
      }
    }
    changed = rel != before;
  }
  return rel;
}

/// Naive recursive truth with relations supplied by `related`.
inline bool eval(const synk::Formula& f, std::size_t w, std::size_t n,
                 const std::function<bool(const AgentPattern&, std::size_t, std::size_t)>& related,
                 const std::function<bool(std::size_t, const std::string&)>& holds) {
  switch (f.kind()) {
    case synk::FormulaKind::atom: return holds(w, f.atom_name());
    case synk::FormulaKind::neg: return !eval(f.child(), w, n, related, holds);
    case synk::FormulaKind::conj:
      return eval(f.left(), w, n, related, holds) && eval(f.right(), w, n, related, holds);
    case synk::FormulaKind::box:
      for (std::size_t v = 0; v < n; ++v) {
        if (related(f.pattern(), w, v) && !eval(f.child(), v, n, related, holds)) return false;
      }
      return true;
  }
  return false;
}

inline bool eval_simplicial(const synk::SimplicialModel& m, std::size_t w, const synk::Formula& f) {
  const auto& c = m.simplices();
  return eval(
      f, w, c.size(), [&](const AgentPattern& g, std::size_t a, std::size_t b) { return oracle::indist(c[a], c[b], g); },
      [&](std::size_t v, const std::string& p) {
        auto it = m.valuation().find(c[v].name);
        return it != m.valuation().end() && it->second.count(p) > 0;
      });
}

}  // namespace oracle
