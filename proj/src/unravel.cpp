#include "synk/unravel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace synk {

namespace {

// Adds d unless it is dominated; drops members d dominates.
bool antichain_insert(std::vector<std::uint32_t>& chain, std::uint32_t d) {
  for (std::uint32_t c : chain) {
    if ((d & ~c) == 0) return false;
  }
  std::vector<std::uint32_t> kept;
  for (std::uint32_t c : chain) {
    if ((c & ~d) != 0) kept.push_back(c);
  }
  kept.push_back(d);
  chain = kept;
  return true;
}

bool down_closed(const AgentPattern& g) { return downset(g) == g; }

}  // namespace

std::vector<AgentPattern> maximal_patterns(const PreModel& m, std::size_t u, std::size_t v) {
  if (m.universe().size() > 5) throw std::length_error("unravelling is limited to 5 agents");
  std::vector<AgentPattern> out;
  if (m.mode() == RelationMode::listed) {
    std::vector<AgentPattern> rel;
    for (const AgentPattern& g : m.support()) {
      if (!g.empty() && m.relation(g).related(u, v)) rel.push_back(g);
    }
    for (const AgentPattern& g : rel) {
      bool maximal = std::none_of(rel.begin(), rel.end(), [&](const AgentPattern& h) {
        return h.size() > g.size() && g.subset_of(h);
      });
      if (!maximal) continue;
      if (!down_closed(g)) {
        throw FrameError("maximal pattern [" + m.universe().format_pattern(g) + "] between " +
                         m.world_name(u) + " and " + m.world_name(v) +
                         " is not closed under subsets (not a kappa-model)");
      }
      out.push_back(g);
    }
    return out;
  }

  const auto& edges = m.edges();
  std::vector<std::uint32_t> down(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) down[i] = downset(edges[i].pattern).small_code();
  std::vector<std::uint32_t> result;
  if (u == v) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if ((edges[i].u == u || edges[i].v == u) && down[i] != 0) antichain_insert(result, down[i]);
    }
  } else {
    // Paths from u to v; the pattern of a path is the meet of its edges' downsets.
    std::vector<std::vector<std::uint32_t>> seen(m.world_count());
    std::deque<std::pair<std::size_t, std::uint32_t>> queue;
    auto visit = [&](std::size_t x, std::uint32_t d) {
      if (d == 0) return;
      if (antichain_insert(seen[x], d)) queue.emplace_back(x, d);
    };
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].u == u) visit(edges[i].v, down[i]);
      if (edges[i].v == u) visit(edges[i].u, down[i]);
    }
    while (!queue.empty()) {
      auto [x, d] = queue.front();
      queue.pop_front();
      if (std::find(seen[x].begin(), seen[x].end(), d) == seen[x].end()) continue;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i].u == x) visit(edges[i].v, d & down[i]);
        if (edges[i].v == x) visit(edges[i].u, d & down[i]);
      }
    }
    result = seen[v];
  }
  std::sort(result.begin(), result.end());
  for (std::uint32_t c : result) out.push_back(AgentPattern::from_small_code(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<History> histories(const PreModel& m, std::size_t d, std::size_t budget) {
  if (d < 1) throw std::invalid_argument("unravelling depth must be at least 1");
  const std::size_t n = m.world_count();
  std::vector<std::vector<Step>> from(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      for (AgentPattern& g : maximal_patterns(m, u, v)) from[u].push_back(Step{u, std::move(g), v});
    }
  }
  std::vector<History> out;
  for (std::size_t u = 0; u < n; ++u) {
    for (const Step& s : from[u]) out.push_back(History{s});
  }
  std::size_t level_begin = 0;
  for (std::size_t len = 2; len <= d; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (const Step& s : from[out[i].back().to]) {
        if (out.size() >= budget) throw std::length_error("history budget exceeded");
        History h = out[i];
        h.push_back(s);
        out.push_back(std::move(h));
      }
    }
    level_begin = level_end;
  }
  return out;
}

bool arrow(const History& h, const History& h2, const AgentPattern& g) {
  if (h2.size() != h.size() + 1) return false;
  if (!std::equal(h.begin(), h.end(), h2.begin())) return false;
  const Step& s = h2.back();
  return s.from == h.back().to && g.subset_of(s.pattern);
}

std::string history_name(const PreModel& m, const History& h) {
  std::string out = m.world_name(h.front().from);
  for (const Step& s : h) {
    out += "-[" + m.universe().format_pattern(s.pattern) + "]->" + m.world_name(s.to);
  }
  return out;
}

std::vector<std::size_t> Unravelling::interior_worlds() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < interior.size(); ++i) {
    if (interior[i]) out.push_back(i);
  }
  return out;
}

Unravelling unravel_model(const PreModel& m, std::size_t d, std::size_t budget) {
  Unravelling u;
  u.depth = d;
  u.histories = histories(m, d, budget);
  const std::size_t n = u.histories.size();
  std::map<History, std::size_t> index;
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::map<std::string, std::set<std::string>> valuation;
  u.last.resize(n);
  u.parent.assign(n, -1);
  u.interior.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const History& h = u.histories[i];
    index.emplace(h, i);
    names.push_back(history_name(m, h));
    u.last[i] = h.back().to;
    u.interior[i] = h.size() + 1 <= d ? 1 : 0;
    if (h.size() > 1) {
      History prefix(h.begin(), h.end() - 1);
      std::size_t p = index.at(prefix);
      u.parent[i] = static_cast<long>(p);
      edges.push_back(Edge{p, i, h.back().pattern});
    }
    auto props = m.props_at(u.last[i]);
    if (!props.empty()) valuation.emplace(names.back(), std::move(props));
  }
  u.model = PreModel(m.universe(), std::move(names), RelationMode::generated, std::move(edges),
                     std::move(valuation));
  return u;
}

std::optional<DWitness> check_d_on(const PreModel& m, const std::vector<char>& subset) {
  const auto groups = nonempty_subsets(m.universe().full());
  std::vector<Partition> single;
  for (AgentSet b : groups) single.push_back(m.relation(AgentPattern{b}));
  std::map<AgentPattern, Partition> cache;
  std::set<std::pair<std::size_t, std::size_t>> done;
  for (const Partition& r : single) {
    for (const auto& cls : r.classes()) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        if (!subset[cls[i]]) continue;
        for (std::size_t j = i; j < cls.size(); ++j) {
          std::size_t a = cls[i], b = cls[j];
          if (!subset[b] || !done.emplace(a, b).second) continue;
          std::vector<AgentSet> s;
          for (std::size_t k = 0; k < groups.size(); ++k) {
            if (single[k].related(a, b)) s.push_back(groups[k]);
          }
          AgentPattern sp(std::move(s));
          auto it = cache.find(sp);
          if (it == cache.end()) it = cache.emplace(sp, m.relation(sp)).first;
          if (!it->second.related(a, b)) return DWitness{a, b, sp};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<AgentPattern> bisim_patterns(const PreModel& m, const PreModel& n) {
  if (m.universe().size() <= 3) return all_patterns(m.universe().full());
  std::set<AgentPattern> s;
  for (const PreModel* x : {&m, &n}) {
    for (const AgentPattern& h : x->support()) {
      if (!h.empty()) s.insert(h);
      for (AgentSet b : downset(h)) s.insert(AgentPattern{b});
    }
  }
  return {s.begin(), s.end()};
}

std::optional<BisimViolation> check_functional_bisim(const PreModel& m, const PreModel& n,
                                                     const std::vector<std::size_t>& f,
                                                     const std::vector<AgentPattern>& patterns,
                                                     const std::vector<char>* back_domain) {
  if (f.size() != m.world_count()) throw std::invalid_argument("map is not total on the source");
  for (std::size_t x : f) {
    if (x >= n.world_count()) throw std::invalid_argument("map leaves the target");
  }
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    if (m.props_at(w) != n.props_at(f[w])) {
      return BisimViolation{"Atom", w, w, {}, m.world_name(w) + " and its image " + n.world_name(f[w]) +
                                                  " disagree on the valuation"};
    }
  }
  auto pat = [&](const AgentPattern& g) { return "[" + m.universe().format_pattern(g) + "]"; };
  for (const AgentPattern& g : patterns) {
    Partition rm = m.relation(g);
    Partition rn = n.relation(g);
    for (const auto& cls : rm.classes()) {
      for (std::size_t y : cls) {
        if (!rn.related(f[cls.front()], f[y])) {
          return BisimViolation{"Forth", cls.front(), y, g,
                                m.world_name(cls.front()) + " ~" + pat(g) + " " + m.world_name(y) +
                                    " but their images are not related"};
        }
      }
    }
    // Back: the images of x's class must cover the class of f(x).
    std::vector<std::set<std::size_t>> images(rm.class_count());
    for (std::size_t x = 0; x < m.world_count(); ++x) {
      if (rm.in_domain(x)) images[static_cast<std::size_t>(rm.class_of(x))].insert(f[x]);
    }
    const auto ncls = rn.classes();
    for (std::size_t x = 0; x < m.world_count(); ++x) {
      if (back_domain && !(*back_domain)[x]) continue;
      if (!rn.in_domain(f[x])) continue;
      for (std::size_t y : ncls[static_cast<std::size_t>(rn.class_of(f[x]))]) {
        bool hit = rm.in_domain(x) && images[static_cast<std::size_t>(rm.class_of(x))].count(y);
        if (!hit) {
          return BisimViolation{"Back", x, y, g,
                                n.world_name(f[x]) + " ~" + pat(g) + " " + n.world_name(y) +
                                    " has no matching successor of " + m.world_name(x)};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace synk
