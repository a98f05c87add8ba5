#include "synk/kripke.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace synk {

PreModel::PreModel(Universe u, std::vector<std::string> worlds, RelationMode mode,
                   std::vector<Edge> edges, std::map<std::string, std::set<std::string>> valuation)
    : universe_(std::move(u)),
      worlds_(std::move(worlds)),
      mode_(mode),
      edges_(std::move(edges)),
      valuation_(std::move(valuation)) {
  if (worlds_.empty()) throw ModelError("model has no worlds");
  std::set<std::string> seen;
  for (const auto& w : worlds_) {
    if (w.empty()) throw ModelError("world name is empty");
    if (!seen.insert(w).second) throw ModelError("duplicate world '" + w + "'");
  }
  for (const Edge& e : edges_) {
    if (e.u >= worlds_.size() || e.v >= worlds_.size()) throw ModelError("edge names an unknown world");
    if (!e.pattern.agents().subset_of(universe_.full())) {
      throw ModelError("edge pattern mentions undeclared agents");
    }
  }
  for (const auto& [w, props] : valuation_) {
    if (!seen.count(w)) throw ModelError("valuation names unknown world '" + w + "'");
  }
  if (universe_.size() <= 5) {
    for (const Edge& e : edges_) down_codes_.push_back(downset(e.pattern).small_code());
  }
}

bool PreModel::covers(std::size_t edge, const AgentPattern& g) const {
  if (!down_codes_.empty()) return (g.small_code() & ~down_codes_[edge]) == 0;
  const AgentPattern& h = edges_[edge].pattern;
  return std::all_of(g.begin(), g.end(), [&](AgentSet b) {
    return std::any_of(h.begin(), h.end(), [b](AgentSet a) { return b.subset_of(a); });
  });
}

Partition PreModel::relation(const AgentPattern& g) const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    bool in = mode_ == RelationMode::generated ? covers(i, g) : e.pattern == g;
    if (in) pairs.emplace_back(e.u, e.v);
  }
  return Partition::closure(worlds_.size(), pairs);
}

bool PreModel::holds(std::size_t w, const std::string& prop) const {
  auto it = valuation_.find(worlds_[w]);
  return it != valuation_.end() && it->second.count(prop) > 0;
}

bool PreModel::knows_proposition(const std::string& prop) const {
  return propositions().count(prop) > 0;
}

std::set<std::string> PreModel::props_at(std::size_t w) const {
  auto it = valuation_.find(worlds_[w]);
  return it == valuation_.end() ? std::set<std::string>{} : it->second;
}

std::set<std::string> PreModel::propositions() const {
  std::set<std::string> out;
  for (const auto& [w, props] : valuation_) out.insert(props.begin(), props.end());
  return out;
}

std::vector<AgentPattern> PreModel::support() const {
  std::set<AgentPattern> s;
  for (const Edge& e : edges_) s.insert(e.pattern);
  return {s.begin(), s.end()};
}

PreModel close_relations(const PreModel& m, std::size_t budget) {
  if (m.mode() == RelationMode::listed) return m;
  std::vector<AgentPattern> patterns = all_patterns(m.universe().full());
  patterns.insert(patterns.begin(), AgentPattern());
  std::vector<Edge> edges;
  for (const AgentPattern& g : patterns) {
    Partition r = m.relation(g);
    for (const auto& cls : r.classes()) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i; j < cls.size(); ++j) {
          if (edges.size() >= budget) throw std::length_error("closed relation exceeds the pair budget");
          edges.push_back(Edge{cls[i], cls[j], g});
        }
      }
    }
  }
  return PreModel(m.universe(), m.worlds(), RelationMode::listed, std::move(edges), m.valuation());
}

bool eval_kripke(const PreModel& m, std::string_view world, const Formula& f, bool strict) {
  Evaluator ev(m, strict);
  return ev.holds(m.require_world(world), f);
}

std::vector<std::size_t> alive_set(const PreModel& m, const AgentPattern& g) {
  Partition r = m.relation(g);
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    if (r.in_domain(w)) out.push_back(w);
  }
  return out;
}

bool FrameReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return !v.ok || *v.ok; });
}

const Verdict& FrameReport::get(std::string_view property) const {
  for (const Verdict& v : verdicts) {
    if (v.property == property) return v;
  }
  throw std::out_of_range("no verdict for " + std::string(property));
}

const Verdict* FrameReport::first_failure() const {
  for (const Verdict& v : verdicts) {
    if (v.ok && !*v.ok) return &v;
  }
  return nullptr;
}

std::string format_worlds(const Structure& m, const std::vector<std::size_t>& worlds) {
  std::string out = "(";
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    if (i) out += ",";
    out += m.world_name(worlds[i]);
  }
  return out + ")";
}

std::vector<AgentPattern> check_universe(const PreModel& m, std::vector<std::string>* warnings) {
  if (m.universe().size() <= 4) return all_patterns(m.universe().full());
  if (warnings) {
    warnings->push_back("more than 4 agents: frame conditions quantify over the edge support only");
  }
  std::set<AgentPattern> s;
  for (const AgentPattern& h : m.support()) {
    if (!h.empty()) s.insert(h);
    for (AgentSet b : downset(h)) s.insert(AgentPattern{b});
  }
  return {s.begin(), s.end()};
}

namespace {

class RelationTable {
 public:
  explicit RelationTable(const PreModel& m) : m_(m) {}
  const Partition& get(const AgentPattern& g) {
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(g, m_.relation(g)).first->second;
  }

 private:
  const PreModel& m_;
  std::unordered_map<AgentPattern, Partition, AgentPatternHash> cache_;
};

struct Checker {
  const PreModel& m;
  RelationTable table;
  std::vector<AgentPattern> universe;
  std::vector<std::string> warnings;

  explicit Checker(const PreModel& model) : m(model), table(model) {
    universe = check_universe(model, &warnings);
  }

  std::string pat(const AgentPattern& g) const { return "[" + m.universe().format_pattern(g) + "]"; }

  Verdict fail(std::string prop, std::vector<std::size_t> worlds, std::vector<AgentPattern> pats,
               std::string text) const {
    Verdict v{std::move(prop), false, std::move(worlds), std::move(pats), std::move(text)};
    return v;
  }

  Verdict subset_check(const std::string& prop, const AgentPattern& from, const AgentPattern& to) {
    auto miss = table.get(from).missing_in(table.get(to));
    if (!miss) return Verdict{prop, true, {}, {}, {}};
    auto [u, v] = *miss;
    return fail(prop, {u, v}, {from, to},
                m.world_name(u) + " ~" + pat(from) + " " + m.world_name(v) + " but not under " +
                    pat(to));
  }

  Verdict k1() {
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      std::vector<AgentPattern> fam;
      std::unordered_set<AgentPattern, AgentPatternHash> in;
      for (const AgentPattern& g : universe) {
        if (table.get(g).in_domain(w)) {
          fam.push_back(g);
          in.insert(g);
        }
      }
      bool down_closed = true;
      for (const AgentPattern& g : fam) {
        if (g.size() < 2) continue;
        for (AgentSet b : g) {
          if (!in.count(g.without(b))) down_closed = false;
        }
        if (!down_closed) break;
      }
      std::vector<AgentPattern> probe;
      if (down_closed) {
        const bool small = m.universe().size() <= 4;
        const auto groups = nonempty_subsets(m.universe().full());
        for (const AgentPattern& g : fam) {
          bool maximal = true;
          if (small) {
            // In a down-closed family g is maximal iff no one-group extension is present.
            for (AgentSet x : groups) {
              if (!g.contains(x) && in.count(g.with(x))) {
                maximal = false;
                break;
              }
            }
          } else {
            for (const AgentPattern& h : fam) {
              if (h.size() > g.size() && g.subset_of(h)) {
                maximal = false;
                break;
              }
            }
          }
          if (maximal) probe.push_back(g);
        }
      } else {
        probe = fam;
        if (probe.size() > 4000) {
          warnings.push_back("K1 at " + m.world_name(w) + " checked on the first 4000 alive patterns");
          probe.resize(4000);
        }
      }
      for (std::size_t i = 0; i < probe.size(); ++i) {
        for (std::size_t j = i + 1; j < probe.size(); ++j) {
          AgentPattern u = probe[i].united(probe[j]);
          if (!table.get(u).in_domain(w)) {
            return fail("K1", {w}, {probe[i], probe[j]},
                        m.world_name(w) + " is alive under " + pat(probe[i]) + " and " +
                            pat(probe[j]) + " but not under " + pat(u));
          }
        }
      }
    }
    return Verdict{"K1", true, {}, {}, {}};
  }

  Verdict k2() {
    for (const AgentPattern& g : universe) {
      const Partition& r = table.get(g);
      for (std::size_t w = 0; w < m.world_count(); ++w) {
        if (!r.in_domain(w)) continue;
        for (AgentSet a : g) {
          for (AgentSet b : g) {
            if (b < a) continue;
            AgentPattern ab{a | b};
            if (!table.get(ab).in_domain(w)) {
              return fail("K2", {w}, {g, ab},
                          m.world_name(w) + " is alive under " + pat(g) + " but not under " +
                              pat(ab));
            }
          }
        }
      }
    }
    return Verdict{"K2", true, {}, {}, {}};
  }

  Verdict k3() {
    for (const AgentPattern& h : universe) {
      if (h.size() < 2) continue;
      for (AgentSet b : h) {
        Verdict v = subset_check("K3", h, h.without(b));
        if (!*v.ok) return v;
      }
    }
    return Verdict{"K3", true, {}, {}, {}};
  }

  Verdict k4() {
    for (const AgentPattern& g : universe) {
      for (AgentSet b : downset(g)) {
        if (g.contains(b)) continue;
        Verdict v = subset_check("K4", g, g.with(b));
        if (!*v.ok) return v;
      }
    }
    return Verdict{"K4", true, {}, {}, {}};
  }

  Verdict ne() {
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      bool any = std::any_of(universe.begin(), universe.end(),
                             [&](const AgentPattern& g) { return table.get(g).in_domain(w); });
      if (!any) return fail("NE", {w}, {}, m.world_name(w) + " is alive under no non-empty pattern");
    }
    return Verdict{"NE", true, {}, {}, {}};
  }

  Verdict d() {
    for (const AgentPattern& g : universe) {
      Partition meet = table.get(AgentPattern{g.groups().front()});
      for (std::size_t i = 1; i < g.size(); ++i) meet = meet.intersect(table.get(AgentPattern{g.groups()[i]}));
      const Partition& r = table.get(g);
      if (r == meet) continue;
      auto miss = meet.missing_in(r);
      if (!miss) miss = r.missing_in(meet);
      auto [u, v] = *miss;
      return fail("D", {u, v}, {g},
                  m.world_name(u) + " and " + m.world_name(v) + " are related under every group of " +
                      pat(g) + " separately but not under " + pat(g));
    }
    return Verdict{"D", true, {}, {}, {}};
  }

  Verdict proper() {
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      for (std::size_t v = w + 1; v < m.world_count(); ++v) {
        if (equiv(m, w, v)) {
          AgentPattern b = bar(m, w);
          return fail("proper", {w, v}, {b},
                      m.world_name(w) + " and " + m.world_name(v) + " have the same bar " + pat(b) +
                          " and are related under it");
        }
      }
    }
    return Verdict{"proper", true, {}, {}, {}};
  }
};

}  // namespace

FrameReport check_frame(const PreModel& m, FrameLevel level) {
  Checker c(m);
  FrameReport r;
  // Relations are stored as partitions, so both hold by construction.
  r.verdicts.push_back(Verdict{"symmetry", true, {}, {}, {}});
  r.verdicts.push_back(Verdict{"transitivity", true, {}, {}, {}});
  r.verdicts.push_back(c.k1());
  r.verdicts.push_back(c.k2());
  r.verdicts.push_back(c.k3());
  r.verdicts.push_back(c.k4());
  r.verdicts.push_back(c.ne());
  if (level != FrameLevel::kappa) {
    r.verdicts.push_back(c.d());
  } else {
    r.verdicts.push_back(Verdict{"D", std::nullopt, {}, {}, {}});
  }
  if (level == FrameLevel::proper) {
    r.verdicts.push_back(c.proper());
  } else {
    r.verdicts.push_back(Verdict{"proper", std::nullopt, {}, {}, {}});
  }
  r.warnings = std::move(c.warnings);
  return r;
}

AgentPattern bar(const PreModel& m, std::size_t w) {
  std::vector<AgentSet> groups;
  if (m.mode() == RelationMode::generated) {
    for (const Edge& e : m.edges()) {
      if (e.u != w && e.v != w) continue;
      for (AgentSet b : downset(e.pattern)) groups.push_back(b);
    }
  } else {
    for (const AgentPattern& g : m.support()) {
      if (m.relation(g).in_domain(w)) groups.insert(groups.end(), g.begin(), g.end());
    }
  }
  return AgentPattern(std::move(groups));
}

bool equiv(const PreModel& m, std::size_t w, std::size_t v) {
  AgentPattern b = bar(m, w);
  if (!(b == bar(m, v))) return false;
  return m.relation(b).related(w, v);
}

QuotientResult quotient(const PreModel& m) {
  FrameReport report = check_frame(m, FrameLevel::delta);
  if (!report.passed()) {
    const Verdict* f = report.first_failure();
    throw FrameError("not a delta-model: " + f->property + " fails: " + f->witness);
  }
  const std::size_t n = m.world_count();
  QuotientResult out;
  std::vector<std::size_t> rep(n);
  for (std::size_t w = 0; w < n; ++w) {
    rep[w] = w;
    for (std::size_t v = 0; v < w; ++v) {
      if (rep[v] == v && equiv(m, v, w)) {
        rep[w] = v;
        break;
      }
    }
  }
  for (std::size_t w = 0; w < n && !out.clash; ++w) {
    if (rep[w] == w) continue;
    auto a = m.props_at(rep[w]);
    auto b = m.props_at(w);
    if (a == b) continue;
    std::vector<std::string> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    out.clash = ValuationClash{rep[w], w, diff.front()};
  }
  std::vector<std::size_t> index(n, 0);
  std::vector<std::string> names;
  for (std::size_t w = 0; w < n; ++w) {
    if (rep[w] == w) {
      index[w] = names.size();
      names.push_back(m.world_name(w));
    }
  }
  out.class_of.resize(n);
  for (std::size_t w = 0; w < n; ++w) out.class_of[w] = index[rep[w]];
  if (out.clash) return out;

  std::vector<Edge> edges;
  std::set<std::tuple<std::size_t, std::size_t, AgentPattern>> seen;
  for (const Edge& e : m.edges()) {
    std::size_t a = out.class_of[e.u], b = out.class_of[e.v];
    if (a > b) std::swap(a, b);
    if (seen.emplace(a, b, e.pattern).second) edges.push_back(Edge{a, b, e.pattern});
  }
  std::map<std::string, std::set<std::string>> val;
  for (std::size_t w = 0; w < n; ++w) {
    if (rep[w] != w) continue;
    auto p = m.props_at(w);
    if (!p.empty()) val[m.world_name(w)] = p;
  }
  PreModel q(m.universe(), names, m.mode(), std::move(edges), std::move(val));

  // Compare the quotient relation with the existential lift and flag
  // representative dependence.
  const std::size_t k = names.size();
  for (const AgentPattern& g : check_universe(m, nullptr)) {
    Partition r = m.relation(g);
    Partition qr = q.relation(g);
    std::vector<char> some(k * k, 0), all(k * k, 1);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        std::size_t cell = out.class_of[u] * k + out.class_of[v];
        if (r.related(u, v)) {
          some[cell] = 1;
        } else {
          all[cell] = 0;
        }
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        std::size_t cell = a * k + b;
        std::string where = "[" + m.universe().format_pattern(g) + "] between " + names[a] + " and " + names[b];
        if (some[cell] && !all[cell]) {
          out.diagnostics.push_back("relation depends on representatives under " + where);
        }
        if (qr.related(a, b) != (some[cell] != 0)) {
          out.diagnostics.push_back("quotient relation differs from the existential lift under " + where);
        }
      }
    }
    if (out.diagnostics.size() > 20) break;
  }
  out.model = std::move(q);
  return out;
}

}  // namespace synk
