#include "synk/translate.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "synk/verify.hpp"

namespace synk {

Translation delta_translate(const PreModel& m, const TranslateOptions& opts) {
  if (!opts.skip_gate) {
    FrameReport r = check_frame(m, FrameLevel::proper);
    if (!r.passed()) {
      const Verdict* f = r.first_failure();
      throw FrameError("not a proper delta-model: " + f->property + " fails: " + f->witness);
    }
  }
  const std::size_t n = m.world_count();
  std::vector<std::size_t> order = opts.order;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    if (sorted != ident) throw std::invalid_argument("enumeration is not a permutation of the worlds");
  }
  const auto groups = nonempty_subsets(m.universe().full());
  std::vector<Partition> single;
  for (AgentSet b : groups) single.push_back(m.relation(AgentPattern{b}));

  // Initialisation, in enumeration positions: S_i = {(A,i) | A ⊆ w_i*}.
  std::vector<std::vector<Face>> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    AgentPattern top = pattern_max(bar(m, order[i]));
    if (top.size() != 1) {
      throw FrameError("world " + m.world_name(order[i]) +
                       " has no unique maximal alive agent set: [" +
                       m.universe().format_pattern(top) + "]");
    }
    for (AgentSet a : nonempty_subsets(top.groups().front())) {
      s[i].push_back(Face{a, static_cast<std::uint32_t>(i + 1)});
    }
  }

  Translation t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        if (!single[gi].related(order[i], order[j])) continue;
        const AgentSet b = groups[gi];
        std::size_t k = 0;
        while (!single[gi].related(order[k], order[i])) ++k;
        Replacement rep{i + 1, j + 1, k + 1, b, false, std::nullopt};
        auto& faces = s[j];
        auto old = std::find(faces.begin(), faces.end(), Face{b, static_cast<std::uint32_t>(j + 1)});
        if (old != faces.end()) {
          faces.erase(old);
          rep.removed = true;
        }
        for (const Face& f : faces) {
          if (f.agents == b && f.color != k + 1) rep.displaced = f.color;
        }
        Face fresh{b, static_cast<std::uint32_t>(k + 1)};
        if (std::find(faces.begin(), faces.end(), fresh) == faces.end()) faces.push_back(fresh);
        t.trace.push_back(rep);
      }
    }
  }

  t.simplices.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Simplex x("", s[i]);
    x.name = auto_name(x, m.universe());
    t.simplices[order[i]] = std::move(x);
  }
  std::map<std::string, std::set<std::string>> val;
  for (std::size_t w = 0; w < n; ++w) {
    t.mapping[m.world_name(w)] = t.simplices[w].name;
    auto props = m.props_at(w);
    if (!props.empty()) val[t.simplices[w].name].insert(props.begin(), props.end());
  }
  try {
    t.target.emplace(m.universe(), t.simplices, val);
  } catch (const std::exception& e) {
    t.target_error = e.what();
  }
  t.source = m;
  t.order = std::move(order);
  return t;
}

bool Certificate::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CertCheck& c) { return c.ok; });
}

std::string Certificate::text() const {
  std::ostringstream out;
  for (const CertCheck& c : checks) {
    out << (c.ok ? "pass" : "FAIL") << "  (" << c.id << ") " << c.title;
    if (!c.ok) out << ": " << c.witness;
    out << "\n";
  }
  out << (passed() ? "translation certified" : "translation NOT certified") << "\n";
  return out.str();
}

namespace {

// Agent sets B with a common face (B,k) in both simplices.
std::vector<AgentSet> shared_groups(const Simplex& a, const Simplex& b) {
  std::vector<AgentSet> out;
  for (const Face& f : a.faces) {
    if (b.has(f)) out.push_back(f.agents);
  }
  return out;
}

}  // namespace

Certificate verify_translation(const Translation& t, std::size_t suite_depth) {
  Certificate cert;
  const PreModel& m = t.source;
  const Universe& u = m.universe();
  const std::size_t n = m.world_count();
  const auto& sx = t.simplices;
  auto pat = [&](const AgentPattern& g) { return "[" + u.format_pattern(g) + "]"; };

  CertCheck a{"a", "every simplex satisfies S1-S3", true, {}};
  for (const Simplex& s : sx) {
    if (auto v = validate_simplex(s, u)) {
      a.ok = false;
      a.witness = v->condition + ": " + v->detail;
      break;
    }
  }
  cert.checks.push_back(a);

  CertCheck b{"b", "the simplices form a complex (condition C)", true, {}};
  if (auto v = validate_complex(sx, u)) {
    b.ok = false;
    b.witness = v->condition + ": " + v->detail;
  }
  cert.checks.push_back(b);

  CertCheck c{"c", "T1: one color per agent set in each simplex", true, {}};
  for (const Simplex& s : sx) {
    for (std::size_t i = 1; i < s.faces.size() && c.ok; ++i) {
      if (s.faces[i].agents == s.faces[i - 1].agents) {
        c.ok = false;
        c.witness = s.name + " contains " + format_face(s.faces[i - 1], u) + " and " +
                    format_face(s.faces[i], u);
      }
    }
  }
  cert.checks.push_back(c);

  const std::vector<AgentPattern> universe = check_universe(m, nullptr);
  const bool small = u.size() <= 5;
  std::vector<std::uint32_t> shared_code(n * n, 0);
  std::vector<AgentPattern> shared(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      shared[i * n + j] = AgentPattern(shared_groups(sx[i], sx[j]));
      if (small) shared_code[i * n + j] = shared[i * n + j].small_code();
    }
  }
  auto covered = [&](std::size_t i, std::size_t j, const AgentPattern& g) {
    if (small) return (g.small_code() & ~shared_code[i * n + j]) == 0;
    return g.subset_of(shared[i * n + j]);
  };

  CertCheck d{"d", "T2: shared faces for every group of G iff related under G", true, {}};
  CertCheck e{"e", "indistinguishability of simplices equals the source relation", true, {}};
  for (const AgentPattern& g : universe) {
    Partition src = m.relation(g);
    for (std::size_t i = 0; i < n && d.ok; ++i) {
      for (std::size_t j = 0; j < n && d.ok; ++j) {
        if (covered(i, j, g) != src.related(i, j)) {
          d.ok = false;
          d.witness = m.world_name(i) + ", " + m.world_name(j) + " under " + pat(g);
        }
      }
    }
    if (e.ok) {
      Partition tgt = relation_of(sx, g);
      if (!(tgt == src)) {
        auto miss = tgt.missing_in(src);
        if (!miss) miss = src.missing_in(tgt);
        e.ok = false;
        e.witness = m.world_name(miss->first) + ", " + m.world_name(miss->second) + " under " + pat(g);
      }
    }
    if (!d.ok && !e.ok) break;
  }
  cert.checks.push_back(d);
  cert.checks.push_back(e);

  CertCheck f{"f", "translation conditions: G ⊆ (T(w)∩T(v))° iff w ~_G v, and equal valuations",
              true, {}};
  {
    std::set<AgentPattern> probe;
    for (const AgentPattern& g : m.support()) probe.insert(g);
    for (AgentSet grp : nonempty_subsets(u.full())) probe.insert(AgentPattern{grp});
    for (std::size_t w = 0; w < n; ++w) probe.insert(bar(m, w));
    for (const AgentPattern& g : probe) {
      if (g.empty()) continue;
      Partition src = m.relation(g);
      for (std::size_t i = 0; i < n && f.ok; ++i) {
        for (std::size_t j = 0; j < n && f.ok; ++j) {
          if (indist(sx[i], sx[j], g) != src.related(i, j)) {
            f.ok = false;
            f.witness = m.world_name(i) + ", " + m.world_name(j) + " under " + pat(g);
          }
        }
      }
      if (!f.ok) break;
    }
    for (std::size_t w = 0; w < n && f.ok; ++w) {
      if (!t.target) break;
      for (const std::string& p : m.propositions()) {
        if (m.holds(w, p) != t.target->holds(w, p)) {
          f.ok = false;
          f.witness = "valuation of " + p + " differs at " + m.world_name(w);
          break;
        }
      }
    }
  }
  cert.checks.push_back(f);

  CertCheck g{"g", "truth agreement on the formula suite", true, {}};
  if (!t.target) {
    g.ok = false;
    g.witness = "target is not a simplicial model: " + t.target_error;
  } else {
    const std::set<std::string> known = m.propositions();
    std::vector<std::string> props(known.begin(), known.end());
    for (const char* extra : {"p", "q"}) {
      if (props.size() >= 2) break;
      if (std::find(props.begin(), props.end(), extra) == props.end()) props.push_back(extra);
    }
    auto suite = formula_suite(props, suite_patterns(u), suite_depth);
    cert.suite_size = suite.size();
    Evaluator em(m);
    Evaluator et(*t.target);
    for (const Formula& phi : suite) {
      const auto& x = em.extension(phi);
      const auto& y = et.extension(phi);
      for (std::size_t w = 0; w < n; ++w) {
        if (x[w] != y[w]) {
          g.ok = false;
          g.witness = print_formula(phi, u) + " at " + m.world_name(w) + " / " + sx[w].name;
          break;
        }
      }
      if (!g.ok) break;
    }
  }
  cert.checks.push_back(g);
  return cert;
}

}  // namespace synk
