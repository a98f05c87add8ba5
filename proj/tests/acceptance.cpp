// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "lemmas.hpp"
#include "synk/corpus.hpp"
#include "synk/translate.hpp"
#include "synk/unravel.hpp"
#include "synk/verify.hpp"

using namespace synk;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

template <class T>
T example(const std::string& name) {
  return std::get<T>(load_example(name));
}

AgentPattern pattern(const Universe& u, std::initializer_list<const char*> groups) {
  std::vector<AgentSet> out;
  for (std::string g : groups) {
    std::vector<std::string> names;
    for (char c : g) names.emplace_back(1, c);
    out.push_back(u.set_of(names));
  }
  return AgentPattern(out);
}

Formula knows_whether(const AgentPattern& g, const std::string& p) {
  return Formula::disj(Formula::box(g, Formula::atom(p)), Formula::box(g, Formula::neg(Formula::atom(p))));
}

Outcome dining() {
  SimplicialModel d = example<SimplicialModel>("dining");
  const AgentPattern g = pattern(d.universe(), {"ab", "ac", "bc"});
  Evaluator ev(d);
  int bad = 0;
  for (std::size_t w = 0; w < 8; ++w) bad += !ev.holds(w, knows_whether(g, "p"));
  int subs = 0;
  for (std::uint32_t code = 1; code < 7; ++code) {
    std::vector<AgentSet> pick;
    for (std::size_t i = 0; i < 3; ++i) {
      if ((code >> i) & 1u) pick.push_back(g.groups()[i]);
    }
    ++subs;
    for (std::size_t w = 0; w < 8; ++w) bad += ev.holds(w, knows_whether(AgentPattern(pick), "p"));
  }
  return {bad == 0 && subs == 6, std::to_string(bad) + " mismatches over 8 worlds x 7 patterns"};
}

Outcome consensus() {
  SimplicialModel c = example<SimplicialModel>("consensus");
  const Universe& u = c.universe();
  auto phi = [&](const std::string& i) {
    std::vector<Formula> parts{Formula::atom("move_" + i)};
    for (std::string j : {"a", "b", "c"}) {
      if (j != i) parts.push_back(Formula::neg(Formula::atom("move_" + j)));
    }
    return Formula::conj_all(parts);
  };
  auto decides = [&](const AgentPattern& g) {
    return Formula::disj_all({Formula::box(g, phi("a")), Formula::box(g, phi("b")), Formula::box(g, phi("c"))});
  };
  bool ok = indist(c.simplex(0), c.simplex(1), pattern(u, {"ab", "ac", "bc"}));
  ok = ok && valid_on_simplicial(c, decides(pattern(u, {"abc"}))).valid;
  std::size_t lacking = 0, wrongly_valid = 0;
  std::vector<AgentPattern> pats = all_patterns(u.full());
  pats.push_back(AgentPattern{});
  for (const AgentPattern& g : pats) {
    if (g.contains(u.full())) continue;
    ++lacking;
    wrongly_valid += valid_on_simplicial(c, decides(g)).valid;
  }
  ok = ok && wrongly_valid == 0 && lacking == 64;
  return {ok, std::to_string(lacking) + " patterns without {a,b,c}, " + std::to_string(wrongly_valid) + " valid"};
}

Outcome construction() {
  Translation t = delta_translate(example<PreModel>("fig3"));
  if (!t.target) return {false, t.target_error};
  std::vector<std::string> got;
  for (const Simplex& s : t.simplices) {
    std::string row = "{";
    std::vector<Face> faces = s.faces;
    std::sort(faces.begin(), faces.end(), [](const Face& x, const Face& y) {
      if (x.agents.size() != y.agents.size()) return x.agents.size() > y.agents.size();
      return x.agents.bits() < y.agents.bits();
    });
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const Face& f = faces[i];
      if (i) row += ",";
      for (std::size_t a : f.agents.members()) row += t.source.universe().name(a);
      row += std::to_string(f.color);
    }
    got.push_back(row + "}");
  }
  const std::vector<std::string> want{"{ab1,a1,b1}", "{ab2,a1,b1}", "{ab3,a3,b1}"};
  Certificate cert = verify_translation(t, 2);
  std::string joined;
  for (const auto& r : got) joined += r + " ";
  return {got == want && cert.passed(), joined + (cert.passed() ? "certified" : "certificate failed")};
}

Outcome frames() {
  const PreModel nostd = example<PreModel>("nostd");
  const PreModel improper = example<PreModel>("improper");
  const PreModel fig3 = example<PreModel>("fig3");
  const std::vector<std::size_t> w12{0, 1};
  bool ok = check_frame(nostd, FrameLevel::kappa).passed();
  FrameReport d = check_frame(nostd, FrameLevel::delta);
  const Verdict& dv = d.get("D");
  ok = ok && dv.ok == false && dv.worlds == w12;
  ok = ok && check_frame(improper, FrameLevel::delta).passed();
  FrameReport p = check_frame(improper, FrameLevel::proper);
  const Verdict& pv = p.get("proper");
  ok = ok && pv.ok == false && pv.worlds == w12;
  ok = ok && check_frame(fig3, FrameLevel::proper).passed();
  return {ok, "D witness " + format_worlds(nostd, dv.worlds) + ", proper witness " + format_worlds(improper, pv.worlds)};
}

Outcome lemma_suite() {
  std::size_t violations = 0, instances = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GenParams p;
    p.seed = seed;
    p.agents = 1 + seed % 4;
    p.worlds = 1 + (seed / 4) % 8;
    SimplicialModel m = gen_complex(p);
    lemmas::lemma_suite(m, [&](bool ok, const char* lemma) {
      ++instances;
      if (!ok && violations++ == 0) first = std::string(lemma) + " at seed " + std::to_string(seed);
    });
  }
  return {violations == 0,
          std::to_string(violations) + " violations in " + std::to_string(instances) + " instances" +
              (first.empty() ? "" : ", first: " + first)};
}

Outcome soundness() {
  std::ostringstream detail;
  bool ok = true;
  GenParams p;
  p.agents = 4;
  p.worlds = 8;
  std::size_t found = 0;
  for (Scheme s : syn_schemes()) {
    ScanResult r = axiom_scan(s, p, 1000, ScanTarget::simplicial);
    if (r.counterexample) {
      ok = false;
      detail << scheme_name(s) << " refuted on a complex; ";
    }
  }
  p.agents = 3;
  p.worlds = 5;
  auto nostd = std::make_shared<PreModel>(example<PreModel>("nostd"));
  for (Scheme s : syn_minus_schemes()) {
    ScanResult r = axiom_scan(s, p, 1000, ScanTarget::kappa);
    ScanResult fixed = axiom_scan_on(s, nostd, p.seed, 1000);
    if (r.counterexample || fixed.counterexample) {
      ok = false;
      detail << scheme_name(s) << " refuted on a kappa-model; ";
    }
  }
  auto sub = std::make_shared<SimplicialModel>(example<SimplicialModel>("subworld"));
  ScanResult pbare = axiom_scan_on(Scheme::PBare, sub, p.seed, 1000);
  if (pbare.counterexample) {
    ++found;
    detail << "Pbare refuted at " << sub->world_name(pbare.counterexample->world) << " by "
           << print_formula(pbare.counterexample->instance, sub->universe());
  } else {
    ok = false;
    detail << "Pbare not refuted";
  }
  return {ok && found == 1, detail.str()};
}

Outcome translation_equivalence() {
  std::size_t disagreements = 0, comparisons = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenParams p;
    p.seed = seed;
    p.agents = 1 + seed % 3;
    p.worlds = 1 + seed % 8;
    p.props = 2;
    PreModel m = gen_proper_delta(p);
    Translation t = delta_translate(m);
    if (!t.target) return {false, "seed " + std::to_string(seed) + ": " + t.target_error};
    Evaluator em(m), es(*t.target);
    for (const Formula& f : formula_suite(gen_props(2), suite_patterns(m.universe()), 2)) {
      const auto& a = em.extension(f);
      const auto& b = es.extension(f);
      for (std::size_t w = 0; w < m.world_count(); ++w) {
        ++comparisons;
        disagreements += (a[w] != 0) != (b[w] != 0);
      }
    }
  }
  return {disagreements == 0,
          std::to_string(disagreements) + " disagreements in " + std::to_string(comparisons) + " comparisons"};
}

Outcome unravelling() {
  const std::size_t d = 3;
  std::size_t d_fail = 0, bisim_fail = 0, truth_fail = 0, truth_total = 0;
  std::size_t shallow_fail = 0, shallow_total = 0, deeper_fail = 0;
  std::vector<std::size_t> fail_by_length(d + 1);
  std::string first;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenParams p;
    p.seed = seed;
    p.agents = 2 + seed % 2;
    p.worlds = 1 + seed % 4;
    PreModel m = gen_kappa(p);
    Unravelling u = unravel_model(m, d);
    d_fail += check_d_on(u.model, u.interior).has_value();
    bisim_fail += check_functional_bisim(u.model, m, u.last, bisim_patterns(u.model, m), &u.interior).has_value();
    Evaluator eu(u.model), em(m);
    const auto suite = formula_suite(gen_props(2), suite_patterns(m.universe()), 2);
    std::vector<std::pair<std::size_t, const Formula*>> bad_here;
    for (const Formula& f : suite) {
      const auto& a = eu.extension(f);
      const auto& b = em.extension(f);
      for (std::size_t h = 0; h < u.histories.size(); ++h) {
        if (!u.interior[h]) continue;
        const bool bad = (a[h] != 0) != (b[u.last[h]] != 0);
        ++truth_total;
        truth_fail += bad;
        if (bad) bad_here.emplace_back(h, &f);
        if (bad && fail_by_length[u.histories[h].size()]++ == 0 && first.empty()) {
          first = "seed " + std::to_string(seed) + " " + history_name(m, u.histories[h]) + " " +
                  print_formula(f, m.universe());
        }
        if (u.histories[h].size() + 2 <= d) {
          ++shallow_total;
          shallow_fail += bad;
        }
      }
    }
    if (bad_here.empty()) continue;
    // the same histories one level deeper in a larger unravelling
    Unravelling deeper = unravel_model(m, d + 1);
    std::map<History, std::size_t> index;
    for (std::size_t h = 0; h < deeper.histories.size(); ++h) index[deeper.histories[h]] = h;
    Evaluator ed(deeper.model);
    for (auto [h, f] : bad_here) {
      const std::size_t k = index.at(u.histories[h]);
      deeper_fail += ed.holds(k, *f) != em.holds(u.last[h], *f);
    }
  }
  std::ostringstream detail;
  detail << "D failures " << d_fail << ", bisimulation failures " << bisim_fail << ", truth disagreements "
         << truth_fail << "/" << truth_total << " (by history length:";
  for (std::size_t len = 1; len < d; ++len) detail << " " << len << ":" << fail_by_length[len];
  detail << "; histories with at least 2 steps of headroom " << shallow_fail << "/" << shallow_total << ")";
  if (!first.empty()) {
    detail << "; first: " << first << "; disagreeing histories still disagreeing inside a depth " << d + 1
           << " unravelling: " << deeper_fail;
  }
  return {d_fail == 0 && bisim_fail == 0 && truth_fail == 0, detail.str()};
}

Outcome quotient_check() {
  PreModel improper = example<PreModel>("improper");
  QuotientResult q = quotient(improper);
  if (!q.model) return {false, "no quotient"};
  bool ok = q.model->world_count() == 1 && check_frame(*q.model, FrameLevel::proper).passed();
  Evaluator em(improper), eq(*q.model);
  std::size_t bad = 0;
  for (const Formula& f : formula_suite({"p"}, suite_patterns(improper.universe()), 2)) {
    for (std::size_t w = 0; w < improper.world_count(); ++w) bad += em.holds(w, f) != eq.holds(q.class_of[w], f);
  }
  PreModel divergent(improper.universe(), improper.worlds(), improper.mode(), improper.edges(), {{"w1", {"p"}}});
  QuotientResult c = quotient(divergent);
  const bool clash = !c.model && c.clash && c.clash->w == 0 && c.clash->v == 1 && c.clash->prop == "p";
  return {ok && bad == 0 && clash, std::to_string(q.model->world_count()) + " world, " + std::to_string(bad) +
                                       " suite disagreements, divergent valuation " +
                                       (clash ? "reports w1/w2 on p" : "not reported")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"dining cryptographers", 1, dining},
      {"consensus number", 1, consensus},
      {"construction golden test", 1, construction},
      {"frame classification", 1, frames},
      {"indistinguishability lemmas on 200 complexes", 20, lemma_suite},
      {"soundness scan", 20, soundness},
      {"translation equivalence on 50 models", 15, translation_equivalence},
      {"unravelling at depth 3 on 20 models", 10, unravelling},
      {"quotient", 1, quotient_check},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs < c.limit;
    failed += !pass;
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs/%.0fs", secs, c.limit);
    std::cout << (pass ? "PASS" : "FAIL") << " " << i + 1 << " " << c.name << " [" << time << "] " << o.detail
              << "\n";
  }
  return failed == 0 ? 0 : 1;
}
