#include "synk/verify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace synk {

void check_params(const GenParams& p) {
  if (p.agents < 1 || p.agents > 4) throw std::invalid_argument("agent count must be in 1..4");
  if (p.worlds < 1 || p.worlds > 8) throw std::invalid_argument("world count must be in 1..8");
  if (p.props > 3) throw std::invalid_argument("proposition count must be at most 3");
  if (!(p.glue >= 0.0 && p.glue <= 1.0)) throw std::invalid_argument("glue probability must be in [0,1]");
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

bool Rng::chance(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) {
  // splitmix64 of the pair
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ull + t + 0x632be59bd9b4e019ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Universe gen_universe(std::size_t agents) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < agents; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return Universe(names);
}

std::vector<std::string> gen_props(std::size_t props) {
  static const char* names[] = {"p", "q", "r"};
  return std::vector<std::string>(names, names + props);
}

namespace {

AgentSet random_subset(Rng& rng, AgentSet within) {
  auto subs = nonempty_subsets(within);
  return subs[rng.below(subs.size())];
}

AgentSet random_alive(Rng& rng, AgentSet full) {
  if (rng.chance(0.5)) return full;
  return random_subset(rng, full);
}

std::map<std::string, std::set<std::string>> random_valuation(
    Rng& rng, const std::vector<std::string>& worlds, const std::vector<std::string>& props) {
  std::map<std::string, std::set<std::string>> val;
  for (const auto& w : worlds) {
    for (const auto& p : props) {
      if (rng.chance(0.5)) val[w].insert(p);
    }
  }
  return val;
}

}  // namespace

SimplicialModel gen_complex(const GenParams& p) {
  check_params(p);
  Rng rng(p.seed);
  const Universe u = gen_universe(p.agents);
  const AgentSet full = u.full();
  std::map<AgentSet, std::uint32_t> next_color;
  auto fresh = [&](AgentSet a) { return next_color[a]++; };
  std::vector<Simplex> simplices;
  for (std::size_t i = 0; i < p.worlds; ++i) {
    AgentSet alive = random_alive(rng, full);
    std::vector<Face> faces;
    bool glued = false;
    if (!simplices.empty() && rng.chance(p.glue)) {
      const Simplex& prior = simplices[rng.below(simplices.size())];
      AgentSet common = alive & prior.max_face().agents;
      if (!common.empty()) {
        AgentSet shared = random_subset(rng, common);
        // a copied top face must not already be some simplex's maximal face
        const bool clash =
            alive.subset_of(shared) &&
            std::any_of(simplices.begin(), simplices.end(), [&](const Simplex& s) {
              return s.max_face() == Face{alive, *prior.color_of(alive)};
            });
        if (!clash) {
          for (AgentSet c : nonempty_subsets(alive)) {
            faces.push_back(Face{c, c.subset_of(shared) ? *prior.color_of(c) : fresh(c)});
          }
          glued = true;
        }
      }
    }
    if (!glued) {
      for (AgentSet c : nonempty_subsets(alive)) faces.push_back(Face{c, fresh(c)});
    }
    Simplex s("", std::move(faces));
    s.name = auto_name(s, u);
    simplices.push_back(std::move(s));
  }
  std::vector<std::string> names;
  for (const auto& s : simplices) names.push_back(s.name);
  auto val = random_valuation(rng, names, gen_props(p.props));
  return SimplicialModel(u, std::move(simplices), std::move(val));
}

PreModel read_back(const SimplicialModel& c) {
  const std::size_t n = c.world_count();
  std::vector<std::string> worlds;
  for (std::size_t i = 0; i < n; ++i) worlds.push_back(c.world_name(i));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<AgentSet> shared;
      for (const Face& f : c.simplex(i).faces) {
        if (c.simplex(j).has(f)) shared.push_back(f.agents);
      }
      if (!shared.empty()) edges.push_back(Edge{i, j, AgentPattern(std::move(shared))});
    }
  }
  return PreModel(c.universe(), worlds, RelationMode::generated, std::move(edges), c.valuation());
}

PreModel gen_proper_delta(const GenParams& p) { return read_back(gen_complex(p)); }

PreModel gen_kappa(const GenParams& p) {
  check_params(p);
  Rng rng(p.seed ^ 0x5bd1e995ull);
  const Universe u = gen_universe(p.agents);
  std::vector<std::string> worlds;
  for (std::size_t i = 0; i < p.worlds; ++i) worlds.push_back("w" + std::to_string(i + 1));
  std::vector<AgentSet> alive;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < p.worlds; ++i) {
    alive.push_back(random_alive(rng, u.full()));
    edges.push_back(Edge{i, i, AgentPattern{alive.back()}});
  }
  const std::size_t extra = rng.below(2 * p.worlds + 1);
  for (std::size_t e = 0; e < extra; ++e) {
    std::size_t a = rng.below(p.worlds);
    std::size_t b = rng.below(p.worlds);
    AgentSet common = alive[a] & alive[b];
    if (common.empty()) continue;
    std::vector<AgentSet> groups;
    const std::size_t k = 1 + rng.below(3);
    for (std::size_t g = 0; g < k; ++g) groups.push_back(random_subset(rng, common));
    edges.push_back(Edge{a, b, AgentPattern(std::move(groups))});
  }
  auto val = random_valuation(rng, worlds, gen_props(p.props));
  return PreModel(u, worlds, RelationMode::generated, std::move(edges), std::move(val));
}

std::vector<Formula> formula_suite(const std::vector<std::string>& props,
                                   const std::vector<AgentPattern>& patterns, std::size_t depth,
                                   std::size_t budget) {
  if (depth > 3) throw std::length_error("formula suite depth is limited to 3");
  std::vector<Formula> atoms;
  for (const auto& p : props) atoms.push_back(Formula::atom(p));
  std::vector<Formula> level = atoms;
  for (std::size_t d = 1; d <= depth; ++d) {
    const std::size_t count = atoms.size() + level.size() + level.size() * level.size() +
                              patterns.size() * level.size();
    if (count > budget) throw std::length_error("formula suite exceeds the budget");
    std::vector<Formula> next;
    next.reserve(count);
    std::unordered_set<Formula, FormulaHash> seen;
    auto add = [&](Formula f) {
      if (seen.insert(f).second) next.push_back(std::move(f));
    };
    for (const Formula& a : atoms) add(a);
    for (const Formula& f : level) add(Formula::neg(f));
    for (const Formula& f : level) {
      for (const Formula& g : level) add(Formula::conj(f, g));
    }
    for (const AgentPattern& g : patterns) {
      for (const Formula& f : level) add(Formula::box(g, f));
    }
    level = std::move(next);
  }
  return level;
}

std::vector<AgentPattern> suite_patterns(const Universe& u) {
  std::vector<AgentPattern> out;
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back(AgentPattern{AgentSet::single(i)});
  out.push_back(AgentPattern(nonempty_subsets(u.full())));
  return out;
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Taut: return "Taut";
    case Scheme::K: return "K";
    case Scheme::B: return "B";
    case Scheme::Four: return "4";
    case Scheme::T: return "T";
    case Scheme::P: return "P";
    case Scheme::NE: return "NE";
    case Scheme::Mono: return "Mono";
    case Scheme::Equiv: return "Equiv";
    case Scheme::Union: return "Union";
    case Scheme::Clo: return "Clo";
    case Scheme::PBare: return "Pbare";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Taut, Scheme::K, Scheme::B, Scheme::Four, Scheme::T, Scheme::P, Scheme::NE,
                   Scheme::Mono, Scheme::Equiv, Scheme::Union, Scheme::Clo, Scheme::PBare}) {
    if (scheme_name(s) == name) return s;
  }
  if (name == "Four") return Scheme::Four;
  return std::nullopt;
}

std::vector<Scheme> syn_schemes() {
  return {Scheme::Taut, Scheme::K,    Scheme::B,     Scheme::Four,  Scheme::T,  Scheme::P,
          Scheme::NE,   Scheme::Mono, Scheme::Equiv, Scheme::Union, Scheme::Clo};
}

std::vector<Scheme> syn_minus_schemes() {
  auto all = syn_schemes();
  all.erase(std::remove(all.begin(), all.end(), Scheme::P), all.end());
  return all;
}

Formula ne_instance(const Universe& u) {
  std::vector<Formula> parts;
  const auto groups = nonempty_subsets(u.full());
  if (groups.size() <= 7) {
    for (const AgentPattern& g : all_patterns(u.full())) parts.push_back(Formula::alive(g));
  } else {
    for (AgentSet b : groups) parts.push_back(Formula::alive(AgentPattern{b}));
  }
  return Formula::disj_all(parts);
}

Formula p_bare_instance(const AgentPattern& g, const Formula& phi, const Universe& u) {
  Formula dead_c = Formula::dead(pattern_complement(g, u.full()));
  return Formula::implies(Formula::conj(Formula::conj(Formula::alive(g), dead_c), phi),
                          Formula::box(g, phi));
}

Formula p_instance(const AgentPattern& g, const Formula& phi, const Universe& u) {
  Formula dead_c = Formula::dead(pattern_complement(g, u.full()));
  return Formula::implies(Formula::conj(Formula::conj(Formula::alive(g), dead_c), phi),
                          Formula::box(g, Formula::implies(dead_c, phi)));
}

namespace {

AgentPattern random_pattern(Rng& rng, AgentSet full) {
  auto groups = nonempty_subsets(full);
  // Half of the draws are downsets of one agent set, which the models make alive often.
  if (rng.chance(0.5)) return downset(AgentPattern{random_subset(rng, full)});
  std::vector<AgentSet> pick;
  for (AgentSet b : groups) {
    if (rng.chance(0.3)) pick.push_back(b);
  }
  if (pick.empty()) pick.push_back(groups[rng.below(groups.size())]);
  return AgentPattern(std::move(pick));
}

AgentPattern random_subpattern(Rng& rng, const AgentPattern& h) {
  std::vector<AgentSet> pick;
  for (AgentSet b : h) {
    if (rng.chance(0.5)) pick.push_back(b);
  }
  if (pick.empty()) pick.push_back(h.groups()[rng.below(h.size())]);
  return AgentPattern(std::move(pick));
}

}  // namespace

Formula instantiate(Scheme s, Rng& rng, const Universe& u, const std::vector<std::string>& props) {
  const AgentSet full = u.full();
  AgentPattern g = random_pattern(rng, full);
  AgentPattern h = random_pattern(rng, full);
  if (s == Scheme::Mono) g = random_subpattern(rng, h);
  std::vector<AgentPattern> slots{g, h};
  std::vector<std::string> atoms = props.empty() ? std::vector<std::string>{"p"} : props;
  const std::vector<Formula> pools[] = {formula_suite(atoms, slots, 0), formula_suite(atoms, slots, 1),
                                        formula_suite(atoms, slots, 2)};
  auto pick = [&]() {
    const auto& pool = pools[rng.below(3)];
    return pool[rng.below(pool.size())];
  };
  Formula phi = pick();
  Formula psi = pick();
  Formula chi = pick();
  using F = Formula;
  switch (s) {
    case Scheme::Taut: {
      switch (rng.below(6)) {
        case 0: return F::implies(phi, F::implies(psi, phi));
        case 1:
          return F::implies(F::implies(phi, F::implies(psi, chi)),
                            F::implies(F::implies(phi, psi), F::implies(phi, chi)));
        case 2: return F::implies(F::implies(F::neg(phi), F::neg(psi)), F::implies(psi, phi));
        case 3: return F::disj(phi, F::neg(phi));
        case 4: return F::implies(F::conj(phi, psi), phi);
        default: return F::implies(F::neg(F::neg(phi)), phi);
      }
    }
    case Scheme::K:
      return F::implies(F::box(g, F::implies(phi, psi)), F::implies(F::box(g, phi), F::box(g, psi)));
    case Scheme::B: return F::implies(phi, F::box(g, F::neg(F::box(g, F::neg(phi)))));
    case Scheme::Four: return F::implies(F::box(g, phi), F::box(g, F::box(g, phi)));
    case Scheme::T: return F::implies(F::alive(g), F::implies(F::box(g, phi), phi));
    case Scheme::P: return p_instance(g, phi, u);
    case Scheme::NE: return ne_instance(u);
    case Scheme::Mono: return F::implies(F::box(g, phi), F::box(h, phi));
    case Scheme::Equiv: {
      AgentSet a = g.groups()[rng.below(g.size())];
      AgentSet b = random_subset(rng, a);
      return F::implies(F::box(g.with(b), phi), F::box(g, phi));
    }
    case Scheme::Union:
      return F::implies(F::conj(F::alive(g), F::alive(h)), F::alive(g.united(h)));
    case Scheme::Clo: {
      AgentSet a = g.groups()[rng.below(g.size())];
      AgentSet b = g.groups()[rng.below(g.size())];
      return F::implies(F::alive(g), F::alive(AgentPattern{a | b}));
    }
    case Scheme::PBare: return p_bare_instance(g, phi, u);
  }
  return F::top();
}

ScanResult axiom_scan(Scheme s, const GenParams& p, std::size_t trials, ScanTarget target) {
  check_params(p);
  ScanResult out;
  out.scheme = s;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(p.seed, t));
    GenParams q = p;
    q.seed = rng.next();
    q.worlds = 1 + rng.below(p.worlds);
    q.agents = 1 + rng.below(p.agents);
    std::shared_ptr<const Structure> model;
    if (target == ScanTarget::simplicial) {
      model = std::make_shared<SimplicialModel>(gen_complex(q));
    } else {
      model = std::make_shared<PreModel>(gen_kappa(q));
    }
    Formula inst = instantiate(s, rng, model->universe(), gen_props(p.props));
    Evaluator ev(*model);
    out.trials = t + 1;
    if (auto w = ev.first_failure(inst)) {
      out.counterexample = Counterexample{t, model, *w, inst};
      return out;
    }
  }
  return out;
}

ScanResult axiom_scan_on(Scheme s, std::shared_ptr<const Structure> model, std::uint64_t seed,
                         std::size_t trials) {
  ScanResult out;
  out.scheme = s;
  std::set<std::string> props;
  if (auto* sm = dynamic_cast<const SimplicialModel*>(model.get())) {
    for (const auto& p : sm->propositions()) props.insert(p);
  } else if (auto* pm = dynamic_cast<const PreModel*>(model.get())) {
    for (const auto& p : pm->propositions()) props.insert(p);
  }
  if (props.empty()) {
    for (const auto& p : gen_props(2)) props.insert(p);
  }
  std::vector<std::string> pv(props.begin(), props.end());
  Evaluator ev(*model);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, t));
    Formula inst = instantiate(s, rng, model->universe(), pv);
    out.trials = t + 1;
    if (auto w = ev.first_failure(inst)) {
      out.counterexample = Counterexample{t, model, *w, inst};
      return out;
    }
  }
  return out;
}

}  // namespace synk
