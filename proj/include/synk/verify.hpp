// Seeded model generators, the formula suite and the axiom-soundness scanner.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "synk/kripke.hpp"
#include "synk/simplicial.hpp"

namespace synk {

struct GenParams {
  std::size_t agents = 3;  // ≤ 4
  std::size_t worlds = 4;  // ≤ 8
  std::size_t props = 2;   // ≤ 3
  std::uint64_t seed = 1;
  double glue = 0.6;  // in [0,1]
};

/// Throws std::invalid_argument for out-of-range parameters.
void check_params(const GenParams& p);

/// Deterministic across platforms: draws come straight from mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  bool chance(double p);
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

/// Seed for trial `t` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t);

/// Agent names a, b, c, d and propositions p, q, r used by the generators.
Universe gen_universe(std::size_t agents);
std::vector<std::string> gen_props(std::size_t props);

/// Tree-glued complex: each new simplex picks an alive set and, with the glue
/// probability, copies every face of one earlier simplex below a shared agent
/// set; remaining faces get fresh colors.
SimplicialModel gen_complex(const GenParams& p);
/// The Kripke reading of a complex: generators (S_i, S_j) labelled (S_i∩S_j)°.
PreModel read_back(const SimplicialModel& c);
PreModel gen_proper_delta(const GenParams& p);
/// A κ-model that need not satisfy D or properness: every world w gets a
/// self-loop on a random alive set A_w and extra generators use groups inside
/// A_u ∩ A_v.
PreModel gen_kappa(const GenParams& p);

/// L_0 = atoms; L_d = atoms ∪ {~φ, φ&ψ, [G]φ : φ,ψ ∈ L_{d-1}}, in that order,
/// without structural duplicates. Throws std::length_error past `budget`.
std::vector<Formula> formula_suite(const std::vector<std::string>& props,
                                   const std::vector<AgentPattern>& patterns, std::size_t depth,
                                   std::size_t budget = 2'000'000);
/// {{a}} for every agent plus the full downset (all non-empty agent sets).
std::vector<AgentPattern> suite_patterns(const Universe& u);

enum class Scheme { Taut, K, B, Four, T, P, NE, Mono, Equiv, Union, Clo, PBare };

std::string scheme_name(Scheme s);
/// Accepts the names printed by scheme_name ("4" for Four, "Pbare").
std::optional<Scheme> parse_scheme(std::string_view name);
/// The eleven schemes of the axiom system.
std::vector<Scheme> syn_schemes();
/// The axiom system without P.
std::vector<Scheme> syn_minus_schemes();

/// A random instance respecting the scheme's side conditions. Formula slots
/// are drawn from the suite of a uniformly chosen depth 0..2 over `props`
/// and the instance patterns.
Formula instantiate(Scheme s, Rng& rng, const Universe& u, const std::vector<std::string>& props);
/// The NE instance: a disjunction of alive(G) over all non-empty patterns when
/// there are at most 127 of them, otherwise over the single-group patterns.
Formula ne_instance(const Universe& u);
/// alive(G) & dead(G^C) & φ -> [G]φ
Formula p_bare_instance(const AgentPattern& g, const Formula& phi, const Universe& u);
/// alive(G) & dead(G^C) & φ -> [G](dead(G^C) -> φ)
Formula p_instance(const AgentPattern& g, const Formula& phi, const Universe& u);

enum class ScanTarget { simplicial, kappa };

struct Counterexample {
  std::size_t trial = 0;
  std::shared_ptr<const Structure> model;
  std::size_t world = 0;
  Formula instance = Formula::top();
};

struct ScanResult {
  Scheme scheme = Scheme::Taut;
  std::size_t trials = 0;
  std::optional<Counterexample> counterexample;
};

/// Evaluates `trials` random instances, each on a fresh generated model
/// (gen_complex for simplicial, gen_kappa for kappa) with its own seed.
ScanResult axiom_scan(Scheme s, const GenParams& p, std::size_t trials, ScanTarget target);
/// Evaluates `trials` random instances on one fixed model, over its own
/// propositions (p and q when it has none).
ScanResult axiom_scan_on(Scheme s, std::shared_ptr<const Structure> model, std::uint64_t seed,
                         std::size_t trials);

}  // namespace synk
