#include <doctest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "synk/corpus.hpp"
#include "synk/translate.hpp"
#include "synk/verify.hpp"

using namespace synk;

namespace {

const Universe ab({"a", "b"});
const AgentSet A = ab.set_of({"a"});
const AgentSet B = ab.set_of({"b"});
const AgentSet AB = ab.set_of({"a", "b"});

PreModel example(const std::string& name) { return std::get<PreModel>(load_example(name)); }

std::vector<Face> faces(std::initializer_list<std::pair<AgentSet, std::uint32_t>> list) {
  std::vector<Face> out;
  for (auto [a, c] : list) out.push_back(Face{a, c});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("translation of the fig3 model") {
  Translation t = delta_translate(example("fig3"));
  REQUIRE(t.target);
  CHECK(t.simplices[0].faces == faces({{AB, 1}, {A, 1}, {B, 1}}));
  CHECK(t.simplices[1].faces == faces({{AB, 2}, {A, 1}, {B, 1}}));
  CHECK(t.simplices[2].faces == faces({{AB, 3}, {A, 3}, {B, 1}}));
  CHECK(t.mapping.at("w1") == "ab1");
  CHECK(t.mapping.at("w2") == "ab2");
  CHECK(t.mapping.at("w3") == "ab3");
  CHECK(t.target->holds(0, "p"));
  CHECK(t.target->holds(2, "q"));
  Certificate c = verify_translation(t, 2);
  CHECK(c.passed());
  CHECK(c.checks.size() == 7);
  CHECK(c.suite_size == 254);  // 2 + 14 + 14*14 + 3*14
}

TEST_CASE("one isolated world") {
  PreModel m(ab, {"w1"}, RelationMode::generated, {Edge{0, 0, AgentPattern{A}}}, {});
  Translation t = delta_translate(m);
  REQUIRE(t.target);
  CHECK(t.simplices[0].faces == faces({{A, 1}}));
  CHECK(t.trace.empty());
}

TEST_CASE("chain under {b}: every simplex ends with face (b,1)") {
  PreModel m = example("fig3");
  Translation t = delta_translate(m);
  for (const Simplex& s : t.simplices) CHECK(s.color_of(B) == 1u);
  // the trace never replaces a face that was put in by an earlier replacement
  for (const Replacement& r : t.trace) {
    CHECK(r.k <= r.i);
    CHECK_FALSE(r.displaced);
  }
}

TEST_CASE("without the properness gate the improper model collapses") {
  PreModel m = example("improper");
  CHECK_THROWS_AS(delta_translate(m), FrameError);
  TranslateOptions opts;
  opts.skip_gate = true;
  Translation t = delta_translate(m, opts);
  CHECK(t.simplices[0].faces == t.simplices[1].faces);
  CHECK_FALSE(t.target);
  CHECK_FALSE(verify_translation(t, 1).passed());
}

TEST_CASE("a hand-corrupted target is rejected with a witness") {
  Translation t = delta_translate(example("fig3"));
  // recolor (b,1) to (b,7) in S2
  for (Face& f : t.simplices[1].faces) {
    if (f.agents == B) f.color = 7;
  }
  std::sort(t.simplices[1].faces.begin(), t.simplices[1].faces.end());
  Certificate c = verify_translation(t, 1);
  CHECK_FALSE(c.passed());
  bool t2 = false;
  for (const CertCheck& k : c.checks) {
    if (k.id == "d") {
      t2 = !k.ok;
      CHECK_FALSE(k.witness.empty());
    }
  }
  CHECK(t2);
}

TEST_CASE("enumeration order changes colors but not semantics") {
  PreModel m = example("fig3");
  TranslateOptions opts;
  opts.order = {2, 0, 1};
  Translation t = delta_translate(m, opts);
  REQUIRE(t.target);
  CHECK(verify_translation(t, 2).passed());
  CHECK(t.simplices[2].faces == faces({{AB, 1}, {A, 1}, {B, 1}}));
  opts.order = {0, 0, 1};
  CHECK_THROWS_AS(delta_translate(m, opts), std::invalid_argument);
}

TEST_CASE("property: generated proper delta-models translate and certify") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenParams p;
    p.seed = seed;
    p.agents = 1 + seed % 3;
    p.worlds = 1 + seed % 6;
    PreModel m = gen_proper_delta(p);
    REQUIRE(check_frame(m, FrameLevel::proper).passed());
    Translation t = delta_translate(m);
    REQUIRE_MESSAGE(t.target, t.target_error);
    Certificate c = verify_translation(t, 2);
    REQUIRE_MESSAGE(c.passed(), c.text());
    // the translation reproduces the relations exactly (oracle: face scan)
    for (const AgentPattern& g : all_patterns(m.universe().full())) {
      auto r = oracle::simplicial_relation(t.simplices, g);
      Partition src = m.relation(g);
      for (std::size_t i = 0; i < m.world_count(); ++i) {
        for (std::size_t j = 0; j < m.world_count(); ++j) CHECK(r[i][j] == src.related(i, j));
      }
    }
    for (const Replacement& r : t.trace) CHECK_FALSE(r.displaced);
    // a random enumeration also certifies
    std::vector<std::size_t> order(m.world_count());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    TranslateOptions opts;
    opts.order = order;
    Translation u = delta_translate(m, opts);
    REQUIRE(u.target);
    CHECK(verify_translation(u, 1).passed());
  }
}
