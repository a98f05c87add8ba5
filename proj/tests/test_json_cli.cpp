#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "synk/cli.hpp"
#include "synk/corpus.hpp"

using namespace synk;

namespace {

std::string corpus_path(const std::string& name) { return std::string(SYNK_CORPUS_DIR) + "/" + name + ".json"; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("synk_test_" + name)).string();
}

}  // namespace

TEST_CASE("corpus files are the canonical encoding of the built-in examples") {
  for (const CorpusEntry& e : corpus()) {
    const std::string text = slurp(corpus_path(e.name));
    REQUIRE_MESSAGE(!text.empty(), e.name);
    CHECK_MESSAGE(text == canonical_dump(model_to_json(load_example(e.name))), e.name);
    // load, dump, compare
    CHECK(canonical_dump(model_to_json(model_from_json(Json::parse(text)))) == text);
    CHECK(text.find('\r') == std::string::npos);
  }
  CHECK(corpus().size() == 7);
  CHECK_THROWS_AS(load_example("nope"), std::invalid_argument);
}

TEST_CASE("corpus entries pass their intended level") {
  for (const CorpusEntry& e : corpus()) {
    AnyModel m = load_example(e.name);
    if (e.level == "complex") {
      CHECK(std::holds_alternative<SimplicialModel>(m));
      continue;
    }
    const PreModel& k = std::get<PreModel>(m);
    if (e.level == "kappa") {
      CHECK(check_frame(k, FrameLevel::kappa).passed());
      CHECK_FALSE(check_frame(k, FrameLevel::delta).passed());
    } else if (e.level == "delta") {
      CHECK(check_frame(k, FrameLevel::delta).passed());
      CHECK_FALSE(check_frame(k, FrameLevel::proper).passed());
    } else {
      CHECK(e.level == "proper");
      CHECK(check_frame(k, FrameLevel::proper).passed());
    }
  }
}

TEST_CASE("malformed documents are rejected") {
  CHECK_THROWS_AS(model_from_json(Json::parse("{}")), ModelError);
  CHECK_THROWS_AS(model_from_json(Json::parse(R"({"agents":["a"],"simplices":{"x":[["a",0]]}})")), ModelError);
  CHECK_THROWS_AS(model_from_json(Json::parse(R"({"agents":["a"],"worlds":["w"],"mode":"odd"})")), ModelError);
  CHECK_THROWS_AS(model_from_json(Json::parse(R"({"agents":["a"],"worlds":["w","w"]})")), ModelError);
  // a valid document with an invalid complex names the violated condition
  Json bad = model_to_json(load_example("queue"));
  bad["simplices"][0]["faces"].push_back(Json::parse(R"([["P"],5])"));
  try {
    model_from_json(bad);
    FAIL("expected a model error");
  } catch (const ModelError& e) {
    CHECK_MESSAGE(std::string(e.what()).find("S2") != std::string::npos, std::string(e.what()));
  }
  CHECK_THROWS_AS(read_json_file("/nonexistent/x.json"), std::runtime_error);
}

TEST_CASE("patterns round-trip through JSON") {
  Universe u({"a", "b", "c"});
  AgentPattern g{u.set_of({"a", "b"}), u.set_of({"c"})};
  CHECK(pattern_from_json(pattern_to_json(g, u), u) == g);
  CHECK_THROWS(pattern_from_json(Json::parse(R"([["z"]])"), u));
}

TEST_CASE("cli: the documented invocations") {
  Run dining = cli({"check", "--model", corpus_path("dining"), "--formula", "[ab,ac,bc]p | [ab,ac,bc]~p", "--all-worlds"});
  CHECK(dining.code == 0);
  Run improper = cli({"props", "--model", corpus_path("improper"), "--level", "proper"});
  CHECK(improper.code == 1);
  CHECK(improper.out.find("w1") != std::string::npos);
  CHECK(improper.out.find("w2") != std::string::npos);
  const std::string out = temp_file("fig3_out.json");
  Run fig3 = cli({"translate", "--model", corpus_path("fig3"), "--verify", "2", "--out", out});
  CHECK(fig3.code == 0);
  Json complex = read_json_file(out);
  SimplicialModel s = simplicial_from_json(complex);
  CHECK(s.world_count() == 3);
  CHECK(s.world_name(0) == "ab1");
  std::filesystem::remove(out);
}

TEST_CASE("cli: exit codes") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"check", "--example", "dining"}).code == 2);  // --formula missing
  CHECK(cli({"check", "--example", "dining", "--formula", "p &"}).code == 2);
  CHECK(cli({"check", "--example", "dining", "--formula", "p", "--world", "abc0"}).code == 0);
  CHECK(cli({"check", "--example", "dining", "--formula", "p", "--world", "abc7"}).code == 1);
  CHECK(cli({"check", "--example", "dining", "--formula", "p", "--world", "zzz"}).code == 2);
  CHECK(cli({"check", "--model", "/nonexistent.json", "--formula", "p"}).code == 2);
  CHECK(cli({"validate", "--example", "nostd", "--level", "kappa"}).code == 0);
  CHECK(cli({"validate", "--example", "nostd", "--level", "delta"}).code == 1);
  CHECK(cli({"validate", "--example", "consensus"}).code == 0);
  CHECK(cli({"translate", "--example", "improper"}).code == 1);
  CHECK(cli({"quotient", "--example", "improper"}).code == 0);
  CHECK(cli({"unravel", "--example", "fig3", "--depth", "2"}).code == 0);
  CHECK(cli({"example", "list"}).code == 0);
  CHECK(cli({"example", "nope"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli: json output is parseable") {
  Run r = cli({"--json", "check", "--example", "fig3", "--formula", "[a]p", "--world", "w1"});
  Json j = Json::parse(r.out);
  CHECK(j["worlds"][0]["world"] == "w1");
  Run ex = cli({"--json", "example", "fig3"});
  CHECK(ex.out == canonical_dump(model_to_json(load_example("fig3"))));
}

TEST_CASE("cli: soundness") {
  Run ok = cli({"--json", "soundness", "--scheme", "T", "--trials", "100"});
  CHECK(ok.code == 0);
  Json j = Json::parse(ok.out);
  CHECK(j["sound"] == true);
  CHECK(j["schemes"][0]["scheme"] == "T");
  Run pbare = cli({"soundness", "--scheme", "Pbare", "--trials", "1000", "--example", "subworld"});
  CHECK(pbare.code == 1);
  Run p = cli({"soundness", "--scheme", "P", "--trials", "1000", "--level", "kappa"});
  CHECK(p.code == 1);
  CHECK(cli({"soundness", "--scheme", "Z"}).code == 2);
}
