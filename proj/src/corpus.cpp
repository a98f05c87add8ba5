#include "synk/corpus.hpp"

#include <stdexcept>

namespace synk {

namespace {

using Valuation = std::map<std::string, std::set<std::string>>;

// Faces are written "ab0": agent letters followed by the color.
Simplex simplex(const Universe& u, std::initializer_list<const char*> faces) {
  std::vector<Face> out;
  for (std::string f : faces) {
    std::size_t cut = f.find_first_of("0123456789");
    std::vector<std::string> names;
    for (char c : f.substr(0, cut)) names.emplace_back(1, c);
    out.push_back(Face{u.set_of(names), static_cast<std::uint32_t>(std::stoul(f.substr(cut)))});
  }
  Simplex s("", std::move(out));
  s.name = auto_name(s, u);
  return s;
}

SimplicialModel queue() {
  Universe u({"P", "Q"});
  Simplex first = simplex(u, {"PQ0", "P0", "Q0"});
  Simplex second = simplex(u, {"PQ1", "P0", "Q0"});
  first.name = "vPvQ";
  second.name = "vQvP";
  return SimplicialModel(u, {first, second}, Valuation{{"vPvQ", {"p_first"}}});
}

SimplicialModel consensus() {
  Universe u({"a", "b", "c"});
  std::vector<Simplex> s;
  for (const char* top : {"abc0", "abc1", "abc2"}) {
    s.push_back(simplex(u, {top, "ab0", "ac0", "bc0", "a0", "b0", "c0"}));
  }
  return SimplicialModel(u, s, Valuation{{"abc0", {"move_a"}}, {"abc1", {"move_b"}}, {"abc2", {"move_c"}}});
}

SimplicialModel dining() {
  Universe u({"a", "b", "c"});
  // colors of ab, bc, ac per world
  const char* rows[8][4] = {{"abc0", "ab0", "bc0", "ac0"}, {"abc1", "ab1", "bc0", "ac0"},
                            {"abc2", "ab0", "bc1", "ac0"}, {"abc3", "ab0", "bc0", "ac1"},
                            {"abc4", "ab1", "bc1", "ac0"}, {"abc5", "ab1", "bc0", "ac1"},
                            {"abc6", "ab0", "bc1", "ac1"}, {"abc7", "ab1", "bc1", "ac1"}};
  std::vector<Simplex> s;
  for (const auto& r : rows) s.push_back(simplex(u, {r[0], r[1], r[2], r[3], "a0", "b0", "c0"}));
  Valuation val;
  for (const char* w : {"abc0", "abc4", "abc5", "abc6"}) val[w] = {"p"};
  return SimplicialModel(u, s, val);
}

SimplicialModel subworld() {
  Universe u({"a", "b", "c"});
  std::vector<Simplex> s{simplex(u, {"abc0", "ab0", "ac0", "bc0", "a0", "b0", "c0"}),
                         simplex(u, {"ab0", "a0", "b0"})};
  return SimplicialModel(u, s, Valuation{{"ab0", {"p"}}});
}

AgentSet set(const Universe& u, const std::string& letters) {
  std::vector<std::string> names;
  for (char c : letters) names.emplace_back(1, c);
  return u.set_of(names);
}

PreModel nostd() {
  Universe u({"a", "b"});
  const AgentSet a = set(u, "a"), b = set(u, "b"), ab = set(u, "ab");
  std::vector<Edge> e{{0, 0, {ab}}, {1, 1, {ab}}, {0, 1, {a}}, {0, 1, {b}}};
  return PreModel(u, {"w1", "w2"}, RelationMode::generated, e, Valuation{{"w1", {"q"}}});
}

PreModel fig3() {
  Universe u({"a", "b"});
  const AgentSet a = set(u, "a"), b = set(u, "b"), ab = set(u, "ab");
  std::vector<Edge> e{{0, 0, {ab}}, {1, 1, {ab}}, {2, 2, {ab}},
                      {0, 1, {a, b}}, {1, 2, {b}}, {0, 2, {b}}};
  return PreModel(u, {"w1", "w2", "w3"}, RelationMode::generated, e,
                  Valuation{{"w1", {"p"}}, {"w3", {"q"}}});
}

PreModel improper() {
  Universe u({"a", "b"});
  const AgentSet a = set(u, "a"), b = set(u, "b"), ab = set(u, "ab");
  std::vector<Edge> e{{0, 0, {ab}}, {1, 1, {ab}}, {0, 1, {ab, a, b}}};
  return PreModel(u, {"w1", "w2"}, RelationMode::generated, e, Valuation{{"w1", {"p"}}, {"w2", {"p"}}});
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries{
      {"queue", "two processes enqueue concurrently and cannot tell whose value came first", "complex"},
      {"consensus", "critical state of a 3-process protocol; move_x marks who moved first", "complex"},
      {"dining", "dining cryptographers with pairwise shared coins; p: the employer paid", "complex"},
      {"subworld", "a complex containing the edge ab0 of abc0 as a world of its own", "complex"},
      {"nostd", "kappa-model without standard group knowledge", "kappa"},
      {"fig3", "proper delta-model used as translation input", "proper"},
      {"improper", "delta-model whose two worlds share all alive agent sets", "delta"},
  };
  return entries;
}

AnyModel load_example(const std::string& name) {
  if (name == "queue") return queue();
  if (name == "consensus") return consensus();
  if (name == "dining") return dining();
  if (name == "subworld") return subworld();
  if (name == "nostd") return nostd();
  if (name == "fig3") return fig3();
  if (name == "improper") return improper();
  throw std::invalid_argument("unknown example '" + name + "'");
}

}  // namespace synk
