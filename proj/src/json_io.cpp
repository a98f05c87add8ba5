#include "synk/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace synk {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw ModelError("malformed model: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed("expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing \"") + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  return j;
}

Universe universe_from(const Json& j) {
  std::vector<std::string> names;
  for (const Json& a : as_array(field(j, "agents"), "\"agents\"")) names.push_back(as_string(a, "agent"));
  try {
    return Universe(std::move(names));
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
}

AgentSet set_from(const Json& j, const Universe& u) {
  std::vector<std::string> names;
  for (const Json& a : as_array(j, "agent set")) names.push_back(as_string(a, "agent"));
  if (names.empty()) malformed("empty agent set");
  try {
    return u.set_of(names);
  } catch (const std::invalid_argument& e) {
    malformed(e.what());
  }
}

Json set_to_json(AgentSet s, const Universe& u) { return Json(u.names_of(s)); }

std::map<std::string, std::set<std::string>> valuation_from(const Json& j) {
  std::map<std::string, std::set<std::string>> out;
  auto it = j.find("valuation");
  if (it == j.end()) return out;
  if (!it->is_object()) malformed("\"valuation\" must be an object");
  for (const auto& [world, props] : it->items()) {
    auto& dst = out[world];
    for (const Json& p : as_array(props, "valuation entry")) dst.insert(as_string(p, "proposition"));
  }
  return out;
}

Json valuation_to_json(const std::map<std::string, std::set<std::string>>& val) {
  Json out = Json::object();
  for (const auto& [world, props] : val) {
    if (!props.empty()) out[world] = Json(std::vector<std::string>(props.begin(), props.end()));
  }
  return out;
}

std::vector<AgentSet> display_sorted(std::vector<AgentSet> groups) {
  std::sort(groups.begin(), groups.end(), display_before);
  return groups;
}

}  // namespace

Json pattern_to_json(const AgentPattern& g, const Universe& u) {
  Json out = Json::array();
  for (AgentSet b : display_sorted(g.groups())) out.push_back(set_to_json(b, u));
  return out;
}

AgentPattern pattern_from_json(const Json& j, const Universe& u) {
  std::vector<AgentSet> groups;
  for (const Json& b : as_array(j, "pattern")) groups.push_back(set_from(b, u));
  return AgentPattern(std::move(groups));
}

SimplicialData simplicial_data_from_json(const Json& j) {
  SimplicialData d;
  d.universe = universe_from(j);
  for (const Json& s : as_array(field(j, "simplices"), "\"simplices\"")) {
    std::string name = s.contains("name") ? as_string(s["name"], "simplex name") : std::string();
    std::vector<Face> faces;
    for (const Json& f : as_array(field(s, "faces"), "\"faces\"")) {
      if (!f.is_array() || f.size() != 2 || !f[1].is_number_unsigned()) {
        malformed("a face is [agent-list, color] with a non-negative integer color");
      }
      std::vector<std::string> names;
      for (const Json& a : as_array(f[0], "face agents")) names.push_back(as_string(a, "agent"));
      AgentSet agents;
      try {
        agents = d.universe.set_of(names);
      } catch (const std::invalid_argument& e) {
        malformed(e.what());
      }
      faces.push_back(Face{agents, f[1].get<std::uint32_t>()});
    }
    const std::size_t listed = faces.size();
    Simplex x(std::move(name), std::move(faces));
    if (x.faces.size() != listed) {
      throw ModelError("S2 violated: simplex '" + x.name + "' lists a face twice");
    }
    d.simplices.push_back(std::move(x));
  }
  d.valuation = valuation_from(j);
  return d;
}

SimplicialModel simplicial_from_json(const Json& j) {
  SimplicialData d = simplicial_data_from_json(j);
  return SimplicialModel(std::move(d.universe), std::move(d.simplices), std::move(d.valuation));
}

Json simplicial_to_json(const SimplicialModel& m) {
  const Universe& u = m.universe();
  Json out;
  out["agents"] = u.names();
  Json simplices = Json::array();
  for (const Simplex& s : m.simplices()) {
    std::vector<Face> faces = s.faces;
    std::stable_sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
      if (a.agents != b.agents) return display_before(a.agents, b.agents);
      return a.color < b.color;
    });
    Json fs = Json::array();
    for (const Face& f : faces) fs.push_back(Json::array({set_to_json(f.agents, u), f.color}));
    simplices.push_back({{"name", s.name}, {"faces", fs}});
  }
  out["simplices"] = simplices;
  out["valuation"] = valuation_to_json(m.valuation());
  return out;
}

PreModel kripke_from_json(const Json& j) {
  Universe u = universe_from(j);
  std::vector<std::string> worlds;
  for (const Json& w : as_array(field(j, "worlds"), "\"worlds\"")) worlds.push_back(as_string(w, "world"));
  RelationMode mode = RelationMode::generated;
  if (j.contains("mode")) {
    const std::string m = as_string(j["mode"], "\"mode\"");
    if (m == "explicit") {
      mode = RelationMode::listed;
    } else if (m != "generated") {
      malformed("\"mode\" must be \"explicit\" or \"generated\"");
    }
  }
  auto index = [&](const Json& w) -> std::size_t {
    const std::string name = as_string(w, "world");
    auto it = std::find(worlds.begin(), worlds.end(), name);
    if (it == worlds.end()) throw ModelError("edge names unknown world '" + name + "'");
    return static_cast<std::size_t>(it - worlds.begin());
  };
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    for (const Json& e : as_array(j["edges"], "\"edges\"")) {
      AgentPattern g = pattern_from_json(field(e, "pattern"), u);
      for (const Json& p : as_array(field(e, "pairs"), "\"pairs\"")) {
        if (!p.is_array() || p.size() != 2) malformed("a pair is [world, world]");
        edges.push_back(Edge{index(p[0]), index(p[1]), g});
      }
    }
  }
  if (j.contains("selfloops")) {
    const Json& loops = j["selfloops"];
    if (!loops.is_object()) malformed("\"selfloops\" must be an object");
    for (const auto& [world, groups] : loops.items()) {
      const std::size_t w = index(Json(world));
      for (const Json& b : as_array(groups, "selfloop entry")) {
        edges.push_back(Edge{w, w, AgentPattern{set_from(b, u)}});
      }
    }
  }
  return PreModel(std::move(u), std::move(worlds), mode, std::move(edges), valuation_from(j));
}

Json kripke_to_json(const PreModel& m) {
  const Universe& u = m.universe();
  std::map<std::string, std::set<AgentSet>> loops;
  std::map<AgentPattern, std::set<std::pair<std::size_t, std::size_t>>> by_pattern;
  for (const Edge& e : m.edges()) {
    if (e.u == e.v && e.pattern.size() == 1) {
      loops[m.world_name(e.u)].insert(e.pattern.groups().front());
    } else {
      by_pattern[e.pattern].insert({e.u, e.v});
    }
  }
  Json out;
  out["agents"] = u.names();
  out["worlds"] = m.worlds();
  out["mode"] = m.mode() == RelationMode::listed ? "explicit" : "generated";
  Json edges = Json::array();
  for (const auto& [g, pairs] : by_pattern) {
    Json ps = Json::array();
    for (const auto& [a, b] : pairs) ps.push_back({m.world_name(a), m.world_name(b)});
    edges.push_back({{"pattern", pattern_to_json(g, u)}, {"pairs", ps}});
  }
  out["edges"] = edges;
  Json sl = Json::object();
  for (const auto& [w, groups] : loops) {
    Json gs = Json::array();
    for (AgentSet b : display_sorted({groups.begin(), groups.end()})) gs.push_back(set_to_json(b, u));
    sl[w] = gs;
  }
  out["selfloops"] = sl;
  out["valuation"] = valuation_to_json(m.valuation());
  return out;
}

Json unravelling_to_json(const Unravelling& un) {
  Json out = kripke_to_json(un.model);
  Json interior = Json::array();
  for (std::size_t w : un.interior_worlds()) interior.push_back(un.model.world_name(w));
  out["interior"] = interior;
  return out;
}

AnyModel model_from_json(const Json& j) {
  if (!j.is_object()) malformed("expected an object");
  if (j.contains("simplices")) return simplicial_from_json(j);
  if (j.contains("worlds")) return kripke_from_json(j);
  malformed("neither \"simplices\" nor \"worlds\" present");
}

Json model_to_json(const AnyModel& m) {
  if (auto* s = std::get_if<SimplicialModel>(&m)) return simplicial_to_json(*s);
  return kripke_to_json(std::get<PreModel>(m));
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

}  // namespace synk
