#include "synk/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "synk/corpus.hpp"
#include "synk/json_io.hpp"
#include "synk/translate.hpp"
#include "synk/unravel.hpp"
#include "synk/verify.hpp"

namespace synk {

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t depth = 3;
  std::string model;
  std::string example;
  std::string formula;
  std::string world;
  bool all_worlds = false;
  bool strict = false;
  std::string level;
  std::size_t verify = 0;
  std::string order;
  std::string out_file;
  std::string mapping_file;
  std::string report_file;
  bool skip_gate = false;
  std::string scheme = "all";
  std::size_t trials = 1000;
  std::size_t agents = 3;
  std::size_t worlds = 4;
  std::string name;
};

AnyModel load(const Options& o) {
  if (!o.model.empty() && !o.example.empty()) throw UsageError("give either --model or --example");
  if (!o.example.empty()) return load_example(o.example);
  if (o.model.empty()) throw UsageError("a model is required (--model FILE or --example NAME)");
  return model_from_json(read_json_file(o.model));
}

PreModel load_kripke(const Options& o) {
  AnyModel m = load(o);
  if (auto* k = std::get_if<PreModel>(&m)) return *k;
  throw UsageError("this command needs a Kripke model");
}

const Structure& as_structure(const AnyModel& m) {
  if (auto* s = std::get_if<SimplicialModel>(&m)) return *s;
  return std::get<PreModel>(m);
}

FrameLevel parse_level(const std::string& s) {
  if (s == "kappa") return FrameLevel::kappa;
  if (s == "delta") return FrameLevel::delta;
  if (s == "proper") return FrameLevel::proper;
  throw UsageError("unknown level '" + s + "' (kappa, delta, proper)");
}

void emit(std::ostream& out, const Json& j) { out << canonical_dump(j); }

std::string describe_simplex(const Simplex& s, const Universe& u) {
  std::vector<Face> faces = s.faces;
  std::stable_sort(faces.begin(), faces.end(),
                   [](const Face& a, const Face& b) { return display_before(a.agents, b.agents); });
  std::string text = s.name + " = {";
  for (std::size_t i = 0; i < faces.size(); ++i) text += (i ? ", " : "") + format_face(faces[i], u);
  return text + "}";
}

std::string props_text(const std::set<std::string>& props) {
  std::string out;
  for (const auto& p : props) out += (out.empty() ? "" : ",") + p;
  return out.empty() ? "-" : out;
}

void describe_model(std::ostream& out, const AnyModel& m) {
  if (auto* s = std::get_if<SimplicialModel>(&m)) {
    for (std::size_t w = 0; w < s->world_count(); ++w) {
      auto it = s->valuation().find(s->world_name(w));
      out << "  " << describe_simplex(s->simplex(w), s->universe()) << "  "
          << props_text(it == s->valuation().end() ? std::set<std::string>{} : it->second) << "\n";
    }
    return;
  }
  const PreModel& k = std::get<PreModel>(m);
  const Universe& u = k.universe();
  for (std::size_t w = 0; w < k.world_count(); ++w) {
    out << "  " << k.world_name(w) << "  bar [" << u.format_pattern(bar(k, w)) << "]  "
        << props_text(k.props_at(w)) << "\n";
  }
  for (const Edge& e : k.edges()) {
    if (e.u == e.v) continue;
    out << "  " << k.world_name(e.u) << " ~[" << u.format_pattern(e.pattern) << "] " << k.world_name(e.v)
        << "\n";
  }
}

Json report_json(const FrameReport& r, const PreModel& m) {
  Json out;
  Json vs = Json::array();
  for (const Verdict& v : r.verdicts) {
    Json j;
    j["property"] = v.property;
    j["ok"] = v.ok ? Json(*v.ok) : Json(nullptr);
    if (v.ok && !*v.ok) {
      Json ws = Json::array();
      for (std::size_t w : v.worlds) ws.push_back(m.world_name(w));
      j["worlds"] = ws;
      Json ps = Json::array();
      for (const auto& g : v.patterns) ps.push_back(pattern_to_json(g, m.universe()));
      j["patterns"] = ps;
      j["witness"] = v.witness;
    }
    vs.push_back(j);
  }
  out["verdicts"] = vs;
  out["warnings"] = r.warnings;
  out["passed"] = r.passed();
  return out;
}

void report_text(std::ostream& out, const FrameReport& r) {
  for (const Verdict& v : r.verdicts) {
    out << (!v.ok ? "n/a " : *v.ok ? "ok  " : "FAIL") << "  " << v.property;
    if (v.ok && !*v.ok) out << ": " << v.witness;
    out << "\n";
  }
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

std::string level_name(FrameLevel l) {
  return l == FrameLevel::kappa ? "kappa" : l == FrameLevel::delta ? "delta" : "proper";
}

std::string level_noun(FrameLevel l) {
  return l == FrameLevel::proper ? "proper delta-model" : level_name(l) + "-model";
}

int cmd_validate(const Options& o, std::ostream& out) {
  if (!o.model.empty() && o.example.empty()) {
    Json j = read_json_file(o.model);
    if (j.is_object() && j.contains("simplices")) {
      SimplicialData d = simplicial_data_from_json(j);
      auto v = validate_complex(d.simplices, d.universe);
      if (v) {
        if (o.json) {
          emit(out, {{"valid", false}, {"condition", v->condition}, {"detail", v->detail}});
        } else {
          out << "invalid complex: " << v->condition << " violated: " << v->detail << "\n";
        }
        return kViolated;
      }
      SimplicialModel m(d.universe, d.simplices, d.valuation);
      if (o.json) {
        emit(out, {{"valid", true}, {"simplices", m.world_count()}});
      } else {
        out << "valid complex with " << m.world_count() << " simplices\n";
      }
      return kOk;
    }
  }
  AnyModel m = load(o);
  if (auto* s = std::get_if<SimplicialModel>(&m)) {
    if (o.json) {
      emit(out, {{"valid", true}, {"simplices", s->world_count()}});
    } else {
      out << "valid complex with " << s->world_count() << " simplices\n";
    }
    return kOk;
  }
  const PreModel& k = std::get<PreModel>(m);
  const FrameLevel level = parse_level(o.level.empty() ? "kappa" : o.level);
  FrameReport r = check_frame(k, level);
  if (o.json) {
    Json j = report_json(r, k);
    j["level"] = level_name(level);
    emit(out, j);
  } else {
    out << (r.passed() ? "valid " : "not a ") << level_noun(level) << "\n";
    report_text(out, r);
  }
  return r.passed() ? kOk : kViolated;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  AnyModel m = load(o);
  const Structure& s = as_structure(m);
  if (o.formula.empty()) throw UsageError("--formula is required");
  if (!o.world.empty() && o.all_worlds) throw UsageError("give either --world or --all-worlds");
  Formula f = parse_formula(o.formula, s.universe());
  Evaluator ev(s, o.strict);
  std::vector<std::size_t> worlds;
  if (!o.world.empty()) {
    auto w = s.world_index(o.world);
    if (!w) throw UsageError("unknown world '" + o.world + "'");
    worlds.push_back(*w);
  } else {
    for (std::size_t w = 0; w < s.world_count(); ++w) worlds.push_back(w);
  }
  const auto& ext = ev.extension(f);
  bool all = true;
  Json rows = Json::array();
  for (std::size_t w : worlds) {
    const bool h = ext[w] != 0;
    all = all && h;
    rows.push_back({{"world", s.world_name(w)}, {"holds", h}});
    if (!o.json) out << s.world_name(w) << "  " << (h ? "true" : "false") << "\n";
  }
  for (const auto& w : ev.warnings()) err << "warning: " << w << "\n";
  if (o.json) {
    emit(out, {{"formula", print_formula(f, s.universe())}, {"worlds", rows}, {"holds", all},
               {"warnings", ev.warnings()}});
  } else {
    out << print_formula(f, s.universe()) << (all ? " holds" : " fails") << "\n";
  }
  return all ? kOk : kViolated;
}

int cmd_props(const Options& o, std::ostream& out) {
  PreModel m = load_kripke(o);
  const FrameLevel level = parse_level(o.level.empty() ? "proper" : o.level);
  FrameReport r = check_frame(m, level);
  if (o.json) {
    Json j = report_json(r, m);
    j["level"] = level_name(level);
    emit(out, j);
  } else {
    report_text(out, r);
    out << (r.passed() ? "is a " : "is not a ") << level_noun(level) << "\n";
  }
  return r.passed() ? kOk : kViolated;
}

std::vector<std::size_t> parse_order(const std::string& text, const PreModel& m) {
  std::vector<std::size_t> order;
  if (text.empty()) return order;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto w = m.world_index(item);
    if (!w) throw UsageError("--order names unknown world '" + item + "'");
    order.push_back(*w);
  }
  if (order.size() != m.world_count()) throw UsageError("--order must list every world exactly once");
  return order;
}

Json certificate_json(const Certificate& c) {
  Json checks = Json::array();
  for (const CertCheck& k : c.checks) {
    Json j{{"id", k.id}, {"title", k.title}, {"ok", k.ok}};
    if (!k.ok) j["witness"] = k.witness;
    checks.push_back(j);
  }
  return {{"checks", checks}, {"suite_size", c.suite_size}, {"passed", c.passed()}};
}

int cmd_translate(const Options& o, std::ostream& out) {
  PreModel m = load_kripke(o);
  TranslateOptions opts;
  opts.skip_gate = o.skip_gate;
  opts.order = parse_order(o.order, m);
  Translation t;
  try {
    t = delta_translate(m, opts);
  } catch (const FrameError& e) {
    if (o.json) {
      emit(out, {{"translated", false}, {"error", e.what()}});
    } else {
      out << "cannot translate: " << e.what() << "\n";
    }
    return kViolated;
  }
  Json mapping(t.mapping);
  std::optional<Certificate> cert;
  if (o.verify > 0) cert = verify_translation(t, o.verify);
  Json complex = t.target ? simplicial_to_json(*t.target) : Json(nullptr);
  if (!o.out_file.empty() && t.target) write_text_file(o.out_file, canonical_dump(complex));
  if (!o.mapping_file.empty()) write_text_file(o.mapping_file, canonical_dump(mapping));
  if (!o.report_file.empty() && cert) write_text_file(o.report_file, canonical_dump(certificate_json(*cert)));
  if (o.json) {
    Json j{{"translated", t.target.has_value()}, {"complex", complex}, {"mapping", mapping}};
    if (!t.target) j["error"] = t.target_error;
    if (cert) j["certificate"] = certificate_json(*cert);
    emit(out, j);
  } else {
    for (std::size_t w = 0; w < m.world_count(); ++w) {
      out << m.world_name(w) << " -> " << describe_simplex(t.simplices[w], m.universe()) << "\n";
    }
    if (!t.target) out << "output is not a complex: " << t.target_error << "\n";
    if (cert) out << cert->text();
  }
  if (!t.target) return kViolated;
  return cert && !cert->passed() ? kViolated : kOk;
}

int cmd_unravel(const Options& o, std::ostream& out) {
  PreModel m = load_kripke(o);
  Unravelling u = unravel_model(m, o.depth);
  Json j = unravelling_to_json(u);
  if (!o.out_file.empty()) {
    write_text_file(o.out_file, canonical_dump(j));
    out << u.histories.size() << " histories, " << u.interior_worlds().size() << " interior\n";
  } else {
    emit(out, j);
  }
  return kOk;
}

int cmd_quotient(const Options& o, std::ostream& out, std::ostream& err) {
  PreModel m = load_kripke(o);
  QuotientResult q = quotient(m);
  for (const auto& d : q.diagnostics) err << "note: " << d << "\n";
  if (q.clash) {
    const std::string text = "quotient is not well defined: " + m.world_name(q.clash->w) + " and " +
                             m.world_name(q.clash->v) + " are equivalent but disagree on " +
                             q.clash->prop;
    if (o.json) {
      emit(out, {{"well_defined", false},
                 {"worlds", {m.world_name(q.clash->w), m.world_name(q.clash->v)}},
                 {"proposition", q.clash->prop}});
    } else {
      out << text << "\n";
    }
    return kViolated;
  }
  Json j = kripke_to_json(*q.model);
  if (!o.out_file.empty()) write_text_file(o.out_file, canonical_dump(j));
  if (o.json) {
    emit(out, {{"well_defined", true}, {"model", j}, {"diagnostics", q.diagnostics}});
  } else if (o.out_file.empty()) {
    emit(out, j);
  } else {
    out << m.world_count() << " worlds -> " << q.model->world_count() << " classes\n";
  }
  return kOk;
}

Json structure_json(const Structure& s) {
  if (auto* c = dynamic_cast<const SimplicialModel*>(&s)) return simplicial_to_json(*c);
  if (auto* k = dynamic_cast<const PreModel*>(&s)) return kripke_to_json(*k);
  return nullptr;
}

int cmd_soundness(const Options& o, std::ostream& out) {
  const std::string level = o.level.empty() ? "simplicial" : o.level;
  if (level != "simplicial" && level != "kappa") throw UsageError("--level must be simplicial or kappa");
  const ScanTarget target = level == "kappa" ? ScanTarget::kappa : ScanTarget::simplicial;
  std::vector<Scheme> schemes;
  if (o.scheme == "all") {
    schemes = target == ScanTarget::kappa ? syn_minus_schemes() : syn_schemes();
  } else {
    auto s = parse_scheme(o.scheme);
    if (!s) throw UsageError("unknown scheme '" + o.scheme + "'");
    schemes.push_back(*s);
  }
  std::shared_ptr<const Structure> fixed;
  if (!o.model.empty() || !o.example.empty()) {
    AnyModel m = load(o);
    if (auto* s = std::get_if<SimplicialModel>(&m)) {
      fixed = std::make_shared<SimplicialModel>(*s);
    } else {
      fixed = std::make_shared<PreModel>(std::get<PreModel>(m));
    }
  }
  GenParams p;
  p.seed = o.seed;
  p.agents = o.agents;
  p.worlds = o.worlds;
  try {
    check_params(p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool clean = true;
  Json rows = Json::array();
  for (Scheme s : schemes) {
    ScanResult r = fixed ? axiom_scan_on(s, fixed, o.seed, o.trials) : axiom_scan(s, p, o.trials, target);
    Json row{{"scheme", scheme_name(s)}, {"trials", r.trials}, {"counterexample", nullptr}};
    if (r.counterexample) {
      clean = false;
      const Counterexample& c = *r.counterexample;
      const Universe& u = c.model->universe();
      row["counterexample"] = {{"trial", c.trial},
                               {"world", c.model->world_name(c.world)},
                               {"instance", print_formula(c.instance, u)},
                               {"model", structure_json(*c.model)}};
      if (!o.json) {
        out << scheme_name(s) << ": counterexample in trial " << c.trial << " at "
            << c.model->world_name(c.world) << ": " << print_formula(c.instance, u) << "\n";
      }
    } else if (!o.json) {
      out << scheme_name(s) << ": no counterexample in " << r.trials << " trials\n";
    }
    rows.push_back(row);
  }
  if (o.json) {
    emit(out, {{"level", level}, {"seed", o.seed}, {"schemes", rows}, {"sound", clean}});
  }
  return clean ? kOk : kViolated;
}

int cmd_example(const Options& o, std::ostream& out) {
  if (o.name.empty() || o.name == "list") {
    for (const CorpusEntry& e : corpus()) out << e.name << "  (" << e.level << ")  " << e.description << "\n";
    return kOk;
  }
  AnyModel m = load_example(o.name);
  const std::string text = canonical_dump(model_to_json(m));
  if (!o.out_file.empty()) {
    write_text_file(o.out_file, text);
  } else if (o.json) {
    out << text;
  } else {
    out << o.name << ":\n";
    describe_model(out, m);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for the logic of synergistic knowledge", "synk"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--depth", o.depth, "Unravelling depth")->capture_default_str();

  auto model_opts = [&](CLI::App* c) {
    c->add_option("--model", o.model, "Model JSON file");
    c->add_option("--example", o.example, "Built-in example name");
  };
  CLI::App* validate = app.add_subcommand("validate", "Validate a complex or classify a Kripke model");
  model_opts(validate);
  validate->add_option("--level", o.level, "kappa, delta or proper");

  CLI::App* check = app.add_subcommand("check", "Evaluate a formula");
  model_opts(check);
  check->add_option("--formula", o.formula, "Formula text")->required();
  check->add_option("--world", o.world, "Evaluate at one world");
  check->add_flag("--all-worlds", o.all_worlds, "Evaluate at every world (default)");
  check->add_flag("--strict", o.strict, "Reject unknown propositions");

  CLI::App* props = app.add_subcommand("props", "Report the frame conditions of a Kripke model");
  model_opts(props);
  props->add_option("--level", o.level, "kappa, delta or proper (default proper)");

  CLI::App* translate = app.add_subcommand("translate", "Translate a proper delta-model into a complex");
  model_opts(translate);
  translate->add_option("--verify", o.verify, "Certify with the formula suite of this depth");
  translate->add_option("--order", o.order, "Enumeration as comma-separated world names");
  translate->add_option("--out", o.out_file, "Write the complex here");
  translate->add_option("--mapping", o.mapping_file, "Write the world-to-simplex mapping here");
  translate->add_option("--report", o.report_file, "Write the certificate here");
  translate->add_flag("--skip-gate", o.skip_gate, "Translate even if the input is not proper");

  CLI::App* unravel = app.add_subcommand("unravel", "Bounded unravelling of a kappa-model");
  model_opts(unravel);
  unravel->add_option("--out", o.out_file, "Write the unravelled model here");

  CLI::App* quot = app.add_subcommand("quotient", "Quotient of a delta-model by equivalence");
  model_opts(quot);
  quot->add_option("--out", o.out_file, "Write the quotient here");

  CLI::App* sound = app.add_subcommand("soundness", "Search for counterexamples to axiom instances");
  model_opts(sound);
  sound->add_option("--scheme", o.scheme, "Scheme name or all")->capture_default_str();
  sound->add_option("--trials", o.trials, "Instances per scheme")->capture_default_str();
  sound->add_option("--level", o.level, "simplicial or kappa (default simplicial)");
  sound->add_option("--agents", o.agents, "Maximum agents of generated models")->capture_default_str();
  sound->add_option("--worlds", o.worlds, "Maximum worlds of generated models")->capture_default_str();

  CLI::App* example = app.add_subcommand("example", "Print a built-in example");
  example->add_option("name", o.name, "Example name, or list");
  example->add_option("--out", o.out_file, "Write its canonical JSON here");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (check->parsed()) return cmd_check(o, out, err);
    if (props->parsed()) return cmd_props(o, out);
    if (translate->parsed()) return cmd_translate(o, out);
    if (unravel->parsed()) return cmd_unravel(o, out);
    if (quot->parsed()) return cmd_quotient(o, out, err);
    if (sound->parsed()) return cmd_soundness(o, out);
    if (example->parsed()) return cmd_example(o, out);
  } catch (const ParseError& e) {
    err << "error: formula: " << e.what() << "\n";
    return kUsage;
  } catch (const FrameError& e) {
    err << "error: " << e.what() << "\n";
    return kViolated;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace synk
