// relkit command line front end.
//
// Every subcommand builds a JSON report first; the human-readable text is
// rendered from that report. Exit codes: check 0 holds / 1 refuted /
// 2 truncated; find-terms 0 found / 1 absent / 2 inconclusive; verify 0 when
// everything replays, 1 otherwise; 3 for usage and input errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "relkit/freeclone.hpp"
#include "relkit/identities.hpp"
#include "relkit/io.hpp"
#include "relkit/maltsev.hpp"
#include "relkit/relations.hpp"

using json = nlohmann::ordered_json;
using namespace relkit;

namespace {

constexpr int kExitError = 3;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error("expected a comma separated integer list, got '" + text + "'");
    }
  }
  return out;
}

std::map<std::string, RelClass> parse_classes(const std::string& text) {
  std::map<std::string, RelClass> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("--classes expects name=class entries, got '" + item + "'");
    auto cls = class_from_prefix(item.substr(eq + 1));
    if (!cls) throw Error("unknown class '" + item.substr(eq + 1) + "'");
    out[item.substr(0, eq)] = *cls;
  }
  return out;
}

json algebra_json(const std::string& source, const FiniteAlgebra& a) {
  return json{{"source", source}, {"size", a.size()}, {"fingerprint", a.fingerprint()}};
}

json binding_json(const Variable& v, const Binding& b) {
  json j{{"var", v.name}, {"class", class_prefix(v.cls)}};
  if (is_union_class(v.cls)) {
    json comps = json::array();
    for (const BinRel& c : b.components) comps.push_back(c.to_string());
    j["components"] = comps;
  }
  j["union"] = b.relation.to_string();
  return j;
}

Binding binding_from_json(std::size_t n, const json& j) {
  Binding b;
  b.relation = parse_pair_list(n, j.at("union").get<std::string>());
  if (j.contains("components")) {
    for (const auto& c : j.at("components")) b.components.push_back(parse_pair_list(n, c.get<std::string>()));
  } else {
    b.components.push_back(b.relation);
  }
  return b;
}

const char* yes_no(const json& b) { return b.get<bool>() ? "yes" : "no"; }

json system_json(const TermSystem& s) {
  json terms = json::array();
  for (const NamedTerm& t : s.terms) {
    terms.push_back({{"name", t.name}, {"arity", t.arity}, {"term", t.term.to_string()}});
  }
  json cert = json::array();
  for (const Equation& e : s.certificate) {
    cert.push_back({{"label", e.label}, {"lhs", e.lhs.to_string()}, {"rhs", e.rhs.to_string()}});
  }
  json j{{"schema", s.schema}, {"length", s.length}};
  if (!s.f.empty()) j["f"] = s.f;
  j["terms"] = terms;
  j["certificate"] = cert;
  return j;
}

struct Common {
  std::string caps;
  std::string report;
  bool allow_truncated = false;

  Caps resolve_caps() const {
    Caps c = Caps::from_env();
    if (!caps.empty()) c.apply(caps);
    return c;
  }
};

void write_report(const Common& common, const json& report) {
  if (common.report.empty()) return;
  std::ofstream out(common.report);
  if (!out) throw Error("cannot write report '" + common.report + "'");
  out << report.dump(2) << '\n';
}

// ------------------------------------------------------------------ render

void render_verdict(std::ostream& os, const json& v) {
  os << "verdict: " << v.at("verdict").get<std::string>() << '\n';
  if (v.contains("candidates")) {
    os << "candidates:";
    for (const auto& [k, c] : v.at("candidates").items()) os << ' ' << k << '=' << c.get<std::size_t>();
    os << '\n';
  }
  if (v.contains("assignments_checked")) {
    os << "assignments checked: " << v.at("assignments_checked").get<std::uint64_t>() << '\n';
  }
  for (const auto& note : v.value("coverage", json::array())) os << "coverage: " << note.get<std::string>() << '\n';
  if (v.contains("counterexample")) {
    os << "counterexample:\n";
    for (const auto& b : v.at("counterexample")) {
      os << "  " << b.at("var").get<std::string>() << " (" << b.at("class").get<std::string>() << ")";
      if (b.contains("components")) {
        os << " = union of\n";
        for (const auto& c : b.at("components")) os << "      " << c.get<std::string>() << '\n';
      } else {
        os << " = " << b.at("union").get<std::string>() << '\n';
      }
    }
    if (v.contains("witness")) {
      const auto& w = v.at("witness");
      os << "witness pair: (" << w[0].get<int>() << ',' << w[1].get<int>() << ")\n";
    }
  }
}

void render_system(std::ostream& os, const json& s) {
  os << "schema " << s.at("schema").get<std::string>() << ", length " << s.at("length").get<int>();
  if (s.contains("f")) {
    os << ", f = (";
    bool first = true;
    for (const auto& v : s.at("f")) {
      os << (first ? "" : ",") << v.get<int>();
      first = false;
    }
    os << ')';
  }
  os << '\n';
  for (const auto& t : s.at("terms")) {
    os << "  " << t.at("name").get<std::string>() << " = " << t.at("term").get<std::string>() << '\n';
  }
}

void render(std::ostream& os, const json& r) {
  const std::string cmd = r.at("command").at(0).get<std::string>();
  if (r.contains("algebra")) {
    const auto& a = r.at("algebra");
    os << "algebra: " << a.at("source").get<std::string>() << " (size " << a.at("size").get<std::size_t>()
       << ", " << a.at("fingerprint").get<std::string>() << ")\n";
  }
  if (cmd == "check") {
    os << "spec: " << r.at("spec").get<std::string>() << '\n';
    render_verdict(os, r.at("result"));
    if (r.contains("free_instance")) {
      const auto& f = r.at("free_instance");
      os << "free instance (|F(3)| = " << f.at("free_size").get<std::size_t>()
         << "): (x,z) in rhs: " << (f.at("rhs_contains_xz").get<bool>() ? "yes" : "no") << '\n';
    }
  } else if (cmd == "find-terms") {
    const auto& res = r.at("result");
    os << "status: " << res.at("status").get<std::string>() << '\n';
    if (res.contains("note") && !res.at("note").get<std::string>().empty()) {
      os << "note: " << res.at("note").get<std::string>() << '\n';
    }
    if (res.contains("system")) render_system(os, res.at("system"));
    if (res.contains("left")) {
      os << "left: " << yes_no(res.at("left")) << ", right: " << yes_no(res.at("right"))
         << ", side: " << res.at("side").get<std::string>() << '\n';
    }
    if (res.contains("observation")) os << "observation: " << res.at("observation").get<std::string>() << '\n';
  } else if (cmd == "free-algebra") {
    const auto& res = r.at("result");
    os << "arity " << res.at("arity").get<int>() << ": " << res.at("elements").get<std::size_t>()
       << " elements, " << (res.at("complete").get<bool>() ? "complete" : "stopped at cap") << ", "
       << res.at("rounds").get<int>() << " rounds\n";
  } else if (cmd == "congruences") {
    const auto& res = r.at("result");
    os << res.at("count").get<std::size_t>() << ' ' << res.at("kind").get<std::string>() << " relations"
       << (res.at("complete").get<bool>() ? "" : " (incomplete)") << '\n';
    for (const auto& e : res.at("relations")) {
      os << "  [" << e.at("index").get<std::size_t>() << "] " << e.at("pairs").get<std::string>() << '\n';
    }
    os << "covers (lower < upper):\n";
    for (const auto& c : res.at("covers")) os << "  " << c[0].get<int>() << " < " << c[1].get<int>() << '\n';
    os << res.at("hasse").get<std::string>();
  } else if (cmd == "expansions") {
    const auto& res = r.at("result");
    os << res.at("count").get<std::size_t>() << " expansions of " << res.at("source").get<std::string>() << '\n';
    for (const auto& e : res.at("expansions")) {
      os << "  " << e.at("spec").get<std::string>();
      if (e.contains("verdict")) os << "  -> " << e.at("verdict").get<std::string>();
      os << '\n';
    }
    if (res.contains("source_verdict")) {
      os << "source verdict: " << res.at("source_verdict").get<std::string>()
         << "; any expansion holds: " << yes_no(res.at("any_holds")) << "; agree: " << yes_no(res.at("agree"))
         << '\n';
    }
  } else if (cmd == "search-mainp") {
    for (const auto& row : r.at("result").at("algebras")) {
      os << row.at("name").get<std::string>() << " (" << row.at("fingerprint").get<std::string>()
         << "): distributive " << row.at("distributive").get<std::string>() << '\n';
      for (const auto& v : row.at("variants")) {
        os << "  " << v.at("variant").get<std::string>() << ": " << v.at("verdict").get<std::string>() << '\n';
      }
      for (const auto& o : row.at("observations")) os << "  observation: " << o.get<std::string>() << '\n';
    }
  }
}

// ---------------------------------------------------------------- commands

struct SpecFlags {
  int h = 2, k = 2, m = 2, n = 2;
  std::string f;
  bool weak = false;
  bool eq = false;
  std::string classes;

  BuiltinParams params() const {
    BuiltinParams p;
    p.h = h;
    p.k = k;
    p.m = m;
    p.n = n;
    p.f = parse_int_list(f);
    p.weak = weak;
    p.equality = eq;
    return p;
  }
  IdentitySpec resolve(const std::string& text) const {
    IdentitySpec spec = resolve_spec(text, params());
    if (!classes.empty()) spec = with_classes(std::move(spec), parse_classes(classes));
    return spec;
  }
};

void add_spec_flags(CLI::App* cmd, SpecFlags& s) {
  cmd->add_option("--h", s.h, "h parameter");
  cmd->add_option("--k", s.k, "k parameter");
  cmd->add_option("--m", s.m, "m parameter");
  cmd->add_option("--n", s.n, "n parameter");
  cmd->add_option("--f", s.f, "f as a comma separated list over {1,2}");
  cmd->add_flag("--weak", s.weak, "congruence variant of the builtin");
  cmd->add_flag("--eq", s.eq, "equality form of the builtin");
  cmd->add_option("--classes", s.classes, "override classes, e.g. Theta=adm,sigma=u2");
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--caps", c.caps, "cap overrides key=value,...");
  cmd->add_option("--report", c.report, "write the JSON report to this file");
}

struct CheckArgs {
  std::string algebra;
  std::string spec;
  SpecFlags flags;
  std::string strategy = "exhaustive";
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  unsigned jobs = 1;
  bool theta_congruence = false;
  bool free = false;
};

CheckOptions check_options(const CheckArgs& a, const Caps& caps) {
  CheckOptions o;
  if (a.strategy == "exhaustive") {
    o.strategy = Strategy::Exhaustive;
  } else if (a.strategy == "generated") {
    o.strategy = Strategy::Generated;
  } else if (a.strategy == "sampled") {
    o.strategy = Strategy::Sampled;
  } else {
    throw Error("unknown strategy '" + a.strategy + "'");
  }
  o.seed = a.seed;
  o.samples = a.samples;
  o.jobs = std::max(1u, a.jobs);
  o.caps = caps;
  o.theta_congruence = a.theta_congruence;
  return o;
}

const char* verdict_code(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "holds";
    case VerdictStatus::Refuted: return "refuted";
    case VerdictStatus::NoCounterexampleTruncated: return "truncated";
  }
  return "?";
}

json verdict_json(const IdentitySpec& spec, const Verdict& v) {
  json j{{"verdict", verdict_code(v.status)}};
  json counts = json::object();
  for (std::size_t i = 0; i < spec.vars.size() && i < v.candidate_counts.size(); ++i) {
    counts[spec.vars[i].name] = v.candidate_counts[i];
  }
  j["candidates"] = counts;
  j["assignments_checked"] = v.assignments_checked;
  j["coverage"] = v.coverage_notes;
  if (v.refuted()) {
    json ce = json::array();
    for (std::size_t i = 0; i < spec.vars.size(); ++i) ce.push_back(binding_json(spec.vars[i], v.counterexample[i]));
    j["counterexample"] = ce;
    if (v.witness) j["witness"] = {v.witness->first, v.witness->second};
    j["lhs"] = v.lhs.to_string();
    j["rhs"] = v.rhs.to_string();
  }
  return j;
}

int run_check(const CheckArgs& a, const Common& common, json& report) {
  const Caps caps = common.resolve_caps();
  FiniteAlgebra A = load_algebra(a.algebra);
  IdentitySpec spec = a.flags.resolve(a.spec);
  Verdict v = check_for_all(A, spec, check_options(a, caps));
  report["algebra"] = algebra_json(a.algebra, A);
  report["spec_name"] = spec.name;
  report["spec"] = to_literal(spec);
  report["result"] = verdict_json(spec, v);
  if (a.free) {
    FreeInstance fi = free_instance(A, spec, caps);
    report["free_instance"] = {{"free_size", fi.free_size},
                               {"lhs_contains_xz", fi.lhs_contains_xz},
                               {"rhs_contains_xz", fi.rhs_contains_xz}};
  }
  if (v.holds()) return 0;
  if (v.refuted()) return 1;
  return common.allow_truncated ? 0 : 2;
}

struct FindArgs {
  std::string algebra;
  std::string schema;
  int max = 8;
  int h = 2;
  int k = 2;
  std::string f = "1,2";
  std::string g = "2,1";
  std::string emit;
};

int run_find(const FindArgs& a, const Common& common, json& report) {
  const Caps caps = common.resolve_caps();
  FiniteAlgebra A = load_algebra(a.algebra);
  report["algebra"] = algebra_json(a.algebra, A);
  SearchOptions so{caps};
  json res;
  if (a.schema == "slmore") {
    Dichotomy d = slmore_dichotomy(A, a.k, caps);
    res = {{"status", d.conclusive ? "conclusive" : "inconclusive"},
           {"k", a.k},
           {"left", d.left},
           {"right", d.right},
           {"side", to_string(d.side)}};
    report["result"] = res;
    return d.conclusive ? 0 : 2;
  }
  if (a.schema == "mal-experiment") {
    CheckOptions co;
    co.caps = caps;
    MalExperiment e = mal_implication_experiment(A, parse_int_list(a.f), parse_int_list(a.g), co);
    res = {{"status", "done"},
           {"f", e.f},
           {"g", e.g},
           {"f_variations", variation_count(e.f)},
           {"g_variations", variation_count(e.g)},
           {"f_verdict", verdict_code(e.f_status)},
           {"g_verdict", verdict_code(e.g_status)},
           {"observation", e.observation}};
    report["result"] = res;
    return 0;
  }
  SearchResult r;
  if (a.schema == "jonsson") {
    r = find_jonsson(A, a.max, so);
  } else if (a.schema == "directed") {
    r = find_directed_jonsson(A, a.max, so);
  } else if (a.schema == "majority") {
    r = find_majority(A, so);
  } else if (a.schema == "pixley") {
    r = find_pixley(A, so);
  } else if (a.schema == "vr") {
    r = find_vr(A, a.h, so);
  } else if (a.schema == "mal") {
    r = find_mal(A, a.h, so);
  } else {
    throw Error("unknown schema '" + a.schema +
                "' (jonsson, directed, majority, pixley, vr, mal, slmore, mal-experiment)");
  }
  const char* status = r.found() ? "found" : r.conclusive ? "absent" : "inconclusive";
  res["status"] = status;
  res["note"] = r.note;
  if (r.found()) {
    res["system"] = system_json(*r.system);
    res["replay_failures"] = replay(A, *r.system);
  }
  report["result"] = res;
  if (a.emit == "cert" && r.found()) {
    for (const Equation& e : r.system->certificate) {
      std::cout << e.lhs.to_string() << " = " << e.rhs.to_string() << "    # " << e.label << '\n';
    }
  } else if (!a.emit.empty() && a.emit != "cert") {
    throw Error("--emit accepts only 'cert'");
  }
  return r.found() ? 0 : r.conclusive ? 1 : 2;
}

int run_free(const std::string& source, int arity, std::size_t cap, bool dump, const Common& common,
             json& report) {
  const Caps caps = common.resolve_caps();
  FiniteAlgebra A = load_algebra(source);
  report["algebra"] = algebra_json(source, A);
  Clone c = generate_clone(A, arity, cap ? cap : caps.clone_cap(arity));
  json res{{"arity", arity}, {"elements", c.size()}, {"complete", c.complete()}, {"rounds", c.rounds()}};
  json terms = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) terms.push_back(c.witness(i).to_string());
  res["terms"] = terms;
  report["result"] = res;
  if (dump) std::cout << c.dump();
  return c.complete() ? 0 : 2;
}

std::string hasse_text(const std::vector<BinRel>& rels, const std::vector<std::pair<int, int>>& covers) {
  // Rank by longest chain from the bottom, then print one line per rank.
  std::vector<int> rank(rels.size(), 0);
  for (std::size_t i = 0; i < rels.size(); ++i) {
    for (const auto& [lo, hi] : covers) {
      if (static_cast<std::size_t>(hi) == i) rank[i] = std::max(rank[i], rank[static_cast<std::size_t>(lo)] + 1);
    }
  }
  const int top = rels.empty() ? -1 : *std::max_element(rank.begin(), rank.end());
  std::ostringstream os;
  for (int r = top; r >= 0; --r) {
    os << "  level " << r << ':';
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (rank[i] != r) continue;
      os << " [" << i << ']';
      std::vector<int> below;
      for (const auto& [lo, hi] : covers) {
        if (static_cast<std::size_t>(hi) == i) below.push_back(lo);
      }
      if (!below.empty()) {
        os << "<";
        for (std::size_t b = 0; b < below.size(); ++b) os << (b ? "," : "") << below[b];
        os << ">";
      }
    }
    os << '\n';
  }
  return os.str();
}

int run_congruences(const std::string& source, const std::string& kind_name, const Common& common,
                    json& report) {
  const Caps caps = common.resolve_caps();
  FiniteAlgebra A = load_algebra(source);
  report["algebra"] = algebra_json(source, A);
  RelationKind kind = RelationKind::Congruence;
  if (kind_name == "tolerance") {
    kind = RelationKind::Tolerance;
  } else if (kind_name == "admissible") {
    kind = RelationKind::ReflexiveAdmissible;
  } else if (kind_name != "congruence") {
    throw Error("unknown kind '" + kind_name + "' (congruence, tolerance, admissible)");
  }
  EnumerationOptions eo;
  eo.threshold = caps.exhaustive_threshold;
  eo.seed_size = caps.seed_size;
  eo.cap = caps.candidates;
  Enumeration e = enumerate(A, kind, eo);
  // Covers among relations ordered by inclusion.
  std::vector<std::pair<int, int>> covers;
  const auto& R = e.relations;
  for (std::size_t i = 0; i < R.size(); ++i) {
    for (std::size_t j = 0; j < R.size(); ++j) {
      if (i == j || !(R[i].subset_of(R[j])) || R[i] == R[j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < R.size() && cover; ++k) {
        if (k == i || k == j) continue;
        if (R[i].subset_of(R[k]) && R[k].subset_of(R[j])) cover = false;
      }
      if (cover) covers.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  json rels = json::array();
  for (std::size_t i = 0; i < R.size(); ++i) rels.push_back({{"index", i}, {"pairs", R[i].to_string()}});
  json cv = json::array();
  for (const auto& [lo, hi] : covers) cv.push_back({lo, hi});
  report["result"] = {{"kind", to_string(kind)}, {"count", R.size()},      {"complete", e.complete},
                      {"note", e.note},          {"relations", rels},      {"covers", cv},
                      {"hasse", hasse_text(R, covers)}};
  return e.complete ? 0 : 2;
}

int run_expansions(const std::string& text, const SpecFlags& flags, const std::string& on,
                   const CheckArgs& check, const Common& common, json& report) {
  IdentitySpec spec = flags.resolve(text);
  std::vector<Expansion> ex = enumerate_expansions(spec);
  json list = json::array();
  for (const Expansion& e : ex) list.push_back({{"spec", to_literal(e.spec)}});
  json res{{"source", to_literal(spec)}, {"count", ex.size()}};
  int code = 0;
  if (!on.empty()) {
    const Caps caps = common.resolve_caps();
    FiniteAlgebra A = load_algebra(on);
    report["algebra"] = algebra_json(on, A);
    ExpansionCheck c = check_any_expansion(A, spec, check_options(check, caps));
    for (std::size_t i = 0; i < ex.size(); ++i) list[i]["verdict"] = verdict_code(c.expansions[i].status);
    res["source_verdict"] = verdict_code(c.source.status);
    res["any_holds"] = c.any_holds;
    res["agree"] = c.agree;
    code = c.agree ? 0 : 1;
  }
  res["expansions"] = list;
  report["result"] = res;
  return code;
}

// ------------------------------------------------------------- search-mainp

FiniteAlgebra random_algebra(std::mt19937_64& rng, std::size_t n) {
  Operation op{"f", 2, std::vector<Element>(n * n)};
  for (Element& v : op.table) v = static_cast<Element>(rng() % n);
  return FiniteAlgebra(n, {op});
}

int run_mainp(std::size_t random_count, std::uint64_t seed, std::size_t max_size, const Common& common,
              json& report) {
  const Caps caps = common.resolve_caps();
  std::vector<std::pair<std::string, FiniteAlgebra>> algebras;
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_directory())) {
    if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  for (const std::string& n : names) {
    FiniteAlgebra A = load_algebra(n);
    if (A.size() <= max_size) algebras.emplace_back(n, std::move(A));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) {
    const std::size_t n = 2 + rng() % 2;
    algebras.emplace_back("random" + std::to_string(i), random_algebra(rng, n));
  }
  // Theta replaced by a reflexive admissible or U-admissible relation.
  struct Variant {
    std::string label;
    std::string builtin;
    std::map<std::string, RelClass> classes;
  };
  const std::vector<Variant> variants{
      {"cdist2(h=2), Theta admissible", "cdist2", {{"Theta", RelClass::ReflexiveAdmissible}}},
      {"cdist2(h=2), Theta U-admissible", "cdist2", {{"Theta", RelClass::UAdmissible}}},
      {"cor2, Theta admissible", "cor2", {{"Theta", RelClass::ReflexiveAdmissible}}},
      {"modular2(k=2), Theta admissible", "modular2", {{"Theta", RelClass::ReflexiveAdmissible}}},
  };
  CheckOptions co;
  co.caps = caps;
  json rows = json::array();
  for (const auto& [name, A] : algebras) {
    json row{{"name", name}, {"fingerprint", A.fingerprint()}, {"size", A.size()}};
    SearchResult j = find_jonsson(A, 8, SearchOptions{caps});
    const std::string dist = j.found() ? "yes (k=" + std::to_string(j.system->length) + ")"
                             : j.conclusive ? "no"
                                            : "unknown";
    row["distributive"] = dist;
    json vs = json::array();
    json obs = json::array();
    for (const Variant& v : variants) {
      std::string verdict;
      try {
        IdentitySpec spec = with_classes(builtin(v.builtin), v.classes);
        verdict = verdict_code(check_for_all(A, spec, co).status);
      } catch (const Error& e) {
        verdict = std::string("error: ") + e.what();
      }
      vs.push_back({{"variant", v.label}, {"verdict", verdict}});
      if (j.found() && verdict == "refuted" && v.builtin != "modular2") {
        obs.push_back(v.label + " fails on an algebra of a distributive variety");
      }
      if (!j.found() && j.conclusive && verdict == "holds" && v.builtin != "modular2") {
        obs.push_back(v.label + " holds on A although HSP(A) is not distributive (A-level check only)");
      }
    }
    row["variants"] = vs;
    row["observations"] = obs;
    rows.push_back(row);
  }
  report["result"] = {{"random", random_count}, {"seed", seed}, {"algebras", rows}};
  return 0;
}

// ------------------------------------------------------------------ verify

int run_verify(const std::string& path, const Common& common) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read report '" + path + "'");
  json r = json::parse(in);
  const std::string cmd = r.at("command").at(0).get<std::string>();
  const auto& alg = r.at("algebra");
  FiniteAlgebra A = load_algebra(alg.at("source").get<std::string>());
  if (A.fingerprint() != alg.at("fingerprint").get<std::string>()) {
    throw Error("stale algebra fingerprint: report has " + alg.at("fingerprint").get<std::string>() +
                ", file has " + A.fingerprint());
  }
  (void)common;
  if (cmd == "check") {
    const auto& res = r.at("result");
    if (!res.contains("counterexample")) {
      std::cout << "nothing to replay (" << res.at("verdict").get<std::string>() << ")\n";
      return 0;
    }
    IdentitySpec spec = parse_spec(r.at("spec").get<std::string>());
    std::vector<Binding> bindings;
    const auto& ce = res.at("counterexample");
    if (ce.size() != spec.vars.size()) throw Error("counterexample does not bind every variable");
    for (std::size_t i = 0; i < spec.vars.size(); ++i) {
      if (ce[i].at("var").get<std::string>() != spec.vars[i].name) throw Error("counterexample variable order");
      bindings.push_back(binding_from_json(A.size(), ce[i]));
      try {
        check_binding(A, spec.vars[i], bindings.back());
      } catch (const Error& e) {
        std::cout << "replay failed: " << e.what() << '\n';
        return 1;
      }
    }
    Evaluation ev = evaluate(A, spec, bindings);
    if (ev.satisfied) {
      std::cout << "replay failed: the assignment satisfies the identity\n";
      return 1;
    }
    if (res.contains("witness")) {
      const auto a = res.at("witness")[0].get<Element>();
      const auto b = res.at("witness")[1].get<Element>();
      const bool in_l = a < A.size() && b < A.size() && ev.lhs.contains(a, b);
      const bool in_r = a < A.size() && b < A.size() && ev.rhs.contains(a, b);
      if (in_l == in_r) {
        std::cout << "replay failed: witness pair does not separate the sides\n";
        return 1;
      }
    }
    std::cout << "counterexample replays\n";
    return 0;
  }
  if (cmd == "find-terms") {
    const auto& res = r.at("result");
    if (!res.contains("system")) {
      std::cout << "nothing to replay (" << res.at("status").get<std::string>() << ")\n";
      return 0;
    }
    // The equations are rebuilt from the terms; the stored ones must match.
    const auto& js = res.at("system");
    TermSystem sys;
    sys.schema = js.at("schema").get<std::string>();
    sys.length = js.at("length").get<int>();
    if (js.contains("f")) sys.f = js.at("f").get<std::vector<int>>();
    for (const auto& t : js.at("terms")) {
      sys.terms.push_back({t.at("name").get<std::string>(), Term::parse(t.at("term").get<std::string>()),
                           t.at("arity").get<int>()});
    }
    sys.certificate = schema_certificate(sys);
    const auto& stored = js.at("certificate");
    bool same = stored.size() == sys.certificate.size();
    for (std::size_t i = 0; same && i < stored.size(); ++i) {
      const Equation& e = sys.certificate[i];
      same = stored[i].at("label").get<std::string>() == e.label &&
             Term::parse(stored[i].at("lhs").get<std::string>()) == e.lhs &&
             Term::parse(stored[i].at("rhs").get<std::string>()) == e.rhs;
    }
    if (!same) {
      std::cout << "stored certificate does not match the terms\n";
      return 1;
    }
    auto failed = replay(A, sys);
    if (!failed.empty()) {
      for (const auto& f : failed) std::cout << "equation fails: " << f << '\n';
      return 1;
    }
    std::cout << "certificate replays (" << sys.certificate.size() << " equations)\n";
    return 0;
  }
  throw Error("verify handles check and find-terms reports, not '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relkit: admissible and U-admissible relation identities on finite algebras"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  Common common;

  CheckArgs check;
  auto* c_check = app.add_subcommand("check", "quantify an identity over its relation classes");
  c_check->add_option("algebra", check.algebra, "fixture name or JSON file")->required();
  c_check->add_option("spec", check.spec, "builtin name or literal")->required();
  add_spec_flags(c_check, check.flags);
  c_check->add_option("--strategy", check.strategy, "exhaustive, generated or sampled");
  c_check->add_option("--seed", check.seed, "sampling seed");
  c_check->add_option("--samples", check.samples, "number of sampled assignments");
  c_check->add_option("--jobs", check.jobs, "worker threads");
  c_check->add_flag("--theta-congruence", check.theta_congruence, "quantify tolerances over congruences");
  c_check->add_flag("--free", check.free, "also evaluate the generic instance in F(3)");
  c_check->add_flag("--allow-truncated", common.allow_truncated, "exit 0 on truncated coverage");
  add_common(c_check, common);

  FindArgs find;
  auto* c_find = app.add_subcommand("find-terms", "search the term clone for a term system");
  c_find->add_option("algebra", find.algebra, "fixture name or JSON file")->required();
  c_find->add_option("schema", find.schema,
                     "jonsson, directed, majority, pixley, vr, mal, slmore, mal-experiment")
      ->required();
  c_find->add_option("--max", find.max, "bound for jonsson and directed");
  c_find->add_option("--h", find.h, "chain length for vr and mal");
  c_find->add_option("--k", find.k, "k for slmore");
  c_find->add_option("--f", find.f, "f for mal-experiment");
  c_find->add_option("--g", find.g, "second function for mal-experiment");
  c_find->add_option("--emit", find.emit, "'cert' prints the equation certificate");
  add_common(c_find, common);

  std::string free_src;
  int free_arity = 3;
  std::size_t free_cap = 0;
  bool free_dump = false;
  auto* c_free = app.add_subcommand("free-algebra", "generate the k-ary term clone");
  c_free->add_option("algebra", free_src, "fixture name or JSON file")->required();
  c_free->add_option("--arity", free_arity);
  c_free->add_option("--cap", free_cap);
  c_free->add_flag("--dump", free_dump, "print the clone dump");
  add_common(c_free, common);

  std::string cong_src;
  std::string cong_kind = "congruence";
  auto* c_cong = app.add_subcommand("congruences", "list congruences with their covering relation");
  c_cong->add_option("algebra", cong_src, "fixture name or JSON file")->required();
  c_cong->add_option("--kind", cong_kind, "congruence, tolerance or admissible");
  add_common(c_cong, common);

  std::string exp_spec;
  std::string exp_on;
  SpecFlags exp_flags;
  CheckArgs exp_check;
  auto* c_exp = app.add_subcommand("expansions", "list the expansions of a U-variable inclusion");
  c_exp->add_option("spec", exp_spec)->required();
  c_exp->add_option("--on", exp_on, "also check every expansion on this algebra");
  c_exp->add_option("--jobs", exp_check.jobs);
  add_spec_flags(c_exp, exp_flags);
  add_common(c_exp, common);

  std::string verify_path;
  auto* c_verify = app.add_subcommand("verify", "replay a report");
  c_verify->add_option("report", verify_path)->required();

  std::size_t mainp_random = 4;
  std::uint64_t mainp_seed = 1;
  std::size_t mainp_max = 4;
  auto* c_mainp = app.add_subcommand("search-mainp", "look at Theta-variants on small algebras");
  c_mainp->add_option("--random", mainp_random, "number of random algebras");
  c_mainp->add_option("--seed", mainp_seed);
  c_mainp->add_option("--max-size", mainp_max, "largest bundled algebra to include");
  add_common(c_mainp, common);

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; usage errors share the error exit code.
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  json report;
  std::vector<std::string> echo;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--report" && i + 1 < argc) {
      ++i;
      continue;
    }
    echo.push_back(arg);
  }
  report["command"] = echo;
  try {
    int code = 0;
    if (*c_check) {
      code = run_check(check, common, report);
    } else if (*c_find) {
      code = run_find(find, common, report);
    } else if (*c_free) {
      code = run_free(free_src, free_arity, free_cap, free_dump, common, report);
    } else if (*c_cong) {
      code = run_congruences(cong_src, cong_kind, common, report);
    } else if (*c_exp) {
      code = run_expansions(exp_spec, exp_flags, exp_on, exp_check, common, report);
    } else if (*c_verify) {
      return run_verify(verify_path, common);
    } else if (*c_mainp) {
      code = run_mainp(mainp_random, mainp_seed, mainp_max, common, report);
    }
    write_report(common, report);
    if (!(*c_find && find.emit == "cert") && !(*c_free && free_dump)) render(std::cout, report);
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
