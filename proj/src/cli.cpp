#include "terndescent/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "terndescent/io.hpp"

namespace terndescent::cli {

using io::json;

namespace {

struct Options {
  std::string system = "sigma-prime";
  std::string algebra;
  std::string amalgam;
  std::string morphism;
  std::string term;
  std::string strategy = "leftmost-innermost";
  std::uint64_t seed = 1;
  std::size_t depth = 5;
  std::size_t samples = 500;
  std::size_t strategies = 100;
  std::optional<std::size_t> bound;
  std::string seed_set;
  std::size_t size = 2;
  std::vector<std::string> rings;
  bool only_nonjoinable = false;
  bool json_output = false;
  std::string out;
};

struct Result {
  int exit_code = exit_positive;
  json report = json::object();
  std::ostringstream text;
};

using Handler = std::function<void(const Options&, Result&)>;

ideal::Bounds bounds_of(const Options& o) {
  ideal::Bounds b;
  if (o.bound) {
    b.congruence = *o.bound;
  } else if (const char* env = std::getenv("TERN_DESCENT_BOUND")) {
    try {
      b.congruence = std::stoul(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse_error, "TERN_DESCENT_BOUND must be a positive integer");
    }
  }
  return b;
}

void verdict(Result& r, bool positive) { r.exit_code = positive ? exit_positive : exit_negative; }

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string set_text(const json& names) {
  std::vector<std::string> v = names.get<std::vector<std::string>>();
  return "{" + join(v, ",") + "}";
}

trs::Term parse_free_term(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::parse_error, "--term is required");
  return trs::parse_term(text);
}

// ---------------------------------------------------------------- handlers

void cmd_validate(const Options& o, Result& r) {
  auto src = io::read_algebra(o.algebra);
  r.report["algebra"] = src.label;
  std::optional<algebra::AxiomViolation> v;
  if (src.ring) {
    if (auto bad = algebra::ring_axiom_violation(*src.ring)) {
      v = algebra::AxiomViolation{"unital-ring", {}, *bad, false};
    } else {
      v = algebra::validate_ternary_ring(algebra::from_unital_ring(*src.ring).tables());
    }
  } else {
    v = algebra::validate_ternary_ring(*src.ternary);
  }
  r.report["valid"] = !v;
  r.report["violation"] = v ? io::to_json(*v) : json(nullptr);
  if (v) {
    r.text << "invalid: axiom " << v->axiom;
    if (!v->witness.empty()) r.text << ", witness (" << join(v->witness) << ")";
    if (!v->detail.empty()) r.text << ": " << v->detail;
    r.text << "\n";
  } else {
    r.text << "valid\n";
  }
  verdict(r, !v);
}

void cmd_rewrite(const Options& o, Result& r) {
  auto sys = io::load_system(o.system);
  auto t = parse_free_term(o.term);
  auto redexes = trs::rewrite_once(sys, t);
  r.report["term"] = t.str();
  r.report["redexes"] = json::array();
  for (const auto& x : redexes) {
    r.report["redexes"].push_back(io::to_json(x));
    r.text << trs::to_string(x.position) << " " << x.label << " -> " << x.result.str() << "\n";
  }
  if (redexes.empty()) r.text << "normal form: no redexes\n";
}

void cmd_normalize(const Options& o, Result& r) {
  auto sys = io::load_system(o.system);
  auto t = parse_free_term(o.term);
  auto strat = trs::parse_strategy(o.strategy, o.seed);
  auto n = trs::normalize(sys, t, strat);
  r.report["term"] = t.str();
  r.report["strategy"] = strat.str();
  r.report["result"] = io::to_json(n);
  for (const auto& x : n.trace) r.text << "  " << trs::to_string(x.position) << " " << x.label << " -> " << x.result.str() << "\n";
  r.text << n.normal_form.str() << "\n";
}

void cmd_critical_pairs(const Options& o, Result& r) {
  auto sys = io::load_system(o.system);
  auto pairs = trs::critical_pairs(sys);
  r.report["critical_pairs"] = pairs.size();
  if (o.only_nonjoinable) {
    auto classes = trs::nonjoinable_classes(sys, pairs);
    r.report["classes"] = json::array();
    r.text << classes.size() << " non-joinable classes\n";
    for (const auto& c : classes) {
      r.report["classes"].push_back(io::to_json(c));
      r.text << c.str() << "  (" << c.members.size() << (c.members.size() == 1 ? " pair)\n" : " pairs)\n");
    }
    return;
  }
  r.report["pairs"] = json::array();
  r.text << pairs.size() << " critical pairs\n";
  for (const auto& cp : pairs) {
    bool j = trs::is_joinable(sys, cp.left, cp.right);
    auto e = io::to_json(cp);
    e["joinable"] = j;
    r.report["pairs"].push_back(e);
    r.text << cp.str() << (j ? "  joinable" : "  NOT joinable") << "\n";
  }
}

void cmd_confluence(const Options& o, Result& r) {
  auto sys = io::load_system(o.system);
  auto v = trs::check_confluence_terminating(sys);
  r.report.update(io::to_json(v));
  r.text << trs::to_string(v.kind) << "\n";
  for (const auto& c : v.witnesses) r.text << "  " << c.str() << "\n";
  verdict(r, v.kind == trs::ConfluenceVerdict::Kind::confluent);
}

void cmd_conditions(const Options& o, Result& r) {
  auto sys = io::load_system(o.system);
  auto star = trs::check_condition_star(sys);
  auto triple = trs::check_condition_triple_star(sys);
  r.report["star"] = io::to_json(star);
  r.report["triple_star"] = io::to_json(triple);
  r.text << "(*)   " << (star.holds ? "true" : "false") << "\n";
  r.text << "(***) " << (triple.holds ? "true" : "false") << "\n";
  for (const auto* rep : {&star, &triple}) {
    for (const auto& x : rep->rules) {
      if (!x.holds) r.text << "  rule " << x.label << ": " << x.detail << "\n";
    }
  }
  verdict(r, star.holds && triple.holds);
}

amalgam::Amalgam need_amalgam(const Options& o) {
  if (o.amalgam.empty()) throw Error(ErrorKind::parse_error, "--amalgam is required");
  return io::load_amalgam(o.amalgam);
}

void cmd_amalgam_normalize(const Options& o, Result& r) {
  auto am = need_amalgam(o);
  auto sys = io::load_system(o.system);
  if (o.term.empty()) throw Error(ErrorKind::parse_error, "--term is required");
  auto t = am.parse(o.term);
  auto strat = trs::parse_strategy(o.strategy, o.seed);
  auto n = amalgam::amalgam_normalize(am, t, strat, sys);
  r.report["term"] = t.str();
  r.report["strategy"] = strat.str();
  r.report["result"] = io::to_json(n);
  for (const auto& x : n.trace) r.text << "  " << trs::to_string(x.position) << " " << x.label << " -> " << x.result.str() << "\n";
  r.text << n.normal_form.str() << "\n";
}

void cmd_unique_nf(const Options& o, Result& r) {
  auto am = need_amalgam(o);
  auto sys = io::load_system(o.system);
  amalgam::UniqueNfOptions opt{o.samples, o.depth, o.seed, o.strategies};
  auto rep = amalgam::unique_nf_property_test(am, sys, opt);
  r.report.update(io::to_json(rep));
  r.text << (rep.pass ? "pass" : "fail") << ": " << rep.samples_run << " samples, " << rep.normalizations
         << " normalizations, seed " << rep.seed << "\n";
  if (rep.witness) {
    r.text << "  term:   " << rep.witness->term.str() << "\n"
           << "  " << rep.witness->first_strategy << ": " << rep.witness->first.str() << "\n"
           << "  " << rep.witness->second_strategy << ": " << rep.witness->second.str() << "\n";
  }
  verdict(r, rep.pass);
}

void cmd_strong(const Options& o, Result& r) {
  auto am = need_amalgam(o);
  auto sys = io::load_system(o.system);
  auto rep = amalgam::check_strong_amalgamation(am, sys);
  r.report.update(io::to_json(rep));
  r.text << (rep.holds ? "holds" : "fails") << "\n";
  if (!rep.reason.empty()) r.text << "  " << rep.reason << "\n";
  for (const auto& x : r.report["intersections"]) {
    r.text << "  n" << x["i"] << "(A" << x["i"] << ") & n" << x["j"] << "(A" << x["j"] << ") = " << set_text(x["common"])
           << "\n";
  }
  verdict(r, rep.holds);
}

algebra::RingPtr need_algebra(const Options& o) {
  if (o.algebra.empty()) throw Error(ErrorKind::parse_error, "--algebra is required");
  return io::load_algebra(o.algebra);
}

void cmd_ideals(const Options& o, Result& r) {
  auto a = need_algebra(o);
  auto b = bounds_of(o);
  auto ideals = ideal::zero_ideals(*a, ideal::IdealMethod::automatic, b);
  r.report["algebra"] = a->label();
  r.report["ideals"] = json::array();
  for (auto s : ideals) {
    r.report["ideals"].push_back(io::to_json(*a, s));
    r.text << algebra::format_set(*a, s) << "\n";
  }
  bool determined = true;
  // The cross-check needs the exhaustive subset search as well.
  if (a->size() <= b.congruence && a->size() <= b.subset) {
    auto d = ideal::check_ideal_determined(*a, b);
    determined = d.holds;
    r.report["determined"] = d.holds;
    if (!d.holds) r.text << "not 0-ideal determined: " << d.discrepancy << "\n";
  }
  verdict(r, determined);
}

void cmd_closure(const Options& o, Result& r) {
  auto a = need_algebra(o);
  auto seed = io::parse_element_set(*a, o.seed_set);
  auto trace = ideal::ideal_closure(*a, seed);
  r.report["algebra"] = a->label();
  r.report["seed_set"] = io::to_json(*a, seed);
  r.report.update(io::to_json(*a, trace));
  for (std::size_t i = 0; i < trace.stages.size(); ++i) {
    r.text << "Y" << i << " = " << algebra::format_set(*a, trace.stages[i]);
    if (i > 0) {
      std::vector<std::string> via;
      for (const auto& s : trace.provenance[i - 1]) via.push_back(a->name(s.element) + " <- " + s.via.str(*a));
      r.text << "   [" << join(via) << "]";
    }
    r.text << "\n";
  }
  r.text << "closure " << algebra::format_set(*a, trace.result()) << "\n";
}

void cmd_codescent(const Options& o, Result& r) {
  if (o.morphism.empty()) throw Error(ErrorKind::parse_error, "--morphism is required");
  auto h = io::load_homomorphism(o.morphism);
  auto v = ideal::is_effective_codescent(h, bounds_of(o));
  r.report.update(io::to_json(v, h));
  auto show = [](const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "n/a"; };
  r.text << (v.effective ? "effective codescent" : "not effective codescent") << "\n"
         << "  (iii) congruence extension: " << show(v.condition_iii) << "\n"
         << "  (iv)  0-ideal extension:    " << show(v.condition_iv) << "\n"
         << "  (v)   closure condition:    " << (v.condition_v ? "true" : "false") << "\n";
  if (!r.report["counterexample"].is_null()) {
    const auto& c = r.report["counterexample"];
    r.text << "  counterexample: I = " << set_text(c["ideal"]) << ", closure " << set_text(c["closure"])
           << " pulls back to " << set_text(c["pullback"]) << "\n";
  }
  verdict(r, v.effective);
}

void cmd_bridge_compare(const Options& o, Result& r) {
  std::vector<bridge::CommRingPtr> rings;
  if (o.rings.empty()) {
    rings = bridge::default_ring_corpus();
  } else {
    for (const auto& ref : o.rings) rings.push_back(io::load_comm_ring(ref));
  }
  auto corpus = bridge::monomorphism_corpus(rings);
  auto rep = bridge::compare_descent_classes(corpus, bounds_of(o));
  r.report.update(io::to_json(rep));
  std::size_t pure = 0, ext = 0;
  for (const auto& e : rep.entries) {
    pure += e.pure;
    ext += e.ideal_extension;
  }
  r.text << rep.entries.size() << " monomorphisms, " << pure << " pure, " << ext << " with the ideal extension property\n"
         << "pure => ideal extension: " << (rep.containment_holds ? "holds" : "FAILS") << "\n"
         << "ideal extension without purity: " << rep.strict_witnesses.size() << "\n";
  for (auto i : rep.strict_witnesses) r.text << "  " << rep.entries[i].morphism.str() << "\n";
  verdict(r, rep.containment_holds);
}

void cmd_enumerate(const Options& o, Result& r) {
  auto all = algebra::enumerate_ternary_rings(o.size);
  std::vector<algebra::FiniteTernaryRing> ring_derived;
  std::vector<std::string> ring_names;
  for (const auto& c : bridge::default_ring_corpus()) {
    if (c->size() == o.size) {
      ring_derived.push_back(bridge::as_ternary(*c));
      ring_names.push_back(c->label());
    }
  }
  r.report["size"] = o.size;
  r.report["count"] = all.size();
  r.report["algebras"] = json::array();
  r.text << all.size() << " ternary rings of order " << o.size << "\n";
  for (const auto& a : all) {
    json from = nullptr;
    for (std::size_t k = 0; k < ring_derived.size(); ++k) {
      if (algebra::are_isomorphic(a, ring_derived[k])) from = ring_names[k];
    }
    r.report["algebras"].push_back({{"label", a.label()}, {"from_ring", from}});
    if (!from.is_null()) r.text << "  " << a.label() << " ~ " << from.get<std::string>() << "\n";
  }
}

struct Entry {
  CommandInfo info;
  Handler handler;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table{
      {{"validate", "validate_ternary_ring", "check the ternary ring axioms of an algebra"}, cmd_validate},
      {{"rewrite", "rewrite_once", "list one-step reducts of a term"}, cmd_rewrite},
      {{"normalize", "normalize", "rewrite a term to normal form"}, cmd_normalize},
      {{"critical-pairs", "critical_pairs", "list critical pairs of a rewrite system"}, cmd_critical_pairs},
      {{"confluence", "check_confluence_terminating", "decide confluence of a terminating system"}, cmd_confluence},
      {{"conditions", "check_conditions", "check conditions (*) and (***)"}, cmd_conditions},
      {{"amalgam-normalize", "amalgam_normalize", "normalize a mixed term in an amalgam"}, cmd_amalgam_normalize},
      {{"unique-nf-test", "unique_nf_property_test", "randomized unique-normal-form test"}, cmd_unique_nf},
      {{"strong-amalgamation", "check_strong_amalgamation", "check the strong amalgamation property"}, cmd_strong},
      {{"ideals", "zero_ideals", "list the 0-ideals of an algebra"}, cmd_ideals},
      {{"closure", "ideal_closure", "0-ideal generated by a subset, with stages"}, cmd_closure},
      {{"codescent", "is_effective_codescent", "decide effective codescent for a monomorphism"}, cmd_codescent},
      {{"bridge-compare", "compare_descent_classes", "compare pure and ideal-extension monomorphisms"},
       cmd_bridge_compare},
      {{"enumerate", "enumerate_ternary_rings", "enumerate ternary rings of a small order"}, cmd_enumerate},
  };
  return table;
}

void add_flags(CLI::App& sub, const std::string& name, Options& o) {
  auto flag_set = [&](std::initializer_list<const char*> names) {
    return std::find_if(names.begin(), names.end(), [&](const char* n) { return name == n; }) != names.end();
  };
  if (flag_set({"rewrite", "normalize", "critical-pairs", "confluence", "conditions", "amalgam-normalize",
                "unique-nf-test", "strong-amalgamation"})) {
    sub.add_option("--system", o.system, "sigma, sigma-prime, or a JSON rule file")->capture_default_str();
  }
  if (flag_set({"validate", "ideals", "closure"})) {
    sub.add_option("--algebra", o.algebra, "algebra JSON file or builtin:<ring>")->required();
  }
  if (flag_set({"amalgam-normalize", "unique-nf-test", "strong-amalgamation"})) {
    sub.add_option("--amalgam", o.amalgam, "amalgam JSON file")->required();
  }
  if (flag_set({"rewrite", "normalize", "amalgam-normalize"})) {
    sub.add_option("--term", o.term, "term in s-expression syntax")->required();
  }
  if (flag_set({"normalize", "amalgam-normalize"})) {
    sub.add_option("--strategy", o.strategy, "leftmost-innermost, leftmost-outermost or random")
        ->capture_default_str();
  }
  if (flag_set({"normalize", "amalgam-normalize", "unique-nf-test"})) {
    sub.add_option("--seed", o.seed, "random seed")->capture_default_str();
  }
  if (name == "unique-nf-test") {
    sub.add_option("--samples", o.samples, "number of sampled terms")->capture_default_str();
    sub.add_option("--depth", o.depth, "maximum term depth")->capture_default_str();
    sub.add_option("--strategies", o.strategies, "random strategies per sample")->capture_default_str();
  }
  if (flag_set({"ideals", "codescent", "bridge-compare"})) {
    sub.add_option("--bound", o.bound, "congruence enumeration bound (default 8, or TERN_DESCENT_BOUND)");
  }
  if (name == "critical-pairs") sub.add_flag("--only-nonjoinable", o.only_nonjoinable, "group non-joinable pairs");
  if (name == "closure") sub.add_option("--seed-set", o.seed_set, "comma-separated element names")->required();
  if (name == "codescent") sub.add_option("--morphism", o.morphism, "morphism JSON file")->required();
  if (name == "bridge-compare") sub.add_option("--rings", o.rings, "ring references (default: built-in corpus)");
  if (name == "enumerate") sub.add_option("--size", o.size, "carrier size (at most 3)")->required();
  sub.add_flag("--json", o.json_output, "emit a JSON report");
  sub.add_option("--out", o.out, "write the report to a file");
}

}  // namespace

const std::vector<CommandInfo>& dispatch_table() {
  static const std::vector<CommandInfo> infos = [] {
    std::vector<CommandInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ternary ring rewriting, amalgams and descent checks", tool_name};
  app.set_version_flag("--version", std::string(tool_name) + " " + tool_version);
  app.require_subcommand(1, 1);
  Options opts;
  std::map<CLI::App*, const Entry*> subs;
  for (const auto& e : entries()) {
    auto* sub = app.add_subcommand(e.info.name, e.info.summary);
    add_flags(*sub, e.info.name, opts);
    subs[sub] = &e;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return exit_positive;
    }
    err << "error: parse-error: " << e.what() << "\n";
    return exit_error;
  }

  const Entry* entry = nullptr;
  for (auto* s : app.get_subcommands()) entry = subs.at(s);

  Result result;
  const auto start = std::chrono::steady_clock::now();
  try {
    entry->handler(opts, result);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return exit_error;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::string body;
  if (opts.json_output) {
    json report{{"tool", tool_name}, {"version", tool_version}, {"command", entry->info.name},
                {"operation", entry->info.operation}};
    report["verdict"] = result.exit_code == exit_positive ? "positive" : "negative";
    report.update(result.report);
    report["timing_ms"] = ms;
    body = report.dump(2) + "\n";
  } else {
    body = result.text.str();
  }
  if (opts.out.empty()) {
    out << body;
  } else {
    std::ofstream f(opts.out);
    if (!f) {
      err << "error: cannot write " << opts.out << "\n";
      return exit_error;
    }
    f << body;
  }
  return result.exit_code;
}

}  // namespace terndescent::cli
