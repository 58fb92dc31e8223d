#include "terndescent/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace terndescent::io {

namespace fs = std::filesystem;
using algebra::Element;
using algebra::ElementSet;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::parse_error, msg); }

fs::path resolve(const std::string& ref, const fs::path& base) {
  fs::path p(ref);
  if (p.is_relative() && !base.empty()) p = base / p;
  return p;
}

std::vector<std::string> read_carrier(const json& j) {
  if (!j.contains("carrier") || !j["carrier"].is_array()) bad("algebra needs a \"carrier\" array");
  std::vector<std::string> out;
  for (const auto& e : j["carrier"]) {
    if (e.is_string()) {
      out.push_back(e.get<std::string>());
    } else if (e.is_number_integer()) {
      out.push_back(std::to_string(e.get<long long>()));
    } else {
      bad("carrier entries must be strings or integers");
    }
  }
  if (out.empty()) bad("empty carrier");
  if (out.size() > algebra::max_carrier) {
    throw Error(ErrorKind::bound_exceeded, "carrier larger than " + std::to_string(algebra::max_carrier));
  }
  return out;
}

Element read_element(const json& e, const std::vector<std::string>& carrier) {
  if (e.is_number_integer()) {
    auto v = e.get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= carrier.size()) {
      throw Error(ErrorKind::malformed_table, "index " + std::to_string(v) + " outside the carrier");
    }
    return static_cast<Element>(v);
  }
  if (e.is_string()) {
    auto s = e.get<std::string>();
    for (std::size_t i = 0; i < carrier.size(); ++i) {
      if (carrier[i] == s) return static_cast<Element>(i);
    }
    throw Error(ErrorKind::foreign_element, "'" + s + "' is not in the carrier");
  }
  throw Error(ErrorKind::malformed_table, "table entries must be names or indices");
}

Element read_constant(const json& j, const char* key, const std::vector<std::string>& carrier) {
  if (j.contains(key)) return read_element(j[key], carrier);
  return read_element(json(key[0] == 'z' ? "0" : "1"), carrier);
}

std::vector<Element> read_table(const json& j, const char* key, std::size_t arity,
                                const std::vector<std::string>& carrier) {
  const std::size_t n = carrier.size();
  if (!j.contains(key)) throw Error(ErrorKind::malformed_table, std::string("missing table \"") + key + "\"");
  std::vector<Element> out;
  auto walk = [&](auto&& self, const json& node, std::size_t depth) -> void {
    if (depth == arity) {
      out.push_back(read_element(node, carrier));
      return;
    }
    if (!node.is_array() || node.size() != n) {
      throw Error(ErrorKind::malformed_table, std::string("table \"") + key + "\" must be nested arrays of size " +
                                                  std::to_string(n));
    }
    for (const auto& child : node) self(self, child, depth + 1);
  };
  walk(walk, j[key], 0);
  return out;
}

AlgebraSource source_from_json(const json& j, std::string label) {
  if (!j.is_object()) bad("algebra must be a JSON object");
  AlgebraSource src;
  src.label = j.value("label", label);
  auto carrier = read_carrier(j);
  if (j.contains("add") || j.contains("mul")) {
    algebra::RingTables r;
    r.add = read_table(j, "add", 2, carrier);
    r.mul = read_table(j, "mul", 2, carrier);
    r.zero = read_constant(j, "zero", carrier);
    r.one = read_constant(j, "one", carrier);
    r.label = src.label;
    r.carrier = std::move(carrier);
    src.ring = std::move(r);
  } else {
    algebra::TernaryTables t;
    t.t = read_table(j, "t", 3, carrier);
    t.q = read_table(j, "q", 3, carrier);
    t.zero = read_constant(j, "zero", carrier);
    t.one = read_constant(j, "one", carrier);
    t.label = src.label;
    t.carrier = std::move(carrier);
    src.ternary = std::move(t);
  }
  return src;
}

std::optional<bridge::FiniteCommRing> builtin(const std::string& ref) {
  constexpr std::string_view prefix = "builtin:";
  if (ref.rfind(prefix, 0) != 0) return std::nullopt;
  auto r = bridge::builtin_ring(ref.substr(prefix.size()));
  if (!r) bad("unknown builtin ring '" + ref.substr(prefix.size()) + "'");
  return r;
}

Element map_target(const algebra::FiniteTernaryRing& a, const json& e) {
  if (e.is_string()) {
    auto v = a.find(e.get<std::string>());
    if (!v) throw Error(ErrorKind::foreign_element, "'" + e.get<std::string>() + "' is not in " + a.label());
    return *v;
  }
  return read_element(e, a.carrier());
}

}  // namespace

json read_json_file(const fs::path& file) {
  std::ifstream in(file);
  if (!in) bad("cannot open " + file.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(file.string() + ": " + e.what());
  }
}

AlgebraSource read_algebra(const json& ref, const fs::path& base) {
  if (ref.is_object()) return source_from_json(ref, "inline");
  if (!ref.is_string()) bad("algebra reference must be a string or an object");
  return read_algebra(ref.get<std::string>(), base);
}

AlgebraSource read_algebra(const std::string& ref, const fs::path& base) {
  if (auto r = builtin(ref)) return {std::nullopt, r->tables(), r->label()};
  auto path = resolve(ref, base);
  return source_from_json(read_json_file(path), path.stem().string());
}

algebra::RingPtr load_algebra(const json& ref, const fs::path& base) {
  auto src = read_algebra(ref, base);
  if (src.ring) return std::make_shared<const algebra::FiniteTernaryRing>(algebra::from_unital_ring(*src.ring));
  return std::make_shared<const algebra::FiniteTernaryRing>(std::move(*src.ternary));
}

algebra::RingPtr load_algebra(const std::string& ref, const fs::path& base) { return load_algebra(json(ref), base); }

bridge::CommRingPtr load_comm_ring(const std::string& ref, const fs::path& base) {
  auto src = read_algebra(ref, base);
  if (!src.ring) throw Error(ErrorKind::not_a_ring, src.label + " has no add/mul tables");
  return std::make_shared<const bridge::FiniteCommRing>(std::move(*src.ring));
}

algebra::Homomorphism homomorphism_from_json(const json& j, const fs::path& base) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("map")) {
    bad("morphism needs \"source\", \"target\" and \"map\"");
  }
  algebra::Homomorphism h{load_algebra(j["source"], base), load_algebra(j["target"], base), {}};
  const auto& m = j["map"];
  const auto& src = *h.source;
  if (m.is_array()) {
    if (m.size() != src.size()) bad("map array must list one image per source element");
    for (const auto& e : m) h.map.push_back(map_target(*h.target, e));
  } else if (m.is_object()) {
    std::vector<int> img(src.size(), -1);
    for (const auto& [k, v] : m.items()) img[src.element(k)] = map_target(*h.target, v);
    for (std::size_t a = 0; a < img.size(); ++a) {
      if (img[a] < 0) bad("map has no image for '" + src.name(static_cast<Element>(a)) + "'");
      h.map.push_back(static_cast<Element>(img[a]));
    }
  } else {
    bad("\"map\" must be an object or an array");
  }
  return h;
}

algebra::Homomorphism load_homomorphism(const fs::path& file) {
  return homomorphism_from_json(read_json_file(file), file.parent_path());
}

amalgam::Amalgam amalgam_from_json(const json& j, const fs::path& base) {
  if (!j.is_object() || !j.contains("algebras") || !j["algebras"].is_array()) bad("amalgam needs \"algebras\"");
  std::vector<algebra::RingPtr> family;
  for (const auto& r : j["algebras"]) family.push_back(load_algebra(r, base));
  amalgam::SharedSpec spec;
  if (!j.contains("shared") || !j["shared"].contains("elements")) bad("amalgam needs \"shared\".\"elements\"");
  const auto& sh = j["shared"];
  try {
    spec.elements = sh["elements"].get<std::vector<std::string>>();
    if (sh.contains("maps")) spec.maps = sh["maps"].get<std::vector<std::map<std::string, std::string>>>();
  } catch (const json::exception& e) {
    bad(std::string("shared: ") + e.what());
  }
  return amalgam::Amalgam(std::move(family), std::move(spec));
}

amalgam::Amalgam load_amalgam(const fs::path& file) { return amalgam_from_json(read_json_file(file), file.parent_path()); }

trs::RewriteSystem system_from_json(const json& j) {
  if (!j.is_array()) bad("rule file must be a JSON list");
  std::vector<trs::RewriteRule> rules;
  for (const auto& r : j) {
    if (!r.is_object() || !r.contains("lhs") || !r.contains("rhs")) bad("rules need \"lhs\" and \"rhs\"");
    auto label = r.value("label", std::to_string(rules.size() + 1));
    rules.emplace_back(label, trs::parse_term(r["lhs"].get<std::string>()), trs::parse_term(r["rhs"].get<std::string>()));
  }
  return trs::RewriteSystem(trs::Signature::ternary_ring(), std::move(rules));
}

trs::RewriteSystem load_system(const std::string& ref) {
  if (ref == "sigma") return trs::RewriteSystem::sigma();
  if (ref == "sigma-prime") return trs::RewriteSystem::sigma_prime();
  return system_from_json(read_json_file(ref));
}

ElementSet parse_element_set(const algebra::FiniteTernaryRing& a, const std::string& text) {
  ElementSet s;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t{}");
    auto e = item.find_last_not_of(" \t{}");
    if (b == std::string::npos) continue;
    s.insert(a.element(item.substr(b, e - b + 1)));
  }
  return s;
}

// ---------------------------------------------------------------- emitters

json to_json(const trs::Position& p) { return json(std::vector<std::size_t>(p.begin(), p.end())); }

json to_json(const trs::Redex& r) {
  return {{"position", to_json(r.position)}, {"rule", r.label}, {"contractum", r.contractum.str()}, {"result", r.result.str()}};
}

json to_json(const trs::Normalization& n) {
  json steps = json::array();
  for (const auto& r : n.trace) steps.push_back(to_json(r));
  return {{"normal_form", n.normal_form.str()}, {"steps", n.trace.size()}, {"trace", steps}};
}

json to_json(const trs::CriticalPair& cp) {
  return {{"peak", cp.peak.str()},
          {"left", cp.left.str()},
          {"right", cp.right.str()},
          {"outer", cp.outer_label},
          {"inner", cp.inner_label},
          {"position", to_json(cp.position)}};
}

json to_json(const trs::CriticalPairClass& c) {
  json members = json::array();
  for (const auto& m : c.members) members.push_back(to_json(m));
  return {{"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}, {"equation", c.str()}, {"members", members}};
}

json to_json(const trs::ConditionReport& r) {
  json rules = json::array();
  for (const auto& x : r.rules) rules.push_back({{"rule", x.label}, {"holds", x.holds}, {"detail", x.detail}});
  return {{"holds", r.holds}, {"rules", rules}};
}

json to_json(const trs::ConfluenceVerdict& v) {
  json w = json::array();
  for (const auto& c : v.witnesses) w.push_back(to_json(c));
  return {{"verdict", trs::to_string(v.kind)}, {"critical_pairs", v.critical_pair_count}, {"witnesses", w}};
}

json to_json(const algebra::AxiomViolation& v) {
  return {{"axiom", v.axiom},
          {"witness", v.witness},
          {"detail", v.detail},
          {"internal_inconsistency", v.internal_inconsistency}};
}

json to_json(const algebra::FiniteTernaryRing& a, ElementSet s) {
  json out = json::array();
  for (auto e : s.elements()) out.push_back(a.name(e));
  return out;
}

json to_json(const algebra::FiniteTernaryRing& a, const ideal::ClosureTrace& trace) {
  json stages = json::array();
  for (std::size_t i = 0; i < trace.stages.size(); ++i) {
    json added = json::array();
    if (i > 0) {
      for (const auto& step : trace.provenance[i - 1]) {
        added.push_back({{"element", a.name(step.element)}, {"via", step.via.str(a)}});
      }
    }
    stages.push_back({{"set", to_json(a, trace.stages[i])}, {"added", added}});
  }
  return {{"result", to_json(a, trace.result())}, {"stages", stages}};
}

json to_json(const algebra::Homomorphism& h) {
  json map = json::object();
  for (std::size_t a = 0; a < h.map.size(); ++a) map[h.source->name(static_cast<Element>(a))] = h.target->name(h.map[a]);
  return {{"source", h.source->label()}, {"target", h.target->label()}, {"map", map}};
}

json to_json(const ideal::MorphismVerdict& v, const algebra::Homomorphism& h) {
  auto opt = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  const auto& src = *h.source;
  const auto& tgt = *h.target;
  json witnesses = json::object();
  if (v.congruence_witness) {
    json ext = json::array();
    const auto& w = *v.congruence_witness;
    for (std::size_t i = 0; i < w.source.size(); ++i) {
      ext.push_back({{"source", w.source[i].str(src)},
                     {"extension", w.extension[i] ? json(w.extension[i]->str(tgt)) : json(nullptr)}});
    }
    witnesses["congruences"] = ext;
  }
  if (v.ideal_witness) {
    json ext = json::array();
    const auto& w = *v.ideal_witness;
    for (std::size_t i = 0; i < w.source.size(); ++i) {
      ext.push_back({{"source", to_json(src, w.source[i])},
                     {"extension", w.extension[i] ? to_json(tgt, *w.extension[i]) : json(nullptr)}});
    }
    witnesses["ideals"] = ext;
  }
  json traces = json::array();
  for (std::size_t i = 0; i < v.closure.source.size(); ++i) {
    traces.push_back({{"source_ideal", to_json(src, v.closure.source[i])},
                      {"closure", to_json(tgt, v.closure.traces[i])},
                      {"pullback", to_json(src, v.closure.pullback[i])}});
  }
  json counter = nullptr;
  if (v.counterexample) {
    for (std::size_t i = 0; i < v.closure.source.size(); ++i) {
      if (v.closure.source[i] == *v.counterexample) {
        counter = {{"ideal", to_json(src, v.closure.source[i])},
                   {"closure", to_json(tgt, v.closure.traces[i].result())},
                   {"pullback", to_json(src, v.closure.pullback[i])}};
      }
    }
  }
  return {{"morphism", to_json(h)},
          {"effective", v.effective},
          {"condition_iii", opt(v.condition_iii)},
          {"condition_iv", opt(v.condition_iv)},
          {"condition_v", v.condition_v},
          {"consistent", v.consistent},
          {"witnesses", witnesses},
          {"counterexample", counter},
          {"traces", traces}};
}

json to_json(const amalgam::UniqueNfReport& r) {
  json w = nullptr;
  if (r.witness) {
    w = {{"term", r.witness->term.str()},
         {"first", {{"strategy", r.witness->first_strategy}, {"normal_form", r.witness->first.str()}}},
         {"second", {{"strategy", r.witness->second_strategy}, {"normal_form", r.witness->second.str()}}}};
  }
  return {{"pass", r.pass},
          {"seed", r.seed},
          {"samples_run", r.samples_run},
          {"normalizations", r.normalizations},
          {"witness", w}};
}

json to_json(const amalgam::StrongAmalgamationReport& r) {
  json inter = json::array();
  for (const auto& x : r.intersections) {
    json common = json::array();
    for (const auto& t : x.common) common.push_back(t.str());
    inter.push_back({{"i", x.i + 1}, {"j", x.j + 1}, {"common", common}, {"equals_shared", x.equals_shared}});
  }
  return {{"holds", r.holds}, {"injective", r.injective}, {"intersections", inter}, {"reason", r.reason}};
}

namespace {

std::string digest(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

json to_json(const bridge::RingMorphism& m) {
  json map = json::array();
  for (auto e : m.map) map.push_back(m.target->name(e));
  return {{"source", m.source->label()}, {"target", m.target->label()}, {"map", map}, {"digest", digest(m.str())}};
}

json to_json(const bridge::ClassComparisonReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json ret = nullptr;
    if (e.retraction) {
      ret = json::array();
      for (auto x : *e.retraction) ret.push_back(e.morphism.source->name(x));
    }
    entries.push_back({{"morphism", to_json(e.morphism)},
                       {"pure", e.pure},
                       {"ideal_extension", e.ideal_extension},
                       {"effective_codescent", e.effective_codescent},
                       {"retraction", ret}});
  }
  return {{"containment_holds", r.containment_holds}, {"strict_witnesses", r.strict_witnesses}, {"entries", entries}};
}

}  // namespace terndescent::io
