#include "terndescent/rewrite.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "terndescent/error.hpp"

namespace terndescent::trs {

namespace {

void check_well_formed(const Signature& sig, const Term& t, const std::string& label) {
  if (t.is_app()) {
    auto ar = sig.arity(t.name());
    if (!ar || *ar != t.children().size()) {
      throw Error(ErrorKind::ill_formed_rule,
                  "rule " + label + ": '" + t.name() + "' is not a symbol of the signature with arity " +
                      std::to_string(t.children().size()));
    }
  }
  for (const auto& c : t.children()) check_well_formed(sig, c, label);
}

bool contains_element(const Term& t) {
  if (t.is_element()) return true;
  return std::any_of(t.children().begin(), t.children().end(), contains_element);
}

}  // namespace

// ---------------------------------------------------------------- rules

RewriteRule::RewriteRule(std::string label, Term lhs, Term rhs)
    : label_(std::move(label)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  if (lhs_.is_variable()) {
    throw Error(ErrorKind::ill_formed_rule, "rule " + label_ + ": lhs is a variable");
  }
  if (contains_element(lhs_)) {
    throw Error(ErrorKind::ill_formed_rule, "rule " + label_ + ": lhs contains an element constant");
  }
  auto lv = variables_of(lhs_);
  for (const auto& v : variables_of(rhs_)) {
    if (!lv.contains(v)) {
      throw Error(ErrorKind::ill_formed_rule, "rule " + label_ + ": rhs variable '" + v + "' not in lhs");
    }
  }
}

std::string RewriteRule::str() const { return "(" + label_ + ") " + lhs_.str() + " -> " + rhs_.str(); }

RewriteSystem::RewriteSystem(Signature signature, std::vector<RewriteRule> rules)
    : signature_(std::move(signature)), rules_(std::move(rules)) {
  for (const auto& r : rules_) {
    check_well_formed(signature_, r.lhs(), r.label());
    check_well_formed(signature_, r.rhs(), r.label());
  }
}

namespace {

std::vector<RewriteRule> make_rules(std::initializer_list<std::array<const char*, 3>> rows) {
  std::vector<RewriteRule> out;
  for (const auto& [label, l, r] : rows) out.emplace_back(label, parse_term(l), parse_term(r));
  return out;
}

}  // namespace

const RewriteSystem& RewriteSystem::sigma() {
  static const RewriteSystem sys(Signature::ternary_ring(),
                                 make_rules({
                                     {"1.1", "(t 0 x y)", "y"},
                                     {"1.2", "(t x 0 y)", "y"},
                                     {"1.3", "(t 1 x 0)", "x"},
                                     {"1.4", "(t x 1 0)", "x"},
                                     {"1.6", "(q x y (t x y z))", "z"},
                                     {"1.7", "(t x y (q x y z))", "z"},
                                 }));
  return sys;
}

const RewriteSystem& RewriteSystem::sigma_prime() {
  static const RewriteSystem sys = [] {
    auto rules = sigma().rules();
    for (auto& r : make_rules({
             {"3.1", "(q 0 x y)", "y"},
             {"3.2", "(q x 0 y)", "y"},
             {"3.3", "(q 1 x x)", "0"},
             {"3.4", "(q x 1 x)", "0"},
         })) {
      rules.push_back(std::move(r));
    }
    return RewriteSystem(Signature::ternary_ring(), std::move(rules));
  }();
  return sys;
}

const RewriteRule* RewriteSystem::find(const std::string& label) const {
  for (const auto& r : rules_) {
    if (r.label() == label) return &r;
  }
  return nullptr;
}

// ---------------------------------------------------------------- matching

std::optional<Substitution> match_pattern(const Term& pattern, const Term& subject) {
  // Identity bindings are dropped by Substitution, so a non-linear pattern
  // variable matched against itself would be re-bound on its second
  // occurrence. Track bindings locally instead.
  std::map<std::string, Term> bound;
  std::function<bool(const Term&, const Term&)> rec = [&](const Term& p, const Term& s) -> bool {
    if (p.is_variable()) {
      auto [it, fresh] = bound.try_emplace(p.name(), s);
      return fresh || it->second == s;
    }
    if (p.kind() != s.kind() || p.name() != s.name() || p.tag() != s.tag() ||
        p.children().size() != s.children().size()) {
      return false;
    }
    for (std::size_t i = 0; i < p.children().size(); ++i) {
      if (!rec(p.child(i), s.child(i))) return false;
    }
    return true;
  };
  if (!rec(pattern, subject)) return std::nullopt;
  Substitution sigma;
  for (auto& [v, t] : bound) sigma.bind(v, t);
  return sigma;
}

// ---------------------------------------------------------------- unification

namespace {

class Unifier {
 public:
  bool unify(const Term& a, const Term& b) {
    std::vector<std::pair<Term, Term>> work{{a, b}};
    while (!work.empty()) {
      auto [l, r] = work.back();
      work.pop_back();
      l = walk(l);
      r = walk(r);
      if (l == r) continue;
      if (l.is_variable()) {
        if (occurs(l.name(), r)) return false;
        bind_.insert_or_assign(l.name(), r);
      } else if (r.is_variable()) {
        if (occurs(r.name(), l)) return false;
        bind_.insert_or_assign(r.name(), l);
      } else {
        if (l.kind() != r.kind() || l.name() != r.name() || l.tag() != r.tag() ||
            l.children().size() != r.children().size()) {
          return false;
        }
        for (std::size_t i = l.children().size(); i-- > 0;) work.emplace_back(l.child(i), r.child(i));
      }
    }
    return true;
  }

  Substitution result() const {
    Substitution s;
    for (const auto& [v, t] : bind_) s.bind(v, resolve(t));
    return s;
  }

 private:
  Term walk(Term t) const {
    while (t.is_variable()) {
      auto it = bind_.find(t.name());
      if (it == bind_.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs(const std::string& v, const Term& t) const {
    Term w = walk(t);
    if (w.is_variable()) return w.name() == v;
    for (const auto& c : w.children()) {
      if (occurs(v, c)) return true;
    }
    return false;
  }

  Term resolve(const Term& t) const {
    Term w = walk(t);
    if (w.is_ground() || w.is_variable()) return w;
    std::vector<Term> kids;
    for (const auto& c : w.children()) kids.push_back(resolve(c));
    return Term::app(w.name(), std::move(kids));
  }

  std::map<std::string, Term> bind_;
};

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Unifier u;
  if (!u.unify(a, b)) return std::nullopt;
  return u.result();
}

// ---------------------------------------------------------------- stepping

RootStepper rule_stepper(const RewriteSystem& system) {
  return [&system](const Term& subject, std::vector<RootStep>& out) {
    if (!subject.is_app()) return;
    for (const auto& rule : system.rules()) {
      if (rule.lhs().name() != subject.name()) continue;
      if (auto sigma = match_pattern(rule.lhs(), subject)) {
        out.push_back({rule.label(), sigma->apply(rule.rhs())});
      }
    }
  };
}

namespace {

void collect_redexes(const Term& term, Position& pos, const RootStepper& stepper,
                     std::vector<RootStep>& scratch, std::vector<Redex>& out) {
  for (std::size_t i = 0; i < term.children().size(); ++i) {
    pos.push_back(i + 1);
    collect_redexes(term.child(i), pos, stepper, scratch, out);
    pos.pop_back();
  }
  scratch.clear();
  stepper(term, scratch);
  for (auto& s : scratch) out.push_back({pos, std::move(s.label), s.result, s.result});
}

std::optional<Redex> first_redex(const Term& term, Position& pos, const RootStepper& stepper,
                                 std::vector<RootStep>& scratch, bool innermost) {
  auto at_root = [&]() -> std::optional<Redex> {
    scratch.clear();
    stepper(term, scratch);
    if (scratch.empty()) return std::nullopt;
    return Redex{pos, scratch.front().label, scratch.front().result, scratch.front().result};
  };
  if (!innermost) {
    if (auto r = at_root()) return r;
  }
  for (std::size_t i = 0; i < term.children().size(); ++i) {
    pos.push_back(i + 1);
    auto r = first_redex(term.child(i), pos, stepper, scratch, innermost);
    pos.pop_back();
    if (r) return r;
  }
  if (innermost) return at_root();
  return std::nullopt;
}

}  // namespace

std::vector<Redex> all_redexes(const Term& term, const RootStepper& stepper) {
  std::vector<Redex> out;
  std::vector<RootStep> scratch;
  Position pos;
  collect_redexes(term, pos, stepper, scratch, out);
  for (auto& r : out) r.result = replace_at(term, r.position, r.contractum);
  return out;
}

std::vector<Redex> rewrite_once(const RewriteSystem& system, const Term& term) {
  return all_redexes(term, rule_stepper(system));
}

std::string Strategy::str() const {
  switch (kind) {
    case Kind::leftmost_innermost: return "leftmost-innermost";
    case Kind::leftmost_outermost: return "leftmost-outermost";
    case Kind::random: return "random(seed=" + std::to_string(seed) + ")";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name, std::uint64_t seed) {
  if (name == "leftmost-innermost" || name == "innermost") return Strategy::innermost();
  if (name == "leftmost-outermost" || name == "outermost") return Strategy::outermost();
  if (name == "random" || name == "seeded-random") return Strategy::random(seed);
  throw Error(ErrorKind::parse_error, "unknown strategy '" + name + "'");
}

Normalization normalize_with(const Term& term, const RootStepper& stepper, const Strategy& strategy) {
  Normalization out{term, {}};
  std::mt19937_64 rng(strategy.seed);
  std::vector<RootStep> scratch;
  while (true) {
    std::optional<Redex> step;
    if (strategy.kind == Strategy::Kind::random) {
      auto all = all_redexes(out.normal_form, stepper);
      if (!all.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        step = std::move(all[pick(rng)]);
      }
    } else {
      Position pos;
      step = first_redex(out.normal_form, pos, stepper, scratch,
                         strategy.kind == Strategy::Kind::leftmost_innermost);
    }
    if (!step) return out;
    if (strategy.kind != Strategy::Kind::random) step->result = replace_at(out.normal_form, step->position, step->contractum);
    out.normal_form = step->result;
    out.trace.push_back(std::move(*step));
  }
}

Normalization normalize(const RewriteSystem& system, const Term& term, const Strategy& strategy) {
  if (!check_condition_star(system).holds) {
    throw Error(ErrorKind::nontermination_risk, "condition (*) fails; normalization may not terminate");
  }
  return normalize_with(term, rule_stepper(system), strategy);
}

// ---------------------------------------------------------------- critical pairs

std::string CriticalPair::str() const {
  return "<" + left.str() + ", " + right.str() + "> from " + peak.str() + " (" + inner_label + " at " +
         to_string(position) + " in " + outer_label + ")";
}

namespace {

Term rename_vars(const Term& t, const std::string& suffix) {
  Substitution ren;
  for (const auto& v : variables_of(t)) ren.bind(v, Term::variable(v + suffix));
  return ren.apply(t);
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const RewriteSystem& system) {
  std::vector<CriticalPair> out;
  const auto& rules = system.rules();
  for (std::size_t o = 0; o < rules.size(); ++o) {
    const auto& outer = rules[o];
    for (const auto& pos : positions_preorder(outer.lhs())) {
      const Term& sub = subterm_at(outer.lhs(), pos);
      if (sub.is_variable()) continue;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        if (i == o && pos.empty()) continue;
        const auto& inner = rules[i];
        // Inner rule variables get a prime so the two rules are apart.
        Term inner_lhs = rename_vars(inner.lhs(), "'");
        Term inner_rhs = rename_vars(inner.rhs(), "'");
        auto mgu = unify(inner_lhs, sub);
        if (!mgu) continue;
        Term peak = mgu->apply(outer.lhs());
        out.push_back({peak, replace_at(peak, pos, mgu->apply(inner_rhs)), mgu->apply(outer.rhs()),
                       inner.label(), outer.label(), pos});
      }
    }
  }
  return out;
}

bool is_joinable(const RewriteSystem& system, const Term& left, const Term& right) {
  return normalize(system, left).normal_form == normalize(system, right).normal_form;
}

// ---------------------------------------------------------------- conditions

ConditionReport check_condition_star(const RewriteSystem& system) {
  ConditionReport rep;
  for (const auto& rule : system.rules()) {
    RuleConditionReport r{rule.label(), true, {}};
    auto lm = variable_multiplicities(rule.lhs());
    for (const auto& [v, n] : variable_multiplicities(rule.rhs())) {
      if (n > lm[v]) {
        r.holds = false;
        r.detail += "variable " + v + " occurs " + std::to_string(n) + "x in rhs but " +
                    std::to_string(lm[v]) + "x in lhs; ";
      }
    }
    std::size_t ls = rule.lhs().size(), rs = rule.rhs().size();
    if (ls <= rs) {
      r.holds = false;
      r.detail += "size(lhs)=" + std::to_string(ls) + " is not greater than size(rhs)=" + std::to_string(rs);
    } else if (r.holds) {
      r.detail = "size " + std::to_string(ls) + " > " + std::to_string(rs);
    }
    rep.holds = rep.holds && r.holds;
    rep.rules.push_back(std::move(r));
  }
  return rep;
}

ConditionReport check_condition_triple_star(const RewriteSystem& system) {
  ConditionReport rep;
  for (const auto& rule : system.rules()) {
    RuleConditionReport r{rule.label(), true, {}};
    auto all = variables_of(rule.lhs());
    for (const auto& pos : positions_preorder(rule.lhs())) {
      const Term& sub = subterm_at(rule.lhs(), pos);
      if (!sub.is_app() || sub.children().empty()) continue;
      if (variables_of(sub) != all) {
        r.holds = false;
        r.detail = "subterm " + sub.str() + " at " + to_string(pos) + " misses variables of the lhs";
        break;
      }
    }
    rep.holds = rep.holds && r.holds;
    rep.rules.push_back(std::move(r));
  }
  return rep;
}

// ---------------------------------------------------------------- confluence

std::vector<CriticalPairClass> nonjoinable_classes(const RewriteSystem& system,
                                                   const std::vector<CriticalPair>& pairs) {
  std::vector<CriticalPairClass> classes;
  for (const auto& cp : pairs) {
    Term l = normalize(system, cp.left).normal_form;
    Term r = normalize(system, cp.right).normal_form;
    if (l == r) continue;
    if (l.size() < r.size() || (l.size() == r.size() && l.str() > r.str())) std::swap(l, r);
    std::array<Term, 2> sides{l, r};
    auto canon = canonical_rename(sides);
    auto it = std::find_if(classes.begin(), classes.end(), [&](const CriticalPairClass& c) {
      return c.lhs == canon[0] && c.rhs == canon[1];
    });
    if (it == classes.end()) {
      classes.push_back({canon[0], canon[1], {cp}});
    } else {
      it->members.push_back(cp);
    }
  }
  return classes;
}

std::string to_string(ConfluenceVerdict::Kind kind) {
  switch (kind) {
    case ConfluenceVerdict::Kind::confluent: return "confluent";
    case ConfluenceVerdict::Kind::not_confluent: return "not-confluent";
    case ConfluenceVerdict::Kind::unknown: return "unknown";
  }
  return "?";
}

ConfluenceVerdict check_confluence_terminating(const RewriteSystem& system) {
  ConfluenceVerdict v;
  if (!check_condition_star(system).holds) return v;
  auto pairs = critical_pairs(system);
  v.critical_pair_count = pairs.size();
  v.witnesses = nonjoinable_classes(system, pairs);
  v.kind = v.witnesses.empty() ? ConfluenceVerdict::Kind::confluent : ConfluenceVerdict::Kind::not_confluent;
  return v;
}

}  // namespace terndescent::trs
