#include "terndescent/ideal.hpp"

#include <algorithm>
#include <stdexcept>

#include "terndescent/error.hpp"

namespace terndescent::ideal {

const trs::Term& tau_term(int which) {
  static const trs::Term terms[] = {
      trs::parse_term("(q 1 (t 1 x y) x)"),
      trs::parse_term("(q 1 x3 (q x1 x2 (t 1 (t x1 x2 x3) y)))"),
      trs::parse_term("(q 1 (t x1 x2 x3) (t (t 1 x1 y1) (t 1 x2 y2) (t 1 x3 y3)))"),
  };
  if (which < 1 || which > 3) throw Error(ErrorKind::arity_mismatch, "no tau_" + std::to_string(which));
  return terms[which - 1];
}

std::size_t tau_arity(int which) {
  switch (which) {
    case 1: return 2;
    case 2: return 4;
    case 3: return 6;
  }
  throw Error(ErrorKind::arity_mismatch, "no tau_" + std::to_string(which));
}

namespace {

const std::vector<std::string>& tau_variables(int which) {
  static const std::vector<std::string> vars[] = {
      {"x", "y"}, {"x1", "x2", "x3", "y"}, {"x1", "x2", "x3", "y1", "y2", "y3"}};
  return vars[which - 1];
}

}  // namespace

Element eval_tau(const FiniteTernaryRing& a, int which, std::span<const Element> args) {
  const auto& term = tau_term(which);
  if (args.size() != tau_arity(which)) {
    throw Error(ErrorKind::arity_mismatch, "tau_" + std::to_string(which) + " takes " +
                                               std::to_string(tau_arity(which)) + " arguments, got " +
                                               std::to_string(args.size()));
  }
  trs::Substitution sigma;
  const auto& vars = tau_variables(which);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] >= a.size()) throw Error(ErrorKind::foreign_element, "argument outside the carrier");
    sigma.bind(vars[i], trs::Term::element("", a.name(args[i])));
  }
  return algebra::evaluate(a, sigma.apply(term));
}

std::string TauInstance::str(const FiniteTernaryRing& a) const {
  std::string out = "tau" + std::to_string(which) + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + a.name(args[i]);
  return out + ")=" + a.name(value);
}

// ---------------------------------------------------------------- closure

namespace {

/// Computes the next closure stage from `prev`; records the first instance
/// producing each new element when `steps` is non-null.
ElementSet closure_stage(const FiniteTernaryRing& a, ElementSet prev, std::vector<ClosureStep>* steps) {
  const Element n = static_cast<Element>(a.size());
  const Element one = a.one();
  const auto hs = prev.elements();
  ElementSet next = prev;
  auto add = [&](Element v, auto&& make_instance) {
    if (next.contains(v)) return;
    next.insert(v);
    if (steps) steps->push_back({v, make_instance()});
  };

  for (Element x = 0; x < n; ++x) {
    for (auto h : hs) {
      Element v = tau1(a, x, h);
      add(v, [&] { return TauInstance{1, {x, h}, v}; });
    }
  }
  for (Element x1 = 0; x1 < n; ++x1) {
    for (Element x2 = 0; x2 < n; ++x2) {
      for (Element x3 = 0; x3 < n; ++x3) {
        // tau2 only depends on h through t(1, t(x1,x2,x3), h).
        Element w = a.t(x1, x2, x3);
        for (auto h : hs) {
          Element v = a.q(one, x3, a.q(x1, x2, a.t(one, w, h)));
          add(v, [&] { return TauInstance{2, {x1, x2, x3, h}, v}; });
        }
      }
    }
  }

  // tau3 = q(1, t(x1,x2,x3), t(u1,u2,u3)) with u_k = t(1, x_k, h_k); the map
  // h -> t(1,x,h) is a bijection with inverse u -> q(1,x,u).
  std::vector<std::vector<Element>> shifted(n);
  for (Element x = 0; x < n; ++x) {
    ElementSet u;
    for (auto h : hs) u.insert(a.t(one, x, h));
    shifted[x] = u.elements();
  }
  for (Element x1 = 0; x1 < n; ++x1) {
    for (Element x2 = 0; x2 < n; ++x2) {
      for (Element x3 = 0; x3 < n; ++x3) {
        Element w = a.t(x1, x2, x3);
        for (auto u1 : shifted[x1]) {
          for (auto u2 : shifted[x2]) {
            for (auto u3 : shifted[x3]) {
              Element v = a.q(one, w, a.t(u1, u2, u3));
              add(v, [&] {
                return TauInstance{3, {x1, x2, x3, a.q(one, x1, u1), a.q(one, x2, u2), a.q(one, x3, u3)}, v};
              });
            }
          }
        }
      }
    }
  }
  return next;
}

void check_subset(const FiniteTernaryRing& a, ElementSet s) {
  if (s.empty()) throw Error(ErrorKind::empty_subset, "0-ideal candidates must be nonempty");
  if (!s.subset_of(ElementSet::full(a.size()))) {
    throw Error(ErrorKind::foreign_element, "subset leaves the carrier");
  }
}

void sort_sets(std::vector<ElementSet>& v) {
  std::sort(v.begin(), v.end(), [](ElementSet x, ElementSet y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

IdealCheck is_zero_ideal(const FiniteTernaryRing& a, ElementSet subset) {
  check_subset(a, subset);
  std::vector<ClosureStep> steps;
  closure_stage(a, subset, &steps);
  if (steps.empty()) return {};
  return {false, steps.front().via};
}

ClosureTrace ideal_closure(const FiniteTernaryRing& a, ElementSet seed) {
  check_subset(a, seed);
  ClosureTrace trace;
  trace.stages.push_back(seed);
  while (true) {
    std::vector<ClosureStep> steps;
    ElementSet next = closure_stage(a, trace.stages.back(), &steps);
    if (next == trace.stages.back()) return trace;
    trace.stages.push_back(next);
    trace.provenance.push_back(std::move(steps));
  }
}

// ---------------------------------------------------------------- enumeration

namespace {

std::vector<ElementSet> ideals_by_blocks(const FiniteTernaryRing& a, const Bounds& bounds) {
  std::vector<ElementSet> out;
  for (const auto& c : algebra::congruences(a, bounds.congruence)) out.push_back(c.block_of(a.zero()));
  sort_sets(out);
  return out;
}

std::vector<ElementSet> ideals_by_subsets(const FiniteTernaryRing& a, const Bounds& bounds) {
  if (a.size() > bounds.subset) {
    throw Error(ErrorKind::bound_exceeded, "exhaustive subset search limited to carriers of size <= " +
                                               std::to_string(bounds.subset));
  }
  std::vector<ElementSet> out;
  const std::uint64_t full = ElementSet::full(a.size()).bits();
  for (std::uint64_t bits = 1; bits <= full; ++bits) {
    if (is_zero_ideal(a, ElementSet(bits)).holds) out.emplace_back(bits);
  }
  sort_sets(out);
  return out;
}

std::string format_sets(const FiniteTernaryRing& a, const std::vector<ElementSet>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + algebra::format_set(a, v[i]);
  return out + "]";
}

}  // namespace

std::vector<ElementSet> zero_ideals(const FiniteTernaryRing& a, IdealMethod method, Bounds bounds) {
  switch (method) {
    case IdealMethod::congruence_blocks: return ideals_by_blocks(a, bounds);
    case IdealMethod::subset_search: return ideals_by_subsets(a, bounds);
    case IdealMethod::automatic: break;
  }
  const bool by_blocks = a.size() <= bounds.congruence;
  const bool by_subsets = a.size() <= bounds.subset;
  if (by_blocks && by_subsets) {
    auto x = ideals_by_blocks(a, bounds);
    auto y = ideals_by_subsets(a, bounds);
    if (x != y) {
      throw std::logic_error("0-ideal enumeration mismatch on " + a.label() + ": congruence 0-blocks " +
                             format_sets(a, x) + " vs tau-closed subsets " + format_sets(a, y));
    }
    return x;
  }
  if (by_blocks) return ideals_by_blocks(a, bounds);
  if (by_subsets) return ideals_by_subsets(a, bounds);
  throw Error(ErrorKind::bound_exceeded, "carrier of size " + std::to_string(a.size()) +
                                             " exceeds the enumeration bound " + std::to_string(bounds.congruence));
}

DeterminednessReport check_ideal_determined(const FiniteTernaryRing& a, Bounds bounds) {
  DeterminednessReport rep;
  rep.tau_closed = ideals_by_subsets(a, bounds);
  auto congs = algebra::congruences(a, bounds.congruence);
  std::vector<ElementSet> blocks;
  for (const auto& c : congs) blocks.push_back(c.block_of(a.zero()));
  rep.zero_blocks = blocks;
  sort_sets(rep.zero_blocks);
  if (rep.tau_closed != rep.zero_blocks) {
    rep.holds = false;
    rep.discrepancy = "tau-closed subsets " + format_sets(a, rep.tau_closed) + " differ from congruence 0-blocks " +
                      format_sets(a, rep.zero_blocks);
    return rep;
  }
  if (blocks.size() != rep.zero_blocks.size()) {
    std::sort(blocks.begin(), blocks.end());
    auto dup = std::adjacent_find(blocks.begin(), blocks.end());
    rep.holds = false;
    rep.discrepancy = "0-block " + algebra::format_set(a, *dup) + " belongs to more than one congruence";
  }
  return rep;
}

// ---------------------------------------------------------------- morphisms

ElementSet preimage(const Homomorphism& p, ElementSet target_subset) {
  ElementSet s;
  for (Element e = 0; e < p.map.size(); ++e) {
    if (target_subset.contains(p.map[e])) s.insert(e);
  }
  return s;
}

ElementSet image(const Homomorphism& p, ElementSet source_subset) {
  ElementSet s;
  for (auto e : source_subset.elements()) s.insert(p.map[e]);
  return s;
}

namespace {

void require_mono(const Homomorphism& p) {
  auto chk = algebra::is_monomorphism(p);
  if (!chk.holds) throw Error(ErrorKind::not_a_monomorphism, chk.violation);
}

bool restricts_to(const Homomorphism& p, const Congruence& target, const Congruence& source) {
  const std::size_t n = p.map.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = a + 1; b < n; ++b) {
      if (target.related(p.map[a], p.map[b]) != source.related(a, b)) return false;
    }
  }
  return true;
}

}  // namespace

CongruenceExtension has_congruence_extension(const Homomorphism& p, Bounds bounds) {
  require_mono(p);
  CongruenceExtension out;
  out.source = algebra::congruences(*p.source, bounds.congruence);
  auto target = algebra::congruences(*p.target, bounds.congruence);
  for (const auto& theta : out.source) {
    auto it = std::find_if(target.begin(), target.end(),
                           [&](const Congruence& c) { return restricts_to(p, c, theta); });
    out.extension.push_back(it == target.end() ? std::nullopt : std::optional(*it));
    out.holds = out.holds && it != target.end();
  }
  return out;
}

IdealExtension has_ideal_extension(const Homomorphism& p, Bounds bounds) {
  require_mono(p);
  IdealExtension out;
  out.source = zero_ideals(*p.source, IdealMethod::automatic, bounds);
  auto target = zero_ideals(*p.target, IdealMethod::automatic, bounds);
  for (auto i : out.source) {
    auto it = std::find_if(target.begin(), target.end(), [&](ElementSet j) { return preimage(p, j) == i; });
    out.extension.push_back(it == target.end() ? std::nullopt : std::optional(*it));
    out.holds = out.holds && it != target.end();
  }
  return out;
}

ClosureCondition closure_condition_v(const Homomorphism& p, Bounds bounds) {
  require_mono(p);
  ClosureCondition out;
  out.source = zero_ideals(*p.source, IdealMethod::automatic, bounds);
  for (auto i : out.source) {
    auto trace = ideal_closure(*p.target, image(p, i));
    auto back = preimage(p, trace.result());
    out.holds = out.holds && back == i;
    out.traces.push_back(std::move(trace));
    out.pullback.push_back(back);
  }
  return out;
}

MorphismVerdict is_effective_codescent(const Homomorphism& p, Bounds bounds) {
  require_mono(p);
  MorphismVerdict v;
  v.closure = closure_condition_v(p, bounds);
  v.condition_v = v.closure.holds;
  v.effective = v.condition_v;
  for (std::size_t k = 0; k < v.closure.source.size(); ++k) {
    if (v.closure.pullback[k] != v.closure.source[k]) {
      v.counterexample = v.closure.source[k];
      break;
    }
  }
  if (p.target->size() <= bounds.congruence) {
    v.congruence_witness = has_congruence_extension(p, bounds);
    v.ideal_witness = has_ideal_extension(p, bounds);
    v.condition_iii = v.congruence_witness->holds;
    v.condition_iv = v.ideal_witness->holds;
    v.consistent = *v.condition_iii == v.condition_v && *v.condition_iv == v.condition_v;
  }
  return v;
}

}  // namespace terndescent::ideal
