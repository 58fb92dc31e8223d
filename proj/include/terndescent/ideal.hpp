#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "terndescent/algebra.hpp"
#include "terndescent/term.hpp"

namespace terndescent::ideal {

using algebra::Congruence;
using algebra::Element;
using algebra::ElementSet;
using algebra::FiniteTernaryRing;
using algebra::Homomorphism;

/// Defining term of tau_1 (variables x, y), tau_2 (x1, x2, x3, y) or
/// tau_3 (x1, x2, x3, y1, y2, y3).
const trs::Term& tau_term(int which);
std::size_t tau_arity(int which);

/// Evaluates tau_which by table evaluation of its defining term.
/// Throws arity_mismatch or foreign_element.
Element eval_tau(const FiniteTernaryRing& a, int which, std::span<const Element> args);

// Direct table kernels for the three terms; equal to eval_tau.
inline Element tau1(const FiniteTernaryRing& a, Element x, Element y) {
  return a.q(a.one(), a.t(a.one(), x, y), x);
}
inline Element tau2(const FiniteTernaryRing& a, Element x1, Element x2, Element x3, Element y) {
  return a.q(a.one(), x3, a.q(x1, x2, a.t(a.one(), a.t(x1, x2, x3), y)));
}
inline Element tau3(const FiniteTernaryRing& a, Element x1, Element x2, Element x3, Element y1, Element y2,
                    Element y3) {
  const Element o = a.one();
  return a.q(o, a.t(x1, x2, x3), a.t(a.t(o, x1, y1), a.t(o, x2, y2), a.t(o, x3, y3)));
}

/// One tau evaluation: which term, its arguments (x's then y's), its value.
struct TauInstance {
  int which = 1;
  std::vector<Element> args;
  Element value = 0;

  std::string str(const FiniteTernaryRing& a) const;
};

struct IdealCheck {
  bool holds = true;
  std::optional<TauInstance> violation;
};

/// Exhaustive closure check: h's from `subset`, a's from the carrier.
/// Throws empty_subset.
IdealCheck is_zero_ideal(const FiniteTernaryRing& a, ElementSet subset);

struct ClosureStep {
  Element element;
  TauInstance via;
};

/// Stages Y_0 = seed, Y_1, ..., Y_k with Y_k the fixpoint (Y_k is not
/// repeated). provenance[i] lists the elements first added in stage i+1.
struct ClosureTrace {
  std::vector<ElementSet> stages;
  std::vector<std::vector<ClosureStep>> provenance;

  ElementSet result() const { return stages.back(); }
};

/// Iterates Y_i = Y_{i-1} u {tau_k(a..., h...)} with a's ranging over the
/// carrier and h's over Y_{i-1}. Throws empty_subset.
ClosureTrace ideal_closure(const FiniteTernaryRing& a, ElementSet seed);

struct Bounds {
  std::size_t congruence = algebra::default_enumeration_bound;
  std::size_t subset = 6;
};

enum class IdealMethod { automatic, congruence_blocks, subset_search };

/// All 0-ideals, sorted by (size, members). `automatic` uses congruence
/// 0-blocks and, when the carrier is within the subset bound, also the
/// exhaustive tau check, and throws std::logic_error if they disagree.
std::vector<ElementSet> zero_ideals(const FiniteTernaryRing& a, IdealMethod method = IdealMethod::automatic,
                                    Bounds bounds = {});

/// Compares tau-closed nonempty subsets with congruence 0-blocks and checks
/// that each 0-block belongs to exactly one congruence.
struct DeterminednessReport {
  bool holds = true;
  std::vector<ElementSet> tau_closed;
  std::vector<ElementSet> zero_blocks;
  std::string discrepancy;
};

DeterminednessReport check_ideal_determined(const FiniteTernaryRing& a, Bounds bounds = {});

struct CongruenceExtension {
  bool holds = true;
  std::vector<Congruence> source;
  /// Parallel to `source`; empty where no extension exists.
  std::vector<std::optional<Congruence>> extension;
};

struct IdealExtension {
  bool holds = true;
  std::vector<ElementSet> source;
  std::vector<std::optional<ElementSet>> extension;
};

struct ClosureCondition {
  bool holds = true;
  std::vector<ElementSet> source;
  /// Closure of p(I) in the target, per source ideal.
  std::vector<ClosureTrace> traces;
  /// p^{-1} of the closure, per source ideal.
  std::vector<ElementSet> pullback;
};

/// Each throws not_a_monomorphism or bound_exceeded.
CongruenceExtension has_congruence_extension(const Homomorphism& p, Bounds bounds = {});
IdealExtension has_ideal_extension(const Homomorphism& p, Bounds bounds = {});
ClosureCondition closure_condition_v(const Homomorphism& p, Bounds bounds = {});

struct MorphismVerdict {
  bool effective = false;
  std::optional<bool> condition_iii;
  std::optional<bool> condition_iv;
  bool condition_v = false;
  /// All computed conditions agree.
  bool consistent = true;
  std::optional<CongruenceExtension> congruence_witness;
  std::optional<IdealExtension> ideal_witness;
  ClosureCondition closure;
  /// A source 0-ideal whose closure in the target pulls back to something
  /// larger.
  std::optional<ElementSet> counterexample;
};

/// Decides via the closure condition; conditions (iii) and (iv) are computed
/// as cross-checks when the target is within the congruence bound.
MorphismVerdict is_effective_codescent(const Homomorphism& p, Bounds bounds = {});

ElementSet preimage(const Homomorphism& p, ElementSet target_subset);
ElementSet image(const Homomorphism& p, ElementSet source_subset);

}  // namespace terndescent::ideal
