#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "terndescent/term.hpp"

namespace terndescent::trs {

/// Oriented identity lhs -> rhs. The lhs is not a variable and every rhs
/// variable occurs in the lhs.
class RewriteRule {
 public:
  RewriteRule(std::string label, Term lhs, Term rhs);

  const std::string& label() const noexcept { return label_; }
  const Term& lhs() const noexcept { return lhs_; }
  const Term& rhs() const noexcept { return rhs_; }
  std::string str() const;

 private:
  std::string label_;
  Term lhs_;
  Term rhs_;
};

class RewriteSystem {
 public:
  RewriteSystem(Signature signature, std::vector<RewriteRule> rules);

  /// Ternary-ring axioms (1.1)-(1.4), (1.6), (1.7).
  static const RewriteSystem& sigma();
  /// sigma() extended with the derived identities (3.1)-(3.4).
  static const RewriteSystem& sigma_prime();

  const Signature& signature() const noexcept { return signature_; }
  const std::vector<RewriteRule>& rules() const noexcept { return rules_; }
  const RewriteRule* find(const std::string& label) const;

 private:
  Signature signature_;
  std::vector<RewriteRule> rules_;
};

std::optional<Substitution> match_pattern(const Term& pattern, const Term& subject);
/// Most general unifier with occurs check. The result is idempotent.
std::optional<Substitution> unify(const Term& a, const Term& b);

/// One-step reduct at the root of some subterm.
struct RootStep {
  std::string label;
  Term result;
};

/// Computes every one-step reduct at the root of `subject`.
using RootStepper = std::function<void(const Term& subject, std::vector<RootStep>& out)>;

/// Clause (C) stepper for `system`: rules tried in listed order.
RootStepper rule_stepper(const RewriteSystem& system);

struct Redex {
  Position position;
  std::string label;
  /// The replacement for the subterm at `position`.
  Term contractum;
  /// The whole term after the step.
  Term result;
};

/// All one-step reducts, positions in leftmost-innermost order, rules in
/// listed order within a position.
std::vector<Redex> all_redexes(const Term& term, const RootStepper& stepper);
std::vector<Redex> rewrite_once(const RewriteSystem& system, const Term& term);

struct Strategy {
  enum class Kind { leftmost_innermost, leftmost_outermost, random };
  Kind kind = Kind::leftmost_innermost;
  std::uint64_t seed = 0;

  static Strategy innermost() { return {Kind::leftmost_innermost, 0}; }
  static Strategy outermost() { return {Kind::leftmost_outermost, 0}; }
  static Strategy random(std::uint64_t seed) { return {Kind::random, seed}; }
  std::string str() const;
};

/// Parses "leftmost-innermost" / "leftmost-outermost" / "random".
Strategy parse_strategy(const std::string& name, std::uint64_t seed);

struct Normalization {
  Term normal_form;
  std::vector<Redex> trace;
};

/// Rewrites to a normal form with the given stepper. Termination is the
/// caller's responsibility.
Normalization normalize_with(const Term& term, const RootStepper& stepper, const Strategy& strategy);

/// Throws nontermination_risk when condition (*) fails for `system`.
Normalization normalize(const RewriteSystem& system, const Term& term,
                        const Strategy& strategy = Strategy::innermost());

struct CriticalPair {
  Term peak;
  /// Peak with the inner rule applied at `position`.
  Term left;
  /// Peak with the outer rule applied at the root.
  Term right;
  std::string inner_label;
  std::string outer_label;
  Position position;

  std::string str() const;
};

std::vector<CriticalPair> critical_pairs(const RewriteSystem& system);

bool is_joinable(const RewriteSystem& system, const Term& left, const Term& right);

struct RuleConditionReport {
  std::string label;
  bool holds = true;
  std::string detail;
};

struct ConditionReport {
  bool holds = true;
  std::vector<RuleConditionReport> rules;
};

/// Condition (*): no variable occurs more often in rhs than in lhs, and
/// size(lhs) > size(rhs) with size the node count.
ConditionReport check_condition_star(const RewriteSystem& system);
/// Condition (***): every lhs subterm that is neither a variable nor a
/// nullary symbol has the variable set of the whole lhs.
ConditionReport check_condition_triple_star(const RewriteSystem& system);

/// Non-joinable critical pairs grouped by the oriented, canonically renamed
/// equation between their normal forms.
struct CriticalPairClass {
  Term lhs;
  Term rhs;
  std::vector<CriticalPair> members;

  std::string str() const { return lhs.str() + " = " + rhs.str(); }
};

/// Groups non-joinable pairs; normal forms are taken in `system` itself.
std::vector<CriticalPairClass> nonjoinable_classes(const RewriteSystem& system,
                                                   const std::vector<CriticalPair>& pairs);

struct ConfluenceVerdict {
  enum class Kind { confluent, not_confluent, unknown };
  Kind kind = Kind::unknown;
  std::size_t critical_pair_count = 0;
  std::vector<CriticalPairClass> witnesses;
};

std::string to_string(ConfluenceVerdict::Kind kind);

ConfluenceVerdict check_confluence_terminating(const RewriteSystem& system);

}  // namespace terndescent::trs
