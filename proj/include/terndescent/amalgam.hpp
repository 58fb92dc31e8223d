#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "terndescent/algebra.hpp"
#include "terndescent/error.hpp"
#include "terndescent/rewrite.hpp"

namespace terndescent::amalgam {

using algebra::Element;
using algebra::ElementSet;
using algebra::FiniteTernaryRing;
using algebra::RingPtr;

/// The shared subalgebra B: its element names and, per family member, the
/// embedding m_i as a map from shared names to element names of A_i. An
/// empty map means "same names".
struct SharedSpec {
  std::vector<std::string> elements;
  std::vector<std::map<std::string, std::string>> maps;
};

struct AmalgamCheck {
  bool valid = true;
  std::optional<ErrorKind> kind;
  std::string reason;
};

AmalgamCheck validate_amalgam(const std::vector<RingPtr>& family, const SharedSpec& shared);

/// Family (A_i) sharing a subalgebra B. Elements of the free product are
/// written as mixed terms whose leaves are tagged elements `a@i` (1-based i)
/// or `b@B`; elements of B are always tagged B, and the constants 0 and 1
/// are replaced by 0_B and 1_B.
class Amalgam {
 public:
  /// Throws not_a_subalgebra or bad_embedding.
  Amalgam(std::vector<RingPtr> family, SharedSpec shared);

  /// k copies of `a` over the subset `shared` (identity embeddings).
  static Amalgam copies(const RingPtr& a, std::size_t k, ElementSet shared);

  std::size_t family_size() const noexcept { return family_.size(); }
  const FiniteTernaryRing& algebra(std::size_t i) const { return *family_.at(i); }
  const std::vector<RingPtr>& family() const noexcept { return family_; }
  const std::vector<std::string>& shared_elements() const noexcept { return shared_.elements; }

  /// The tagged leaf for element `a` of A_i (i is 0-based).
  trs::Term element(std::size_t i, Element a) const;
  /// Distinct tagged leaves: B's elements first, then each A_i's own.
  std::vector<trs::Term> leaves() const;
  trs::Term zero() const;
  trs::Term one() const;

  /// Parses mixed-term syntax and canonicalizes it. Throws parse_error or
  /// foreign_element.
  trs::Term parse(std::string_view text) const;
  /// Retags B-elements, replaces 0/1; throws foreign_element on unknown
  /// elements or variables.
  trs::Term canonicalize(const trs::Term& term) const;

  /// Clause (C1): value of o(a_1..a_n) when all a_k lie in one A_i.
  std::optional<trs::Term> collapse(const trs::Term& term) const;

  /// Clause (C) for `system` plus clause (C1), labelled "C:<rule>" / "C1".
  trs::RootStepper stepper(const trs::RewriteSystem& system) const;

 private:
  struct Leaf {
    std::size_t algebra;  // meaningless for B-tagged leaves
    bool shared;
    Element index;        // in A_algebra, or in B
  };
  Leaf resolve(const trs::Term& leaf) const;

  std::vector<RingPtr> family_;
  SharedSpec shared_;
  // embed_[i][b] = m_i(b); back_[i][a] = b with m_i(b) = a, or -1.
  std::vector<std::vector<Element>> embed_;
  std::vector<std::vector<int>> back_;
  Element zero_b_ = 0, one_b_ = 0;
};

struct AmalgamRedex {
  trs::Position position;
  std::string clause;  // "C" or "C1"
  std::string label;   // "C:<rule label>" or "C1"
  trs::Term contractum;
  trs::Term result;
};

std::vector<AmalgamRedex> rewrite_once_amalgam(const Amalgam& am, const trs::Term& term,
                                               const trs::RewriteSystem& system = trs::RewriteSystem::sigma_prime());

/// Throws nontermination_risk when `system` fails condition (*).
trs::Normalization amalgam_normalize(const Amalgam& am, const trs::Term& term,
                                     const trs::Strategy& strategy = trs::Strategy::innermost(),
                                     const trs::RewriteSystem& system = trs::RewriteSystem::sigma_prime());

/// n_i(a) as a normal form (i is 0-based).
trs::Term canonical_injection(const Amalgam& am, std::size_t i, Element a);

bool equal_in_amalgam(const Amalgam& am, const trs::Term& s, const trs::Term& t,
                      const trs::RewriteSystem& system = trs::RewriteSystem::sigma_prime());

/// Random mixed term: each node uniform over {t, q} and the leaves, with
/// leaves forced at `depth`; the root is always a symbol when depth > 0.
trs::Term random_mixed_term(const Amalgam& am, std::mt19937_64& rng, std::size_t depth);

struct UniqueNfOptions {
  std::size_t samples = 500;
  std::size_t depth = 5;
  std::uint64_t seed = 1;
  /// Random strategies per sample, on top of leftmost-innermost and
  /// leftmost-outermost.
  std::size_t random_strategies = 100;
};

struct UniqueNfWitness {
  trs::Term term;
  trs::Term first;
  std::string first_strategy;
  trs::Term second;
  std::string second_strategy;
};

struct UniqueNfReport {
  bool pass = true;
  std::size_t samples_run = 0;
  std::size_t normalizations = 0;
  std::uint64_t seed = 0;
  std::optional<UniqueNfWitness> witness;
};

/// Samples alternate between uniform random terms and critical-pair peaks of
/// `system` whose variables are instantiated with random mixed terms.
UniqueNfReport unique_nf_property_test(const Amalgam& am, const trs::RewriteSystem& system,
                                       const UniqueNfOptions& options = {});

struct StrongAmalgamationReport {
  bool holds = true;
  /// Per family member: distinct elements have distinct normal forms.
  std::vector<bool> injective;
  struct Intersection {
    std::size_t i, j;
    std::vector<trs::Term> common;
    bool equals_shared;
  };
  std::vector<Intersection> intersections;
  std::string reason;
};

StrongAmalgamationReport check_strong_amalgamation(
    const Amalgam& am, const trs::RewriteSystem& system = trs::RewriteSystem::sigma_prime());

}  // namespace terndescent::amalgam
