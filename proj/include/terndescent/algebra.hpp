#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "terndescent/term.hpp"

namespace terndescent::algebra {

/// Index of an element in a carrier.
using Element = std::uint16_t;

/// Largest carrier accepted for any finite algebra.
inline constexpr std::size_t max_carrier = 64;
/// Default size bound for lattice enumeration (congruences, ideals).
inline constexpr std::size_t default_enumeration_bound = 8;

/// Subset of a carrier of at most 64 elements.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}
  static ElementSet full(std::size_t n) {
    return ElementSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static ElementSet of(std::initializer_list<Element> elems) {
    ElementSet s;
    for (auto e : elems) s.insert(e);
    return s;
  }

  bool contains(Element e) const noexcept { return (bits_ >> e) & 1u; }
  void insert(Element e) noexcept { bits_ |= std::uint64_t{1} << e; }
  bool empty() const noexcept { return bits_ == 0; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool subset_of(ElementSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }
  std::uint64_t bits() const noexcept { return bits_; }
  std::vector<Element> elements() const;

  ElementSet operator|(ElementSet o) const noexcept { return ElementSet(bits_ | o.bits_); }
  ElementSet operator&(ElementSet o) const noexcept { return ElementSet(bits_ & o.bits_); }
  friend bool operator==(ElementSet, ElementSet) = default;
  friend auto operator<=>(ElementSet a, ElementSet b) { return a.bits_ <=> b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

/// Unvalidated ternary-ring tables; `t` and `q` are flattened n*n*n arrays
/// indexed by (a*n + b)*n + c.
struct TernaryTables {
  std::vector<std::string> carrier;
  std::vector<Element> t;
  std::vector<Element> q;
  Element zero = 0;
  Element one = 0;
  std::string label;
};

/// Unvalidated ring tables; `add`/`mul` are flattened n*n arrays.
struct RingTables {
  std::vector<std::string> carrier;
  std::vector<Element> add;
  std::vector<Element> mul;
  Element zero = 0;
  Element one = 0;
  std::string label;
};

struct AxiomViolation {
  std::string axiom;
  std::vector<std::string> witness;
  std::string detail;
  /// True for derived identities, whose failure would contradict the axioms.
  bool internal_inconsistency = false;
};

/// Checks (1.1)-(1.4), unique solvability of t(a,b,x)=c, (1.6), (1.7),
/// 0 != 1 for nontrivial carriers, then cross-checks (3.1)-(3.4).
/// Throws malformed_table for tables of the wrong shape or with unknown
/// entries.
std::optional<AxiomViolation> validate_ternary_ring(const TernaryTables& tables);

/// A validated finite ternary ring. Immutable.
class FiniteTernaryRing {
 public:
  /// Throws invalid_algebra (or malformed_table) unless the tables validate.
  explicit FiniteTernaryRing(TernaryTables tables);

  std::size_t size() const noexcept { return n_; }
  Element zero() const noexcept { return tables_.zero; }
  Element one() const noexcept { return tables_.one; }
  Element t(Element a, Element b, Element c) const noexcept { return tables_.t[(a * n_ + b) * n_ + c]; }
  Element q(Element a, Element b, Element c) const noexcept { return tables_.q[(a * n_ + b) * n_ + c]; }

  const std::vector<std::string>& carrier() const noexcept { return tables_.carrier; }
  const std::string& name(Element e) const { return tables_.carrier.at(e); }
  std::optional<Element> find(const std::string& name) const;
  /// Throws foreign_element for unknown names.
  Element element(const std::string& name) const;
  const std::string& label() const noexcept { return tables_.label; }
  const TernaryTables& tables() const noexcept { return tables_; }

 private:
  TernaryTables tables_;
  std::size_t n_;
};

using RingPtr = std::shared_ptr<const FiniteTernaryRing>;

/// Returns a description of the first failing ring axiom, if any.
std::optional<std::string> ring_axiom_violation(const RingTables& ring, bool require_commutative = false);

/// t(a,b,c) = ab + c, q(a,b,c) = c - ab. Throws not_a_ring.
FiniteTernaryRing from_unital_ring(const RingTables& ring);

/// Ternary rings on an n-element carrier up to isomorphism, n <= 3.
/// Carriers are "0", "1", "2", ... with zero = 0 and one = 1 (one = 0 when
/// n = 1). Throws bound_exceeded for larger n.
std::vector<FiniteTernaryRing> enumerate_ternary_rings(std::size_t n);

/// Isomorphism-invariant key: the lexicographically least t-table over all
/// carrier permutations fixing 0 and 1.
std::vector<Element> canonical_form(const FiniteTernaryRing& a);
bool are_isomorphic(const FiniteTernaryRing& a, const FiniteTernaryRing& b);

struct Homomorphism {
  RingPtr source;
  RingPtr target;
  std::vector<Element> map;

  ElementSet image() const;
  std::string str() const;
};

struct MorphismCheck {
  bool holds = true;
  std::string violation;
};

MorphismCheck is_homomorphism(const Homomorphism& f);
/// Injective and preserving t, q, 0, 1; reports the first violation.
MorphismCheck is_monomorphism(const Homomorphism& f);

/// All monomorphisms source -> target, found by propagation from 0 and 1.
std::vector<Homomorphism> find_monomorphisms(const RingPtr& source, const RingPtr& target);

/// Least subset containing `generators`, 0 and 1, closed under t and q.
ElementSet subalgebra_generated(const FiniteTernaryRing& a, ElementSet generators);
bool is_subalgebra(const FiniteTernaryRing& a, ElementSet subset);

/// Partition of the carrier; `block[e]` is the least element of e's block.
class Congruence {
 public:
  explicit Congruence(std::vector<Element> block) : block_(std::move(block)) {}
  static Congruence identity(std::size_t n);

  bool related(Element a, Element b) const { return block_.at(a) == block_.at(b); }
  const std::vector<Element>& block_labels() const noexcept { return block_; }
  std::vector<ElementSet> blocks() const;
  ElementSet block_of(Element e) const;
  std::size_t block_count() const;
  std::string str(const FiniteTernaryRing& a) const;

  friend bool operator==(const Congruence&, const Congruence&) = default;
  friend auto operator<=>(const Congruence&, const Congruence&) = default;

 private:
  std::vector<Element> block_;
};

/// Least congruence containing every given pair.
Congruence congruence_generated(const FiniteTernaryRing& a, const std::vector<std::pair<Element, Element>>& pairs);

/// All congruences, as join-closure of principal congruences, sorted.
/// Throws bound_exceeded when |A| > bound.
std::vector<Congruence> congruences(const FiniteTernaryRing& a, std::size_t bound = default_enumeration_bound);

bool is_congruence(const FiniteTernaryRing& a, const Congruence& c);

/// Bottom-up evaluation of a ground term. Element leaves are looked up by
/// name (tags ignored); nullary 0 and 1 are the distinguished elements.
/// Throws foreign_element for unknown elements or variables.
Element evaluate(const FiniteTernaryRing& a, const trs::Term& ground);

std::string format_set(const FiniteTernaryRing& a, ElementSet s);

}  // namespace terndescent::algebra
