#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "terndescent/algebra.hpp"
#include "terndescent/ideal.hpp"

namespace terndescent::bridge {

using algebra::Element;
using algebra::ElementSet;

/// Validated finite commutative associative unitary ring.
class FiniteCommRing {
 public:
  /// Throws not_a_ring (or malformed_table).
  explicit FiniteCommRing(algebra::RingTables tables);

  std::size_t size() const noexcept { return n_; }
  Element zero() const noexcept { return tables_.zero; }
  Element one() const noexcept { return tables_.one; }
  Element add(Element a, Element b) const noexcept { return tables_.add[a * n_ + b]; }
  Element mul(Element a, Element b) const noexcept { return tables_.mul[a * n_ + b]; }
  Element neg(Element a) const noexcept { return neg_[a]; }
  const std::string& name(Element e) const { return tables_.carrier.at(e); }
  std::optional<Element> find(const std::string& name) const;
  const std::string& label() const noexcept { return tables_.label; }
  const algebra::RingTables& tables() const noexcept { return tables_; }

 private:
  algebra::RingTables tables_;
  std::size_t n_;
  std::vector<Element> neg_;
};

using CommRingPtr = std::shared_ptr<const FiniteCommRing>;

/// Z/n with elements "0".."n-1".
FiniteCommRing cyclic_ring(std::size_t n);
/// Componentwise ring on pairs; elements are named "a:b".
FiniteCommRing product_ring(const FiniteCommRing& r, const FiniteCommRing& s);
/// F4 = F2[w]/(w^2+w+1): "0", "1", "w", "w+1".
FiniteCommRing field_f4();
/// F2[e]/(e^2): "0", "1", "e", "1+e".
FiniteCommRing dual_numbers_f2();
/// F2[a,b]/(a,b)^2, eight elements c0 + c1 a + c2 b.
FiniteCommRing square_zero_f2_ab();

/// Resolves names such as "z4", "f4", "f2e", "f2ab" and products joined by
/// 'x' ("z2xz4"). Returns nullopt for unknown names.
std::optional<FiniteCommRing> builtin_ring(const std::string& name);

/// Rings of order <= 8 built from the constructors above.
std::vector<CommRingPtr> default_ring_corpus();

/// t(a,b,c) = ab + c.
algebra::FiniteTernaryRing as_ternary(const FiniteCommRing& r);

/// Additive subgroups closed under multiplication, sorted by (size, members).
std::vector<ElementSet> ring_ideals(const FiniteCommRing& r, std::size_t bound = 8);

struct Lemma41Report {
  bool holds = true;
  std::vector<ElementSet> zero_ideals;
  std::vector<ElementSet> ring_ideals;
  std::string discrepancy;
};

/// 0-ideals of the ternary ring equal the ring ideals.
Lemma41Report lemma41_check(const FiniteCommRing& r, ideal::Bounds bounds = {});

struct TauSpecializationReport {
  bool holds = true;
  std::string witness;
};

/// Exhaustively compares tau_1 = -y, tau_2 = y and
/// tau_3 = x1 y2 + y1 x2 + y1 y2 + y3 with the generic evaluation.
TauSpecializationReport specialized_tau_check(const FiniteCommRing& r);

/// Unital ring homomorphism.
struct RingMorphism {
  CommRingPtr source;
  CommRingPtr target;
  std::vector<Element> map;

  std::string str() const;
};

bool is_ring_monomorphism(const RingMorphism& p);
std::vector<RingMorphism> find_ring_monomorphisms(const CommRingPtr& source, const CommRingPtr& target);
/// All unital monomorphisms between members of `rings`.
std::vector<RingMorphism> monomorphism_corpus(const std::vector<CommRingPtr>& rings);

/// The same map between the associated ternary rings.
algebra::Homomorphism to_ternary(const RingMorphism& p);

struct PurityResult {
  bool pure = false;
  /// Source-linear additive left inverse of p, when one exists.
  std::optional<std::vector<Element>> retraction;
};

/// For finite modules purity is equivalent to p(R) being a direct summand,
/// so this searches for an R-linear retraction S -> R.
/// Throws not_a_monomorphism or bound_exceeded (target above `bound`).
PurityResult is_pure_mono(const RingMorphism& p, std::size_t bound = 16);

/// Whether `r` is additive, R-linear along p and a left inverse of p.
bool is_retraction(const RingMorphism& p, const std::vector<Element>& r);

struct ComparisonEntry {
  RingMorphism morphism;
  bool pure = false;
  bool ideal_extension = false;
  bool effective_codescent = false;
  std::optional<std::vector<Element>> retraction;
};

struct ClassComparisonReport {
  std::vector<ComparisonEntry> entries;
  /// pure => ideal extension on every entry.
  bool containment_holds = true;
  /// Indices of entries with the ideal extension property that are not pure.
  std::vector<std::size_t> strict_witnesses;
};

ClassComparisonReport compare_descent_classes(const std::vector<RingMorphism>& corpus, ideal::Bounds bounds = {});

}  // namespace terndescent::bridge
