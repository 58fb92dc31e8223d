#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace terndescent::trs {

struct Symbol {
  std::string name;
  std::size_t arity = 0;
};

/// Operation symbols with arities. Names are unique.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  /// t/3, q/3, 0/0, 1/0.
  static const Signature& ternary_ring();

  std::optional<std::size_t> arity(std::string_view name) const;
  bool contains(std::string_view name) const { return arity(name).has_value(); }
  std::span<const Symbol> symbols() const { return symbols_; }
  std::vector<std::string> nullary_symbols() const;

 private:
  std::vector<Symbol> symbols_;
};

enum class TermKind { variable, application, element };

/// Immutable first-order term: a variable, a symbol applied to children, or a
/// constant naming an element of some algebra (optionally tagged with the
/// algebra it belongs to). Copies share structure.
class Term {
 public:
  static Term variable(std::string name);
  static Term app(std::string symbol, std::vector<Term> children = {});
  static Term element(std::string tag, std::string name);

  TermKind kind() const noexcept;
  bool is_variable() const noexcept { return kind() == TermKind::variable; }
  bool is_app() const noexcept { return kind() == TermKind::application; }
  bool is_element() const noexcept { return kind() == TermKind::element; }

  /// Variable name, symbol name, or element name depending on kind.
  const std::string& name() const noexcept;
  /// Element tag; empty for untagged elements and for other kinds.
  const std::string& tag() const noexcept;
  std::span<const Term> children() const noexcept;
  const Term& child(std::size_t i) const { return children()[i]; }

  /// Total node count.
  std::size_t size() const noexcept;
  /// Number of signature-symbol nodes.
  std::size_t symbol_count() const noexcept;
  std::size_t depth() const noexcept;
  bool is_ground() const noexcept;

  std::string str() const;

  friend bool operator==(const Term& a, const Term& b) noexcept;
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Child-index path from the root, 1-based; empty is the root.
using Position = std::vector<std::size_t>;

std::string to_string(const Position& pos);

const Term& subterm_at(const Term& term, const Position& pos);
Term replace_at(const Term& term, const Position& pos, const Term& replacement);
std::set<std::string> variables_of(const Term& term);
std::map<std::string, std::size_t> variable_multiplicities(const Term& term);

/// All positions in pre-order (leftmost-outermost first).
std::vector<Position> positions_preorder(const Term& term);
/// All positions in post-order (leftmost-innermost first).
std::vector<Position> positions_postorder(const Term& term);

/// Finite map from variable names to terms.
class Substitution {
 public:
  Substitution() = default;

  std::optional<Term> lookup(const std::string& var) const;
  /// Binds `var`; a binding of a variable to itself is dropped.
  void bind(const std::string& var, Term value);
  bool empty() const noexcept { return map_.empty(); }
  std::size_t size() const noexcept { return map_.size(); }
  const std::map<std::string, Term>& bindings() const noexcept { return map_; }

  Term apply(const Term& term) const;
  std::string str() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> map_;
};

struct ParseOptions {
  const Signature* signature = &Signature::ternary_ring();
  /// Bare atoms in this set parse as untagged element constants.
  std::set<std::string> element_names;
  /// Whether `name@tag` atoms are accepted.
  bool allow_tagged = true;
  bool allow_variables = true;
};

/// Parses s-expression syntax such as `(t 0 x (q x y 0))`.
Term parse_term(std::string_view text, const ParseOptions& options = {});

/// Renames variables to x, y, z, w, x5, x6, ... in order of first occurrence
/// across `terms` (pre-order, left to right).
std::vector<Term> canonical_rename(std::span<const Term> terms);

}  // namespace terndescent::trs
