#include "terndescent/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "terndescent/error.hpp"

namespace terndescent {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_position: return "invalid-position";
    case ErrorKind::nontermination_risk: return "nontermination-risk";
    case ErrorKind::malformed_table: return "malformed-table";
    case ErrorKind::not_a_ring: return "not-a-ring";
    case ErrorKind::bound_exceeded: return "bound-exceeded";
    case ErrorKind::foreign_element: return "foreign-element";
    case ErrorKind::arity_mismatch: return "arity-mismatch";
    case ErrorKind::empty_subset: return "empty-subset";
    case ErrorKind::not_a_monomorphism: return "not-a-monomorphism";
    case ErrorKind::not_a_subalgebra: return "not-a-subalgebra";
    case ErrorKind::bad_embedding: return "bad-embedding";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::ill_formed_rule: return "ill-formed-rule";
    case ErrorKind::invalid_algebra: return "invalid-algebra";
  }
  return "error";
}

}  // namespace terndescent

namespace terndescent::trs {

// ---------------------------------------------------------------- Signature

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    for (std::size_t j = i + 1; j < symbols_.size(); ++j) {
      if (symbols_[i].name == symbols_[j].name) {
        throw Error(ErrorKind::parse_error, "duplicate symbol '" + symbols_[i].name + "'");
      }
    }
  }
}

const Signature& Signature::ternary_ring() {
  static const Signature sig({{"t", 3}, {"q", 3}, {"0", 0}, {"1", 0}});
  return sig;
}

std::optional<std::size_t> Signature::arity(std::string_view name) const {
  for (const auto& s : symbols_) {
    if (s.name == name) return s.arity;
  }
  return std::nullopt;
}

std::vector<std::string> Signature::nullary_symbols() const {
  std::vector<std::string> out;
  for (const auto& s : symbols_) {
    if (s.arity == 0) out.push_back(s.name);
  }
  return out;
}

// ---------------------------------------------------------------- Term

struct Term::Node {
  TermKind kind;
  std::string name;
  std::string tag;
  std::vector<Term> children;
  std::size_t size = 1;
  std::size_t symbols = 0;
  std::size_t depth = 0;
  bool ground = true;
};

Term Term::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::variable;
  n->name = std::move(name);
  n->ground = false;
  return Term(std::move(n));
}

Term Term::app(std::string symbol, std::vector<Term> children) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::application;
  n->name = std::move(symbol);
  n->symbols = 1;
  for (const auto& c : children) {
    n->size += c.size();
    n->symbols += c.symbol_count();
    n->depth = std::max(n->depth, c.depth() + 1);
    n->ground = n->ground && c.is_ground();
  }
  n->children = std::move(children);
  return Term(std::move(n));
}

Term Term::element(std::string tag, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::element;
  n->name = std::move(name);
  n->tag = std::move(tag);
  return Term(std::move(n));
}

TermKind Term::kind() const noexcept { return node_->kind; }
const std::string& Term::name() const noexcept { return node_->name; }
const std::string& Term::tag() const noexcept { return node_->tag; }
std::span<const Term> Term::children() const noexcept { return node_->children; }
std::size_t Term::size() const noexcept { return node_->size; }
std::size_t Term::symbol_count() const noexcept { return node_->symbols; }
std::size_t Term::depth() const noexcept { return node_->depth; }
bool Term::is_ground() const noexcept { return node_->ground; }

namespace {

void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::variable:
      out += t.name();
      return;
    case TermKind::element:
      out += t.name();
      if (!t.tag().empty()) {
        out += '@';
        out += t.tag();
      }
      return;
    case TermKind::application:
      if (t.children().empty()) {
        out += t.name();
        return;
      }
      out += '(';
      out += t.name();
      for (const auto& c : t.children()) {
        out += ' ';
        print(c, out);
      }
      out += ')';
      return;
  }
}

}  // namespace

std::string Term::str() const {
  std::string out;
  print(*this, out);
  return out;
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size() || a.name() != b.name() || a.tag() != b.tag()) {
    return false;
  }
  auto ca = a.children();
  auto cb = b.children();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.tag() <=> b.tag(); c != 0) return c;
  auto ca = a.children();
  auto cb = b.children();
  return std::lexicographical_compare_three_way(ca.begin(), ca.end(), cb.begin(), cb.end());
}

// ---------------------------------------------------------------- positions

std::string to_string(const Position& pos) {
  std::string out = "[";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(pos[i]);
  }
  return out + "]";
}

const Term& subterm_at(const Term& term, const Position& pos) {
  const Term* cur = &term;
  for (std::size_t idx : pos) {
    if (idx == 0 || idx > cur->children().size()) {
      throw Error(ErrorKind::invalid_position, to_string(pos) + " in " + term.str());
    }
    cur = &cur->child(idx - 1);
  }
  return *cur;
}

namespace {

Term replace_rec(const Term& term, const Position& pos, std::size_t depth, const Term& repl) {
  if (depth == pos.size()) return repl;
  std::size_t idx = pos[depth];
  if (idx == 0 || idx > term.children().size()) {
    throw Error(ErrorKind::invalid_position, to_string(pos));
  }
  std::vector<Term> kids(term.children().begin(), term.children().end());
  kids[idx - 1] = replace_rec(kids[idx - 1], pos, depth + 1, repl);
  return Term::app(term.name(), std::move(kids));
}

void collect_positions(const Term& t, Position& cur, std::vector<Position>& out, bool pre) {
  if (pre) out.push_back(cur);
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    cur.push_back(i + 1);
    collect_positions(t.child(i), cur, out, pre);
    cur.pop_back();
  }
  if (!pre) out.push_back(cur);
}

void count_vars(const Term& t, std::map<std::string, std::size_t>& out) {
  if (t.is_variable()) {
    ++out[t.name()];
    return;
  }
  for (const auto& c : t.children()) count_vars(c, out);
}

}  // namespace

Term replace_at(const Term& term, const Position& pos, const Term& replacement) {
  return replace_rec(term, pos, 0, replacement);
}

std::map<std::string, std::size_t> variable_multiplicities(const Term& term) {
  std::map<std::string, std::size_t> out;
  count_vars(term, out);
  return out;
}

std::set<std::string> variables_of(const Term& term) {
  std::set<std::string> out;
  for (const auto& [v, n] : variable_multiplicities(term)) out.insert(v);
  return out;
}

std::vector<Position> positions_preorder(const Term& term) {
  std::vector<Position> out;
  Position cur;
  collect_positions(term, cur, out, true);
  return out;
}

std::vector<Position> positions_postorder(const Term& term) {
  std::vector<Position> out;
  Position cur;
  collect_positions(term, cur, out, false);
  return out;
}

// ---------------------------------------------------------------- Substitution

std::optional<Term> Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void Substitution::bind(const std::string& var, Term value) {
  if (value.is_variable() && value.name() == var) {
    map_.erase(var);
    return;
  }
  map_.insert_or_assign(var, std::move(value));
}

Term Substitution::apply(const Term& term) const {
  if (map_.empty() || term.is_ground()) return term;
  if (term.is_variable()) {
    auto it = map_.find(term.name());
    return it == map_.end() ? term : it->second;
  }
  std::vector<Term> kids;
  kids.reserve(term.children().size());
  for (const auto& c : term.children()) kids.push_back(apply(c));
  return Term::app(term.name(), std::move(kids));
}

std::string Substitution::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : map_) {
    if (!first) out += ", ";
    first = false;
    out += v + " -> " + t.str();
  }
  return out + "}";
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : text_(text), opts_(opts) {}

  Term parse() {
    Term t = parse_one();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse_error,
                msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') break;
      ++pos_;
    }
    if (start == pos_) fail("expected atom");
    return std::string(text_.substr(start, pos_ - start));
  }

  Term parse_one() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] == '(') {
      ++pos_;
      skip_ws();
      std::string sym = atom();
      auto ar = opts_.signature->arity(sym);
      if (!ar) fail("unknown symbol '" + sym + "'");
      std::vector<Term> kids;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) fail("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        kids.push_back(parse_one());
      }
      if (kids.size() != *ar) {
        fail("symbol '" + sym + "' expects " + std::to_string(*ar) + " arguments, got " +
             std::to_string(kids.size()));
      }
      return Term::app(std::move(sym), std::move(kids));
    }
    return leaf(atom());
  }

  Term leaf(const std::string& a) {
    if (auto at = a.rfind('@'); at != std::string::npos) {
      if (!opts_.allow_tagged) fail("tagged element '" + a + "' not allowed here");
      if (at == 0 || at + 1 == a.size()) fail("malformed tagged element '" + a + "'");
      return Term::element(a.substr(at + 1), a.substr(0, at));
    }
    if (auto ar = opts_.signature->arity(a)) {
      if (*ar != 0) fail("symbol '" + a + "' used without arguments");
      return Term::app(a);
    }
    if (opts_.element_names.contains(a)) return Term::element("", a);
    bool ident = std::islower(static_cast<unsigned char>(a[0])) || a[0] == '_';
    for (char c : a) {
      ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'');
    }
    if (!ident) fail("'" + a + "' is neither a symbol, an element, nor a variable");
    if (!opts_.allow_variables) fail("variable '" + a + "' not allowed here");
    return Term::variable(a);
  }

  std::string_view text_;
  const ParseOptions& opts_;
  std::size_t pos_ = 0;
};

std::string canonical_var_name(std::size_t i) {
  static const char* first[] = {"x", "y", "z", "w"};
  if (i < 4) return first[i];
  return "x" + std::to_string(i + 1);
}

void first_occurrences(const Term& t, std::vector<std::string>& order) {
  if (t.is_variable()) {
    if (std::find(order.begin(), order.end(), t.name()) == order.end()) order.push_back(t.name());
    return;
  }
  for (const auto& c : t.children()) first_occurrences(c, order);
}

}  // namespace

Term parse_term(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse();
}

std::vector<Term> canonical_rename(std::span<const Term> terms) {
  std::vector<std::string> order;
  for (const auto& t : terms) first_occurrences(t, order);
  Substitution ren;
  for (std::size_t i = 0; i < order.size(); ++i) {
    // apply() is simultaneous, so swaps like x->y, y->x are safe.
    ren.bind(order[i], Term::variable(canonical_var_name(i)));
  }
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(ren.apply(t));
  return out;
}

}  // namespace terndescent::trs
