#include "terndescent/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "terndescent/error.hpp"

namespace terndescent::algebra {

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<Element>(std::countr_zero(b)));
  return out;
}

std::string format_set(const FiniteTernaryRing& a, ElementSet s) {
  std::string out = "{";
  bool first = true;
  for (auto e : s.elements()) {
    if (!first) out += ',';
    first = false;
    out += a.name(e);
  }
  return out + "}";
}

// ---------------------------------------------------------------- validation

namespace {

void check_carrier(const std::vector<std::string>& carrier) {
  if (carrier.empty()) throw Error(ErrorKind::malformed_table, "empty carrier");
  if (carrier.size() > max_carrier) {
    throw Error(ErrorKind::bound_exceeded,
                "carrier of size " + std::to_string(carrier.size()) + " exceeds " + std::to_string(max_carrier));
  }
  std::set<std::string> seen;
  for (const auto& c : carrier) {
    if (!seen.insert(c).second) throw Error(ErrorKind::malformed_table, "duplicate element '" + c + "'");
  }
}

void check_table(const std::vector<Element>& table, std::size_t expected, std::size_t n, const char* what) {
  if (table.size() != expected) {
    throw Error(ErrorKind::malformed_table, std::string(what) + " table has " + std::to_string(table.size()) +
                                                " entries, expected " + std::to_string(expected));
  }
  for (auto e : table) {
    if (e >= n) throw Error(ErrorKind::malformed_table, std::string(what) + " table has an unknown element");
  }
}

struct TableView {
  const TernaryTables& tb;
  std::size_t n;
  Element t(std::size_t a, std::size_t b, std::size_t c) const { return tb.t[(a * n + b) * n + c]; }
  Element q(std::size_t a, std::size_t b, std::size_t c) const { return tb.q[(a * n + b) * n + c]; }
  std::string w(const char* var, std::size_t e) const { return std::string(var) + "=" + tb.carrier[e]; }
};

}  // namespace

std::optional<AxiomViolation> validate_ternary_ring(const TernaryTables& tb) {
  check_carrier(tb.carrier);
  const std::size_t n = tb.carrier.size();
  check_table(tb.t, n * n * n, n, "t");
  check_table(tb.q, n * n * n, n, "q");
  if (tb.zero >= n || tb.one >= n) throw Error(ErrorKind::malformed_table, "zero/one outside the carrier");

  TableView v{tb, n};
  const std::size_t z = tb.zero, o = tb.one;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (v.t(z, x, y) != y) return AxiomViolation{"1.1", {v.w("x", x), v.w("y", y)}, "t(0,x,y) != y"};
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (v.t(x, z, y) != y) return AxiomViolation{"1.2", {v.w("x", x), v.w("y", y)}, "t(x,0,y) != y"};
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (v.t(o, x, z) != x) return AxiomViolation{"1.3", {v.w("x", x)}, "t(1,x,0) != x"};
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (v.t(x, o, z) != x) return AxiomViolation{"1.4", {v.w("x", x)}, "t(x,1,0) != x"};
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::uint64_t hit = 0;
      for (std::size_t x = 0; x < n; ++x) hit |= std::uint64_t{1} << v.t(a, b, x);
      if (hit != ElementSet::full(n).bits()) {
        return AxiomViolation{"unique-solvability",
                              {v.w("a", a), v.w("b", b)},
                              "x -> t(a,b,x) is not a bijection"};
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t w = 0; w < n; ++w) {
        if (v.q(x, y, v.t(x, y, w)) != w) {
          return AxiomViolation{"1.6", {v.w("x", x), v.w("y", y), v.w("z", w)}, "q(x,y,t(x,y,z)) != z"};
        }
        if (v.t(x, y, v.q(x, y, w)) != w) {
          return AxiomViolation{"1.7", {v.w("x", x), v.w("y", y), v.w("z", w)}, "t(x,y,q(x,y,z)) != z"};
        }
      }
    }
  }
  if (n > 1 && z == o) return AxiomViolation{"(**)", {}, "0 = 1 in a nontrivial algebra"};

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (v.q(z, x, y) != y) return AxiomViolation{"3.1", {v.w("x", x), v.w("y", y)}, "q(0,x,y) != y", true};
      if (v.q(x, z, y) != y) return AxiomViolation{"3.2", {v.w("x", x), v.w("y", y)}, "q(x,0,y) != y", true};
    }
    if (v.q(o, x, x) != z) return AxiomViolation{"3.3", {v.w("x", x)}, "q(1,x,x) != 0", true};
    if (v.q(x, o, x) != z) return AxiomViolation{"3.4", {v.w("x", x)}, "q(x,1,x) != 0", true};
  }
  return std::nullopt;
}

FiniteTernaryRing::FiniteTernaryRing(TernaryTables tables) : tables_(std::move(tables)), n_(tables_.carrier.size()) {
  if (auto bad = validate_ternary_ring(tables_)) {
    std::string w;
    for (const auto& s : bad->witness) w += (w.empty() ? "" : ", ") + s;
    throw Error(ErrorKind::invalid_algebra, "axiom " + bad->axiom + " fails (" + bad->detail +
                                                (w.empty() ? "" : "; witness " + w) + ")");
  }
}

std::optional<Element> FiniteTernaryRing::find(const std::string& name) const {
  auto it = std::find(tables_.carrier.begin(), tables_.carrier.end(), name);
  if (it == tables_.carrier.end()) return std::nullopt;
  return static_cast<Element>(it - tables_.carrier.begin());
}

Element FiniteTernaryRing::element(const std::string& name) const {
  if (auto e = find(name)) return *e;
  throw Error(ErrorKind::foreign_element, "'" + name + "' is not an element of " +
                                              (label().empty() ? std::string("the algebra") : label()));
}

// ---------------------------------------------------------------- rings

std::optional<std::string> ring_axiom_violation(const RingTables& r, bool require_commutative) {
  check_carrier(r.carrier);
  const std::size_t n = r.carrier.size();
  check_table(r.add, n * n, n, "add");
  check_table(r.mul, n * n, n, "mul");
  if (r.zero >= n || r.one >= n) throw Error(ErrorKind::malformed_table, "zero/one outside the carrier");
  auto add = [&](std::size_t a, std::size_t b) -> std::size_t { return r.add[a * n + b]; };
  auto mul = [&](std::size_t a, std::size_t b) -> std::size_t { return r.mul[a * n + b]; };
  auto nm = [&](std::size_t a) { return r.carrier[a]; };

  for (std::size_t a = 0; a < n; ++a) {
    if (add(a, r.zero) != a || add(r.zero, a) != a) return "0 is not an additive identity at " + nm(a);
    if (mul(a, r.one) != a || mul(r.one, a) != a) return "1 is not a multiplicative identity at " + nm(a);
    bool has_neg = false;
    for (std::size_t b = 0; b < n; ++b) has_neg = has_neg || add(a, b) == r.zero;
    if (!has_neg) return nm(a) + " has no additive inverse";
    for (std::size_t b = 0; b < n; ++b) {
      if (add(a, b) != add(b, a)) return "addition not commutative at " + nm(a) + "," + nm(b);
      if (require_commutative && mul(a, b) != mul(b, a)) {
        return "multiplication not commutative at " + nm(a) + "," + nm(b);
      }
      for (std::size_t c = 0; c < n; ++c) {
        auto where = nm(a) + "," + nm(b) + "," + nm(c);
        if (add(add(a, b), c) != add(a, add(b, c))) return "addition not associative at " + where;
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return "multiplication not associative at " + where;
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return "left distributivity fails at " + where;
        if (mul(add(a, b), c) != add(mul(a, c), mul(b, c))) return "right distributivity fails at " + where;
      }
    }
  }
  return std::nullopt;
}

FiniteTernaryRing from_unital_ring(const RingTables& r) {
  if (auto bad = ring_axiom_violation(r)) throw Error(ErrorKind::not_a_ring, *bad);
  const std::size_t n = r.carrier.size();
  std::vector<Element> neg(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (r.add[a * n + b] == r.zero) neg[a] = static_cast<Element>(b);
    }
  }
  TernaryTables tb{r.carrier, std::vector<Element>(n * n * n), std::vector<Element>(n * n * n), r.zero, r.one,
                   r.label};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t ab = r.mul[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        tb.t[(a * n + b) * n + c] = r.add[ab * n + c];
        tb.q[(a * n + b) * n + c] = r.add[c * n + neg[ab]];
      }
    }
  }
  return FiniteTernaryRing(std::move(tb));
}

// ---------------------------------------------------------------- isomorphism

std::vector<Element> canonical_form(const FiniteTernaryRing& a) {
  const std::size_t n = a.size();
  // Elements other than 0 and 1 are permuted freely.
  std::vector<Element> rest;
  for (Element e = 0; e < n; ++e) {
    if (e != a.zero() && e != a.one()) rest.push_back(e);
  }
  std::vector<Element> best;
  std::vector<Element> relabel(n), cand(n * n * n + 1);
  do {
    relabel[a.zero()] = 0;
    if (n > 1) relabel[a.one()] = 1;
    for (std::size_t i = 0; i < rest.size(); ++i) relabel[rest[i]] = static_cast<Element>(i + 2);
    cand[0] = static_cast<Element>(n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        for (Element z = 0; z < n; ++z) {
          cand[1 + (relabel[x] * n + relabel[y]) * n + relabel[z]] = relabel[a.t(x, y, z)];
        }
      }
    }
    if (best.empty() || cand < best) best = cand;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

bool are_isomorphic(const FiniteTernaryRing& a, const FiniteTernaryRing& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------- enumeration

std::vector<FiniteTernaryRing> enumerate_ternary_rings(std::size_t n) {
  if (n > 3) {
    throw Error(ErrorKind::bound_exceeded, "exhaustive enumeration supports carriers of size <= 3, got " +
                                               std::to_string(n));
  }
  std::vector<FiniteTernaryRing> out;
  if (n == 0) return out;
  const Element zero = 0, one = n > 1 ? 1 : 0;

  // Rows t(a,b,.) with a,b != 0 are the only free ones; each is a permutation
  // whose value at 0 is pinned by (1.3) when a = 1 and by (1.4) when b = 1.
  struct Row {
    Element a, b;
    std::vector<std::vector<Element>> choices;
  };
  std::vector<Row> rows;
  for (Element a = 1; a < n; ++a) {
    for (Element b = 1; b < n; ++b) {
      Row row{a, b, {}};
      std::vector<Element> perm(n);
      std::iota(perm.begin(), perm.end(), Element{0});
      do {
        if (a == one && perm[zero] != b) continue;
        if (b == one && perm[zero] != a) continue;
        row.choices.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      rows.push_back(std::move(row));
    }
  }

  std::vector<std::string> carrier;
  for (std::size_t i = 0; i < n; ++i) carrier.push_back(std::to_string(i));
  std::vector<Element> t(n * n * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      t[(zero * n + x) * n + y] = y;
      t[(x * n + zero) * n + y] = y;
    }
  }

  std::set<std::vector<Element>> seen;
  std::vector<std::size_t> pick(rows.size(), 0);
  while (true) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& perm = rows[r].choices[pick[r]];
      for (Element c = 0; c < n; ++c) t[(rows[r].a * n + rows[r].b) * n + c] = perm[c];
    }
    std::vector<Element> q(n * n * n);
    for (std::size_t ab = 0; ab < n * n; ++ab) {
      for (Element c = 0; c < n; ++c) q[ab * n + t[ab * n + c]] = c;
    }
    TernaryTables tb{carrier, t, q, zero, one, "T" + std::to_string(n) + "#" + std::to_string(out.size())};
    if (!validate_ternary_ring(tb)) {
      FiniteTernaryRing cand(std::move(tb));
      if (seen.insert(canonical_form(cand)).second) out.push_back(std::move(cand));
    }
    std::size_t r = 0;
    while (r < rows.size() && ++pick[r] == rows[r].choices.size()) pick[r++] = 0;
    if (r == rows.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------- morphisms

ElementSet Homomorphism::image() const {
  ElementSet s;
  for (auto e : map) s.insert(e);
  return s;
}

std::string Homomorphism::str() const {
  std::string out = source->label() + " -> " + target->label() + " {";
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (i) out += ", ";
    out += source->name(static_cast<Element>(i)) + "->" + target->name(map[i]);
  }
  return out + "}";
}

namespace {

MorphismCheck check_preservation(const Homomorphism& f) {
  const auto& s = *f.source;
  const auto& d = *f.target;
  if (f.map.size() != s.size()) return {false, "map is not total on the source carrier"};
  for (auto e : f.map) {
    if (e >= d.size()) return {false, "map has values outside the target carrier"};
  }
  if (f.map[s.zero()] != d.zero()) return {false, "0 is not preserved"};
  if (f.map[s.one()] != d.one()) return {false, "1 is not preserved"};
  const std::size_t n = s.size();
  for (int op = 0; op < 2; ++op) {
    const char* opname = op == 0 ? "t" : "q";
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        for (Element c = 0; c < n; ++c) {
          Element src = op == 0 ? s.t(a, b, c) : s.q(a, b, c);
          Element img = op == 0 ? d.t(f.map[a], f.map[b], f.map[c]) : d.q(f.map[a], f.map[b], f.map[c]);
          if (f.map[src] != img) {
            std::string at = std::string(opname) + "(" + s.name(a) + "," + s.name(b) + "," + s.name(c) + ")";
            return {false, at + ": image " + d.name(f.map[src]) + " != " + opname + "(" + d.name(f.map[a]) + "," +
                               d.name(f.map[b]) + "," + d.name(f.map[c]) + ")=" + d.name(img) + " in target"};
          }
        }
      }
    }
  }
  return {};
}

}  // namespace

MorphismCheck is_homomorphism(const Homomorphism& f) { return check_preservation(f); }

MorphismCheck is_monomorphism(const Homomorphism& f) {
  if (f.map.size() == f.source->size()) {
    std::vector<int> pre(f.target->size(), -1);
    for (std::size_t i = 0; i < f.map.size(); ++i) {
      if (f.map[i] >= f.target->size()) break;
      if (pre[f.map[i]] >= 0) {
        return {false, "not injective: " + f.source->name(static_cast<Element>(pre[f.map[i]])) + " and " +
                           f.source->name(static_cast<Element>(i)) + " both map to " + f.target->name(f.map[i])};
      }
      pre[f.map[i]] = static_cast<int>(i);
    }
  }
  return check_preservation(f);
}

std::vector<Homomorphism> find_monomorphisms(const RingPtr& source, const RingPtr& target) {
  const auto& s = *source;
  const auto& d = *target;
  const std::size_t n = s.size();
  std::vector<Homomorphism> out;
  if (n > d.size()) return out;
  constexpr int unset = -1;

  std::function<void(std::vector<int>)> search = [&](std::vector<int> img) {
    std::vector<bool> used(d.size(), false);
    auto assign = [&](Element x, Element v) {
      if (img[x] != unset) return img[x] == v;
      if (used[v]) return false;
      img[x] = v;
      used[v] = true;
      return true;
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (img[i] != unset) used[img[i]] = true;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Element> known;
      for (Element i = 0; i < n; ++i) {
        if (img[i] != unset) known.push_back(i);
      }
      for (auto a : known) {
        for (auto b : known) {
          for (auto c : known) {
            Element ia = img[a], ib = img[b], ic = img[c];
            bool fresh_t = img[s.t(a, b, c)] == unset, fresh_q = img[s.q(a, b, c)] == unset;
            if (!assign(s.t(a, b, c), d.t(ia, ib, ic))) return;
            if (!assign(s.q(a, b, c), d.q(ia, ib, ic))) return;
            changed = changed || fresh_t || fresh_q;
          }
        }
      }
    }
    auto hole = std::find(img.begin(), img.end(), unset);
    if (hole == img.end()) {
      Homomorphism h{source, target, std::vector<Element>(img.begin(), img.end())};
      if (is_monomorphism(h).holds) out.push_back(std::move(h));
      return;
    }
    for (Element v = 0; v < d.size(); ++v) {
      if (used[v]) continue;
      auto next = img;
      next[hole - img.begin()] = v;
      search(std::move(next));
    }
  };

  std::vector<int> init(n, unset);
  init[s.zero()] = d.zero();
  if (init[s.one()] != unset && init[s.one()] != d.one()) return out;
  if (s.one() != s.zero()) init[s.one()] = d.one();
  else if (d.zero() != d.one()) return out;
  search(std::move(init));
  return out;
}

// ---------------------------------------------------------------- subalgebras

ElementSet subalgebra_generated(const FiniteTernaryRing& a, ElementSet generators) {
  ElementSet cur = generators;
  cur.insert(a.zero());
  cur.insert(a.one());
  while (true) {
    ElementSet next = cur;
    auto el = cur.elements();
    for (auto x : el) {
      for (auto y : el) {
        for (auto z : el) {
          next.insert(a.t(x, y, z));
          next.insert(a.q(x, y, z));
        }
      }
    }
    if (next == cur) return cur;
    cur = next;
  }
}

bool is_subalgebra(const FiniteTernaryRing& a, ElementSet subset) {
  return subset.contains(a.zero()) && subset.contains(a.one()) && subalgebra_generated(a, subset) == subset;
}

// ---------------------------------------------------------------- congruences

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), Element{0}); }
  Element find(Element x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(Element a, Element b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }
  Congruence freeze() {
    std::vector<Element> block(parent_.size());
    for (Element i = 0; i < parent_.size(); ++i) block[i] = find(i);
    return Congruence(std::move(block));
  }

 private:
  std::vector<Element> parent_;
};

}  // namespace

Congruence Congruence::identity(std::size_t n) {
  std::vector<Element> b(n);
  std::iota(b.begin(), b.end(), Element{0});
  return Congruence(std::move(b));
}

std::vector<ElementSet> Congruence::blocks() const {
  std::vector<ElementSet> out;
  for (Element e = 0; e < block_.size(); ++e) {
    if (block_[e] == e) out.push_back(block_of(e));
  }
  return out;
}

ElementSet Congruence::block_of(Element e) const {
  ElementSet s;
  for (Element x = 0; x < block_.size(); ++x) {
    if (block_[x] == block_.at(e)) s.insert(x);
  }
  return s;
}

std::size_t Congruence::block_count() const {
  std::size_t k = 0;
  for (Element e = 0; e < block_.size(); ++e) k += block_[e] == e;
  return k;
}

std::string Congruence::str(const FiniteTernaryRing& a) const {
  std::string out;
  for (auto b : blocks()) out += (out.empty() ? "" : " | ") + format_set(a, b);
  return out;
}

Congruence congruence_generated(const FiniteTernaryRing& a, const std::vector<std::pair<Element, Element>>& pairs) {
  const std::size_t n = a.size();
  UnionFind uf(n);
  std::vector<std::pair<Element, Element>> work;
  for (auto [x, y] : pairs) {
    if (uf.unite(x, y)) work.emplace_back(x, y);
  }
  // Closing merged pairs under all basic translations suffices.
  auto push = [&](Element u, Element v) {
    if (uf.unite(u, v)) work.emplace_back(u, v);
  };
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (Element u = 0; u < n; ++u) {
      for (Element v = 0; v < n; ++v) {
        push(a.t(x, u, v), a.t(y, u, v));
        push(a.t(u, x, v), a.t(u, y, v));
        push(a.t(u, v, x), a.t(u, v, y));
        push(a.q(x, u, v), a.q(y, u, v));
        push(a.q(u, x, v), a.q(u, y, v));
        push(a.q(u, v, x), a.q(u, v, y));
      }
    }
  }
  return uf.freeze();
}

std::vector<Congruence> congruences(const FiniteTernaryRing& a, std::size_t bound) {
  const std::size_t n = a.size();
  if (n > bound) {
    throw Error(ErrorKind::bound_exceeded, "congruence enumeration limited to carriers of size <= " +
                                               std::to_string(bound) + ", got " + std::to_string(n));
  }
  std::set<Congruence> principal;
  for (Element x = 0; x < n; ++x) {
    for (Element y = x + 1; y < n; ++y) principal.insert(congruence_generated(a, {{x, y}}));
  }
  std::set<Congruence> all{Congruence::identity(n)};
  std::vector<Congruence> work{Congruence::identity(n)};
  while (!work.empty()) {
    Congruence c = work.back();
    work.pop_back();
    for (const auto& p : principal) {
      UnionFind uf(n);
      for (Element e = 0; e < n; ++e) {
        uf.unite(e, c.block_labels()[e]);
        uf.unite(e, p.block_labels()[e]);
      }
      Congruence j = uf.freeze();
      if (all.insert(j).second) work.push_back(j);
    }
  }
  return {all.begin(), all.end()};
}

bool is_congruence(const FiniteTernaryRing& a, const Congruence& c) {
  const std::size_t n = a.size();
  if (c.block_labels().size() != n) return false;
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (x == y || !c.related(x, y)) continue;
      for (Element u = 0; u < n; ++u) {
        for (Element v = 0; v < n; ++v) {
          if (!c.related(a.t(x, u, v), a.t(y, u, v)) || !c.related(a.t(u, x, v), a.t(u, y, v)) ||
              !c.related(a.t(u, v, x), a.t(u, v, y)) || !c.related(a.q(x, u, v), a.q(y, u, v)) ||
              !c.related(a.q(u, x, v), a.q(u, y, v)) || !c.related(a.q(u, v, x), a.q(u, v, y))) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- evaluation

Element evaluate(const FiniteTernaryRing& a, const trs::Term& term) {
  switch (term.kind()) {
    case trs::TermKind::variable:
      throw Error(ErrorKind::foreign_element, "variable '" + term.name() + "' in a ground term");
    case trs::TermKind::element:
      return a.element(term.name());
    case trs::TermKind::application:
      break;
  }
  const auto& name = term.name();
  const auto kids = term.children();
  if (name == "0" && kids.empty()) return a.zero();
  if (name == "1" && kids.empty()) return a.one();
  if ((name == "t" || name == "q") && kids.size() == 3) {
    Element x = evaluate(a, kids[0]), y = evaluate(a, kids[1]), z = evaluate(a, kids[2]);
    return name == "t" ? a.t(x, y, z) : a.q(x, y, z);
  }
  throw Error(ErrorKind::arity_mismatch, "'" + name + "' with " + std::to_string(kids.size()) +
                                             " arguments is not a ternary-ring operation");
}

}  // namespace terndescent::algebra
