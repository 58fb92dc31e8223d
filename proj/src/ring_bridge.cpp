#include "terndescent/ring_bridge.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "terndescent/error.hpp"

namespace terndescent::bridge {

using algebra::RingTables;

FiniteCommRing::FiniteCommRing(RingTables tables) : tables_(std::move(tables)), n_(tables_.carrier.size()) {
  if (auto bad = algebra::ring_axiom_violation(tables_, /*require_commutative=*/true)) {
    throw Error(ErrorKind::not_a_ring, (tables_.label.empty() ? "" : tables_.label + ": ") + *bad);
  }
  neg_.resize(n_);
  for (Element a = 0; a < n_; ++a) {
    for (Element b = 0; b < n_; ++b) {
      if (add(a, b) == zero()) neg_[a] = b;
    }
  }
}

std::optional<Element> FiniteCommRing::find(const std::string& name) const {
  auto it = std::find(tables_.carrier.begin(), tables_.carrier.end(), name);
  if (it == tables_.carrier.end()) return std::nullopt;
  return static_cast<Element>(it - tables_.carrier.begin());
}

// ---------------------------------------------------------------- constructors

namespace {

template <class Name, class Add, class Mul>
FiniteCommRing tabulate(std::size_t n, std::string label, Name name, Add add, Mul mul) {
  RingTables r;
  r.label = std::move(label);
  for (std::size_t i = 0; i < n; ++i) r.carrier.push_back(name(i));
  r.add.resize(n * n);
  r.mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      r.add[a * n + b] = static_cast<Element>(add(a, b));
      r.mul[a * n + b] = static_cast<Element>(mul(a, b));
    }
  }
  r.zero = 0;
  r.one = n > 1 ? 1 : 0;
  return FiniteCommRing(std::move(r));
}

}  // namespace

FiniteCommRing cyclic_ring(std::size_t n) {
  if (n == 0 || n > algebra::max_carrier) {
    throw Error(ErrorKind::bound_exceeded, "Z/" + std::to_string(n) + " is not supported");
  }
  return tabulate(
      n, "Z/" + std::to_string(n), [](std::size_t i) { return std::to_string(i); },
      [n](std::size_t a, std::size_t b) { return (a + b) % n; },
      [n](std::size_t a, std::size_t b) { return (a * b) % n; });
}

FiniteCommRing product_ring(const FiniteCommRing& r, const FiniteCommRing& s) {
  const std::size_t m = s.size();
  const std::size_t n = r.size() * m;
  if (n > algebra::max_carrier) throw Error(ErrorKind::bound_exceeded, "product too large");
  RingTables t;
  t.label = r.label() + " x " + s.label();
  for (std::size_t i = 0; i < n; ++i) {
    t.carrier.push_back(r.name(static_cast<Element>(i / m)) + ":" + s.name(static_cast<Element>(i % m)));
  }
  t.add.resize(n * n);
  t.mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto ra = static_cast<Element>(a / m), sa = static_cast<Element>(a % m);
      auto rb = static_cast<Element>(b / m), sb = static_cast<Element>(b % m);
      t.add[a * n + b] = static_cast<Element>(r.add(ra, rb) * m + s.add(sa, sb));
      t.mul[a * n + b] = static_cast<Element>(r.mul(ra, rb) * m + s.mul(sa, sb));
    }
  }
  t.zero = static_cast<Element>(r.zero() * m + s.zero());
  t.one = static_cast<Element>(r.one() * m + s.one());
  return FiniteCommRing(std::move(t));
}

FiniteCommRing field_f4() {
  static const char* names[] = {"0", "1", "w", "w+1"};
  // Bit 0: constant coefficient, bit 1: coefficient of w; w^2 = w + 1.
  return tabulate(
      4, "F4", [](std::size_t i) { return names[i]; }, [](std::size_t a, std::size_t b) { return a ^ b; },
      [](std::size_t a, std::size_t b) {
        std::size_t a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
        std::size_t c0 = (a0 & b0) ^ (a1 & b1);
        std::size_t c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        return c0 | (c1 << 1);
      });
}

FiniteCommRing dual_numbers_f2() {
  static const char* names[] = {"0", "1", "e", "1+e"};
  return tabulate(
      4, "F2[e]/(e^2)", [](std::size_t i) { return names[i]; }, [](std::size_t a, std::size_t b) { return a ^ b; },
      [](std::size_t a, std::size_t b) {
        std::size_t a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
        return (a0 & b0) | (((a0 & b1) ^ (a1 & b0)) << 1);
      });
}

FiniteCommRing square_zero_f2_ab() {
  static const char* names[] = {"0", "1", "a", "1+a", "b", "1+b", "a+b", "1+a+b"};
  return tabulate(
      8, "F2[a,b]/(a,b)^2", [](std::size_t i) { return names[i]; },
      [](std::size_t a, std::size_t b) { return a ^ b; },
      [](std::size_t x, std::size_t y) {
        std::size_t x0 = x & 1, y0 = y & 1;
        std::size_t ca = (x0 & (y >> 1 & 1)) ^ ((x >> 1 & 1) & y0);
        std::size_t cb = (x0 & (y >> 2 & 1)) ^ ((x >> 2 & 1) & y0);
        return (x0 & y0) | (ca << 1) | (cb << 2);
      });
}

std::optional<FiniteCommRing> builtin_ring(const std::string& name) {
  auto base = [](const std::string& s) -> std::optional<FiniteCommRing> {
    if (s == "f4") return field_f4();
    if (s == "f2e") return dual_numbers_f2();
    if (s == "f2ab") return square_zero_f2_ab();
    auto digit = [](unsigned char c) { return std::isdigit(c) != 0; };
    if (s.size() >= 2 && s.size() <= 4 && s[0] == 'z' && std::all_of(s.begin() + 1, s.end(), digit)) {
      std::size_t n = std::stoul(s.substr(1));
      if (n >= 1 && n <= algebra::max_carrier) return cyclic_ring(n);
    }
    return std::nullopt;
  };
  std::optional<FiniteCommRing> acc;
  std::size_t start = 0;
  while (start <= name.size()) {
    std::size_t cut = name.find('x', start);
    if (cut == std::string::npos) cut = name.size();
    auto part = base(name.substr(start, cut - start));
    if (!part) return std::nullopt;
    if (acc && acc->size() * part->size() > algebra::max_carrier) return std::nullopt;
    acc = acc ? product_ring(*acc, *part) : std::move(part);
    start = cut + 1;
  }
  return acc;
}

std::vector<CommRingPtr> default_ring_corpus() {
  std::vector<CommRingPtr> out;
  for (std::size_t n = 2; n <= 8; ++n) out.push_back(std::make_shared<FiniteCommRing>(cyclic_ring(n)));
  out.push_back(std::make_shared<FiniteCommRing>(field_f4()));
  out.push_back(std::make_shared<FiniteCommRing>(dual_numbers_f2()));
  out.push_back(std::make_shared<FiniteCommRing>(square_zero_f2_ab()));
  for (const char* p : {"z2xz2", "z2xz3", "z2xz4", "z2xz2xz2", "z2xf4", "z2xf2e"}) {
    out.push_back(std::make_shared<FiniteCommRing>(*builtin_ring(p)));
  }
  return out;
}

algebra::FiniteTernaryRing as_ternary(const FiniteCommRing& r) { return algebra::from_unital_ring(r.tables()); }

// ---------------------------------------------------------------- ideals

std::vector<ElementSet> ring_ideals(const FiniteCommRing& r, std::size_t bound) {
  const std::size_t n = r.size();
  if (n > bound) {
    throw Error(ErrorKind::bound_exceeded, "ring ideal enumeration limited to size <= " + std::to_string(bound));
  }
  std::vector<ElementSet> out;
  const std::uint64_t full = ElementSet::full(n).bits();
  for (std::uint64_t bits = 1; bits <= full; ++bits) {
    ElementSet s(bits);
    if (!s.contains(r.zero())) continue;
    bool ok = true;
    auto el = s.elements();
    for (auto a : el) {
      for (auto b : el) ok = ok && s.contains(r.add(a, b));
      for (Element x = 0; x < n && ok; ++x) ok = s.contains(r.mul(x, a));
      if (!ok) break;
    }
    if (ok) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](ElementSet x, ElementSet y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

Lemma41Report lemma41_check(const FiniteCommRing& r, ideal::Bounds bounds) {
  Lemma41Report rep;
  auto t = as_ternary(r);
  rep.zero_ideals = ideal::zero_ideals(t, ideal::IdealMethod::automatic, bounds);
  rep.ring_ideals = ring_ideals(r, std::max(bounds.congruence, bounds.subset));
  if (rep.zero_ideals != rep.ring_ideals) {
    rep.holds = false;
    auto show = [&](const std::vector<ElementSet>& v) {
      std::string s;
      for (auto x : v) s += algebra::format_set(t, x) + " ";
      return s;
    };
    rep.discrepancy = "0-ideals " + show(rep.zero_ideals) + "vs ring ideals " + show(rep.ring_ideals);
  }
  return rep;
}

TauSpecializationReport specialized_tau_check(const FiniteCommRing& r) {
  auto t = as_ternary(r);
  const auto n = static_cast<Element>(r.size());
  auto fail = [&](int which, std::initializer_list<Element> args) {
    std::string w = "tau" + std::to_string(which) + "(";
    bool first = true;
    for (auto a : args) {
      w += (first ? "" : ",") + r.name(a);
      first = false;
    }
    return TauSpecializationReport{false, w + ")"};
  };
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      const Element args[] = {x, y};
      if (ideal::eval_tau(t, 1, args) != r.neg(y)) return fail(1, {x, y});
    }
  }
  for (Element x1 = 0; x1 < n; ++x1) {
    for (Element x2 = 0; x2 < n; ++x2) {
      for (Element x3 = 0; x3 < n; ++x3) {
        for (Element y = 0; y < n; ++y) {
          const Element args[] = {x1, x2, x3, y};
          if (ideal::eval_tau(t, 2, args) != y) return fail(2, {x1, x2, x3, y});
        }
        for (Element y1 = 0; y1 < n; ++y1) {
          for (Element y2 = 0; y2 < n; ++y2) {
            for (Element y3 = 0; y3 < n; ++y3) {
              Element closed = r.add(r.add(r.mul(x1, y2), r.mul(y1, x2)), r.add(r.mul(y1, y2), y3));
              const Element args[] = {x1, x2, x3, y1, y2, y3};
              if (ideal::eval_tau(t, 3, args) != closed) return fail(3, {x1, x2, x3, y1, y2, y3});
            }
          }
        }
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------- morphisms

std::string RingMorphism::str() const {
  std::string out = source->label() + " -> " + target->label() + " {";
  for (std::size_t i = 0; i < map.size(); ++i) {
    out += (i ? ", " : "") + source->name(static_cast<Element>(i)) + "->" + target->name(map[i]);
  }
  return out + "}";
}

bool is_ring_monomorphism(const RingMorphism& p) {
  const auto& s = *p.source;
  const auto& d = *p.target;
  if (p.map.size() != s.size()) return false;
  std::vector<bool> hit(d.size(), false);
  for (auto v : p.map) {
    if (v >= d.size() || hit[v]) return false;
    hit[v] = true;
  }
  if (p.map[s.zero()] != d.zero() || p.map[s.one()] != d.one()) return false;
  for (Element a = 0; a < s.size(); ++a) {
    for (Element b = 0; b < s.size(); ++b) {
      if (p.map[s.add(a, b)] != d.add(p.map[a], p.map[b])) return false;
      if (p.map[s.mul(a, b)] != d.mul(p.map[a], p.map[b])) return false;
    }
  }
  return true;
}

std::vector<RingMorphism> find_ring_monomorphisms(const CommRingPtr& source, const CommRingPtr& target) {
  const auto& s = *source;
  const auto& d = *target;
  std::vector<RingMorphism> out;
  if (s.size() > d.size()) return out;
  if (s.zero() == s.one() && d.zero() != d.one()) return out;
  constexpr int unset = -1;

  std::function<void(std::vector<int>)> search = [&](std::vector<int> img) {
    std::vector<bool> used(d.size(), false);
    for (auto v : img) {
      if (v != unset) used[v] = true;
    }
    auto assign = [&](Element x, Element v, bool& changed) {
      if (img[x] != unset) return img[x] == v;
      if (used[v]) return false;
      img[x] = v;
      used[v] = true;
      changed = true;
      return true;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Element> known;
      for (Element i = 0; i < s.size(); ++i) {
        if (img[i] != unset) known.push_back(i);
      }
      for (auto a : known) {
        for (auto b : known) {
          if (!assign(s.add(a, b), d.add(img[a], img[b]), changed)) return;
          if (!assign(s.mul(a, b), d.mul(img[a], img[b]), changed)) return;
        }
      }
    }
    auto hole = std::find(img.begin(), img.end(), unset);
    if (hole == img.end()) {
      RingMorphism m{source, target, std::vector<Element>(img.begin(), img.end())};
      if (is_ring_monomorphism(m)) out.push_back(std::move(m));
      return;
    }
    for (Element v = 0; v < d.size(); ++v) {
      if (used[v]) continue;
      auto next = img;
      next[hole - img.begin()] = v;
      search(std::move(next));
    }
  };

  std::vector<int> init(s.size(), unset);
  init[s.zero()] = d.zero();
  init[s.one()] = d.one();
  search(std::move(init));
  return out;
}

std::vector<RingMorphism> monomorphism_corpus(const std::vector<CommRingPtr>& rings) {
  std::vector<RingMorphism> out;
  for (const auto& r : rings) {
    for (const auto& s : rings) {
      for (auto& m : find_ring_monomorphisms(r, s)) out.push_back(std::move(m));
    }
  }
  return out;
}

algebra::Homomorphism to_ternary(const RingMorphism& p) {
  return {std::make_shared<const algebra::FiniteTernaryRing>(as_ternary(*p.source)),
          std::make_shared<const algebra::FiniteTernaryRing>(as_ternary(*p.target)), p.map};
}

// ---------------------------------------------------------------- purity

bool is_retraction(const RingMorphism& p, const std::vector<Element>& r) {
  const auto& s = *p.source;
  const auto& d = *p.target;
  if (r.size() != d.size()) return false;
  for (auto v : r) {
    if (v >= s.size()) return false;
  }
  for (Element x = 0; x < s.size(); ++x) {
    if (r[p.map[x]] != x) return false;
  }
  for (Element a = 0; a < d.size(); ++a) {
    for (Element b = 0; b < d.size(); ++b) {
      if (r[d.add(a, b)] != s.add(r[a], r[b])) return false;
    }
    for (Element x = 0; x < s.size(); ++x) {
      if (r[d.mul(p.map[x], a)] != s.mul(x, r[a])) return false;
    }
  }
  return true;
}

PurityResult is_pure_mono(const RingMorphism& p, std::size_t bound) {
  if (!is_ring_monomorphism(p)) throw Error(ErrorKind::not_a_monomorphism, p.str());
  const auto& s = *p.source;
  const auto& d = *p.target;
  if (d.size() > bound) {
    throw Error(ErrorKind::bound_exceeded, "retraction search limited to targets of size <= " + std::to_string(bound));
  }
  constexpr int unset = -1;
  std::optional<std::vector<Element>> found;

  // Backtracking over values of r with propagation of additivity and
  // R-linearity; the forced values r(p(x)) = x seed the search.
  std::function<void(std::vector<int>)> search = [&](std::vector<int> r) {
    auto assign = [&](Element y, Element v, bool& changed) {
      if (r[y] != unset) return r[y] == v;
      r[y] = v;
      changed = true;
      return true;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Element> known;
      for (Element i = 0; i < d.size(); ++i) {
        if (r[i] != unset) known.push_back(i);
      }
      for (auto a : known) {
        for (auto b : known) {
          if (!assign(d.add(a, b), s.add(r[a], r[b]), changed)) return;
        }
        for (Element x = 0; x < s.size(); ++x) {
          if (!assign(d.mul(p.map[x], a), s.mul(x, r[a]), changed)) return;
        }
      }
    }
    auto hole = std::find(r.begin(), r.end(), unset);
    if (hole == r.end()) {
      std::vector<Element> table(r.begin(), r.end());
      if (is_retraction(p, table)) found = std::move(table);
      return;
    }
    for (Element v = 0; v < s.size() && !found; ++v) {
      auto next = r;
      next[hole - r.begin()] = v;
      search(std::move(next));
    }
  };

  std::vector<int> init(d.size(), unset);
  for (Element x = 0; x < s.size(); ++x) init[p.map[x]] = x;
  search(std::move(init));
  return {found.has_value(), std::move(found)};
}

ClassComparisonReport compare_descent_classes(const std::vector<RingMorphism>& corpus, ideal::Bounds bounds) {
  ClassComparisonReport rep;
  for (const auto& m : corpus) {
    ComparisonEntry e;
    e.morphism = m;
    auto purity = is_pure_mono(m);
    e.pure = purity.pure;
    e.retraction = std::move(purity.retraction);
    auto h = to_ternary(m);
    e.ideal_extension = ideal::has_ideal_extension(h, bounds).holds;
    e.effective_codescent = ideal::is_effective_codescent(h, bounds).effective;
    if (e.pure && !e.ideal_extension) rep.containment_holds = false;
    if (e.ideal_extension && !e.pure) rep.strict_witnesses.push_back(rep.entries.size());
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace terndescent::bridge
