#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "terndescent/algebra.hpp"
#include "terndescent/error.hpp"
#include "terndescent/ring_bridge.hpp"

using namespace terndescent;
using namespace terndescent::algebra;

namespace {

RingPtr ring(const bridge::FiniteCommRing& r) { return std::make_shared<const FiniteTernaryRing>(bridge::as_ternary(r)); }

RingPtr z(std::size_t n) { return ring(bridge::cyclic_ring(n)); }

TernaryTables z_tables(std::size_t n) { return bridge::as_ternary(bridge::cyclic_ring(n)).tables(); }

std::size_t at(std::size_t n, std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; }

// Independent axiom check on raw tables.
bool oracle_axioms(std::size_t n, const std::vector<Element>& t, const std::vector<Element>& q, Element zero,
                   Element one) {
  if (zero == one && n > 1) return false;
  for (std::size_t x = 0; x < n; ++x) {
    if (t[at(n, one, x, zero)] != x || t[at(n, x, one, zero)] != x) return false;
    for (std::size_t y = 0; y < n; ++y) {
      if (t[at(n, zero, x, y)] != y || t[at(n, x, zero, y)] != y) return false;
      for (std::size_t w = 0; w < n; ++w) {
        if (q[at(n, x, y, t[at(n, x, y, w)])] != w) return false;
        if (t[at(n, x, y, q[at(n, x, y, w)])] != w) return false;
      }
    }
  }
  return true;
}

FiniteTernaryRing permuted(const FiniteTernaryRing& a, const std::vector<Element>& pi) {
  const std::size_t n = a.size();
  TernaryTables out;
  out.carrier.resize(n);
  out.t.resize(n * n * n);
  out.q.resize(n * n * n);
  for (Element x = 0; x < n; ++x) {
    out.carrier[pi[x]] = a.name(x);
    for (Element y = 0; y < n; ++y) {
      for (Element w = 0; w < n; ++w) {
        out.t[at(n, pi[x], pi[y], pi[w])] = pi[a.t(x, y, w)];
        out.q[at(n, pi[x], pi[y], pi[w])] = pi[a.q(x, y, w)];
      }
    }
  }
  out.zero = pi[a.zero()];
  out.one = pi[a.one()];
  out.label = a.label() + " (permuted)";
  return FiniteTernaryRing(std::move(out));
}

}  // namespace

TEST_SUITE("validation") {
  TEST_CASE("Z/4 tables are valid") { CHECK_FALSE(validate_ternary_ring(z_tables(4))); }

  TEST_CASE("t(0,0,1)=0 violates t(0,y,x)=x") {
    auto tb = z_tables(4);
    tb.t[at(4, 0, 0, 1)] = 0;
    auto v = validate_ternary_ring(tb);
    REQUIRE(v);
    CHECK(v->axiom == "1.1");
    CHECK(v->witness == std::vector<std::string>{"x=0", "y=1"});
    CHECK_FALSE(v->internal_inconsistency);
  }

  TEST_CASE("constant t(1,1,.) violates unique solvability") {
    auto tb = z_tables(4);
    for (std::size_t c = 0; c < 4; ++c) tb.t[at(4, 1, 1, c)] = 1;
    auto v = validate_ternary_ring(tb);
    REQUIRE(v);
    CHECK(v->axiom == "unique-solvability");
  }

  TEST_CASE("q that is not the inverse of t") {
    auto tb = z_tables(3);
    tb.q[at(3, 1, 1, 2)] = tb.q[at(3, 1, 1, 1)];
    auto v = validate_ternary_ring(tb);
    REQUIRE(v);
    CHECK((v->axiom == "1.6" || v->axiom == "1.7"));
  }

  TEST_CASE("0 = 1 on a nontrivial carrier") {
    auto tb = z_tables(2);
    tb.one = 0;
    CHECK(validate_ternary_ring(tb));
  }

  TEST_CASE("malformed tables") {
    auto tb = z_tables(3);
    tb.t.pop_back();
    CHECK_THROWS_AS(validate_ternary_ring(tb), Error);
    auto tb2 = z_tables(3);
    tb2.q[0] = 7;
    CHECK_THROWS_AS(validate_ternary_ring(tb2), Error);
  }

  TEST_CASE("constructor rejects invalid tables") {
    auto tb = z_tables(4);
    tb.t[at(4, 0, 0, 1)] = 0;
    try {
      FiniteTernaryRing bad(tb);
      FAIL("expected invalid-algebra");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::invalid_algebra);
    }
  }

  TEST_CASE("from_unital_ring examples") {
    auto z2 = z(2);
    CHECK(z2->t(1, 1, 1) == 0);
    auto z4 = z(4);
    CHECK(z4->q(3, 2, 1) == 3);
    auto v = ring(bridge::product_ring(bridge::cyclic_ring(2), bridge::cyclic_ring(2)));
    CHECK(v->t(v->element("1:0"), v->element("0:1"), v->element("1:1")) == v->element("1:1"));
  }

  TEST_CASE("from_unital_ring rejects non-rings") {
    auto r = bridge::cyclic_ring(3).tables();
    r.mul[1 * 3 + 2] = 0;  // breaks distributivity
    CHECK_THROWS_AS(from_unital_ring(r), Error);
  }

  TEST_CASE("property: every corpus ring gives a valid ternary ring") {
    for (const auto& r : bridge::default_ring_corpus()) {
      CAPTURE(r->label());
      auto tb = bridge::as_ternary(*r).tables();
      CHECK_FALSE(validate_ternary_ring(tb));
      CHECK(oracle_axioms(r->size(), tb.t, tb.q, tb.zero, tb.one));
    }
  }
}

TEST_SUITE("enumeration") {
  TEST_CASE("order 1: the trivial algebra") {
    auto all = enumerate_ternary_rings(1);
    REQUIRE(all.size() == 1);
    CHECK(all[0].size() == 1);
  }

  TEST_CASE("oracle: order 2 by brute force over all 2^16 tables") {
    std::size_t valid = 0;
    std::vector<Element> t(8), q(8);
    for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
      for (int i = 0; i < 8; ++i) {
        t[i] = (bits >> i) & 1;
        q[i] = (bits >> (8 + i)) & 1;
      }
      if (oracle_axioms(2, t, q, 0, 1)) {
        ++valid;
        TernaryTables tb{{"0", "1"}, t, q, 0, 1, "oracle"};
        CHECK(are_isomorphic(FiniteTernaryRing(tb), *z(2)));
      }
    }
    CHECK(valid == 1);
    auto all = enumerate_ternary_rings(2);
    REQUIRE(all.size() == 1);
    CHECK(are_isomorphic(all[0], *z(2)));
  }

  TEST_CASE("oracle: order 3 by completing the 9 free entries of t") {
    // Entries forced by (1.1)-(1.4) are filled in; q is read off as the
    // inverse of t(a,b,-).
    const std::size_t n = 3;
    std::vector<int> base(27, -1);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        base[at(n, 0, x, y)] = static_cast<int>(y);
        base[at(n, x, 0, y)] = static_cast<int>(y);
      }
      base[at(n, 1, x, 0)] = static_cast<int>(x);
      base[at(n, x, 1, 0)] = static_cast<int>(x);
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < 27; ++i) {
      if (base[i] < 0) free.push_back(i);
    }
    REQUIRE(free.size() == 9);

    std::set<std::vector<Element>> oracle;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < free.size(); ++i) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<Element> t(27), q(27, 0);
      for (std::size_t i = 0; i < 27; ++i) t[i] = base[i] < 0 ? 0 : static_cast<Element>(base[i]);
      std::size_t c = code;
      for (auto i : free) {
        t[i] = static_cast<Element>(c % 3);
        c /= 3;
      }
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t w = 0; w < n; ++w) q[at(n, a, b, t[at(n, a, b, w)])] = static_cast<Element>(w);
        }
      }
      if (oracle_axioms(n, t, q, 0, 1)) {
        auto key = t;
        key.insert(key.end(), q.begin(), q.end());
        oracle.insert(key);
      }
    }
    CHECK(oracle.size() == 48);

    auto all = enumerate_ternary_rings(3);
    CHECK(all.size() == oracle.size());
    std::set<std::vector<Element>> got;
    for (const auto& a : all) {
      auto key = a.tables().t;
      key.insert(key.end(), a.tables().q.begin(), a.tables().q.end());
      got.insert(key);
    }
    CHECK(got == oracle);

    bool has_z3 = std::any_of(all.begin(), all.end(), [&](const auto& a) { return are_isomorphic(a, *z(3)); });
    CHECK(has_z3);
    // Only the identity fixes 0 and 1 on three points, so no two are isomorphic.
    std::set<std::vector<Element>> forms;
    for (const auto& a : all) forms.insert(canonical_form(a));
    CHECK(forms.size() == all.size());
  }

  TEST_CASE("order above the bound") {
    try {
      enumerate_ternary_rings(4);
      FAIL("expected bound-exceeded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::bound_exceeded);
    }
  }
}

TEST_SUITE("isomorphism") {
  TEST_CASE("property: relabelled algebras are isomorphic") {
    std::mt19937_64 rng(23);
    for (const auto& r : bridge::default_ring_corpus()) {
      auto a = bridge::as_ternary(*r);
      std::vector<Element> pi(a.size());
      std::iota(pi.begin(), pi.end(), Element{0});
      std::shuffle(pi.begin(), pi.end(), rng);
      auto b = permuted(a, pi);
      CAPTURE(r->label());
      CHECK(are_isomorphic(a, b));
      CHECK(canonical_form(a) == canonical_form(b));
    }
  }

  TEST_CASE("non-isomorphic rings of the same order") {
    CHECK_FALSE(are_isomorphic(*z(4), *ring(bridge::dual_numbers_f2())));
    CHECK_FALSE(are_isomorphic(*z(4), *ring(bridge::field_f4())));
    CHECK_FALSE(are_isomorphic(*ring(bridge::field_f4()),
                               *ring(bridge::product_ring(bridge::cyclic_ring(2), bridge::cyclic_ring(2)))));
  }
}

TEST_SUITE("homomorphisms") {
  TEST_CASE("diagonal Z/2 -> Z/2 x Z/2") {
    auto v = ring(bridge::product_ring(bridge::cyclic_ring(2), bridge::cyclic_ring(2)));
    Homomorphism d{z(2), v, {v->element("0:0"), v->element("1:1")}};
    CHECK(is_monomorphism(d).holds);
  }

  TEST_CASE("Z/2 -> Z/4 by 0,1 is not a homomorphism") {
    Homomorphism f{z(2), z(4), {0, 1}};
    auto m = is_monomorphism(f);
    CHECK_FALSE(m.holds);
    CHECK(m.violation == "t(1,1,1): image 0 != t(1,1,1)=2 in target");
  }

  TEST_CASE("constant map is not injective") {
    Homomorphism f{z(2), z(2), {0, 0}};
    auto m = is_monomorphism(f);
    CHECK_FALSE(m.holds);
    CHECK(m.violation.find("injective") != std::string::npos);
  }

  TEST_CASE("find_monomorphisms") {
    CHECK(find_monomorphisms(z(2), ring(bridge::field_f4())).size() == 1);
    CHECK(find_monomorphisms(z(2), z(4)).empty());
    // Frobenius gives F4 two automorphisms.
    CHECK(find_monomorphisms(ring(bridge::field_f4()), ring(bridge::field_f4())).size() == 2);
    for (const auto& h : find_monomorphisms(z(2), ring(bridge::square_zero_f2_ab()))) {
      CHECK(is_monomorphism(h).holds);
    }
  }

  TEST_CASE("property: found monomorphisms agree with brute force") {
    auto corpus = bridge::default_ring_corpus();
    for (const auto& s : corpus) {
      for (const auto& t : corpus) {
        if (s->size() > 4 || t->size() > 4) continue;
        auto src = ring(*s);
        auto tgt = ring(*t);
        std::size_t brute = 0;
        std::vector<Element> map(src->size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == map.size()) {
            brute += is_monomorphism({src, tgt, map}).holds;
            return;
          }
          for (Element e = 0; e < tgt->size(); ++e) {
            map[i] = e;
            rec(i + 1);
          }
        };
        rec(0);
        CAPTURE(s->label());
        CAPTURE(t->label());
        CHECK(find_monomorphisms(src, tgt).size() == brute);
      }
    }
  }
}

TEST_SUITE("subalgebras and congruences") {
  TEST_CASE("subalgebra_generated") {
    CHECK(subalgebra_generated(*z(4), {}) == ElementSet::full(4));
    auto f2e = ring(bridge::dual_numbers_f2());
    CHECK(subalgebra_generated(*f2e, {}) == ElementSet::of({0, 1}));
    CHECK(subalgebra_generated(*z(2), {}) == ElementSet::full(2));
    CHECK(is_subalgebra(*f2e, ElementSet::of({0, 1})));
    CHECK_FALSE(is_subalgebra(*f2e, ElementSet::of({0, 2})));
  }

  TEST_CASE("congruence counts") {
    CHECK(congruences(*z(2)).size() == 2);
    auto c4 = congruences(*z(4));
    REQUIRE(c4.size() == 3);
    std::set<ElementSet> zero_blocks;
    for (const auto& c : c4) zero_blocks.insert(c.block_of(0));
    CHECK(zero_blocks == std::set<ElementSet>{ElementSet::of({0}), ElementSet::of({0, 2}), ElementSet::full(4)});
    CHECK(congruences(*z(1)).size() == 1);
  }

  TEST_CASE("congruence bound") {
    try {
      congruences(*z(8), 6);
      FAIL("expected bound-exceeded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::bound_exceeded);
    }
  }

  TEST_CASE("oracle: congruences of small algebras by brute force over partitions") {
    // Restricted growth strings enumerate all set partitions.
    for (const auto& r : bridge::default_ring_corpus()) {
      if (r->size() > 6) continue;
      auto a = ring(*r);
      const std::size_t n = a->size();
      std::size_t brute = 0;
      std::vector<Element> label(n, 0);
      std::function<void(std::size_t, Element)> rec = [&](std::size_t i, Element max) {
        if (i == n) {
          std::vector<Element> canon(n);
          for (std::size_t k = 0; k < n; ++k) {
            canon[k] = static_cast<Element>(std::find(label.begin(), label.end(), label[k]) - label.begin());
          }
          brute += is_congruence(*a, Congruence(canon));
          return;
        }
        for (Element b = 0; b <= max + 1 && b <= n; ++b) {
          label[i] = b;
          rec(i + 1, std::max<Element>(max, b));
        }
      };
      label[0] = 0;
      rec(1, 0);
      CAPTURE(r->label());
      auto cs = congruences(*a);
      CHECK(cs.size() == brute);
      for (const auto& c : cs) CHECK(is_congruence(*a, c));
    }
  }

  TEST_CASE("property: congruence_generated is the least congruence containing the pairs") {
    std::mt19937_64 rng(31);
    for (const auto& r : bridge::default_ring_corpus()) {
      auto a = ring(*r);
      auto all = congruences(*a);
      for (int i = 0; i < 5; ++i) {
        Element x = static_cast<Element>(rng() % a->size());
        Element y = static_cast<Element>(rng() % a->size());
        auto g = congruence_generated(*a, {{x, y}});
        CHECK(is_congruence(*a, g));
        CHECK(g.related(x, y));
        CHECK(std::find(all.begin(), all.end(), g) != all.end());
        for (const auto& c : all) {
          if (!c.related(x, y)) continue;
          for (Element u = 0; u < a->size(); ++u) {
            for (Element v = 0; v < a->size(); ++v) {
              if (g.related(u, v)) CHECK(c.related(u, v));
            }
          }
        }
      }
    }
  }
}

TEST_SUITE("evaluation") {
  TEST_CASE("evaluate ground terms") {
    auto z4 = z(4);
    trs::ParseOptions opts;
    opts.element_names = {"0", "1", "2", "3"};
    CHECK(evaluate(*z4, trs::parse_term("(t 3 2 1)", opts)) == 3);
    CHECK(evaluate(*z4, trs::parse_term("(q 1 (t 1 2 3) 2)", opts)) == 1);
    CHECK(evaluate(*z4, trs::parse_term("0")) == z4->zero());
    CHECK(evaluate(*z4, trs::parse_term("1")) == z4->one());
  }

  TEST_CASE("evaluate errors") {
    auto z4 = z(4);
    try {
      evaluate(*z4, trs::parse_term("(t 7@x 1 0)"));
      FAIL("expected foreign-element");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::foreign_element);
    }
    CHECK_THROWS_AS(evaluate(*z4, trs::parse_term("(t x 1 0)")), Error);
  }
}
