#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "terndescent/error.hpp"
#include "terndescent/ring_bridge.hpp"

using namespace terndescent;
using namespace terndescent::bridge;

namespace {

CommRingPtr ptr(FiniteCommRing r) { return std::make_shared<const FiniteCommRing>(std::move(r)); }

CommRingPtr named(const char* name) { return ptr(*builtin_ring(name)); }

RingMorphism identity(const CommRingPtr& r) {
  std::vector<Element> map(r->size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<Element>(i);
  return {r, r, map};
}

// F2[x]/(x^4) with elements as bitmasks over 1, x, x^2, x^3, and its subring
// spanned by 1, x^2, x^3.
std::pair<CommRingPtr, CommRingPtr> cusp() {
  auto mul = [](int a, int b) {
    int p = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; i + j < 4; ++j) {
        if ((a >> i & 1) && (b >> j & 1)) p ^= 1 << (i + j);
      }
    }
    return p;
  };
  auto build = [&](const std::vector<int>& members, const char* label) {
    algebra::RingTables t;
    auto idx = [&](int e) { return static_cast<Element>(std::find(members.begin(), members.end(), e) - members.begin()); };
    for (int e : members) t.carrier.push_back(std::to_string(e));
    for (int a : members) {
      for (int b : members) {
        t.add.push_back(idx(a ^ b));
        t.mul.push_back(idx(mul(a, b)));
      }
    }
    t.zero = idx(0);
    t.one = idx(1);
    t.label = label;
    return ptr(FiniteCommRing(t));
  };
  std::vector<int> all(16), sub;
  for (int i = 0; i < 16; ++i) all[i] = i;
  for (int i = 0; i < 16; ++i) {
    if ((i & 2) == 0) sub.push_back(i);
  }
  return {build(sub, "F2[x^2,x^3]/(x^4)"), build(all, "F2[x]/(x^4)")};
}

RingMorphism cusp_inclusion() {
  auto [small, big] = cusp();
  std::vector<Element> map;
  for (std::size_t i = 0; i < small->size(); ++i) map.push_back(*big->find(small->name(static_cast<Element>(i))));
  return {small, big, map};
}

// Oracle: ideals as subsets closed under + and under multiplication by R.
std::vector<ElementSet> oracle_ideals(const FiniteCommRing& r) {
  std::vector<ElementSet> out;
  const std::size_t n = r.size();
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    ElementSet s(bits);
    if (!s.contains(r.zero())) continue;
    bool ok = true;
    for (auto a : s.elements()) {
      for (auto b : s.elements()) ok = ok && s.contains(r.add(a, b));
      for (Element x = 0; x < n; ++x) ok = ok && s.contains(r.mul(x, a));
    }
    if (ok) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](ElementSet a, ElementSet b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

// Oracle: exhaustive search over all maps S -> R for an R-linear retraction.
bool oracle_pure(const RingMorphism& p) {
  const auto& r = *p.source;
  const auto& s = *p.target;
  std::vector<Element> map(s.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == map.size()) return is_retraction(p, map);
    for (Element e = 0; e < r.size(); ++e) {
      map[i] = e;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_SUITE("rings") {
  TEST_CASE("builtin names") {
    CHECK(builtin_ring("z4")->size() == 4);
    CHECK(builtin_ring("z2xz4")->size() == 8);
    CHECK(builtin_ring("f2ab")->size() == 8);
    CHECK(builtin_ring("z2xz2xz2")->size() == 8);
    CHECK_FALSE(builtin_ring("q8"));
    CHECK_FALSE(builtin_ring("z"));
  }

  TEST_CASE("non-commutative or broken tables are rejected") {
    auto t = cyclic_ring(3).tables();
    t.mul[1 * 3 + 2] = 0;
    try {
      FiniteCommRing bad(t);
      FAIL("expected not-a-ring");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::not_a_ring);
    }
  }

  TEST_CASE("ternary rings from rings") {
    auto z2 = as_ternary(cyclic_ring(2));
    auto e2 = algebra::enumerate_ternary_rings(2);
    REQUIRE(e2.size() == 1);
    CHECK(algebra::are_isomorphic(z2, e2[0]));
    CHECK(as_ternary(cyclic_ring(4)).t(3, 2, 1) == 3);
    CHECK_NOTHROW(as_ternary(field_f4()));
  }

  TEST_CASE("ring_ideals") {
    auto z4 = cyclic_ring(4);
    CHECK(ring_ideals(z4) == std::vector<ElementSet>{ElementSet::of({0}), ElementSet::of({0, 2}), ElementSet::full(4)});
    CHECK(ring_ideals(product_ring(cyclic_ring(2), cyclic_ring(2))).size() == 4);
    CHECK(ring_ideals(field_f4()).size() == 2);
  }

  TEST_CASE("oracle: ring ideals by exhaustive subset search") {
    for (const auto& r : default_ring_corpus()) {
      CAPTURE(r->label());
      CHECK(ring_ideals(*r) == oracle_ideals(*r));
    }
  }
}

TEST_SUITE("0-ideals are ring ideals") {
  TEST_CASE("named examples") {
    CHECK(lemma41_check(cyclic_ring(4)).holds);
    CHECK(lemma41_check(product_ring(cyclic_ring(2), cyclic_ring(2))).holds);
    CHECK(lemma41_check(cyclic_ring(2)).holds);
  }

  TEST_CASE("specialized tau terms") {
    CHECK(specialized_tau_check(cyclic_ring(4)).holds);
    CHECK(specialized_tau_check(product_ring(cyclic_ring(2), cyclic_ring(2))).holds);
    CHECK(specialized_tau_check(field_f4()).holds);
  }

  TEST_CASE("whole corpus") {
    for (const auto& r : default_ring_corpus()) {
      CAPTURE(r->label());
      auto l = lemma41_check(*r);
      CHECK(l.holds);
      CHECK(l.zero_ideals == l.ring_ideals);
    }
  }
}

TEST_SUITE("purity") {
  TEST_CASE("diagonal Z/2 -> Z/2 x Z/2") {
    auto z2 = named("z2");
    auto v = named("z2xz2");
    RingMorphism d{z2, v, {*v->find("0:0"), *v->find("1:1")}};
    auto p = is_pure_mono(d);
    CHECK(p.pure);
    REQUIRE(p.retraction);
    CHECK(is_retraction(d, *p.retraction));
    // The first projection is one retraction.
    std::vector<Element> first;
    for (Element e = 0; e < v->size(); ++e) first.push_back(*z2->find(v->name(e).substr(0, 1)));
    CHECK(is_retraction(d, first));
  }

  TEST_CASE("identity on Z/4") {
    auto z4 = named("z4");
    auto p = is_pure_mono(identity(z4));
    CHECK(p.pure);
    CHECK(is_retraction(identity(z4), *p.retraction));
  }

  TEST_CASE("Z/2 -> F2[e]/(e^2)") {
    auto z2 = named("z2");
    auto f = named("f2e");
    RingMorphism m{z2, f, {0, 1}};
    auto p = is_pure_mono(m);
    CHECK(p.pure);
    // 1 -> 1, e -> 0, extended additively.
    std::vector<Element> proj{0, 1, 0, 1};
    CHECK(is_retraction(m, proj));
  }

  TEST_CASE("the cusp inclusion is not pure") {
    auto m = cusp_inclusion();
    REQUIRE(is_ring_monomorphism(m));
    auto p = is_pure_mono(m);
    CHECK_FALSE(p.pure);
    CHECK_FALSE(p.retraction);
  }

  TEST_CASE("errors") {
    auto z2 = named("z2");
    RingMorphism constant{z2, z2, {0, 0}};
    try {
      is_pure_mono(constant);
      FAIL("expected not-a-monomorphism");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::not_a_monomorphism);
    }
    try {
      is_pure_mono(cusp_inclusion(), 8);
      FAIL("expected bound-exceeded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::bound_exceeded);
    }
  }

  TEST_CASE("oracle: purity by exhaustive search over all maps") {
    std::size_t checked = 0;
    for (const auto& m : monomorphism_corpus(default_ring_corpus())) {
      double space = std::pow(static_cast<double>(m.source->size()), static_cast<double>(m.target->size()));
      if (space > 70000) continue;
      CAPTURE(m.str());
      CHECK(is_pure_mono(m).pure == oracle_pure(m));
      ++checked;
    }
    CHECK(checked > 10);
  }
}

TEST_SUITE("monomorphisms") {
  TEST_CASE("known counts") {
    CHECK(find_ring_monomorphisms(named("z2"), named("f4")).size() == 1);
    CHECK(find_ring_monomorphisms(named("z2"), named("z4")).empty());
    CHECK(find_ring_monomorphisms(named("f4"), named("f4")).size() == 2);
    CHECK(find_ring_monomorphisms(named("z2"), named("z2xz2")).size() == 1);
  }

  TEST_CASE("oracle: brute force over maps") {
    auto rings = default_ring_corpus();
    for (const auto& s : rings) {
      for (const auto& t : rings) {
        if (std::pow(static_cast<double>(t->size()), static_cast<double>(s->size())) > 70000) continue;
        std::size_t brute = 0;
        std::vector<Element> map(s->size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == map.size()) {
            brute += is_ring_monomorphism({s, t, map});
            return;
          }
          for (Element e = 0; e < t->size(); ++e) {
            map[i] = e;
            rec(i + 1);
          }
        };
        rec(0);
        CAPTURE(s->label());
        CAPTURE(t->label());
        CHECK(find_ring_monomorphisms(s, t).size() == brute);
      }
    }
  }

  TEST_CASE("ring and ternary notions agree") {
    for (const auto& m : monomorphism_corpus(default_ring_corpus())) {
      CHECK(algebra::is_monomorphism(to_ternary(m)).holds);
    }
  }
}

TEST_SUITE("class comparison") {
  TEST_CASE("small corpus") {
    std::vector<CommRingPtr> rings{named("z2"), named("z4"), named("f4"), named("z2xz2"), named("f2e")};
    auto corpus = monomorphism_corpus(rings);
    CHECK_FALSE(corpus.empty());
    auto rep = compare_descent_classes(corpus);
    CHECK(rep.containment_holds);
    CHECK(rep.entries.size() == corpus.size());
    for (const auto& e : rep.entries) {
      if (e.pure) CHECK(e.ideal_extension);
      CHECK(e.ideal_extension == e.effective_codescent);
    }
  }

  TEST_CASE("empty corpus") {
    auto rep = compare_descent_classes({});
    CHECK(rep.entries.empty());
    CHECK(rep.containment_holds);
    CHECK(rep.strict_witnesses.empty());
  }

  TEST_CASE("identities only") {
    std::vector<RingMorphism> ids;
    for (const auto& r : default_ring_corpus()) ids.push_back(identity(r));
    auto rep = compare_descent_classes(ids);
    for (const auto& e : rep.entries) {
      CHECK(e.pure);
      CHECK(e.ideal_extension);
    }
    CHECK(rep.strict_witnesses.empty());
  }

  TEST_CASE("a morphism outside both classes") {
    auto rep = compare_descent_classes({cusp_inclusion()}, {16, 6});
    REQUIRE(rep.entries.size() == 1);
    CHECK_FALSE(rep.entries[0].pure);
    CHECK_FALSE(rep.entries[0].ideal_extension);
    CHECK(rep.containment_holds);
  }
}
