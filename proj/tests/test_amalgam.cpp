#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "terndescent/amalgam.hpp"
#include "terndescent/error.hpp"
#include "terndescent/ring_bridge.hpp"

using namespace terndescent;
using namespace terndescent::amalgam;
using trs::Term;

namespace {

RingPtr ring(const bridge::FiniteCommRing& r) {
  return std::make_shared<const FiniteTernaryRing>(bridge::as_ternary(r));
}

const RingPtr& f2e() {
  static const RingPtr r = ring(bridge::dual_numbers_f2());
  return r;
}

Amalgam two_copies() { return Amalgam::copies(f2e(), 2, ElementSet::of({0, 1})); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::invalid_algebra;
}

// Amalgams over {0,1} (or a diagonal) drawn from the ring corpus.
std::vector<Amalgam> corpus_amalgams(std::size_t copies) {
  std::vector<Amalgam> out;
  for (const auto* name : {"f2e", "f4", "f2ab", "z2", "z3", "z2xz2"}) {
    auto a = ring(*bridge::builtin_ring(name));
    ElementSet b = algebra::subalgebra_generated(*a, {});
    out.push_back(Amalgam::copies(a, copies, b));
  }
  return out;
}

}  // namespace

TEST_SUITE("amalgam validation") {
  TEST_CASE("two copies of F2[e]/(e^2) over {0,1}") {
    CHECK(validate_amalgam({f2e(), f2e()}, {{"0", "1"}, {}}).valid);
    CHECK_NOTHROW(two_copies());
  }

  TEST_CASE("B = {0,e} is not a subalgebra") {
    auto chk = validate_amalgam({f2e(), f2e()}, {{"0", "e"}, {}});
    CHECK_FALSE(chk.valid);
    CHECK(chk.kind == ErrorKind::not_a_subalgebra);
    CHECK(chk.reason.find("1") != std::string::npos);
    CHECK(kind_of([] { Amalgam({f2e(), f2e()}, {{"0", "e"}, {}}); }) == ErrorKind::not_a_subalgebra);
  }

  TEST_CASE("single member with B = A") {
    CHECK(validate_amalgam({f2e()}, {{"0", "1", "e", "1+e"}, {}}).valid);
  }

  TEST_CASE("bad embeddings") {
    // Non-injective.
    SharedSpec dup{{"0", "1"}, {{{"0", "0"}, {"1", "1"}}, {{"0", "0"}, {"1", "0"}}}};
    CHECK(kind_of([&] { Amalgam({f2e(), f2e()}, dup); }) == ErrorKind::bad_embedding);
    // Unknown target element.
    SharedSpec missing{{"0", "1"}, {{}, {{"0", "0"}, {"1", "nope"}}}};
    CHECK(kind_of([&] { Amalgam({f2e(), f2e()}, missing); }) == ErrorKind::bad_embedding);
    // e <-> 1+e is a bijection but not an automorphism ((1+e)^2 = 1), so the
    // two members induce different operations on B.
    SharedSpec swap{{"0", "1", "e", "1+e"}, {{}, {{"0", "0"}, {"1", "1"}, {"e", "1+e"}, {"1+e", "e"}}}};
    auto chk = validate_amalgam({f2e(), f2e()}, swap);
    CHECK_FALSE(chk.valid);
    CHECK(chk.kind == ErrorKind::bad_embedding);
    // Sending 0 to 1 disagrees on 0_B.
    SharedSpec shifted{{"0", "1"}, {{}, {{"0", "1"}, {"1", "0"}}}};
    CHECK(kind_of([&] { Amalgam({f2e(), f2e()}, shifted); }) == ErrorKind::bad_embedding);
  }

  TEST_CASE("different algebras over F2") {
    auto f4 = ring(bridge::field_f4());
    Amalgam am({f4, f2e()}, {{"0", "1"}, {}});
    CHECK(am.leaves().size() == 2 + 2 + 2);
  }
}

TEST_SUITE("amalgam rewriting") {
  TEST_CASE("parse and canonicalize") {
    auto am = two_copies();
    CHECK(am.parse("(t e@1 0 e@2)") == am.parse("(t e@1 0@B e@2)"));
    CHECK(am.parse("0@1") == am.zero());
    CHECK(am.parse("1@2") == am.one());
    CHECK(kind_of([&] { am.parse("(t x 0 1)"); }) == ErrorKind::parse_error);
    CHECK(kind_of([&] { am.canonicalize(trs::parse_term("(t x 0 1)")); }) == ErrorKind::foreign_element);
    CHECK(kind_of([&] { am.parse("w@1"); }) == ErrorKind::foreign_element);
    CHECK(kind_of([&] { am.parse("e@3"); }) == ErrorKind::foreign_element);
    CHECK(kind_of([&] { am.parse("e@B"); }) == ErrorKind::foreign_element);
    CHECK(kind_of([&] { am.parse("(t e@1 0"); }) == ErrorKind::parse_error);
  }

  TEST_CASE("rewrite_once examples") {
    auto am = two_copies();
    auto r = rewrite_once_amalgam(am, am.parse("(t e@1 0@B e@2)"));
    REQUIRE(r.size() == 1);
    CHECK(r[0].position.empty());
    CHECK(r[0].label == "C:1.2");
    CHECK(r[0].clause == "C");
    CHECK(r[0].result == am.parse("e@2"));

    auto c1 = rewrite_once_amalgam(am, am.parse("(t e@1 e@1 e@1)"));
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].label == "C1");
    CHECK(c1[0].result == am.parse("e@1"));

    CHECK(rewrite_once_amalgam(am, am.parse("(t e@1 e@2 0@B)")).empty());
  }

  TEST_CASE("normalize examples") {
    auto am = two_copies();
    auto n = amalgam_normalize(am, am.parse("(q e@1 e@2 (t e@1 e@2 1@B))"));
    CHECK(n.normal_form == am.one());
    REQUIRE(n.trace.size() == 1);
    CHECK(n.trace[0].label == "C:1.6");

    auto inner = amalgam_normalize(am, am.parse("(t 1@B (t e@1 e@2 0@B) 0@B)"));
    CHECK(inner.normal_form == am.parse("(t e@1 e@2 0@B)"));
    REQUIRE(inner.trace.size() == 1);
    CHECK(inner.trace[0].label == "C:1.3");

    CHECK(amalgam_normalize(am, am.parse("(t 0@B e@1 e@2)")).normal_form == am.parse("e@2"));
  }

  TEST_CASE("normalization refuses systems without (*)") {
    auto am = two_copies();
    trs::RewriteSystem grow(trs::Signature::ternary_ring(),
                            {trs::RewriteRule("g", trs::parse_term("(t x 1 0)"), trs::parse_term("(t (t x 1 0) 1 0)"))});
    CHECK(kind_of([&] { amalgam_normalize(am, am.one(), trs::Strategy::innermost(), grow); }) ==
          ErrorKind::nontermination_risk);
  }

  TEST_CASE("canonical injections") {
    auto am = two_copies();
    CHECK(canonical_injection(am, 0, f2e()->element("e")) == am.parse("e@1"));
    CHECK(canonical_injection(am, 0, 0) == am.zero());
    CHECK(canonical_injection(am, 1, 1) == am.one());
    CHECK(kind_of([&] { canonical_injection(am, 2, 0); }) == ErrorKind::foreign_element);
  }

  TEST_CASE("equal_in_amalgam") {
    auto am = two_copies();
    CHECK(equal_in_amalgam(am, am.parse("(t e@1 e@2 0@B)"), am.parse("(t e@1 e@2 0@B)")));
    CHECK(equal_in_amalgam(am, am.parse("0"), am.zero()));
    CHECK_FALSE(equal_in_amalgam(am, am.parse("(t e@1 e@2 0@B)"), am.parse("(t e@2 e@1 0@B)")));
  }

  TEST_CASE("property: terms over one member evaluate in that member") {
    auto am = two_copies();
    const auto& a = *f2e();
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
      // Random term, then retag every leaf into A_1.
      Term t = random_mixed_term(am, rng, 4);
      std::function<Term(const Term&)> to_one = [&](const Term& x) -> Term {
        if (x.is_element()) return Term::element("1", x.name());
        std::vector<Term> kids;
        for (const auto& c : x.children()) kids.push_back(to_one(c));
        return Term::app(x.name(), kids);
      };
      Term mono = to_one(t);
      trs::ParseOptions opts;
      opts.element_names = {"0", "1", "e", "1+e"};
      std::function<Term(const Term&)> plain = [&](const Term& x) -> Term {
        if (x.is_element()) return trs::parse_term(x.name(), opts);
        std::vector<Term> kids;
        for (const auto& c : x.children()) kids.push_back(plain(c));
        return Term::app(x.name(), kids);
      };
      Element v = algebra::evaluate(a, plain(mono));
      CHECK(amalgam_normalize(am, mono, trs::Strategy::random(rng())).normal_form == am.element(0, v));
    }
  }

  TEST_CASE("property: every step shrinks the term") {
    auto am = two_copies();
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
      Term t = random_mixed_term(am, rng, 5);
      auto n = amalgam_normalize(am, t, trs::Strategy::random(rng()));
      Term prev = t;
      for (const auto& s : n.trace) {
        CHECK(s.result.size() < prev.size());
        prev = s.result;
      }
      CHECK(rewrite_once_amalgam(am, n.normal_form).empty());
    }
  }
}

TEST_SUITE("unique normal forms") {
  TEST_CASE("Sigma' passes on two copies of F2[e]/(e^2)") {
    auto rep = unique_nf_property_test(two_copies(), trs::RewriteSystem::sigma_prime(), {200, 5, 3, 30});
    CHECK(rep.pass);
    CHECK(rep.samples_run == 200);
    CHECK(rep.normalizations == 200 * 32);
    CHECK_FALSE(rep.witness);
  }

  TEST_CASE("Sigma fails with a witness") {
    auto rep = unique_nf_property_test(two_copies(), trs::RewriteSystem::sigma(), {200, 5, 1, 30});
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.witness);
    CHECK(rep.witness->first != rep.witness->second);
    // Both sides are normal for Sigma and equal in the amalgam.
    const auto am = two_copies();
    CHECK(rewrite_once_amalgam(am, rep.witness->first, trs::RewriteSystem::sigma()).empty());
    CHECK(rewrite_once_amalgam(am, rep.witness->second, trs::RewriteSystem::sigma()).empty());
    CHECK(equal_in_amalgam(am, rep.witness->first, rep.witness->second));
  }

  TEST_CASE("q(0_B, e@1, e@2) is Sigma-normal but equals e@2") {
    auto am = two_copies();
    Term t = am.parse("(q 0@B e@1 e@2)");
    CHECK(rewrite_once_amalgam(am, t, trs::RewriteSystem::sigma()).empty());
    CHECK(amalgam_normalize(am, t).normal_form == am.parse("e@2"));
  }

  TEST_CASE("trivial amalgam") {
    auto z2 = ring(bridge::cyclic_ring(2));
    auto am = Amalgam::copies(z2, 2, ElementSet::full(2));
    CHECK(unique_nf_property_test(am, trs::RewriteSystem::sigma_prime(), {100, 4, 1, 10}).pass);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
      CHECK(amalgam_normalize(am, random_mixed_term(am, rng, 4)).normal_form.is_element());
    }
  }

  TEST_CASE("reproducible for a fixed seed") {
    auto am = two_copies();
    auto a = unique_nf_property_test(am, trs::RewriteSystem::sigma(), {50, 5, 9, 10});
    auto b = unique_nf_property_test(am, trs::RewriteSystem::sigma(), {50, 5, 9, 10});
    CHECK(a.pass == b.pass);
    CHECK(a.samples_run == b.samples_run);
    if (a.witness && b.witness) CHECK(a.witness->term == b.witness->term);
  }
}

TEST_SUITE("strong amalgamation") {
  TEST_CASE("two copies of F2[e]/(e^2)") {
    auto rep = check_strong_amalgamation(two_copies());
    CHECK(rep.holds);
    REQUIRE(rep.intersections.size() == 1);
    auto am = two_copies();
    CHECK(rep.intersections[0].common == std::vector<Term>{am.zero(), am.one()});
    CHECK(rep.intersections[0].equals_shared);
    CHECK(rep.injective == std::vector<bool>{true, true});
  }

  TEST_CASE("A1 = A2 = B") {
    auto z2 = ring(bridge::cyclic_ring(2));
    CHECK(check_strong_amalgamation(Amalgam::copies(z2, 2, ElementSet::full(2))).holds);
  }

  TEST_CASE("corpus amalgams with two and three copies") {
    for (std::size_t k : {2u, 3u}) {
      for (const auto& am : corpus_amalgams(k)) {
        CAPTURE(am.algebra(0).label());
        auto rep = check_strong_amalgamation(am);
        CHECK(rep.holds);
        CHECK(rep.intersections.size() == k * (k - 1) / 2);
      }
    }
  }
}
