#include "terndescent/amalgam.hpp"

#include <algorithm>
#include <set>

namespace terndescent::amalgam {

using trs::Term;

// ---------------------------------------------------------------- validation

namespace {

struct Embeddings {
  std::vector<std::vector<Element>> embed;
  std::vector<std::vector<int>> back;
};

std::string element_map_name(const SharedSpec& shared, std::size_t i, const std::string& b) {
  if (i >= shared.maps.size() || shared.maps[i].empty()) return b;
  auto it = shared.maps[i].find(b);
  return it == shared.maps[i].end() ? std::string() : it->second;
}

AmalgamCheck fail(ErrorKind kind, std::string reason) { return {false, kind, std::move(reason)}; }

AmalgamCheck build_embeddings(const std::vector<RingPtr>& family, const SharedSpec& shared, Embeddings& out) {
  if (family.empty()) return fail(ErrorKind::bad_embedding, "empty family");
  if (shared.elements.empty()) return fail(ErrorKind::not_a_subalgebra, "shared subalgebra is empty");
  if (!shared.maps.empty() && shared.maps.size() != family.size()) {
    return fail(ErrorKind::bad_embedding, "expected one embedding per family member");
  }
  std::set<std::string> names(shared.elements.begin(), shared.elements.end());
  if (names.size() != shared.elements.size()) return fail(ErrorKind::bad_embedding, "duplicate shared element");

  const std::size_t nb = shared.elements.size();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& a = *family[i];
    const std::string who = "A" + std::to_string(i + 1);
    if (i < shared.maps.size()) {
      for (const auto& [k, v] : shared.maps[i]) {
        if (!names.contains(k)) return fail(ErrorKind::bad_embedding, who + ": map mentions unknown '" + k + "'");
      }
    }
    std::vector<Element> emb(nb);
    std::vector<int> back(a.size(), -1);
    ElementSet image;
    for (std::size_t b = 0; b < nb; ++b) {
      auto target = element_map_name(shared, i, shared.elements[b]);
      auto e = a.find(target);
      if (!e) {
        return fail(ErrorKind::bad_embedding, who + ": shared element '" + shared.elements[b] +
                                                  "' has no image in " + a.label());
      }
      if (back[*e] >= 0) {
        return fail(ErrorKind::bad_embedding, who + ": embedding is not injective at '" + a.name(*e) + "'");
      }
      emb[b] = *e;
      back[*e] = static_cast<int>(b);
      image.insert(*e);
    }
    if (!image.contains(a.zero())) return fail(ErrorKind::not_a_subalgebra, who + ": 0 is not in B");
    if (!image.contains(a.one())) return fail(ErrorKind::not_a_subalgebra, who + ": 1 is not in B");
    for (auto x : image.elements()) {
      for (auto y : image.elements()) {
        for (auto z : image.elements()) {
          for (int op = 0; op < 2; ++op) {
            Element v = op == 0 ? a.t(x, y, z) : a.q(x, y, z);
            if (!image.contains(v)) {
              return fail(ErrorKind::not_a_subalgebra, who + ": " + (op == 0 ? "t(" : "q(") + a.name(x) + "," +
                                                           a.name(y) + "," + a.name(z) + ")=" + a.name(v) +
                                                           " leaves B");
            }
          }
        }
      }
    }
    out.embed.push_back(std::move(emb));
    out.back.push_back(std::move(back));
  }

  // B's structure induced through each m_i must agree.
  const auto& a0 = *family[0];
  for (std::size_t i = 1; i < family.size(); ++i) {
    const auto& ai = *family[i];
    auto b0 = [&](Element e) { return out.back[0][e]; };
    auto bi = [&](Element e) { return out.back[i][e]; };
    if (b0(a0.zero()) != bi(ai.zero()) || b0(a0.one()) != bi(ai.one())) {
      return fail(ErrorKind::bad_embedding, "A1 and A" + std::to_string(i + 1) + " disagree on 0_B or 1_B");
    }
    for (std::size_t x = 0; x < nb; ++x) {
      for (std::size_t y = 0; y < nb; ++y) {
        for (std::size_t z = 0; z < nb; ++z) {
          const auto& e0 = out.embed[0];
          const auto& ei = out.embed[i];
          if (b0(a0.t(e0[x], e0[y], e0[z])) != bi(ai.t(ei[x], ei[y], ei[z])) ||
              b0(a0.q(e0[x], e0[y], e0[z])) != bi(ai.q(ei[x], ei[y], ei[z]))) {
            return fail(ErrorKind::bad_embedding, "A1 and A" + std::to_string(i + 1) + " induce different operations on B at (" +
                                                      shared.elements[x] + "," + shared.elements[y] + "," +
                                                      shared.elements[z] + ")");
          }
        }
      }
    }
  }
  return {};
}

}  // namespace

AmalgamCheck validate_amalgam(const std::vector<RingPtr>& family, const SharedSpec& shared) {
  Embeddings e;
  return build_embeddings(family, shared, e);
}

// ---------------------------------------------------------------- Amalgam

Amalgam::Amalgam(std::vector<RingPtr> family, SharedSpec shared) : family_(std::move(family)), shared_(std::move(shared)) {
  Embeddings e;
  auto chk = build_embeddings(family_, shared_, e);
  if (!chk.valid) throw Error(*chk.kind, chk.reason);
  embed_ = std::move(e.embed);
  back_ = std::move(e.back);
  zero_b_ = static_cast<Element>(back_[0][family_[0]->zero()]);
  one_b_ = static_cast<Element>(back_[0][family_[0]->one()]);
}

Amalgam Amalgam::copies(const RingPtr& a, std::size_t k, ElementSet shared) {
  SharedSpec spec;
  for (auto e : shared.elements()) spec.elements.push_back(a->name(e));
  return Amalgam(std::vector<RingPtr>(k, a), std::move(spec));
}

Term Amalgam::element(std::size_t i, Element a) const {
  int b = back_.at(i).at(a);
  if (b >= 0) return Term::element("B", shared_.elements[b]);
  return Term::element(std::to_string(i + 1), family_[i]->name(a));
}

std::vector<Term> Amalgam::leaves() const {
  std::vector<Term> out;
  for (const auto& b : shared_.elements) out.push_back(Term::element("B", b));
  for (std::size_t i = 0; i < family_.size(); ++i) {
    for (Element a = 0; a < family_[i]->size(); ++a) {
      if (back_[i][a] < 0) out.push_back(element(i, a));
    }
  }
  return out;
}

Term Amalgam::zero() const { return Term::element("B", shared_.elements[zero_b_]); }
Term Amalgam::one() const { return Term::element("B", shared_.elements[one_b_]); }

Amalgam::Leaf Amalgam::resolve(const Term& leaf) const {
  const auto& tag = leaf.tag();
  if (tag == "B") {
    auto it = std::find(shared_.elements.begin(), shared_.elements.end(), leaf.name());
    if (it == shared_.elements.end()) {
      throw Error(ErrorKind::foreign_element, "'" + leaf.name() + "' is not an element of B");
    }
    return {0, true, static_cast<Element>(it - shared_.elements.begin())};
  }
  std::size_t i = 0;
  if (tag.empty()) {
    if (family_.size() != 1) throw Error(ErrorKind::foreign_element, "untagged element '" + leaf.name() + "'");
  } else {
    if (!std::all_of(tag.begin(), tag.end(), [](char c) { return c >= '0' && c <= '9'; }) || tag.size() > 6) {
      throw Error(ErrorKind::foreign_element, "unknown tag '" + tag + "'");
    }
    i = std::stoul(tag);
    if (i == 0 || i > family_.size()) throw Error(ErrorKind::foreign_element, "unknown tag '" + tag + "'");
    --i;
  }
  auto e = family_[i]->find(leaf.name());
  if (!e) throw Error(ErrorKind::foreign_element, "'" + leaf.str() + "' is not an element of A" + std::to_string(i + 1));
  if (back_[i][*e] >= 0) return {i, true, static_cast<Element>(back_[i][*e])};
  return {i, false, *e};
}

Term Amalgam::canonicalize(const Term& term) const {
  switch (term.kind()) {
    case trs::TermKind::variable:
      throw Error(ErrorKind::foreign_element, "variable '" + term.name() + "' in a mixed term");
    case trs::TermKind::element: {
      auto l = resolve(term);
      return l.shared ? Term::element("B", shared_.elements[l.index]) : element(l.algebra, l.index);
    }
    case trs::TermKind::application:
      break;
  }
  if (term.children().empty()) {
    if (term.name() == "0") return zero();
    if (term.name() == "1") return one();
    return term;
  }
  std::vector<Term> kids;
  for (const auto& c : term.children()) kids.push_back(canonicalize(c));
  return Term::app(term.name(), std::move(kids));
}

Term Amalgam::parse(std::string_view text) const {
  trs::ParseOptions opts;
  opts.allow_variables = false;
  if (family_.size() == 1) {
    opts.element_names.insert(family_[0]->carrier().begin(), family_[0]->carrier().end());
  }
  return canonicalize(trs::parse_term(text, opts));
}

std::optional<Term> Amalgam::collapse(const Term& term) const {
  if (!term.is_app()) return std::nullopt;
  const auto kids = term.children();
  if (kids.empty()) {
    if (term.name() == "0") return zero();
    if (term.name() == "1") return one();
    return std::nullopt;
  }
  if (kids.size() != 3 || (term.name() != "t" && term.name() != "q")) return std::nullopt;
  std::optional<std::size_t> home;
  Leaf leaf[3];
  for (std::size_t k = 0; k < 3; ++k) {
    if (!kids[k].is_element()) return std::nullopt;
    leaf[k] = resolve(kids[k]);
    if (!leaf[k].shared) {
      if (home && *home != leaf[k].algebra) return std::nullopt;
      home = leaf[k].algebra;
    }
  }
  const std::size_t i = home.value_or(0);
  const auto& a = *family_[i];
  Element v[3];
  for (std::size_t k = 0; k < 3; ++k) v[k] = leaf[k].shared ? embed_[i][leaf[k].index] : leaf[k].index;
  return element(i, term.name() == "t" ? a.t(v[0], v[1], v[2]) : a.q(v[0], v[1], v[2]));
}

trs::RootStepper Amalgam::stepper(const trs::RewriteSystem& system) const {
  struct Grounded {
    std::string label;
    Term lhs, rhs;
  };
  std::vector<Grounded> rules;
  auto ground = [this](const Term& t) {
    trs::Substitution none;
    std::function<Term(const Term&)> rec = [&](const Term& x) -> Term {
      if (x.is_app() && x.children().empty()) {
        if (x.name() == "0") return zero();
        if (x.name() == "1") return one();
      }
      if (!x.is_app() || x.children().empty()) return x;
      std::vector<Term> kids;
      for (const auto& c : x.children()) kids.push_back(rec(c));
      return Term::app(x.name(), std::move(kids));
    };
    return rec(t);
  };
  for (const auto& r : system.rules()) rules.push_back({"C:" + r.label(), ground(r.lhs()), ground(r.rhs())});

  return [this, rules = std::move(rules)](const Term& subject, std::vector<trs::RootStep>& out) {
    if (!subject.is_app()) return;
    for (const auto& r : rules) {
      if (!r.lhs.is_app() || r.lhs.name() != subject.name()) continue;
      if (auto sigma = trs::match_pattern(r.lhs, subject)) out.push_back({r.label, sigma->apply(r.rhs)});
    }
    if (auto v = collapse(subject)) out.push_back({"C1", *v});
  };
}

// ---------------------------------------------------------------- operations

std::vector<AmalgamRedex> rewrite_once_amalgam(const Amalgam& am, const Term& term, const trs::RewriteSystem& system) {
  Term t = am.canonicalize(term);
  std::vector<AmalgamRedex> out;
  for (auto& r : trs::all_redexes(t, am.stepper(system))) {
    std::string clause = r.label == "C1" ? "C1" : "C";
    out.push_back({std::move(r.position), std::move(clause), std::move(r.label), std::move(r.contractum), std::move(r.result)});
  }
  return out;
}

trs::Normalization amalgam_normalize(const Amalgam& am, const Term& term, const trs::Strategy& strategy,
                                     const trs::RewriteSystem& system) {
  if (!trs::check_condition_star(system).holds) {
    throw Error(ErrorKind::nontermination_risk, "condition (*) fails; normalization may not terminate");
  }
  return trs::normalize_with(am.canonicalize(term), am.stepper(system), strategy);
}

Term canonical_injection(const Amalgam& am, std::size_t i, Element a) {
  if (i >= am.family_size() || a >= am.algebra(i).size()) {
    throw Error(ErrorKind::foreign_element, "no element " + std::to_string(a) + " in A" + std::to_string(i + 1));
  }
  return amalgam_normalize(am, am.element(i, a)).normal_form;
}

bool equal_in_amalgam(const Amalgam& am, const Term& s, const Term& t, const trs::RewriteSystem& system) {
  auto strat = trs::Strategy::innermost();
  return amalgam_normalize(am, s, strat, system).normal_form == amalgam_normalize(am, t, strat, system).normal_form;
}

Term random_mixed_term(const Amalgam& am, std::mt19937_64& rng, std::size_t depth) {
  static const char* symbols[] = {"t", "q"};
  const auto leaves = am.leaves();
  std::function<Term(std::size_t, bool)> gen = [&](std::size_t budget, bool root) -> Term {
    const std::size_t choices = 2 + leaves.size();
    std::size_t pick;
    if (budget == 0) {
      pick = 2 + std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng);
    } else if (root) {
      pick = std::uniform_int_distribution<std::size_t>(0, 1)(rng);
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, choices - 1)(rng);
    }
    if (pick >= 2) return leaves[pick - 2];
    std::vector<Term> kids;
    for (int k = 0; k < 3; ++k) kids.push_back(gen(budget - 1, false));
    return Term::app(symbols[pick], std::move(kids));
  };
  return gen(depth, true);
}

UniqueNfReport unique_nf_property_test(const Amalgam& am, const trs::RewriteSystem& system,
                                       const UniqueNfOptions& options) {
  if (!trs::check_condition_star(system).holds) {
    throw Error(ErrorKind::nontermination_risk, "condition (*) fails; normalization may not terminate");
  }
  UniqueNfReport rep;
  rep.seed = options.seed;
  std::mt19937_64 rng(options.seed);
  const auto peaks = trs::critical_pairs(system);
  const auto stepper = am.stepper(system);

  for (std::size_t s = 0; s < options.samples; ++s) {
    Term sample = Term::element("B", am.shared_elements().front());
    if (s % 2 == 1 && !peaks.empty()) {
      const auto& peak = peaks[std::uniform_int_distribution<std::size_t>(0, peaks.size() - 1)(rng)].peak;
      std::size_t rest = options.depth > peak.depth() ? options.depth - peak.depth() : 0;
      trs::Substitution inst;
      for (const auto& v : trs::variables_of(peak)) inst.bind(v, random_mixed_term(am, rng, rest));
      sample = am.canonicalize(inst.apply(peak));
    } else {
      sample = random_mixed_term(am, rng, options.depth);
    }

    std::vector<trs::Strategy> strategies{trs::Strategy::innermost(), trs::Strategy::outermost()};
    for (std::size_t k = 0; k < options.random_strategies; ++k) strategies.push_back(trs::Strategy::random(rng()));

    std::optional<Term> first;
    std::string first_name;
    for (const auto& strat : strategies) {
      Term nf = trs::normalize_with(sample, stepper, strat).normal_form;
      ++rep.normalizations;
      if (!first) {
        first = nf;
        first_name = strat.str();
      } else if (nf != *first) {
        rep.pass = false;
        rep.samples_run = s + 1;
        rep.witness = UniqueNfWitness{sample, *first, first_name, nf, strat.str()};
        return rep;
      }
    }
  }
  rep.samples_run = options.samples;
  return rep;
}

StrongAmalgamationReport check_strong_amalgamation(const Amalgam& am, const trs::RewriteSystem& system) {
  StrongAmalgamationReport rep;
  std::vector<std::set<Term>> images(am.family_size());
  for (std::size_t i = 0; i < am.family_size(); ++i) {
    const auto& a = am.algebra(i);
    for (Element e = 0; e < a.size(); ++e) {
      images[i].insert(amalgam_normalize(am, am.element(i, e), trs::Strategy::innermost(), system).normal_form);
    }
    bool inj = images[i].size() == a.size();
    rep.injective.push_back(inj);
    if (!inj && rep.holds) {
      rep.holds = false;
      rep.reason = "n_" + std::to_string(i + 1) + " is not injective";
    }
  }
  std::set<Term> shared;
  for (const auto& b : am.shared_elements()) {
    shared.insert(amalgam_normalize(am, Term::element("B", b), trs::Strategy::innermost(), system).normal_form);
  }
  for (std::size_t i = 0; i < am.family_size(); ++i) {
    for (std::size_t j = i + 1; j < am.family_size(); ++j) {
      StrongAmalgamationReport::Intersection x{i, j, {}, false};
      std::set_intersection(images[i].begin(), images[i].end(), images[j].begin(), images[j].end(),
                            std::back_inserter(x.common));
      x.equals_shared = std::set<Term>(x.common.begin(), x.common.end()) == shared;
      if (!x.equals_shared && rep.holds) {
        rep.holds = false;
        rep.reason = "n_" + std::to_string(i + 1) + "(A" + std::to_string(i + 1) + ") and n_" + std::to_string(j + 1) +
                     "(A" + std::to_string(j + 1) + ") meet outside B";
      }
      rep.intersections.push_back(std::move(x));
    }
  }
  return rep;
}

}  // namespace terndescent::amalgam
