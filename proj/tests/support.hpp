#pragma once

// Hand-rolled generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "terndescent/term.hpp"

namespace support {

using terndescent::trs::Term;

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Uniform over {t, q, 0, 1, vars...} at each node, leaves at `depth`.
inline Term random_term(std::mt19937_64& rng, std::size_t depth, const std::vector<std::string>& vars) {
  const std::size_t leaves = 2 + vars.size();
  std::size_t k = depth == 0 ? 2 + pick(rng, leaves) : pick(rng, 2 + leaves);
  if (k == 0 || k == 1) {
    std::vector<Term> kids;
    for (int i = 0; i < 3; ++i) kids.push_back(random_term(rng, depth - 1, vars));
    return Term::app(k == 0 ? "t" : "q", std::move(kids));
  }
  if (k == 2) return Term::app("0");
  if (k == 3) return Term::app("1");
  return Term::variable(vars[k - 4]);
}

/// Like random_term but biased so that rules of the ternary ring systems
/// fire often: subterms get copied into sibling positions.
inline Term random_redex_rich_term(std::mt19937_64& rng, std::size_t depth, const std::vector<std::string>& vars) {
  if (depth == 0) return random_term(rng, 0, vars);
  Term a = random_redex_rich_term(rng, depth - 1, vars);
  Term b = random_redex_rich_term(rng, depth - 1, vars);
  Term c = random_redex_rich_term(rng, depth - 1, vars);
  switch (pick(rng, 6)) {
    case 0: return Term::app("q", {a, b, Term::app("t", {a, b, c})});
    case 1: return Term::app("t", {a, b, Term::app("q", {a, b, c})});
    case 2: return Term::app("t", {pick(rng, 2) ? Term::app("0") : Term::app("1"), a, b});
    case 3: return Term::app("q", {Term::app("1"), a, a});
    case 4: return Term::app("q", {a, pick(rng, 2) ? Term::app("0") : Term::app("1"), pick(rng, 2) ? a : c});
    default: return Term::app(pick(rng, 2) ? "t" : "q", {a, b, c});
  }
}

}  // namespace support
