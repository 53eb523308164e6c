#pragma once

// Deterministic corpus of cut-free derivations: axiom templates over random
// instances, search results on random goals, and generalized axioms in
// random contexts. Each entry carries the axiom set it was checked under.

#include <random>
#include <string>
#include <vector>

#include "nq/search.hpp"
#include "nq/transform.hpp"
#include "support.hpp"

namespace nqtest {

struct CorpusEntry {
  std::string origin;
  nq::AxiomSet axioms = 0;
  nq::Derivation d;
};

inline std::vector<nq::AxiomSet> closed_axiom_sets() {
  std::vector<nq::AxiomSet> out;
  for (unsigned m = 0; m < 256; ++m)
    if (nq::missing_axioms(static_cast<nq::AxiomSet>(m)).empty()) out.push_back(static_cast<nq::AxiomSet>(m));
  return out;
}

// Variables disjoint from the template letters x, y, z so instances stay pure.
inline const std::vector<nq::Var> kInstanceVars = {"x", "w"};

inline std::vector<CorpusEntry> make_corpus(std::size_t want, unsigned seed = 7, std::size_t max_height = 8) {
  using namespace nq;
  std::mt19937 rng(seed);
  std::vector<CorpusEntry> out;
  const auto sets = closed_axiom_sets();
  const LogicSpec full = make_logic("D,T,B,4,5,CBF,BF,UI");
  auto keep = [&](std::string origin, AxiomSet s, Derivation d) {
    if (height(d) <= max_height && out.size() < want) out.push_back({std::move(origin), s, std::move(d)});
  };

  // generalized axioms: random context, one formula on both sides
  for (int i = 0; i < 200 && out.size() < want / 5; ++i) {
    NestedSequent s = random_nested(rng, 2, 1);
    auto paths = all_paths(s);
    Path at = paths[std::uniform_int_distribution<std::size_t>(0, paths.size() - 1)(rng)];
    Formula a = random_formula(rng, 2, kInstanceVars);
    node_at(s, at).node.ant.push_back(a);
    node_at(s, at).node.suc.push_back(a);
    Derivation d = purify(generalized_axiom(s, at, a));
    if (check(d, make_logic("K"))) keep("genax", 0, d);
  }

  // templates over random instances
  auto templates = [&](std::size_t upto) {
    for (int round = 0; out.size() < upto && round < 100; ++round)
      for (const auto& n : template_names()) {
        AxiomParams p;
        if (n != "∀-VAQ" && n != "REPL") p.a = random_formula(rng, 1, kInstanceVars);
        p.b = random_formula(rng, 1, kInstanceVars);
        try {
          keep("template " + n, full.axioms, derive_axiom(n, full, p));
        } catch (const Error&) {
          // instance clashes with the template's letters
        }
      }
  };
  templates(want * 3 / 5);

  // search on random implications built from a shared pool
  SearchBudget b;
  b.max_depth = 8;
  b.max_expansions = 20000;
  for (int i = 0; i < 400 && out.size() < want; ++i) {
    Formula a = random_formula(rng, 2, kInstanceVars);
    Formula c = std::uniform_int_distribution<int>(0, 1)(rng) ? a : random_formula(rng, 1, kInstanceVars);
    NestedSequent g;
    g.node.suc.push_back(Formula::implies(a, Formula::implies(random_formula(rng, 1, kInstanceVars), c)));
    AxiomSet s = sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)];
    auto r = prove(g, make_logic(s), b);
    if (r.derivation) keep("search", s, *r.derivation);
  }
  templates(want);
  return out;
}

}  // namespace nqtest
