#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nq/search.hpp"
#include "support.hpp"

using namespace nq;
using namespace nqtest;

namespace {

NestedSequent goal_of(const Formula& f) {
  NestedSequent s;
  s.node.suc.push_back(f);
  return s;
}

// Every properly closed axiom set.
std::vector<AxiomSet> closed_sets() {
  std::vector<AxiomSet> out;
  for (unsigned m = 0; m < 256; ++m)
    if (missing_axioms(static_cast<AxiomSet>(m)).empty()) out.push_back(static_cast<AxiomSet>(m));
  return out;
}

bool uses(const Derivation& d, RuleKind k) {
  bool found = false;
  for_each_node(d, [&](const Derivation& x) { found = found || x.rule.kind == k; });
  return found;
}

}  // namespace

TEST_CASE("templates check under the full logic") {
  LogicSpec all = make_logic("D,T,B,4,5,CBF,BF,UI");
  for (const auto& n : template_names()) {
    Derivation d = derive_axiom(n, all);
    CHECK_MESSAGE(check(d, all), n);
    CHECK(d.conclusion().node.suc.size() == 1);
    CHECK(alpha_equal(d.conclusion().node.suc[0], axiom_formula(n)));
  }
}

TEST_CASE("templates need their rules") {
  LogicSpec k = make_logic("K");
  for (const std::string n : {"TAUT", "K", "UI°", "∀-COMM", "∀-DIST", "∀-VAQ", "REF", "REPL", "ND"})
    CHECK_MESSAGE(check(derive_axiom(n, k), k), n);
  for (const std::string n : {"D", "T", "B", "4", "5", "CBF", "BF", "UI"}) {
    CHECK_THROWS_AS(derive_axiom(n, k), Error);
    AxiomSet own = bit(*axiom_from_name(n));
    if (missing_axioms(own).empty()) CHECK(check(derive_axiom(n, make_logic(own)), make_logic(own)));
  }
  CHECK_THROWS_WITH_AS(derive_axiom("BF", k), doctest::Contains("Rbf"), Error);
  CHECK_THROWS_AS(derive_axiom("nope", k), Error);
}

TEST_CASE("templates accept other instances") {
  LogicSpec all = make_logic("D,T,B,4,5,CBF,BF,UI");
  AxiomParams p;
  p.a = fml("box R(x,w) -> forall u. P(u)");
  p.b = fml("Q(x) -> x = w");
  for (const auto& n : template_names()) {
    if (n == "∀-VAQ") continue;
    CHECK_MESSAGE(check(derive_axiom(n, all, p), all), n);
  }
  AxiomParams vaq;
  vaq.a = fml("P(x)");
  CHECK_THROWS_AS(axiom_formula("∀-VAQ", vaq), Error);
}

TEST_CASE("search finds the displayed derivations") {
  LogicSpec k = make_logic("K");
  auto ui = prove(seq("; => forall y. (forall x. P(x)) -> P(y)"), k);
  REQUIRE(ui.derivation);
  CHECK(height(*ui.derivation) == 4);
  auto nd = prove(seq("; x != y => box x != y"), k);
  REQUIRE(nd.derivation);
  CHECK(uses(*nd.derivation, RuleKind::Rig));
  auto cbf = prove(seq("; box forall x. P(x) => forall x. box P(x)"), make_logic("CBF"));
  REQUIRE(cbf.derivation);
  CHECK(uses(*cbf.derivation, RuleKind::Rcbf));
  CHECK_FALSE(prove(seq("; box forall x. P(x) => forall x. box P(x)"), k).derivation);
}

TEST_CASE("axiom sequents: derivable exactly in logics containing the axiom") {
  for (Axiom a : {Axiom::D, Axiom::T, Axiom::B, Axiom::Four, Axiom::Five, Axiom::CBF, Axiom::BF, Axiom::UI}) {
    std::string n = axiom_name(a);
    NestedSequent g = goal_of(axiom_formula(n));
    auto none = prove(g, make_logic("K"));
    CHECK_MESSAGE(!none.derivation, n);
    CHECK_FALSE(none.budget_exhausted);
    for (AxiomSet s : closed_sets()) {
      if (!has(s, a)) continue;
      LogicSpec l = make_logic(s);
      auto r = prove(g, l);
      CHECK_MESSAGE(r.derivation.has_value(), n << " under " << l.name());
    }
  }
}

TEST_CASE("every axiom is found by search") {
  LogicSpec k = make_logic("K");
  for (const std::string n : {"TAUT", "K", "UI°", "∀-COMM", "∀-DIST", "∀-VAQ", "REF", "REPL", "ND"}) {
    auto r = prove(goal_of(axiom_formula(n)), k);
    CHECK_MESSAGE(r.derivation.has_value(), n);
  }
}

TEST_CASE("budget") {
  SearchBudget b;
  b.max_depth = 0;
  CHECK_THROWS_AS(prove(seq("; P => P"), make_logic("K"), b), Error);
  b.max_depth = 1;
  CHECK(prove(seq("; P => P"), make_logic("K"), b).derivation);
  CHECK_FALSE(prove(seq("; => P -> P"), make_logic("K"), b).derivation);
  b.max_depth = 15;
  b.max_expansions = 3;
  auto r = prove(goal_of(axiom_formula("5")), make_logic("T,4,5,B"), b);
  CHECK(r.budget_exhausted);
  CHECK_FALSE(r.derivation);
}
