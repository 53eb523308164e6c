#pragma once

// Derivations with one to three Cut / L-Cut nodes. Each cut node is placed
// by hand; the cut-free pieces above it come from search.

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "nq/search.hpp"
#include "nq/transform.hpp"

namespace nqtest {

struct CutCase {
  std::string name;
  std::string logic;
  nq::Derivation d;
};

// One cut: formula, node, further positions (L-Cut only).
struct CutSpec {
  std::string formula;
  Path at{};
  std::vector<Path> extra{};
  bool lcut = false;
};

inline Derivation found(const nq::NestedSequent& goal, const nq::LogicSpec& logic) {
  auto r = nq::prove(goal, logic);
  if (!r.derivation) throw nq::Error("no cut-free derivation found for " + nq::to_string(goal));
  return *r.derivation;
}

// Derivation of goal ending in the cuts of `chain`, outermost first; each
// further cut derives the left premiss of the previous one.
inline Derivation with_cuts(const nq::NestedSequent& goal, const nq::LogicSpec& logic,
                            const std::vector<CutSpec>& chain, std::size_t from = 0) {
  using namespace nq;
  if (from == chain.size()) return found(goal, logic);
  const CutSpec& c = chain[from];
  RuleInstance r;
  r.kind = c.lcut ? RuleKind::LCut : RuleKind::Cut;
  r.conclusion = goal;
  r.at = c.at;
  r.extra = c.extra;
  (c.lcut ? r.principal : r.produced) = fml(c.formula);
  auto prem = premisses_of(r);
  Derivation d;
  d.rule = r;
  d.premisses = {with_cuts(prem[0], logic, chain, from + 1), found(prem[1], logic)};
  return d;
}

inline std::vector<CutCase> cut_cases() {
  using nq::make_logic;
  struct Row {
    std::string name, logic, goal;
    std::vector<CutSpec> chain;
  };
  const std::vector<Row> rows = {
      {"implication against its use", "K", "; P => P", {{"P -> P"}}},
      {"atom", "K", "; P, P -> Q => Q", {{"P"}}},
      {"falsum", "K", "; => P -> P", {{"false"}}},
      {"identity", "K", "x, y ; x = y, P(x) => P(y)", {{"x = y"}}},
      {"identity principal", "K", "; x = y => y = x", {{"x = x"}}},
      {"universal from instantiation", "K", "y ; forall x. (Q(x) & P(x)) => P(y)", {{"forall x. P(x)"}}},
      {"universal two cuts", "K", "y ; forall x. (Q(x) & P(x)) => P(y) | R(y,y)",
       {{"forall x. P(x)"}, {"forall x. Q(x) & P(x)"}}},
      {"nested implication", "K", "; P -> Q, Q -> R => P -> R", {{"P -> R"}, {"Q -> R"}}},
      {"box in K", "K", "; box (P & Q) => box P", {{"box P", {}, {}, true}}},
      {"box below a child", "K", "; box (P & Q) => [; => P]", {{"box P", {}, {}, true}}},
      {"box against R_T", "T", "; box (P & Q) => P", {{"box P", {}, {}, true}}},
      {"box cut twice under T", "T", "; box box (P & Q) => P", {{"box P", {}, {}, true}, {"box box P", {}, {}, true}}},
      {"L-Cut under T,4", "T,4", "; box (P & Q) => [; => [; => P]]", {{"box P", {}, {{0}}, true}}},
      {"L-Cut under 4", "4", "; box (P & Q) => [; => [; => [; => P]]]", {{"box P", {}, {{0}, {0, 0}}, true}}},
      {"L-Cut under 5 at depth 1", "5", "; => [; box (P & Q) =>], [; => [; => P]]", {{"box P", {0}, {{1}}, true}}},
      {"L-Cut under 4,5", "4,5", "; => [; box (P & Q) => [; => P]], [; => P -> P]",
       {{"box P", {0}, {{1}, {0, 0}}, true}}},
      {"box and diamond under B", "B", "; P & Q => box dia P", {{"P"}, {"box dia P", {}, {}, true}}},
      {"box against R_B", "B", "; box box P => P, [; =>]", {{"box P", {0}, {}, true}}},
      {"serial box", "D", "; box (P & Q) => dia P", {{"box P", {}, {}, true}}},
      {"converse Barcan under a cut", "CBF", "; box forall x. (P(x) & Q(x)) => forall x. box P(x)",
       {{"box forall x. P(x)", {}, {}, true}}},
      {"Barcan under a cut", "BF", "; forall x. box (P(x) & Q(x)) => box forall x. P(x)",
       {{"forall x. box P(x)"}}},
      {"constant domains", "CBF,BF,UI", "; forall x. (P(x) & Q(x)) => P(y)", {{"forall x. P(x)"}}},
      {"three cuts", "T,4", "; box (P & Q) => box box P",
       {{"box box P", {}, {}, true}, {"box P", {}, {}, true}, {"P & Q -> P"}}},
  };
  std::vector<CutCase> out;
  for (const auto& r : rows) {
    auto logic = make_logic(r.logic);
    out.push_back({r.name, r.logic, with_cuts(seq(r.goal), logic, r.chain)});
  }
  {
    // right premiss by hand: the cut copy travels to the root by R_5
    auto five = make_logic("5");
    auto right = node(RuleKind::R5, {"; => [; box P, box (P & Q) =>], [; => P]", {0}, {}, "box P"},
                      {node(RuleKind::Lbox, {"; box P => [; box P, box (P & Q) =>], [; => P]", {}, {1}, "box P"},
                            {node(RuleKind::Init, {"; box P => [; box P, box (P & Q) =>], [; P => P]", {1}, {}, "P"})})});
    auto cut = node(RuleKind::LCut, {"; => [; box (P & Q) =>], [; => P]", {0}, {}, "box P"},
                    {found(seq("; => [; box (P & Q) => box P], [; => P]"), five), right});
    out.push_back({"box against R_5", "5", cut});
  }
  out.push_back({"displayed modal cut", "T", fixture_modal_cut()});
  out.push_back({"displayed reduced cut", "T", fixture_reduced_cut()});
  return out;
}

}  // namespace nqtest
