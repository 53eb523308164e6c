#pragma once

// Hand-encoded derivations, node by node, with every conclusion written
// out. Nodes are built raw (no alignment), so the checker sees exactly
// what is written here.

#include <string>
#include <vector>

#include "nq/derivation.hpp"
#include "support.hpp"

namespace nqtest {

using nq::Derivation;
using nq::Path;
using nq::RuleKind;

struct Step {
  std::string concl;
  Path at{};
  Path at2{};
  std::string principal{};
  std::string side{};
  std::string produced{};
  std::string var{};
  std::string eigen{};
  std::vector<Path> extra{};
};

inline Derivation node(RuleKind k, const Step& s, std::vector<Derivation> subs = {}) {
  Derivation d;
  d.rule.kind = k;
  d.rule.conclusion = seq(s.concl);
  d.rule.at = s.at;
  d.rule.at2 = s.at2;
  if (!s.principal.empty()) d.rule.principal = fml(s.principal);
  if (!s.side.empty()) d.rule.side = fml(s.side);
  if (!s.produced.empty()) d.rule.produced = fml(s.produced);
  d.rule.var = s.var;
  d.rule.eigen = s.eigen;
  d.rule.extra = s.extra;
  d.premisses = std::move(subs);
  return d;
}

struct Fixture {
  std::string name;
  std::string logic;
  Derivation d;
  bool cuts = false;
};

using R = RuleKind;

// Box case of the replacement identity, with B = P(z).
inline Derivation fixture_repl_box() {
  return node(R::Rbox, {"; x = y, box P(x) => box P(y)", {}, {}, "box P(y)"},
              {node(R::Lbox, {"; x = y, box P(x) => [; => P(y)]", {}, {0}, "box P(x)"},
                    {node(R::Rig, {"; x = y, box P(x) => [; P(x) => P(y)]", {}, {0}, "x = y"},
                          {node(R::Repl, {"; x = y, box P(x) => [; x = y, P(x) => P(y)]", {0}, {}, "x = y",
                                          "P(x)", "P(y)"},
                                {node(R::Init, {"; x = y, box P(x) => [; P(y), x = y, P(x) => P(y)]", {0}, {},
                                                "P(y)"})})})})});
}

// L-forall for increasing domains composed from R_cbf, L-forall and SW.
inline Derivation fixture_lall_cbf() {
  return node(R::Rcbf, {"y ; => [; forall x. P(x) => P(y)]", {}, {0}, "", "", "", "y"},
              {node(R::Lall, {"y ; => [y ; forall x. P(x) => P(y)]", {0}, {}, "forall x. P(x)", "", "", "y"},
                    {node(R::Init, {"y ; => [y ; P(y), forall x. P(x) => P(y)]", {0}, {}, "P(y)"})})});
}

// Universal instantiation, A = P(x).
inline Derivation fixture_ui() {
  return node(R::Rall, {"; => forall y. (forall x. P(x)) -> P(y)", {}, {}, "forall y. (forall x. P(x)) -> P(y)",
                        "", "", "", "y"},
              {node(R::Rimp, {"y ; => (forall x. P(x)) -> P(y)", {}, {}, "(forall x. P(x)) -> P(y)"},
                    {node(R::Lall, {"y ; forall x. P(x) => P(y)", {}, {}, "forall x. P(x)", "", "", "y"},
                          {node(R::Init, {"y ; P(y), forall x. P(x) => P(y)", {}, {}, "P(y)"})})})});
}

// Necessity of distinctness.
inline Derivation fixture_nd() {
  return node(R::Rbox, {"; x != y => box x != y", {}, {}, "box x != y"},
              {node(R::Rimp, {"; x != y => [; => x != y]", {0}, {}, "x != y"},
                    {node(R::Limp, {"; x != y => [; x = y => false]", {}, {}, "x != y"},
                          {node(R::Rig, {"; => x = y, [; x = y => false]", {0}, {}, "x = y"},
                                {node(R::Init, {"; x = y => x = y, [; x = y => false]", {}, {}, "x = y"})}),
                           node(R::Lbot, {"; false => [; x = y => false]", {}, {}, "false"})})})});
}

// Converse Barcan formula, A = P(x).
inline Derivation fixture_cbf() {
  return node(R::Rall, {"; box forall x. P(x) => forall x. box P(x)", {}, {}, "forall x. box P(x)", "", "", "", "y"},
              {node(R::Rbox, {"y ; box forall x. P(x) => box P(y)", {}, {}, "box P(y)"},
                    {node(R::Lbox, {"y ; box forall x. P(x) => [; => P(y)]", {}, {0}, "box forall x. P(x)"},
                          {node(R::Rcbf, {"y ; box forall x. P(x) => [; forall x. P(x) => P(y)]", {}, {0}, "", "",
                                          "", "y"},
                                {node(R::Lall, {"y ; box forall x. P(x) => [y ; forall x. P(x) => P(y)]", {0}, {},
                                                "forall x. P(x)", "", "", "y"},
                                      {node(R::Init, {"y ; box forall x. P(x) => [y ; P(y), forall x. P(x) => P(y)]",
                                                      {0}, {}, "P(y)"})})})})})});
}

// The R-box / R_T case of modal cut reduction, B = P -> P, context Q => Q.
inline Derivation fixture_d1() {
  return node(R::Rbox, {"; Q => Q, box (P -> P)", {}, {}, "box (P -> P)"},
              {node(R::Rimp, {"; Q => Q, [; => P -> P]", {0}, {}, "P -> P"},
                    {node(R::Init, {"; Q => Q, [; P => P]", {0}, {}, "P"})})});
}

inline Derivation fixture_d2_premiss() {
  return node(R::Init, {"; P -> P, box (P -> P), Q => Q", {}, {}, "Q"});
}

inline Derivation fixture_d2() {
  return node(R::RT, {"; box (P -> P), Q => Q", {}, {}, "box (P -> P)"}, {fixture_d2_premiss()});
}

// D3: D1 weakened by P -> P on the left.
inline Derivation fixture_d3() {
  return node(R::Rbox, {"; P -> P, Q => Q, box (P -> P)", {}, {}, "box (P -> P)"},
              {node(R::Rimp, {"; P -> P, Q => Q, [; => P -> P]", {0}, {}, "P -> P"},
                    {node(R::Init, {"; P -> P, Q => Q, [; P => P]", {0}, {}, "P"})})});
}

// D4: L-Cut of D3 against the premiss of the R_T step.
inline Derivation fixture_d4() {
  return node(R::LCut, {"; P -> P, Q => Q", {}, {}, "box (P -> P)"}, {fixture_d3(), fixture_d2_premiss()});
}

// The reduced cut: S_T applied to D1's premiss, then Cut on B against D4.
inline Derivation fixture_reduced_cut() {
  return node(R::Cut, {"; Q => Q", {}, {}, "", "", "P -> P"},
              {node(R::Rimp, {"; Q => Q, P -> P", {}, {}, "P -> P"},
                    {node(R::Init, {"; P, Q => Q, P", {}, {}, "P"})}),
               fixture_d4()});
}

// The original modal cut.
inline Derivation fixture_modal_cut() {
  return node(R::LCut, {"; Q => Q", {}, {}, "box (P -> P)"}, {fixture_d1(), fixture_d2()});
}

inline std::vector<Fixture> reference_fixtures() {
  return {
      {"replacement under box", "K", fixture_repl_box()},
      {"L-forall for increasing domains", "CBF", fixture_lall_cbf()},
      {"universal instantiation", "K", fixture_ui()},
      {"necessity of distinctness", "K", fixture_nd()},
      {"converse Barcan formula", "CBF", fixture_cbf()},
      {"D3", "T", fixture_d3()},
      {"D4", "T", fixture_d4(), true},
      {"reduced modal cut", "T", fixture_reduced_cut(), true},
      {"modal cut", "T", fixture_modal_cut(), true},
  };
}

}  // namespace nqtest
