#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nq/derivation.hpp"

namespace nq {

struct TransformReport {
  Derivation output;
  std::size_t input_height = 0;
  std::size_t output_height = 0;
  bool height_preserving_claimed = false;
};

// ----- sequent-to-derivation constructions -----------------------------------

// goal has `a` on both sides of the node at `at`.
Derivation generalized_axiom(const NestedSequent& goal, const Path& at, const Formula& a);
// goal has x = x in the consequent at `at`.
Derivation identity_refl(const NestedSequent& goal, const Path& at, const Var& x);
// goal has x = y and ax in the antecedent and ay in the consequent at `at`,
// where ay arises from ax by replacing free occurrences of x by y.
Derivation identity_repl(const NestedSequent& goal, const Path& at, const Var& x, const Var& y,
                         const Formula& ax, const Formula& ay);

// ----- height-preserving admissible rules ------------------------------------

// IW, SW and EW in one step: `filler` is merged into the node at `at`
// (signature, both sides, and its children appended).
Derivation weaken(const Derivation& d, const Path& at, const NestedSequent& filler);
// Removes one false from the consequent at `at`.
Derivation remove_bottom(const Derivation& d, const Path& at);
// Derivation of => , [S] from a derivation of S.
Derivation necessitate(const Derivation& d);
// Merges children i and j (i != j) of the node at `at` into child min(i,j).
Derivation merge_children(const Derivation& d, const Path& at, std::size_t i, std::size_t j);
// CL / CR: drops one of two copies of `a` at `at`.
Derivation contract_left(const Derivation& d, const Path& at, const Formula& a);
Derivation contract_right(const Derivation& d, const Path& at, const Formula& a);
// SC: drops one of two copies of x in the signature at `at`.
Derivation contract_sig(const Derivation& d, const Path& at, const Var& x);

enum class StructuralKind { Rbot, SW, SC, IW, EW, CL, CR, Nec, Merge };

// What admit_structural operates on. Unused fields are ignored.
struct StructuralTarget {
  Path at;
  Formula formula;           // Rbot: ignored; CL, CR: the contracted formula
  Var var;                   // SW, SC
  std::vector<Formula> ant;  // IW
  std::vector<Formula> suc;  // IW
  NestedSequent child;       // EW
  std::size_t i = 0, j = 1;  // Merge
};

std::string structural_name(StructuralKind k);
std::optional<StructuralKind> structural_from_name(std::string_view name);

TransformReport admit_structural(StructuralKind kind, const Derivation& d, const StructuralTarget& t);
TransformReport admit_substitution(const Derivation& d, const Var& y, const Var& x);

// Derivation of premiss `index` of r from a derivation of r's conclusion.
TransformReport invert_rule(const Derivation& d, const RuleInstance& r, std::size_t index);

// ----- derived quantifier rules ----------------------------------------------

enum class DerivedKind { LallBF, LallCBF, LallUI, LD };

// Instance data for a derived rule, addressed in its conclusion.
//   LallCBF: at = parent holding y, child = node holding forall x.A
//   LallBF:  at = node holding forall x.A, child = child holding y
//   LallUI:  at = node holding forall x.A
//   LD:      at = node holding box A
struct DerivedInstance {
  DerivedKind kind = DerivedKind::LallUI;
  NestedSequent conclusion;
  Path at;
  Path child;
  Formula principal;
  Var var;
};

// Premiss of the derived rule.
NestedSequent derived_premiss(const DerivedInstance& r);
// Throws Error when the logic lacks the rule the derivation relies on.
Derivation derived_quantifier(const DerivedInstance& r, const Derivation& premiss, const LogicSpec& logic);

// ----- special structural rules ----------------------------------------------

enum class SpecialKind { ST, S4, S5, SB, LStr };

// Positions in the premiss of the special rule.
//   ST, S4: parent = node, child = index of the child operated on
//   SB:     parent = grandparent, child = index of the middle node,
//           grandchild = index below it
//   S5, LStr: parent = node losing the child, child = its index,
//           target = node receiving it (a path of the premiss)
struct SpecialPositions {
  Path parent;
  std::size_t child = 0;
  std::size_t grandchild = 0;
  Path target;
};

std::string special_name(SpecialKind k);
std::optional<SpecialKind> special_from_name(std::string_view name);

// Conclusion of the special rule applied to `premiss`; throws Error when
// the positions or the logic's side conditions rule it out.
NestedSequent special_conclusion(SpecialKind k, const NestedSequent& premiss, const SpecialPositions& pos,
                                 const LogicSpec& logic);
// Admissible, not height preserving.
Derivation special_structural(SpecialKind k, const Derivation& d, const SpecialPositions& pos,
                              const LogicSpec& logic);

}  // namespace nq
