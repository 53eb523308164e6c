#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nq/derivation.hpp"

namespace nq {

struct SearchBudget {
  std::size_t max_depth = 15;  // derivation height
  std::size_t max_forall_instances_per_node = 3;
  std::size_t max_new_children = 2;  // R_D applications per branch
  std::size_t max_expansions = 2'000'000;
};

struct SearchResult {
  std::optional<Derivation> derivation;  // empty: Unknown
  std::size_t expansions = 0;
  bool budget_exhausted = false;  // stopped by max_expansions
};

// Iterative deepening over backward rule applications. R-imp, L-imp,
// R-forall and R-box are applied eagerly; the remaining rules only when
// they add something new. A returned derivation is pure and checked.
SearchResult prove(const NestedSequent& goal, const LogicSpec& logic, const SearchBudget& budget = {});

// ----- axiom templates -------------------------------------------------------

// TAUT, K, UI°, ∀-COMM, ∀-DIST, ∀-VAQ, REF, REPL, ND, D, T, B, 4, 5, CBF,
// BF, UI. "UI°" may also be written "UIo".
const std::vector<std::string>& template_names();

// Schematic letters of a template. Unset formulas default to P and Q for
// the propositional and modal axioms, P(x) and Q(x) for the quantifier
// axioms, R(x,y) for ∀-COMM, P(y) for ∀-VAQ and P(z) for REPL.
struct AxiomParams {
  std::optional<Formula> a, b;
  Var x = "x", y = "y", z = "z";
};

// The axiom formula instantiated with p. Throws Error on unknown names
// and on instances violating a proviso (∀-VAQ with x free in A).
Formula axiom_formula(std::string_view name, const AxiomParams& p = {});
// Derivation of => axiom_formula(name, p). Throws Error naming the rule
// the logic lacks.
Derivation derive_axiom(std::string_view name, const LogicSpec& logic, const AxiomParams& p = {});

}  // namespace nq
