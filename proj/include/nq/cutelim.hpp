#pragma once

#include <compare>
#include <vector>

#include "nq/derivation.hpp"

namespace nq {

// Lexicographic: cut-formula weight, then the sum of the premiss heights.
struct Measure {
  std::size_t formula_weight = 0;
  std::size_t height_sum = 0;
  friend auto operator<=>(const Measure&, const Measure&) = default;
};

// rule: a Cut (cut formula in `produced`) or L-Cut (box formula in
// `principal`, further positions in `extra`) instance; left and right
// derive its two premisses.
struct CutInstance {
  RuleInstance rule;
  Derivation left;
  Derivation right;
};

Measure measure(const CutInstance& c);

// Every recursive reduction step, as (caller, callee) measures.
struct EliminationTrace {
  std::vector<std::pair<Measure, Measure>> steps;
  std::size_t cuts_eliminated = 0;
};

// Cut-free derivation of the cut's conclusion. left and right must be
// cut-free. Throws Error on malformed instances and on side-condition
// violations; throws std::logic_error if a step fails to lower the Measure.
Derivation reduce_cut(const CutInstance& c, const LogicSpec& logic, EliminationTrace* trace = nullptr);

// Removes every Cut and L-Cut, uppermost first. The result is pure and
// passes check with the same endsequent.
Derivation eliminate(const Derivation& d, const LogicSpec& logic, EliminationTrace* trace = nullptr);

}  // namespace nq
