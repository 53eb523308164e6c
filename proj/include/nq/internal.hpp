#pragma once

// Helpers shared by the transform, cut-elimination and search modules.

#include <optional>

#include "nq/derivation.hpp"

namespace nq::detail {

enum class Side { Ant, Suc, Sig };

// One formula or variable at one node.
struct AddedFact {
  Path at;
  Side side = Side::Ant;
  Formula formula;
  Var var;
};

RuleInstance instance(RuleKind k, NestedSequent c, Path at = {});
// An initial sequent or L-bottom instance with conclusion s, if any.
std::optional<RuleInstance> find_axiom(const NestedSequent& s);
bool is_axiom(RuleKind k);
// Rules whose premisses lack their principal formula.
bool consumes(RuleKind k);
// The fact a single-premiss extending rule adds; empty for other rules.
std::optional<AddedFact> added_fact(const RuleInstance& r);
NestedSequent fact_filler(const AddedFact& f);
bool holds(const NestedSequent& s, const AddedFact& f);
// Drops one of two copies of the fact (CL, CR or SC).
Derivation contract_fact(const Derivation& d, const AddedFact& f);

}  // namespace nq::detail
