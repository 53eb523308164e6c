#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nq/sequent.hpp"

namespace nq {

enum class Axiom : std::uint8_t { D, T, B, Four, Five, CBF, BF, UI };
inline constexpr std::size_t kAxiomCount = 8;

// Bit i set iff Axiom(i) is present.
using AxiomSet = std::uint8_t;

constexpr AxiomSet bit(Axiom a) { return static_cast<AxiomSet>(1u << static_cast<unsigned>(a)); }
constexpr bool has(AxiomSet s, Axiom a) { return (s & bit(a)) != 0; }

std::string axiom_name(Axiom a);
std::optional<Axiom> axiom_from_name(std::string_view name);
// "K" for the empty set, otherwise a comma list in canonical order.
std::string axiom_set_name(AxiomSet s);
// Accepts "K" or a comma list; throws Error on unknown names.
AxiomSet parse_axiom_set(std::string_view text);

// One row of the entailment table used by the properly-closed gate:
// every frame with the properties of `premises` has the property of
// `conclusion`.
struct ClosureEntry {
  AxiomSet premises;
  Axiom conclusion;
};
const std::vector<ClosureEntry>& closure_table();
// Axioms forced by the table but absent from s.
std::vector<Axiom> missing_axioms(AxiomSet s);

enum class RuleKind {
  Init, Lbot,
  Limp, Rimp, Lall, Rall, Lbox, Rbox,
  Ref, Repl, ReplX, Rig,
  RD, RB, RT, R4, R5,
  Rcbf, Rbf, Rui, R5dom,
  Cut, LCut
};

// Every rule of the calculus proper (cut rules excluded).
const std::vector<RuleKind>& calculus_rules();
std::string rule_tag(RuleKind k);  // serialization tag, e.g. "Limp"
std::string rule_label(RuleKind k, bool unicode = false);
std::optional<RuleKind> rule_from_tag(std::string_view tag);
std::size_t premiss_count(RuleKind k);

class NotProperlyClosed : public Error {
 public:
  NotProperlyClosed(AxiomSet given, std::vector<Axiom> missing);
  const std::vector<Axiom>& missing() const { return missing_; }
  AxiomSet given() const { return given_; }

 private:
  AxiomSet given_;
  std::vector<Axiom> missing_;
};

struct LogicSpec {
  AxiomSet axioms = 0;
  std::set<RuleKind> rules;

  bool has_axiom(Axiom a) const { return has(axioms, a); }
  bool has_rule(RuleKind k) const { return rules.count(k) != 0; }
  std::string name() const { return axiom_set_name(axioms); }
};

// Throws NotProperlyClosed when the table forces a missing axiom.
LogicSpec make_logic(AxiomSet axioms);
LogicSpec make_logic(std::string_view text);
// The rule set for an axiom set, without the closure check.
std::set<RuleKind> rules_for(AxiomSet axioms);

// A rule application, addressed by node paths into its conclusion.
//
//   at       principal node (parent node for Lbox, RB, R4, Rcbf, Rbf;
//            source node for Rig, R5, R5dom)
//   at2      second node (child for Lbox, RB, R4, Rcbf, Rbf; target for
//            Rig, R5, R5dom)
//   principal principal formula: init atom, bottom, A->B, forall x.A,
//            box A (Lbox, Rbox, RT, R4, R5, RB, LCut), x=y (Repl,
//            ReplX, Rig)
//   side     Repl: the atom P(x/z) in the antecedent
//   produced Repl: the atom P(y/z) added; Cut: the cut formula
//   var      Lall: instance variable; Ref: x; Rcbf, Rbf, Rui, R5dom:
//            the copied variable
//   eigen    Rall eigenvariable
//   extra    LCut: the further positions receiving box A on the right
struct RuleInstance {
  RuleKind kind = RuleKind::Init;
  NestedSequent conclusion;
  Path at;
  Path at2;
  Formula principal;
  Formula side;
  Formula produced;
  Var var;
  Var eigen;
  std::vector<Path> extra;
};

// Throws Error naming the violated schema condition.
std::vector<NestedSequent> premisses_of(const RuleInstance& r);
// Empty iff r is well formed; otherwise the reason.
std::optional<std::string> schema_error(const RuleInstance& r);
// Logic-dependent side conditions (L-Cut shape); empty iff satisfied.
std::optional<std::string> side_condition_error(const RuleInstance& r, const LogicSpec& logic);

// Every instance of a rule of `logic` whose conclusion is `goal`.
// Ref and Rui range over the free names of the goal.
std::vector<RuleInstance> match_backward(const NestedSequent& goal, const LogicSpec& logic);

bool justify(const NestedSequent& conclusion, const std::vector<NestedSequent>& premisses,
             const RuleInstance& r);
std::optional<std::string> justify_error(const NestedSequent& conclusion,
                                         const std::vector<NestedSequent>& premisses,
                                         const RuleInstance& r);

// Repl relation: q2 arises from atom q by replacing some occurrences of x by y.
bool repl_related(const Formula& q, const Formula& q2, const Var& x, const Var& y);

// Re-addresses the paths of r through a child permutation of its conclusion.
RuleInstance remap_instance(const RuleInstance& r, const ChildMap& m);

}  // namespace nq
