#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nq/calculus.hpp"

namespace nq {

// A node's conclusion is rule.conclusion.
struct Derivation {
  RuleInstance rule;
  std::vector<Derivation> premisses;

  const NestedSequent& conclusion() const { return rule.conclusion; }
};

// Builds a node and re-addresses each subderivation so that its
// conclusion lists children exactly as the computed premiss does.
// Throws Error when a subderivation does not derive the premiss.
Derivation rule_step(RuleInstance r, std::vector<Derivation> subs);
Derivation axiom_step(RuleInstance r);
// Re-expresses d as a derivation of `target`, an alphabetical variant of
// its conclusion up to child order.
Derivation align(const Derivation& d, const NestedSequent& target);
// Rebuilds every node through rule_step.
Derivation normalize(const Derivation& d);

std::size_t height(const Derivation& d);
std::size_t size(const Derivation& d);
bool is_cut_free(const Derivation& d);
std::size_t cut_count(const Derivation& d);
void for_each_node(const Derivation& d, const std::function<void(const Derivation&)>& f);
// Every R-forall eigenvariable, with repetitions.
std::vector<Var> eigenvariables(const Derivation& d);
std::set<Var> all_names(const Derivation& d);

struct CheckOptions {
  bool allow_cuts = false;
  bool require_pure = true;
};

struct CheckResult {
  bool ok = true;
  std::vector<std::size_t> where;  // premiss indices from the root
  std::string reason;
  explicit operator bool() const { return ok; }
  std::string message() const;
};

CheckResult check(const Derivation& d, const LogicSpec& logic, const CheckOptions& opt = {});
// Empty iff every sequent has disjoint free and bound names and all
// eigenvariables are pairwise distinct and not free in the endsequent.
std::optional<CheckResult> purity_error(const Derivation& d);

// (y/x) applied to every sequent of d; an eigenvariable equal to x or y is
// first renamed to a fresh name. Height preserving.
Derivation substitute_vars(const Derivation& d, const Var& y, const Var& x);

// Renames eigenvariables apart (admissible substitution) and bound
// variables clashing with free ones (alphabetical variants); conclusion
// kept up to alpha, height kept.
Derivation purify(const Derivation& d);

// Serialized form: JSON records with fields rule, conclusion, at, at2,
// principal, side, produced, var, eigen, extra, premisses; only the fields
// meaningful for the rule are present.
std::string serialize(const Derivation& d);
Derivation deserialize(std::string_view text);

// Indented tree, one node per line, conclusion after the rule label.
std::string to_text(const Derivation& d, const PrintOptions& opt = {});

}  // namespace nq
