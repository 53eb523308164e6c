#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nq/syntax.hpp"

namespace nq {

// X;Gamma=>Delta. All three components are multisets; vector order is
// kept only for printing.
struct Sequent {
  std::vector<Var> sig;
  std::vector<Formula> ant;
  std::vector<Formula> suc;
};

struct NestedSequent {
  Sequent node;
  std::vector<NestedSequent> children;
};

// Node address: child indices from the root. The empty path is the root.
using Path = std::vector<std::size_t>;

bool has_path(const NestedSequent& s, const Path& p);
const NestedSequent& node_at(const NestedSequent& s, const Path& p);
NestedSequent& node_at(NestedSequent& s, const Path& p);
// Every path of s in preorder.
std::vector<Path> all_paths(const NestedSequent& s);
bool is_prefix(const Path& prefix, const Path& p);
std::size_t node_count(const NestedSequent& s);

// Skeleton plus holes. A hole names the node whose consequent hosts it.
struct Context {
  NestedSequent skeleton;
  std::vector<Path> holes;
};

// Fillers are merged into the hole nodes; std::nullopt removes the hole.
NestedSequent plug(const Context& c, const std::vector<std::optional<NestedSequent>>& fillers);
// Merges `filler` into the node at p (signatures and multisets joined,
// children appended).
void merge_into(NestedSequent& s, const Path& p, const NestedSequent& filler);
std::size_t hole_depth(const Context& c, std::size_t i);

Formula fm(const NestedSequent& s);

NestedSequent nseq_substitute(const NestedSequent& s, const Var& y, const Var& x);

// Names anywhere in s (signatures, free and bound occurrences).
std::set<Var> all_names(const NestedSequent& s);
// Signature variables and free variables of formulas.
std::set<Var> free_names(const NestedSequent& s);
std::set<Var> bound_names(const NestedSequent& s);
std::set<Var> free_names(const Sequent& s);

// ----- canonical forms -------------------------------------------------------

// Key identical iff the arguments are alphabetical variants up to
// multiset and child reordering.
std::string canonical_key(const Sequent& s);
std::string canonical_key(const NestedSequent& s);
NestedSequent canonicalize(const NestedSequent& s);
bool equivalent(const NestedSequent& a, const NestedSequent& b);

// Child correspondence between two equivalent nested sequents:
// perm[i] is the child of b matching child i of a.
struct ChildMap {
  std::vector<std::size_t> perm;
  std::vector<ChildMap> sub;
};
std::optional<ChildMap> match_children(const NestedSequent& a, const NestedSequent& b);
// Image under m of a path of a.
Path map_path(const ChildMap& m, const Path& p);
// Reorders the children of s by m, so that the result lists children in
// the order of the target of m.
NestedSequent apply_child_map(const NestedSequent& s, const ChildMap& m);
ChildMap invert(const ChildMap& m);
ChildMap identity_map(const NestedSequent& s);

// ----- multisets -------------------------------------------------------------

std::size_t count_alpha(const std::vector<Formula>& m, const Formula& a);
bool contains_alpha(const std::vector<Formula>& m, const Formula& a);
// Removes one alpha-equal occurrence; false if none.
bool erase_one(std::vector<Formula>& m, const Formula& a);
bool erase_one(std::vector<Var>& m, const Var& x);
std::size_t count_var(const std::vector<Var>& m, const Var& x);
bool contains_var(const std::vector<Var>& m, const Var& x);
// Multiset inclusion up to alpha-equivalence.
bool sub_multiset(const std::vector<Formula>& small, const std::vector<Formula>& big);
bool sub_multiset(const std::vector<Var>& small, const std::vector<Var>& big);

// ----- printing --------------------------------------------------------------

std::string to_string(const Sequent& s, const PrintOptions& opt = {});
std::string to_string(const NestedSequent& s, const PrintOptions& opt = {});

}  // namespace nq
