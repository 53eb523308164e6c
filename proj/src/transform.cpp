#include "nq/transform.hpp"

#include <algorithm>

#include "nq/internal.hpp"

namespace nq {

using R = RuleKind;

namespace detail {

RuleInstance instance(RuleKind k, NestedSequent c, Path at) {
  RuleInstance r;
  r.kind = k;
  r.conclusion = std::move(c);
  r.at = std::move(at);
  return r;
}

std::optional<RuleInstance> find_axiom(const NestedSequent& s) {
  for (const auto& p : all_paths(s)) {
    const Sequent& n = node_at(s, p).node;
    if (contains_alpha(n.ant, Formula::bottom())) {
      auto r = instance(R::Lbot, s, p);
      r.principal = Formula::bottom();
      return r;
    }
    for (const auto& a : n.ant)
      if (a.is_atomic() && contains_alpha(n.suc, a)) {
        auto r = instance(R::Init, s, p);
        r.principal = a;
        return r;
      }
  }
  return std::nullopt;
}

bool is_axiom(RuleKind k) { return k == R::Init || k == R::Lbot; }

bool consumes(RuleKind k) { return k == R::Limp || k == R::Rimp || k == R::Rall || k == R::Rbox; }

// The fact an extending rule adds to its conclusion.
std::optional<AddedFact> added_fact(const RuleInstance& r) {
  switch (r.kind) {
    case R::Lall:
      return AddedFact{r.at, Side::Ant, substitute(r.principal.body(), r.var, r.principal.bound()), {}};
    case R::Lbox:
      return AddedFact{r.at2, Side::Ant, r.principal.body(), {}};
    case R::RB:
    case R::RT:
      return AddedFact{r.at, Side::Ant, r.principal.body(), {}};
    case R::R4:
    case R::R5:
      return AddedFact{r.at2, Side::Ant, r.principal, {}};
    case R::Ref:
      return AddedFact{r.at, Side::Ant, Formula::eq(r.var, r.var), {}};
    case R::Repl:
      return AddedFact{r.at, Side::Ant, r.produced, {}};
    case R::ReplX:
      return AddedFact{r.at, Side::Sig, {}, r.principal.args()[1]};
    case R::Rig:
      return AddedFact{r.at2, Side::Ant, r.principal, {}};
    case R::Rcbf:
    case R::R5dom:
      return AddedFact{r.at2, Side::Sig, {}, r.var};
    case R::Rbf:
    case R::Rui:
      return AddedFact{r.at, Side::Sig, {}, r.var};
    default:
      return std::nullopt;
  }
}

NestedSequent fact_filler(const AddedFact& f) {
  NestedSequent s;
  switch (f.side) {
    case Side::Ant: s.node.ant.push_back(f.formula); break;
    case Side::Suc: s.node.suc.push_back(f.formula); break;
    case Side::Sig: s.node.sig.push_back(f.var); break;
  }
  return s;
}

bool holds(const NestedSequent& s, const AddedFact& f) {
  if (!has_path(s, f.at)) return false;
  const Sequent& n = node_at(s, f.at).node;
  switch (f.side) {
    case Side::Ant: return contains_alpha(n.ant, f.formula);
    case Side::Suc: return contains_alpha(n.suc, f.formula);
    case Side::Sig: return contains_var(n.sig, f.var);
  }
  return false;
}

Derivation contract_fact(const Derivation& d, const AddedFact& f) {
  switch (f.side) {
    case Side::Ant: return contract_left(d, f.at, f.formula);
    case Side::Suc: return contract_right(d, f.at, f.formula);
    case Side::Sig: return contract_sig(d, f.at, f.var);
  }
  return d;
}

}  // namespace detail

using namespace detail;

// ----- generalized axioms and identity ---------------------------------------

Derivation generalized_axiom(const NestedSequent& goal, const Path& at, const Formula& a) {
  if (!has_path(goal, at)) throw Error("generalized axiom: no node at the given position");
  const Sequent& n = node_at(goal, at).node;
  if (!contains_alpha(n.ant, a) || !contains_alpha(n.suc, a))
    throw Error("generalized axiom: formula must occur on both sides of the node");
  switch (a.kind()) {
    case FormulaKind::Pred:
    case FormulaKind::Eq: {
      auto r = instance(R::Init, goal, at);
      r.principal = a;
      return axiom_step(std::move(r));
    }
    case FormulaKind::Bottom: {
      auto r = instance(R::Lbot, goal, at);
      r.principal = a;
      return axiom_step(std::move(r));
    }
    case FormulaKind::Implies: {
      auto ri = instance(R::Rimp, goal, at);
      ri.principal = a;
      NestedSequent g1 = premisses_of(ri)[0];
      auto li = instance(R::Limp, g1, at);
      li.principal = a;
      auto ps = premisses_of(li);
      Derivation left = generalized_axiom(ps[0], at, a.lhs());
      Derivation right = generalized_axiom(ps[1], at, a.rhs());
      return rule_step(ri, {rule_step(li, {left, right})});
    }
    case FormulaKind::Forall: {
      NameSupply names(all_names(goal));
      auto ra = instance(R::Rall, goal, at);
      ra.principal = a;
      ra.eigen = names.fresh(a.bound());
      NestedSequent g1 = premisses_of(ra)[0];
      auto la = instance(R::Lall, g1, at);
      la.principal = a;
      la.var = ra.eigen;
      NestedSequent g2 = premisses_of(la)[0];
      Formula inst = substitute(a.body(), ra.eigen, a.bound());
      return rule_step(ra, {rule_step(la, {generalized_axiom(g2, at, inst)})});
    }
    case FormulaKind::Box: {
      auto rb = instance(R::Rbox, goal, at);
      rb.principal = a;
      NestedSequent g1 = premisses_of(rb)[0];
      Path child = at;
      child.push_back(node_at(g1, at).children.size() - 1);
      auto lb = instance(R::Lbox, g1, at);
      lb.principal = a;
      lb.at2 = child;
      NestedSequent g2 = premisses_of(lb)[0];
      return rule_step(rb, {rule_step(lb, {generalized_axiom(g2, child, a.body())})});
    }
  }
  throw Error("generalized axiom: unknown formula");
}

Derivation identity_refl(const NestedSequent& goal, const Path& at, const Var& x) {
  Formula xx = Formula::eq(x, x);
  if (!has_path(goal, at) || !contains_alpha(node_at(goal, at).node.suc, xx))
    throw Error("reflexivity: goal lacks " + x + " = " + x + " in the consequent");
  auto ref = instance(R::Ref, goal, at);
  ref.var = x;
  NestedSequent g = premisses_of(ref)[0];
  auto ax = instance(R::Init, g, at);
  ax.principal = xx;
  return rule_step(ref, {axiom_step(ax)});
}

namespace {

// ax in the antecedent, ay in the consequent, x = y in the antecedent.
Derivation repl_rec(const NestedSequent& goal, const Path& at, const Var& x, const Var& y, const Formula& ax,
                    const Formula& ay);

// Adds y = x to the antecedent from x = y (Ref on x, then Repl on x = x).
Derivation with_symmetric(const NestedSequent& goal, const Path& at, const Var& x, const Var& y,
                          const std::function<Derivation(const NestedSequent&)>& rest) {
  auto ref = instance(R::Ref, goal, at);
  ref.var = x;
  NestedSequent g1 = premisses_of(ref)[0];
  auto rp = instance(R::Repl, g1, at);
  rp.principal = Formula::eq(x, y);
  rp.side = Formula::eq(x, x);
  rp.produced = Formula::eq(y, x);
  NestedSequent g2 = premisses_of(rp)[0];
  return rule_step(ref, {rule_step(rp, {rest(g2)})});
}

Derivation repl_rec(const NestedSequent& goal, const Path& at, const Var& x, const Var& y, const Formula& ax,
                    const Formula& ay) {
  auto mismatch = [&] {
    return Error("replacement: " + to_string(ay) + " is not " + to_string(ax) + " with " + x + " replaced by " + y);
  };
  if (ax.kind() != ay.kind()) throw mismatch();
  switch (ax.kind()) {
    case FormulaKind::Pred:
    case FormulaKind::Eq: {
      if (ax == ay) {
        auto r = instance(R::Init, goal, at);
        r.principal = ay;
        return axiom_step(r);
      }
      if (!repl_related(ax, ay, x, y)) throw mismatch();
      auto rp = instance(R::Repl, goal, at);
      rp.principal = Formula::eq(x, y);
      rp.side = ax;
      rp.produced = ay;
      auto r = instance(R::Init, premisses_of(rp)[0], at);
      r.principal = ay;
      return rule_step(rp, {axiom_step(r)});
    }
    case FormulaKind::Bottom: {
      auto r = instance(R::Lbot, goal, at);
      r.principal = ax;
      return axiom_step(r);
    }
    case FormulaKind::Implies: {
      auto ri = instance(R::Rimp, goal, at);
      ri.principal = ay;
      NestedSequent g1 = premisses_of(ri)[0];
      auto li = instance(R::Limp, g1, at);
      li.principal = ax;
      auto ps = premisses_of(li);
      // ay.lhs in the antecedent, ax.lhs in the consequent: replace y by x
      Derivation left = with_symmetric(ps[0], at, x, y, [&](const NestedSequent& g) {
        return repl_rec(g, at, y, x, ay.lhs(), ax.lhs());
      });
      Derivation right = repl_rec(ps[1], at, x, y, ax.rhs(), ay.rhs());
      return rule_step(ri, {rule_step(li, {left, right})});
    }
    case FormulaKind::Forall: {
      NameSupply names(all_names(goal));
      auto ra = instance(R::Rall, goal, at);
      ra.principal = ay;
      ra.eigen = names.fresh(ay.bound());
      NestedSequent g1 = premisses_of(ra)[0];
      auto la = instance(R::Lall, g1, at);
      la.principal = ax;
      la.var = ra.eigen;
      NestedSequent g2 = premisses_of(la)[0];
      return rule_step(ra, {rule_step(la, {repl_rec(g2, at, x, y, substitute(ax.body(), ra.eigen, ax.bound()),
                                                    substitute(ay.body(), ra.eigen, ay.bound()))})});
    }
    case FormulaKind::Box: {
      auto rb = instance(R::Rbox, goal, at);
      rb.principal = ay;
      NestedSequent g1 = premisses_of(rb)[0];
      Path child = at;
      child.push_back(node_at(g1, at).children.size() - 1);
      auto lb = instance(R::Lbox, g1, at);
      lb.principal = ax;
      lb.at2 = child;
      NestedSequent g2 = premisses_of(lb)[0];
      auto rig = instance(R::Rig, g2, at);
      rig.principal = Formula::eq(x, y);
      rig.at2 = child;
      NestedSequent g3 = premisses_of(rig)[0];
      return rule_step(rb, {rule_step(lb, {rule_step(rig, {repl_rec(g3, child, x, y, ax.body(), ay.body())})})});
    }
  }
  throw mismatch();
}

}  // namespace

Derivation identity_repl(const NestedSequent& goal, const Path& at, const Var& x, const Var& y,
                         const Formula& ax, const Formula& ay) {
  if (!has_path(goal, at)) throw Error("replacement: no node at the given position");
  const Sequent& n = node_at(goal, at).node;
  if (!contains_alpha(n.ant, Formula::eq(x, y)) || !contains_alpha(n.ant, ax) || !contains_alpha(n.suc, ay))
    throw Error("replacement: goal must have " + x + " = " + y + " and the instance on the left, the replaced "
                "formula on the right");
  return repl_rec(goal, at, x, y, ax, ay);
}

// ----- weakening -------------------------------------------------------------

namespace {

Derivation weaken_rec(const Derivation& d, const Path& at, const NestedSequent& filler,
                      const std::set<Var>& filler_names, NameSupply& names) {
  RuleInstance r = d.rule;
  merge_into(r.conclusion, at, filler);
  std::vector<Derivation> subs = d.premisses;
  if (r.kind == R::Rall && filler_names.count(r.eigen)) {
    Var z = names.fresh(r.eigen);
    subs[0] = substitute_vars(subs[0], z, r.eigen);
    r.eigen = z;
  }
  for (auto& s : subs) s = weaken_rec(s, at, filler, filler_names, names);
  return rule_step(std::move(r), std::move(subs));
}

}  // namespace

Derivation weaken(const Derivation& d, const Path& at, const NestedSequent& filler) {
  if (!has_path(d.conclusion(), at)) throw Error("weakening: no node at the given position");
  auto filler_names = all_names(filler);
  auto avoid = all_names(d);
  avoid.insert(filler_names.begin(), filler_names.end());
  NameSupply names(std::move(avoid));
  return weaken_rec(d, at, filler, filler_names, names);
}

// ----- R-bottom, Nec, Merge ----------------------------------------------------

Derivation remove_bottom(const Derivation& d, const Path& at) {
  RuleInstance r = d.rule;
  if (!has_path(r.conclusion, at) || !erase_one(node_at(r.conclusion, at).node.suc, Formula::bottom()))
    throw Error("R-bottom: no false in the consequent at the given position");
  if (is_axiom(r.kind) && schema_error(r)) {
    auto ax = find_axiom(r.conclusion);
    if (!ax) throw Error("R-bottom: axiom lost");
    return axiom_step(*ax);
  }
  std::vector<Derivation> subs;
  for (const auto& s : d.premisses) subs.push_back(remove_bottom(s, at));
  return rule_step(std::move(r), std::move(subs));
}

Derivation necessitate(const Derivation& d) {
  RuleInstance r = d.rule;
  NestedSequent root;
  root.children.push_back(r.conclusion);
  r.conclusion = std::move(root);
  auto wrap = [](Path& p) { p.insert(p.begin(), 0); };
  wrap(r.at);
  wrap(r.at2);
  for (auto& q : r.extra) wrap(q);
  std::vector<Derivation> subs;
  for (const auto& s : d.premisses) subs.push_back(necessitate(s));
  return rule_step(std::move(r), std::move(subs));
}

namespace {

Path merge_path(const Path& q, const Path& at, std::size_t lo, std::size_t hi, std::size_t lo_children) {
  if (q.size() <= at.size() || !is_prefix(at, q)) return q;
  Path out = q;
  std::size_t k = q[at.size()];
  if (k == hi) {
    out[at.size()] = lo;
    if (q.size() > at.size() + 1) out[at.size() + 1] += lo_children;
  } else if (k > hi) {
    out[at.size()] = k - 1;
  }
  return out;
}

}  // namespace

Derivation merge_children(const Derivation& d, const Path& at, std::size_t i, std::size_t j) {
  const NestedSequent& c = d.conclusion();
  if (i == j || !has_path(c, at) || std::max(i, j) >= node_at(c, at).children.size())
    throw Error("merge: needs two distinct children of the node");
  std::size_t lo = std::min(i, j), hi = std::max(i, j);
  RuleInstance r = d.rule;
  NestedSequent& n = node_at(r.conclusion, at);
  std::size_t lo_children = n.children[lo].children.size();
  NestedSequent moved = n.children[hi];
  n.children.erase(n.children.begin() + static_cast<std::ptrdiff_t>(hi));
  merge_into(n.children[lo], {}, moved);
  r.at = merge_path(r.at, at, lo, hi, lo_children);
  r.at2 = merge_path(r.at2, at, lo, hi, lo_children);
  for (auto& q : r.extra) q = merge_path(q, at, lo, hi, lo_children);
  std::vector<Derivation> subs;
  for (const auto& s : d.premisses) subs.push_back(merge_children(s, at, lo, hi));
  return rule_step(std::move(r), std::move(subs));
}

// ----- contraction -----------------------------------------------------------

namespace {

Derivation contract_formula(const Derivation& d, const Path& at, const Formula& a, Side side) {
  RuleInstance r = d.rule;
  if (!has_path(r.conclusion, at)) throw Error("contraction: no node at the given position");
  Sequent& node = node_at(r.conclusion, at).node;
  auto& m = side == Side::Ant ? node.ant : node.suc;
  if (count_alpha(m, a) < 2) throw Error("contraction: needs two copies of " + to_string(a));
  erase_one(m, a);
  if (is_axiom(r.kind)) {
    if (!schema_error(r)) return axiom_step(r);
    auto ax = find_axiom(r.conclusion);
    if (!ax) throw Error("contraction: axiom lost");
    return axiom_step(*ax);
  }
  bool principal = consumes(r.kind) && r.at == at && alpha_equal(r.principal, a) &&
                   (r.kind == R::Limp) == (side == Side::Ant);
  if (!principal) {
    std::vector<Derivation> subs;
    for (const auto& s : d.premisses) subs.push_back(contract_formula(s, at, a, side));
    return rule_step(std::move(r), std::move(subs));
  }
  // The last rule consumed one copy; invert it on the other copy, then
  // contract the duplicated components.
  switch (r.kind) {
    case R::Limp: {
      auto ri = instance(R::Limp, d.premisses[0].conclusion(), at);
      ri.principal = a;
      Derivation p0 = invert_rule(d.premisses[0], ri, 0).output;
      p0 = contract_formula(p0, at, a.lhs(), Side::Suc);
      auto ri2 = instance(R::Limp, d.premisses[1].conclusion(), at);
      ri2.principal = a;
      Derivation p1 = invert_rule(d.premisses[1], ri2, 1).output;
      p1 = contract_formula(p1, at, a.rhs(), Side::Ant);
      return rule_step(std::move(r), {p0, p1});
    }
    case R::Rimp: {
      auto ri = instance(R::Rimp, d.premisses[0].conclusion(), at);
      ri.principal = a;
      Derivation p = invert_rule(d.premisses[0], ri, 0).output;
      p = contract_formula(p, at, a.lhs(), Side::Ant);
      p = contract_formula(p, at, a.rhs(), Side::Suc);
      return rule_step(std::move(r), {p});
    }
    case R::Rall: {
      const Var& y = r.eigen;
      NameSupply names(all_names(d));
      auto ri = instance(R::Rall, d.premisses[0].conclusion(), at);
      ri.principal = a;
      ri.eigen = names.fresh(y);
      Derivation p = invert_rule(d.premisses[0], ri, 0).output;
      p = substitute_vars(p, y, ri.eigen);
      p = contract_sig(p, at, y);
      p = contract_formula(p, at, substitute(a.body(), y, a.bound()), Side::Suc);
      return rule_step(std::move(r), {p});
    }
    case R::Rbox: {
      auto ri = instance(R::Rbox, d.premisses[0].conclusion(), at);
      ri.principal = a;
      Derivation p = invert_rule(d.premisses[0], ri, 0).output;
      std::size_t n = node_at(p.conclusion(), at).children.size();
      // the two [=> A] children: the one R-box made and the inverted one
      const auto& kids = node_at(p.conclusion(), at).children;
      NestedSequent unit;
      unit.node.suc.push_back(a.body());
      std::string key = canonical_key(unit);
      std::vector<std::size_t> hits;
      for (std::size_t k = 0; k < n; ++k)
        if (canonical_key(kids[k]) == key) hits.push_back(k);
      if (hits.size() < 2) throw Error("contraction: box inversion lost its child");
      std::size_t lo = hits[hits.size() - 2];
      p = merge_children(p, at, lo, hits.back());
      Path child = at;
      child.push_back(lo);
      p = contract_formula(p, child, a.body(), Side::Suc);
      return rule_step(std::move(r), {p});
    }
    default:
      throw Error("contraction: unexpected rule");
  }
}

}  // namespace

Derivation contract_left(const Derivation& d, const Path& at, const Formula& a) {
  return contract_formula(d, at, a, Side::Ant);
}

Derivation contract_right(const Derivation& d, const Path& at, const Formula& a) {
  return contract_formula(d, at, a, Side::Suc);
}

Derivation contract_sig(const Derivation& d, const Path& at, const Var& x) {
  RuleInstance r = d.rule;
  if (!has_path(r.conclusion, at)) throw Error("contraction: no node at the given position");
  auto& sig = node_at(r.conclusion, at).node.sig;
  if (count_var(sig, x) < 2) throw Error("contraction: needs two copies of " + x);
  erase_one(sig, x);
  std::vector<Derivation> subs;
  for (const auto& s : d.premisses) subs.push_back(contract_sig(s, at, x));
  return rule_step(std::move(r), std::move(subs));
}

// ----- inversion -------------------------------------------------------------

namespace {

bool same_principal(const RuleInstance& a, const RuleInstance& b) {
  return a.kind == b.kind && a.at == b.at && alpha_equal(a.principal, b.principal);
}

Derivation invert_rec(const Derivation& d, const RuleInstance& r, std::size_t index) {
  NestedSequent target = premisses_of(r).at(index);
  const RuleInstance& last = d.rule;
  if (same_principal(last, r)) {
    Derivation sub = d.premisses.at(index);
    if (r.kind == R::Rall && last.eigen != r.eigen) sub = substitute_vars(sub, r.eigen, last.eigen);
    return align(sub, target);
  }
  if (is_axiom(last.kind)) {
    RuleInstance ax = last;
    ax.conclusion = target;
    if (schema_error(ax)) {
      auto found = find_axiom(target);
      if (!found) throw Error("inversion: axiom lost");
      return axiom_step(*found);
    }
    return axiom_step(ax);
  }
  RuleInstance next = last;
  next.conclusion = target;
  std::vector<Derivation> subs = d.premisses;
  if (last.kind == R::Rall && free_names(target).count(last.eigen)) {
    NameSupply names(all_names(d));
    names.reserve_all(all_names(target));
    Var z = names.fresh(last.eigen);
    subs[0] = substitute_vars(subs[0], z, last.eigen);
    next.eigen = z;
  }
  for (auto& s : subs) {
    RuleInstance lifted = r;
    lifted.conclusion = s.conclusion();
    s = invert_rec(s, lifted, index);
  }
  return rule_step(std::move(next), std::move(subs));
}

}  // namespace

TransformReport invert_rule(const Derivation& d, const RuleInstance& r, std::size_t index) {
  if (!equivalent(d.conclusion(), r.conclusion))
    throw Error("inversion: the rule's conclusion is not the derived sequent");
  if (index >= premiss_count(r.kind)) throw Error("inversion: no such premiss");
  if (auto e = schema_error(r)) throw Error("inversion: " + *e);
  Derivation base = align(d, r.conclusion);
  TransformReport rep;
  rep.input_height = height(d);
  rep.height_preserving_claimed = true;
  if (consumes(r.kind)) {
    rep.output = invert_rec(base, r, index);
  } else if (r.kind == R::RD) {
    NestedSequent filler;
    filler.children.emplace_back();
    rep.output = weaken(base, r.at, filler);
  } else if (auto f = added_fact(r)) {
    rep.output = weaken(base, f->at, fact_filler(*f));
  } else {
    throw Error("inversion: " + rule_tag(r.kind) + " has no premiss to invert to");
  }
  rep.output = purify(rep.output);
  rep.output_height = height(rep.output);
  return rep;
}

// ----- reports ---------------------------------------------------------------

std::string structural_name(StructuralKind k) {
  switch (k) {
    case StructuralKind::Rbot: return "Rbot";
    case StructuralKind::SW: return "SW";
    case StructuralKind::SC: return "SC";
    case StructuralKind::IW: return "IW";
    case StructuralKind::EW: return "EW";
    case StructuralKind::CL: return "CL";
    case StructuralKind::CR: return "CR";
    case StructuralKind::Nec: return "Nec";
    case StructuralKind::Merge: return "Merge";
  }
  return "?";
}

std::optional<StructuralKind> structural_from_name(std::string_view name) {
  for (auto k : {StructuralKind::Rbot, StructuralKind::SW, StructuralKind::SC, StructuralKind::IW, StructuralKind::EW,
                 StructuralKind::CL, StructuralKind::CR, StructuralKind::Nec, StructuralKind::Merge})
    if (structural_name(k) == name) return k;
  return std::nullopt;
}

TransformReport admit_structural(StructuralKind kind, const Derivation& d, const StructuralTarget& t) {
  TransformReport rep;
  rep.input_height = height(d);
  rep.height_preserving_claimed = true;
  NestedSequent filler;
  switch (kind) {
    case StructuralKind::Rbot: rep.output = remove_bottom(d, t.at); break;
    case StructuralKind::SW:
      filler.node.sig.push_back(t.var);
      rep.output = weaken(d, t.at, filler);
      break;
    case StructuralKind::SC: rep.output = contract_sig(d, t.at, t.var); break;
    case StructuralKind::IW:
      filler.node.ant = t.ant;
      filler.node.suc = t.suc;
      rep.output = weaken(d, t.at, filler);
      break;
    case StructuralKind::EW:
      filler.children.push_back(t.child);
      rep.output = weaken(d, t.at, filler);
      break;
    case StructuralKind::CL: rep.output = contract_left(d, t.at, t.formula); break;
    case StructuralKind::CR: rep.output = contract_right(d, t.at, t.formula); break;
    case StructuralKind::Nec: rep.output = necessitate(d); break;
    case StructuralKind::Merge: rep.output = merge_children(d, t.at, t.i, t.j); break;
  }
  rep.output = purify(rep.output);
  rep.output_height = height(rep.output);
  return rep;
}

TransformReport admit_substitution(const Derivation& d, const Var& y, const Var& x) {
  TransformReport rep;
  rep.input_height = height(d);
  rep.height_preserving_claimed = true;
  rep.output = purify(substitute_vars(d, y, x));
  rep.output_height = height(rep.output);
  return rep;
}

// ----- derived quantifier rules ----------------------------------------------

NestedSequent derived_premiss(const DerivedInstance& r) {
  NestedSequent p = r.conclusion;
  auto need_forall = [&](const Path& at) {
    if (!has_path(p, at)) throw Error("derived rule: no node at the given position");
    if (r.principal.kind() != FormulaKind::Forall || !contains_alpha(node_at(p, at).node.ant, r.principal))
      throw Error("derived rule: universal formula not in the antecedent");
  };
  auto inst = [&] { return substitute(r.principal.body(), r.var, r.principal.bound()); };
  switch (r.kind) {
    case DerivedKind::LallCBF:
      need_forall(r.child);
      if (r.child.size() != r.at.size() + 1 || !is_prefix(r.at, r.child))
        throw Error("derived rule: second position must be a child");
      if (!contains_var(node_at(p, r.at).node.sig, r.var)) throw Error("derived rule: variable not in the parent");
      node_at(p, r.child).node.ant.push_back(inst());
      return p;
    case DerivedKind::LallBF:
      need_forall(r.at);
      if (!has_path(p, r.child) || r.child.size() != r.at.size() + 1 || !is_prefix(r.at, r.child))
        throw Error("derived rule: second position must be a child");
      if (!contains_var(node_at(p, r.child).node.sig, r.var)) throw Error("derived rule: variable not in the child");
      node_at(p, r.at).node.ant.push_back(inst());
      return p;
    case DerivedKind::LallUI:
      need_forall(r.at);
      node_at(p, r.at).node.ant.push_back(inst());
      return p;
    case DerivedKind::LD: {
      if (!has_path(p, r.at)) throw Error("derived rule: no node at the given position");
      if (r.principal.kind() != FormulaKind::Box || !contains_alpha(node_at(p, r.at).node.ant, r.principal))
        throw Error("derived rule: box formula not in the antecedent");
      NestedSequent child;
      child.node.ant.push_back(r.principal.body());
      node_at(p, r.at).children.push_back(std::move(child));
      return p;
    }
  }
  return p;
}

Derivation derived_quantifier(const DerivedInstance& r, const Derivation& premiss, const LogicSpec& logic) {
  NestedSequent want = derived_premiss(r);
  if (!equivalent(premiss.conclusion(), want)) throw Error("derived rule: derivation does not match the premiss");
  auto need = [&](RuleKind k) {
    if (!logic.has_rule(k)) throw Error("derived rule needs " + rule_tag(k) + ", absent from NQ." + logic.name());
  };
  Derivation base = align(premiss, want);
  NestedSequent sw;
  switch (r.kind) {
    case DerivedKind::LallCBF:
    case DerivedKind::LallBF:
    case DerivedKind::LallUI: {
      RuleKind dom = r.kind == DerivedKind::LallCBF ? R::Rcbf : r.kind == DerivedKind::LallBF ? R::Rbf : R::Rui;
      need(dom);
      // domain rule, then L-forall at the node holding the universal
      Path host = r.kind == DerivedKind::LallCBF ? r.child : r.at;
      auto d = instance(dom, r.conclusion, r.at);
      d.var = r.var;
      if (r.kind != DerivedKind::LallUI) d.at2 = r.child;
      NestedSequent g1 = premisses_of(d)[0];
      auto la = instance(R::Lall, g1, host);
      la.principal = r.principal;
      la.var = r.var;
      sw.node.sig.push_back(r.var);
      return rule_step(d, {rule_step(la, {weaken(base, host, sw)})});
    }
    case DerivedKind::LD: {
      need(R::RD);
      auto rd = instance(R::RD, r.conclusion, r.at);
      NestedSequent g1 = premisses_of(rd)[0];
      Path child = r.at;
      child.push_back(node_at(g1, r.at).children.size() - 1);
      auto lb = instance(R::Lbox, g1, r.at);
      lb.principal = r.principal;
      lb.at2 = child;
      return rule_step(rd, {rule_step(lb, {base})});
    }
  }
  throw Error("derived rule: unknown kind");
}

}  // namespace nq
