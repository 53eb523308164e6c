#include "nq/cutelim.hpp"

#include <algorithm>
#include <stdexcept>

#include "nq/internal.hpp"
#include "nq/transform.hpp"

namespace nq {

using R = RuleKind;
using namespace detail;

Measure measure(const CutInstance& c) {
  const Formula& a = c.rule.kind == R::Cut ? c.rule.produced : c.rule.principal;
  return {weight(a), height(c.left) + height(c.right)};
}

namespace {

NestedSequent with_ant(NestedSequent s, const Path& at, const Formula& a) {
  node_at(s, at).node.ant.push_back(a);
  return s;
}

NestedSequent ant_filler(const Formula& a) {
  NestedSequent f;
  f.node.ant.push_back(a);
  return f;
}

// Node whose antecedent holds the principal formula of a left rule.
std::optional<Path> holder(const RuleInstance& r) {
  switch (r.kind) {
    case R::Limp:
    case R::Lall:
    case R::Lbox:
    case R::RT:
    case R::R4:
    case R::R5: return r.at;
    case R::RB: return r.at2;
    default: return std::nullopt;
  }
}

class Eliminator {
 public:
  Eliminator(const LogicSpec& logic, EliminationTrace* trace) : logic_(logic), trace_(trace) {}

  // Cut-free derivation of c from d1 (A on the right at p) and d2 (A on
  // the left at p and at every position of q).
  Derivation cut(const Formula& a, const Path& p, const std::vector<Path>& q, const NestedSequent& c, Derivation d1,
                 Derivation d2, const std::optional<Measure>& caller) {
    Measure m{weight(a), height(d1) + height(d2)};
    if (caller) {
      if (!(m < *caller)) throw std::logic_error("cut elimination: measure did not decrease");
      if (trace_) trace_->steps.push_back({*caller, m});
    }
    RuleInstance ci;
    ci.kind = q.empty() ? R::Cut : R::LCut;
    ci.conclusion = c;
    ci.at = p;
    ci.extra = q;
    if (q.empty()) ci.produced = a;
    else ci.principal = a;
    auto expected = premisses_of(ci);
    d1 = align(d1, expected[0]);
    d2 = align(d2, expected[1]);
    return purify(reduce(a, p, q, c, d1, d2, m));
  }

 private:
  Derivation reduce(const Formula& a, const Path& p, const std::vector<Path>& q, const NestedSequent& c,
                    const Derivation& d1, const Derivation& d2, const Measure& m) {
    if (auto ax = find_axiom(c)) return axiom_step(*ax);
    const Sequent& here = node_at(c, p).node;
    // a copy of A already in the conclusion absorbs the cut
    if (contains_alpha(here.suc, a)) return contract_right(d1, p, a);
    if (q.empty() && contains_alpha(here.ant, a)) return contract_left(d2, p, a);

    const RuleInstance& r1 = d1.rule;
    bool left_principal = (r1.kind == R::Rimp || r1.kind == R::Rall || r1.kind == R::Rbox) && r1.at == p &&
                          alpha_equal(r1.principal, a);
    if (!left_principal) {
      // permute the cut above r1, inverting r1 on the right premiss
      if (is_axiom(r1.kind)) throw Error("cut elimination: axiom on the cut formula without a matching copy");
      RuleInstance below = r1;
      below.conclusion = c;
      RuleInstance on_right = r1;
      on_right.conclusion = d2.conclusion();
      auto prem = premisses_of(below);
      std::vector<Derivation> subs;
      for (std::size_t i = 0; i < prem.size(); ++i)
        subs.push_back(cut(a, p, q, prem[i], d1.premisses[i], invert_rule(d2, on_right, i).output, m));
      return rule_step(below, std::move(subs));
    }

    const RuleInstance& r2 = d2.rule;
    auto h = holder(r2);
    bool right_principal = h && alpha_equal(r2.principal, a) && (*h == p || std::find(q.begin(), q.end(), *h) != q.end());
    if (!right_principal) {
      if (is_axiom(r2.kind)) throw Error("cut elimination: axiom on the cut formula without a matching copy");
      RuleInstance below = r2;
      below.conclusion = c;
      RuleInstance on_left = r2;
      on_left.conclusion = d1.conclusion();
      auto prem = premisses_of(below);
      std::vector<Derivation> subs;
      for (std::size_t i = 0; i < prem.size(); ++i)
        subs.push_back(cut(a, p, q, prem[i], invert_rule(d1, on_left, i).output, d2.premisses[i], m));
      return rule_step(below, std::move(subs));
    }

    switch (a.kind()) {
      case FormulaKind::Implies: {
        // r1 = R-imp, r2 = L-imp, both on A at p
        const Formula& b = a.lhs();
        const Formula& e = a.rhs();
        NestedSequent cb = with_ant(c, p, b);
        Derivation y = cut(e, p, {}, cb, d1.premisses[0], weaken(d2.premisses[1], p, ant_filler(b)), m);
        return cut(b, p, {}, c, d2.premisses[0], y, m);
      }
      case FormulaKind::Forall: {
        // r1 = R-forall with eigenvariable y, r2 = L-forall with instance z
        const Var& y = r1.eigen;
        const Var& z = r2.var;
        Formula bz = substitute(a.body(), z, a.bound());
        NestedSequent cbz = with_ant(c, p, bz);
        Derivation lower = cut(a, p, {}, cbz, weaken(d1, p, ant_filler(bz)), d2.premisses[0], m);
        Derivation upper = contract_sig(substitute_vars(d1.premisses[0], z, y), p, z);
        return cut(bz, p, {}, c, upper, lower, m);
      }
      case FormulaKind::Box:
        return box_case(a, p, q, c, d1, d2, m);
      default:
        throw Error("cut elimination: principal case on an atomic formula");
    }
  }

  Derivation box_case(const Formula& a, const Path& p, const std::vector<Path>& q, const NestedSequent& c,
                      const Derivation& d1, const Derivation& d2, const Measure& m) {
    const RuleInstance& r2 = d2.rule;
    const Formula& b = a.body();
    if (r2.kind == R::R4 || r2.kind == R::R5) {
      // one more position receives A; r2 disappears
      std::vector<Path> more = q;
      more.push_back(r2.at2);
      return cut(a, p, more, c, d1, d2.premisses[0], m);
    }
    // Lbox, RT or RB: B lands at w, from the copy of A at u
    Path u = *holder(r2);
    Path w = r2.kind == R::Lbox ? r2.at2 : r2.at;
    NestedSequent cb = with_ant(c, w, b);
    Derivation lower = cut(a, p, q, cb, weaken(d1, w, ant_filler(b)), d2.premisses[0], m);

    // the child [=> B] of p made by R-box, carried to u, then into w
    Derivation upper = d1.premisses[0];
    std::size_t k = node_at(c, p).children.size();
    if (u != p) {
      SpecialPositions move;
      move.parent = p;
      move.child = k;
      move.target = u;
      upper = special_structural(SpecialKind::LStr, upper, move, logic_);
      k = node_at(c, u).children.size();
      NestedSequent want = c;
      NestedSequent child;
      child.node.suc.push_back(b);
      node_at(want, u).children.push_back(child);
      upper = align(upper, want);
    }
    switch (r2.kind) {
      case R::Lbox: upper = merge_children(upper, u, w.back(), k); break;
      case R::RT: {
        SpecialPositions pos;
        pos.parent = u;
        pos.child = k;
        upper = special_structural(SpecialKind::ST, upper, pos, logic_);
        break;
      }
      case R::RB: {
        SpecialPositions pos;
        pos.parent = w;
        pos.child = u.back();
        pos.grandchild = k;
        upper = special_structural(SpecialKind::SB, upper, pos, logic_);
        break;
      }
      default: throw Error("cut elimination: unexpected rule in the box case");
    }
    NestedSequent cs = c;
    node_at(cs, w).node.suc.push_back(b);
    return cut(b, w, {}, c, align(upper, cs), lower, m);
  }

  const LogicSpec& logic_;
  EliminationTrace* trace_;
};

void validate(const RuleInstance& r, const LogicSpec& logic) {
  if (r.kind != R::Cut && r.kind != R::LCut) throw Error("cut elimination: not a cut instance");
  if (auto e = schema_error(r)) throw Error(rule_tag(r.kind) + ": " + *e);
  if (auto e = side_condition_error(r, logic)) throw Error(rule_tag(r.kind) + ": " + *e);
}

}  // namespace

Derivation reduce_cut(const CutInstance& c, const LogicSpec& logic, EliminationTrace* trace) {
  validate(c.rule, logic);
  if (!is_cut_free(c.left) || !is_cut_free(c.right))
    throw Error("cut elimination: reduce_cut expects cut-free premiss derivations");
  auto prem = premisses_of(c.rule);
  if (!equivalent(c.left.conclusion(), prem[0]) || !equivalent(c.right.conclusion(), prem[1]))
    throw Error("cut elimination: premiss derivations do not match the cut");
  Eliminator e(logic, trace);
  const Formula& a = c.rule.kind == R::Cut ? c.rule.produced : c.rule.principal;
  Derivation out = e.cut(a, c.rule.at, c.rule.extra, c.rule.conclusion, c.left, c.right, std::nullopt);
  if (trace) ++trace->cuts_eliminated;
  return out;
}

Derivation eliminate(const Derivation& d, const LogicSpec& logic, EliminationTrace* trace) {
  std::vector<Derivation> subs;
  for (const auto& s : d.premisses) subs.push_back(eliminate(s, logic, trace));
  if (d.rule.kind == R::Cut || d.rule.kind == R::LCut)
    return reduce_cut(CutInstance{d.rule, subs[0], subs[1]}, logic, trace);
  return purify(rule_step(d.rule, std::move(subs)));
}

}  // namespace nq
