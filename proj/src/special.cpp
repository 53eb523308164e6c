// Special structural rules. Each rule reshapes the tree of every sequent
// of a derivation; rule instances are re-addressed through the node map
// and, where the reshaping breaks a propagation rule, the propagated fact
// is either already present (contract it) or reached by a short chain of
// propagation rules found by breadth-first search.

#include <deque>
#include <functional>
#include <map>

#include "nq/internal.hpp"
#include "nq/transform.hpp"

namespace nq {

using R = RuleKind;
using namespace detail;

namespace {

struct Reshaped {
  NestedSequent seq;
  std::function<Path(const Path&)> map;
};

using Reshape = std::function<Reshaped(const NestedSequent&)>;

Path concat(const Path& a, std::size_t k) {
  Path out = a;
  out.push_back(k);
  return out;
}

bool under(const Path& base, const Path& q) { return q.size() > base.size() && is_prefix(base, q); }

// Child i of p merged into p; its children appended to p's.
Reshape reshape_st(const Path& p, std::size_t i) {
  return [=](const NestedSequent& s) {
    Reshaped out{s, {}};
    NestedSequent& n = node_at(out.seq, p);
    std::size_t kept = n.children.size() - 1;
    NestedSequent c = n.children.at(i);
    n.children.erase(n.children.begin() + static_cast<std::ptrdiff_t>(i));
    merge_into(out.seq, p, c);
    Path ci = concat(p, i);
    out.map = [=](const Path& q) {
      if (is_prefix(ci, q)) {
        if (q.size() == ci.size()) return p;
        Path r = concat(p, kept + q[ci.size()]);
        r.insert(r.end(), q.begin() + static_cast<std::ptrdiff_t>(ci.size()) + 1, q.end());
        return r;
      }
      if (under(p, q) && q[p.size()] > i) {
        Path r = q;
        --r[p.size()];
        return r;
      }
      return q;
    };
    return out;
  };
}

// Child i of p wrapped in a fresh empty node.
Reshape reshape_s4(const Path& p, std::size_t i) {
  return [=](const NestedSequent& s) {
    Reshaped out{s, {}};
    NestedSequent& n = node_at(out.seq, p);
    NestedSequent wrapper;
    wrapper.children.push_back(n.children.at(i));
    n.children[i] = std::move(wrapper);
    Path ci = concat(p, i);
    out.map = [=](const Path& q) {
      if (!is_prefix(ci, q)) return q;
      Path r = concat(ci, 0);
      r.insert(r.end(), q.begin() + static_cast<std::ptrdiff_t>(ci.size()), q.end());
      return r;
    };
    return out;
  };
}

// Grandchild g below child i of p merged into p.
Reshape reshape_sb(const Path& p, std::size_t i, std::size_t g) {
  return [=](const NestedSequent& s) {
    Reshaped out{s, {}};
    Path ci = concat(p, i);
    Path gi = concat(ci, g);
    std::size_t base = node_at(s, p).children.size();
    NestedSequent& mid = node_at(out.seq, ci);
    NestedSequent gc = mid.children.at(g);
    mid.children.erase(mid.children.begin() + static_cast<std::ptrdiff_t>(g));
    merge_into(out.seq, p, gc);
    out.map = [=](const Path& q) {
      if (is_prefix(gi, q)) {
        if (q.size() == gi.size()) return p;
        Path r = concat(p, base + q[gi.size()]);
        r.insert(r.end(), q.begin() + static_cast<std::ptrdiff_t>(gi.size()) + 1, q.end());
        return r;
      }
      if (under(ci, q) && q[ci.size()] > g) {
        Path r = q;
        --r[ci.size()];
        return r;
      }
      return q;
    };
    return out;
  };
}

// Child i of p1 moved below p2 (p2 addressed in the premiss).
Reshape reshape_lstr(const Path& p1, std::size_t i, const Path& p2) {
  return [=](const NestedSequent& s) {
    Reshaped out{s, {}};
    Path ci = concat(p1, i);
    auto shift = [=](const Path& q) {
      if (under(p1, q) && q[p1.size()] > i) {
        Path r = q;
        --r[p1.size()];
        return r;
      }
      return q;
    };
    NestedSequent& n = node_at(out.seq, p1);
    NestedSequent moved = n.children.at(i);
    n.children.erase(n.children.begin() + static_cast<std::ptrdiff_t>(i));
    Path t = shift(p2);
    NestedSequent& dst = node_at(out.seq, t);
    std::size_t slot = dst.children.size();
    dst.children.push_back(std::move(moved));
    out.map = [=](const Path& q) {
      if (is_prefix(ci, q)) {
        Path r = concat(t, slot);
        r.insert(r.end(), q.begin() + static_cast<std::ptrdiff_t>(ci.size()), q.end());
        return r;
      }
      return shift(q);
    };
    return out;
  };
}

// ----- bridges ---------------------------------------------------------------

struct Move {
  RuleKind kind;
  Path at, at2;
  Formula principal;
  Var var;
  AddedFact adds;
};

bool is_parent(const Path& u, const Path& v) { return v.size() == u.size() + 1 && is_prefix(u, v); }

// Shortest chain of propagation rules that, applied bottom-up to s, ends
// by adding `goal`.
std::optional<std::vector<Move>> find_bridge(const NestedSequent& s, const AddedFact& goal, const LogicSpec& L) {
  auto nodes = all_paths(s);
  using State = std::pair<Path, std::string>;  // node, formula key or "$x" for the variable
  std::map<State, std::optional<std::pair<State, Move>>> seen;
  std::map<std::string, Formula> formulas;
  std::deque<State> queue;
  auto key_of = [&](const Formula& a) {
    std::string k = alpha_key(a);
    formulas.emplace(k, a);
    return k;
  };
  std::string target_key;
  if (goal.side == Side::Sig) {
    target_key = "$" + goal.var;
    for (const auto& n : nodes)
      if (contains_var(node_at(s, n).node.sig, goal.var)) {
        seen[{n, target_key}] = std::nullopt;
        queue.push_back({n, target_key});
      }
  } else {
    target_key = key_of(goal.formula);
    Formula f = goal.formula;
    for (int k = 0; k < 3; ++k, f = Formula::box(f)) {
      std::string fk = key_of(f);
      for (const auto& n : nodes)
        if (contains_alpha(node_at(s, n).node.ant, f)) {
          seen[{n, fk}] = std::nullopt;
          queue.push_back({n, fk});
        }
    }
  }
  State want{goal.at, target_key};
  auto push = [&](const State& from, State to, Move m) {
    if (seen.count(to)) return;
    seen[to] = std::make_pair(from, std::move(m));
    queue.push_back(std::move(to));
  };
  if (goal.side == Side::Sig && L.has_rule(R::Rui)) {
    Move m{R::Rui, goal.at, {}, {}, goal.var, AddedFact{goal.at, Side::Sig, {}, goal.var}};
    std::vector<Move> chain{m};
    if (!seen.count(want)) return chain;
  }
  while (!queue.empty() && !seen.count(want)) {
    State cur = queue.front();
    queue.pop_front();
    const Path& u = cur.first;
    if (goal.side == Side::Sig) {
      const Var& x = goal.var;
      for (const auto& v : nodes) {
        AddedFact f{v, Side::Sig, {}, x};
        State to{v, cur.second};
        if (L.has_rule(R::Rcbf) && is_parent(u, v)) push(cur, to, Move{R::Rcbf, u, v, {}, x, f});
        if (L.has_rule(R::Rbf) && is_parent(v, u)) push(cur, to, Move{R::Rbf, v, u, {}, x, f});
        if (L.has_rule(R::R5dom) && u.size() >= 1 && v.size() >= 1 && u != v)
          push(cur, to, Move{R::R5dom, u, v, {}, x, f});
      }
      continue;
    }
    const Formula a = formulas.at(cur.second);
    if (a.kind() == FormulaKind::Eq)
      for (const auto& v : nodes)
        if (v != u) push(cur, {v, cur.second}, Move{R::Rig, u, v, a, {}, AddedFact{v, Side::Ant, a, {}}});
    if (a.kind() != FormulaKind::Box) continue;
    std::string bk = key_of(a.body());
    for (const auto& v : nodes) {
      AddedFact same{v, Side::Ant, a, {}};
      AddedFact body{v, Side::Ant, a.body(), {}};
      if (is_parent(u, v)) {
        if (L.has_rule(R::R4)) push(cur, {v, cur.second}, Move{R::R4, u, v, a, {}, same});
        push(cur, {v, bk}, Move{R::Lbox, u, v, a, {}, body});
      }
      if (L.has_rule(R::R5) && u.size() >= 1 && u != v) push(cur, {v, cur.second}, Move{R::R5, u, v, a, {}, same});
      if (L.has_rule(R::RB) && is_parent(v, u)) push(cur, {v, bk}, Move{R::RB, v, u, a, {}, body});
    }
    if (L.has_rule(R::RT)) push(cur, {u, bk}, Move{R::RT, u, {}, a, {}, AddedFact{u, Side::Ant, a.body(), {}}});
  }
  if (!seen.count(want)) return std::nullopt;
  std::vector<Move> chain;
  for (State st = want; seen.at(st);) {
    const auto& [from, m] = *seen.at(st);
    chain.push_back(m);
    st = from;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Derivation of s from a derivation of s + last fact of the chain.
Derivation apply_bridge(const NestedSequent& s, const std::vector<Move>& chain, const Derivation& top) {
  Derivation d = top;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) d = weaken(d, chain[k].adds.at, fact_filler(chain[k].adds));
  std::vector<NestedSequent> stages{s};
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    NestedSequent next = stages.back();
    merge_into(next, chain[k].adds.at, fact_filler(chain[k].adds));
    stages.push_back(std::move(next));
  }
  for (std::size_t k = chain.size(); k-- > 0;) {
    const Move& m = chain[k];
    RuleInstance r = instance(m.kind, stages[k], m.at);
    r.at2 = m.at2;
    r.principal = m.principal;
    r.var = m.var;
    d = rule_step(std::move(r), {d});
  }
  return d;
}

Derivation reshape_rec(const Derivation& d, const Reshape& f, const LogicSpec& L) {
  Reshaped rs = f(d.conclusion());
  RuleInstance r = d.rule;
  r.conclusion = rs.seq;
  r.at = rs.map(r.at);
  r.at2 = rs.map(r.at2);
  for (auto& q : r.extra) q = rs.map(q);
  std::vector<Derivation> subs;
  for (const auto& p : d.premisses) subs.push_back(reshape_rec(p, f, L));
  if (is_axiom(r.kind)) {
    if (!schema_error(r)) return axiom_step(r);
    auto ax = find_axiom(r.conclusion);
    if (!ax) throw Error("special rule: axiom lost");
    return axiom_step(*ax);
  }
  if (!schema_error(r) && !side_condition_error(r, L)) {
    auto ps = premisses_of(r);
    bool fits = ps.size() == subs.size();
    for (std::size_t k = 0; fits && k < ps.size(); ++k) fits = equivalent(ps[k], subs[k].conclusion());
    if (fits) return rule_step(std::move(r), std::move(subs));
  }
  auto fact = added_fact(r);
  if (!fact || subs.size() != 1) throw Error("special rule: cannot re-apply " + rule_tag(r.kind));
  NestedSequent with_fact = r.conclusion;
  merge_into(with_fact, fact->at, fact_filler(*fact));
  Derivation top = align(subs[0], with_fact);
  if (holds(r.conclusion, *fact)) return contract_fact(top, *fact);
  auto chain = find_bridge(r.conclusion, *fact, L);
  if (!chain)
    throw Error("special rule: no propagation chain re-establishes " + rule_tag(r.kind) + " in NQ." + L.name());
  return apply_bridge(r.conclusion, *chain, top);
}

Reshape plan(SpecialKind k, const NestedSequent& s, const SpecialPositions& pos, const LogicSpec& L) {
  auto need_rule = [&](RuleKind rk) {
    if (!L.has_rule(rk))
      throw Error(special_name(k) + " is admissible only with " + rule_tag(rk) + ", absent from NQ." + L.name());
  };
  auto need_child = [&](const Path& p, std::size_t i) {
    if (!has_path(s, p) || i >= node_at(s, p).children.size())
      throw Error(special_name(k) + ": no child " + std::to_string(i) + " at the given node");
  };
  switch (k) {
    case SpecialKind::ST:
      need_rule(R::RT);
      need_child(pos.parent, pos.child);
      return reshape_st(pos.parent, pos.child);
    case SpecialKind::S4:
      need_rule(R::R4);
      need_child(pos.parent, pos.child);
      return reshape_s4(pos.parent, pos.child);
    case SpecialKind::SB:
      need_rule(R::RB);
      need_child(pos.parent, pos.child);
      need_child(concat(pos.parent, pos.child), pos.grandchild);
      return reshape_sb(pos.parent, pos.child, pos.grandchild);
    case SpecialKind::S5:
    case SpecialKind::LStr: {
      if (k == SpecialKind::S5) need_rule(R::R5);
      need_child(pos.parent, pos.child);
      if (!has_path(s, pos.target)) throw Error(special_name(k) + ": no target node");
      if (is_prefix(concat(pos.parent, pos.child), pos.target))
        throw Error(special_name(k) + ": target lies inside the moved subtree");
      bool four = L.has_axiom(Axiom::Four), five = L.has_axiom(Axiom::Five);
      if (k == SpecialKind::S5 || (five && !four)) {
        if (pos.parent.empty()) throw Error(special_name(k) + ": source node at depth 0, depth >= 1 required");
      } else if (four && !five) {
        if (!is_prefix(pos.parent, pos.target)) throw Error(special_name(k) + ": target must lie below the source");
      } else if (!four && !five) {
        if (pos.target != pos.parent) throw Error(special_name(k) + ": without 4 or 5 the target must be the source");
      }
      return reshape_lstr(pos.parent, pos.child, pos.target);
    }
  }
  throw Error("unknown special rule");
}

}  // namespace

std::string special_name(SpecialKind k) {
  switch (k) {
    case SpecialKind::ST: return "ST";
    case SpecialKind::S4: return "S4";
    case SpecialKind::S5: return "S5";
    case SpecialKind::SB: return "SB";
    case SpecialKind::LStr: return "LStr";
  }
  return "?";
}

std::optional<SpecialKind> special_from_name(std::string_view name) {
  for (auto k : {SpecialKind::ST, SpecialKind::S4, SpecialKind::S5, SpecialKind::SB, SpecialKind::LStr})
    if (special_name(k) == name) return k;
  return std::nullopt;
}

NestedSequent special_conclusion(SpecialKind k, const NestedSequent& premiss, const SpecialPositions& pos,
                                 const LogicSpec& logic) {
  return plan(k, premiss, pos, logic)(premiss).seq;
}

Derivation special_structural(SpecialKind k, const Derivation& d, const SpecialPositions& pos,
                              const LogicSpec& logic) {
  return purify(reshape_rec(d, plan(k, d.conclusion(), pos, logic), logic));
}

}  // namespace nq
