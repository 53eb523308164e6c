#include "nq/search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "nq/internal.hpp"
#include "nq/transform.hpp"

namespace nq {

using R = RuleKind;
using namespace detail;

namespace {

// Lower ranks are tried first among the non-invertible rules.
int rank(R k) {
  switch (k) {
    case R::Lbox: return 0;
    case R::RT: return 1;
    case R::RB: return 2;
    case R::R4: return 3;
    case R::R5: return 4;
    case R::Lall: return 5;
    case R::Rcbf:
    case R::Rbf:
    case R::Rui:
    case R::R5dom: return 6;
    case R::RD: return 7;
    case R::Rig: return 8;
    case R::Repl: return 9;
    case R::ReplX: return 10;
    default: return 11;
  }
}

bool invertible(R k) { return k == R::Rimp || k == R::Rall || k == R::Rbox || k == R::Limp; }

class Searcher {
 public:
  Searcher(const NestedSequent& goal, const LogicSpec& logic, const SearchBudget& budget)
      : logic_(logic), budget_(budget), names_(all_names(goal)) {}

  std::optional<Derivation> run(const NestedSequent& s, std::size_t h) { return go(s, h); }
  std::size_t expansions() const { return expansions_; }
  bool exhausted() const { return exhausted_; }

 private:
  // First invertible instance: non-branching rules before L-imp.
  std::optional<RuleInstance> eager(const NestedSequent& s) {
    std::optional<RuleInstance> limp;
    for (const auto& p : all_paths(s)) {
      const Sequent& n = node_at(s, p).node;
      for (const auto& a : n.suc) {
        if (a.kind() == FormulaKind::Implies || a.kind() == FormulaKind::Box) {
          auto r = instance(a.kind() == FormulaKind::Box ? R::Rbox : R::Rimp, s, p);
          r.principal = a;
          return r;
        }
        if (a.kind() == FormulaKind::Forall) {
          auto r = instance(R::Rall, s, p);
          r.principal = a;
          r.eigen = names_.fresh(a.bound());
          return r;
        }
      }
      if (!limp)
        for (const auto& a : n.ant)
          if (a.kind() == FormulaKind::Implies) {
            limp = instance(R::Limp, s, p);
            limp->principal = a;
            break;
          }
    }
    return limp;
  }

  std::vector<RuleInstance> copies(const NestedSequent& s) {
    std::vector<RuleInstance> out;
    for (auto& r : match_backward(s, logic_)) {
      if (is_axiom(r.kind) || invertible(r.kind)) continue;
      if (r.kind == R::RD) {
        if (!node_at(s, r.at).children.empty() || new_children_ >= budget_.max_new_children) continue;
      } else {
        auto f = added_fact(r);
        if (!f || holds(s, *f)) continue;
        if (r.kind == R::Lall && lall_used_[r.at] >= budget_.max_forall_instances_per_node) continue;
      }
      out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RuleInstance& a, const RuleInstance& b) { return rank(a.kind) < rank(b.kind); });
    return out;
  }

  std::optional<Derivation> go(const NestedSequent& s, std::size_t h) {
    if (++expansions_ > budget_.max_expansions) {
      exhausted_ = true;
      return std::nullopt;
    }
    if (auto ax = find_axiom(s)) return axiom_step(*ax);
    if (h <= 1) return std::nullopt;
    std::string key = canonical_key(s);
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= h) return std::nullopt;

    if (auto r = eager(s)) {
      std::vector<Derivation> subs;
      for (const auto& p : premisses_of(*r)) {
        auto sub = go(p, h - 1);
        if (!sub) return fail(key, h);
        subs.push_back(std::move(*sub));
      }
      return rule_step(*r, std::move(subs));
    }

    for (const auto& r : copies(s)) {
      if (exhausted_) break;
      if (r.kind == R::RD) ++new_children_;
      if (r.kind == R::Lall) ++lall_used_[r.at];
      auto sub = go(premisses_of(r).front(), h - 1);
      if (r.kind == R::RD) --new_children_;
      if (r.kind == R::Lall) --lall_used_[r.at];
      if (sub) return rule_step(r, {std::move(*sub)});
    }
    return fail(key, h);
  }

  std::optional<Derivation> fail(const std::string& key, std::size_t h) {
    if (!exhausted_) {
      auto& best = failed_[key];
      best = std::max(best, h);
    }
    return std::nullopt;
  }

  const LogicSpec& logic_;
  const SearchBudget& budget_;
  NameSupply names_;
  std::size_t expansions_ = 0;
  bool exhausted_ = false;
  std::unordered_map<std::string, std::size_t> failed_;
  std::map<Path, std::size_t> lall_used_;
  std::size_t new_children_ = 0;
};

}  // namespace

SearchResult prove(const NestedSequent& goal, const LogicSpec& logic, const SearchBudget& budget) {
  if (budget.max_depth < 1 || budget.max_forall_instances_per_node < 1 || budget.max_new_children < 1 ||
      budget.max_expansions < 1)
    throw Error("search budget bounds must be at least 1");
  SearchResult out;
  Searcher s(goal, logic, budget);
  for (std::size_t h = 1; h <= budget.max_depth && !s.exhausted(); ++h) {
    if (auto d = s.run(goal, h)) {
      Derivation p = purify(*d);
      if (auto res = check(p, logic); !res) throw Error("search produced an invalid derivation: " + res.message());
      out.derivation = std::move(p);
      break;
    }
  }
  out.expansions = s.expansions();
  out.budget_exhausted = s.exhausted();
  return out;
}

// ----- axiom templates -------------------------------------------------------

namespace {

using Tac = std::function<Derivation(const NestedSequent&)>;

struct Use {
  R kind;
  Path at;
  Formula principal{};
  Path at2{};
  Var var{};
  Var eigen{};
};

Tac by(Use u, std::vector<Tac> next) {
  return [u, next](const NestedSequent& s) {
    RuleInstance r = instance(u.kind, s, u.at);
    r.principal = u.principal;
    r.at2 = u.at2;
    r.var = u.var;
    r.eigen = u.eigen;
    auto ps = premisses_of(r);
    if (ps.size() != next.size()) throw Error("template arity mismatch at " + rule_tag(u.kind));
    std::vector<Derivation> subs;
    for (std::size_t i = 0; i < ps.size(); ++i) subs.push_back(next[i](ps[i]));
    return rule_step(r, std::move(subs));
  };
}

Tac closes(Path at, Formula a) {
  return [at, a](const NestedSequent& s) { return generalized_axiom(s, at, a); };
}

Tac bottom(Path at) {
  return [at](const NestedSequent& s) {
    RuleInstance r = instance(R::Lbot, s, at);
    r.principal = Formula::bottom();
    return axiom_step(r);
  };
}

Formula imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
Formula box(Formula a) { return Formula::box(std::move(a)); }
Formula all(Var x, Formula a) { return Formula::forall(std::move(x), std::move(a)); }

std::string normal_name(std::string_view name) {
  if (name == "UIo" || name == "UI°" || name == "UI0") return "UI°";
  if (name == "A-COMM" || name == "forall-COMM" || name == "FORALL-COMM") return "∀-COMM";
  if (name == "A-DIST" || name == "forall-DIST" || name == "FORALL-DIST") return "∀-DIST";
  if (name == "A-VAQ" || name == "forall-VAQ" || name == "FORALL-VAQ") return "∀-VAQ";
  return std::string(name);
}

bool quantified(const std::string& n) {
  return n == "UI°" || n == "∀-COMM" || n == "∀-DIST" || n == "∀-VAQ" || n == "CBF" || n == "BF" || n == "UI" ||
         n == "REPL";
}

struct Schema {
  Formula a, b;
  Var x, y, z;
};

Schema schema(const std::string& n, const AxiomParams& p) {
  Schema s{Formula::pred("P", {}), Formula::pred("Q", {}), p.x, p.y, p.z};
  if (n == "∀-COMM") s.a = Formula::pred("R", {p.x, p.y});
  else if (n == "∀-VAQ") s.a = Formula::pred("P", {p.y});
  else if (n == "REPL") s.a = Formula::pred("P", {p.z});
  else if (quantified(n)) {
    s.a = Formula::pred("P", {p.x});
    s.b = Formula::pred("Q", {p.x});
  }
  if (p.a) s.a = *p.a;
  if (p.b) s.b = *p.b;
  return s;
}

Formula formula_of(const std::string& n, const Schema& s) {
  const Formula& A = s.a;
  const Formula& B = s.b;
  if (n == "TAUT") return imp(imp(imp(A, B), A), A);
  if (n == "K") return imp(box(imp(A, B)), imp(box(A), box(B)));
  if (n == "UI°") return all(s.y, imp(all(s.x, A), substitute(A, s.y, s.x)));
  if (n == "∀-COMM") return imp(all(s.x, all(s.y, A)), all(s.y, all(s.x, A)));
  if (n == "∀-DIST") return imp(all(s.x, imp(A, B)), imp(all(s.x, A), all(s.x, B)));
  if (n == "∀-VAQ") {
    if (occurs_free(A, s.x)) throw Error("∀-VAQ: " + s.x + " is free in " + to_string(A));
    return imp(A, all(s.x, A));
  }
  if (n == "REF") return Formula::eq(s.x, s.x);
  if (n == "REPL")
    return imp(conj(Formula::eq(s.x, s.y), substitute(A, s.x, s.z)), substitute(A, s.y, s.z));
  if (n == "ND") return imp(neg(Formula::eq(s.x, s.y)), box(neg(Formula::eq(s.x, s.y))));
  if (n == "D") return imp(box(A), dia(A));
  if (n == "T") return imp(box(A), A);
  if (n == "B") return imp(A, box(dia(A)));
  if (n == "4") return imp(box(A), box(box(A)));
  if (n == "5") return imp(dia(A), box(dia(A)));
  if (n == "CBF") return imp(box(all(s.x, A)), all(s.x, box(A)));
  if (n == "BF") return imp(all(s.x, box(A)), box(all(s.x, A)));
  if (n == "UI") return imp(all(s.x, A), substitute(A, s.y, s.x));
  throw Error("unknown axiom name: " + n);
}

Tac tactic(const std::string& n, const Schema& s, const Formula& f) {
  std::set<Var> used;
  collect_names(f, used);
  used.insert({s.x, s.y, s.z});
  NameSupply names(used);
  const Formula& A = s.a;
  const Formula& B = s.b;
  const Formula bot = Formula::bottom();
  const Path root{};
  const Path c0{0};

  if (n == "TAUT")
    return by({R::Rimp, root, f}, {by({R::Limp, root, f.lhs()}, {by({R::Rimp, root, imp(A, B)}, {closes(root, A)}),
                                                                  closes(root, A)})});
  if (n == "K")
    return by({R::Rimp, root, f},
              {by({R::Rimp, root, f.rhs()},
                  {by({R::Rbox, root, box(B)},
                      {by({R::Lbox, root, box(imp(A, B)), c0},
                          {by({R::Lbox, root, box(A), c0},
                              {by({R::Limp, c0, imp(A, B)}, {closes(c0, A), closes(c0, B)})})})})})});
  if (n == "UI°") {
    Var e = names.fresh("v");
    Formula body = substitute(f.body(), e, f.bound());
    const Formula& ax = body.lhs();
    return by({R::Rall, root, f, {}, {}, e},
              {by({R::Rimp, root, body},
                  {by({R::Lall, root, ax, {}, e}, {closes(root, substitute(ax.body(), e, ax.bound()))})})});
  }
  if (n == "∀-COMM") {
    Var u = names.fresh("u"), v = names.fresh("v");
    const Formula& g = f.rhs();                        // forall y forall x A
    Formula g1 = substitute(g.body(), u, g.bound());   // forall x A(u/y)
    const Formula& h = f.lhs();                        // forall x forall y A
    Formula h1 = substitute(h.body(), v, h.bound());   // forall y A(v/x)
    Formula leaf = substitute(h1.body(), u, h1.bound());
    return by({R::Rimp, root, f},
              {by({R::Rall, root, g, {}, {}, u},
                  {by({R::Rall, root, g1, {}, {}, v},
                      {by({R::Lall, root, h, {}, v}, {by({R::Lall, root, h1, {}, u}, {closes(root, leaf)})})})})});
  }
  if (n == "∀-DIST") {
    Var v = names.fresh("v");
    Formula av = substitute(A, v, s.x), bv = substitute(B, v, s.x);
    return by({R::Rimp, root, f},
              {by({R::Rimp, root, f.rhs()},
                  {by({R::Rall, root, all(s.x, B), {}, {}, v},
                      {by({R::Lall, root, all(s.x, imp(A, B)), {}, v},
                          {by({R::Lall, root, all(s.x, A), {}, v},
                              {by({R::Limp, root, imp(av, bv)}, {closes(root, av), closes(root, bv)})})})})})});
  }
  if (n == "∀-VAQ") {
    Var v = names.fresh("v");
    return by({R::Rimp, root, f}, {by({R::Rall, root, f.rhs(), {}, {}, v}, {closes(root, A)})});
  }
  if (n == "REF") return [x = s.x](const NestedSequent& g) { return identity_refl(g, {}, x); };
  if (n == "REPL") {
    Formula ax = substitute(A, s.x, s.z), ay = substitute(A, s.y, s.z);
    Formula inner = f.lhs().lhs();  // x = y -> (A(x) -> false)
    Var x = s.x, y = s.y;
    Tac repl = [x, y, ax, ay](const NestedSequent& g) { return identity_repl(g, {}, x, y, ax, ay); };
    return by({R::Rimp, root, f},
              {by({R::Limp, root, f.lhs()},
                  {by({R::Rimp, root, inner}, {by({R::Rimp, root, inner.rhs()}, {repl})}), bottom(root)})});
  }
  if (n == "ND") {
    Formula e = Formula::eq(s.x, s.y);
    return by({R::Rimp, root, f},
              {by({R::Rbox, root, f.rhs()},
                  {by({R::Rimp, c0, neg(e)},
                      {by({R::Limp, root, neg(e)},
                          {by({R::Rig, c0, e, root}, {closes(root, e)}), bottom(root)})})})});
  }
  if (n == "D")
    return by({R::Rimp, root, f},
              {by({R::Rimp, root, dia(A)},
                  {by({R::RD, root},
                      {by({R::Lbox, root, box(A), c0},
                          {by({R::Lbox, root, box(neg(A)), c0},
                              {by({R::Limp, c0, neg(A)}, {closes(c0, A), bottom(c0)})})})})})});
  if (n == "T") return by({R::Rimp, root, f}, {by({R::RT, root, box(A)}, {closes(root, A)})});
  if (n == "B")
    return by({R::Rimp, root, f},
              {by({R::Rbox, root, box(dia(A))},
                  {by({R::Rimp, c0, dia(A)},
                      {by({R::RB, root, box(neg(A)), c0},
                          {by({R::Limp, root, neg(A)}, {closes(root, A), bottom(root)})})})})});
  if (n == "4")
    return by({R::Rimp, root, f},
              {by({R::Rbox, root, box(box(A))},
                  {by({R::Rbox, c0, box(A)},
                      {by({R::R4, root, box(A), c0}, {by({R::Lbox, c0, box(A), Path{0, 0}}, {closes({0, 0}, A)})})})})});
  if (n == "5")
    return by({R::Rimp, root, f},
              {by({R::Rbox, root, box(dia(A))},
                  {by({R::Rimp, c0, dia(A)},
                      {by({R::R5, c0, box(neg(A)), root},
                          {by({R::Limp, root, dia(A)}, {closes(root, box(neg(A))), bottom(root)})})})})});
  if (n == "CBF") {
    Var v = names.fresh("v");
    Formula av = substitute(A, v, s.x);
    return by({R::Rimp, root, f},
              {by({R::Rall, root, f.rhs(), {}, {}, v},
                  {by({R::Rbox, root, box(av)},
                      {by({R::Lbox, root, f.lhs(), c0},
                          {by({R::Rcbf, root, {}, c0, v},
                              {by({R::Lall, c0, all(s.x, A), {}, v}, {closes(c0, av)})})})})})});
  }
  if (n == "BF") {
    Var v = names.fresh("v");
    Formula av = substitute(A, v, s.x);
    return by({R::Rimp, root, f},
              {by({R::Rbox, root, f.rhs()},
                  {by({R::Rall, c0, all(s.x, A), {}, {}, v},
                      {by({R::Rbf, root, {}, c0, v},
                          {by({R::Lall, root, f.lhs(), {}, v},
                              {by({R::Lbox, root, box(av), c0}, {closes(c0, av)})})})})})});
  }
  if (n == "UI") {
    Formula ay = substitute(A, s.y, s.x);
    return by({R::Rimp, root, f},
              {by({R::Rui, root, {}, {}, s.y}, {by({R::Lall, root, f.lhs(), {}, s.y}, {closes(root, ay)})})});
  }
  throw Error("unknown axiom name: " + n);
}

}  // namespace

const std::vector<std::string>& template_names() {
  static const std::vector<std::string> names = {"TAUT", "K", "UI°", "∀-COMM", "∀-DIST", "∀-VAQ",
                                                 "REF",  "REPL", "ND", "D",   "T",      "B",
                                                 "4",    "5",   "CBF", "BF",  "UI"};
  return names;
}

Formula axiom_formula(std::string_view name, const AxiomParams& p) {
  std::string n = normal_name(name);
  return formula_of(n, schema(n, p));
}

Derivation derive_axiom(std::string_view name, const LogicSpec& logic, const AxiomParams& p) {
  std::string n = normal_name(name);
  Schema s = schema(n, p);
  Formula f = formula_of(n, s);
  NestedSequent goal;
  goal.node.suc.push_back(f);
  Derivation d = tactic(n, s, f)(goal);
  std::set<R> missing;
  for_each_node(d, [&](const Derivation& x) {
    if (!logic.has_rule(x.rule.kind)) missing.insert(x.rule.kind);
  });
  if (!missing.empty())
    throw Error("axiom " + n + " needs rule " + rule_tag(*missing.begin()) + ", absent from logic " + logic.name());
  d = purify(d);
  if (auto res = check(d, logic); !res) throw Error("template for " + n + " failed to check: " + res.message());
  return d;
}

}  // namespace nq
