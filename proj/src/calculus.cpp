#include "nq/calculus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

namespace nq {

namespace {

constexpr std::array<const char*, kAxiomCount> kAxiomNames = {"D", "T", "B", "4", "5", "CBF", "BF", "UI"};

AxiomSet set_of(std::initializer_list<Axiom> xs) {
  AxiomSet s = 0;
  for (Axiom a : xs) s |= bit(a);
  return s;
}

}  // namespace

std::string axiom_name(Axiom a) { return kAxiomNames[static_cast<std::size_t>(a)]; }

std::optional<Axiom> axiom_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kAxiomNames.size(); ++i)
    if (name == kAxiomNames[i]) return static_cast<Axiom>(i);
  return std::nullopt;
}

std::string axiom_set_name(AxiomSet s) {
  if (s == 0) return "K";
  std::string out;
  for (std::size_t i = 0; i < kAxiomCount; ++i) {
    if (!has(s, static_cast<Axiom>(i))) continue;
    if (!out.empty()) out += ',';
    out += kAxiomNames[i];
  }
  return out;
}

AxiomSet parse_axiom_set(std::string_view text) {
  auto trim = [](std::string_view t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    return t;
  };
  text = trim(text);
  if (text.empty() || text == "K") return 0;
  AxiomSet s = 0;
  while (true) {
    auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    auto a = axiom_from_name(item);
    if (!a) throw Error("unknown axiom '" + std::string(item) + "' (expected D, T, B, 4, 5, CBF, BF, UI or K)");
    s |= bit(*a);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return s;
}

const std::vector<ClosureEntry>& closure_table() {
  using A = Axiom;
  static const std::vector<ClosureEntry> table = {
      {set_of({A::T, A::Five}), A::Four},           // reflexive + euclidean is transitive
      {set_of({A::B, A::Four}), A::Five},           // symmetric + transitive is euclidean
      {set_of({A::B, A::Five}), A::Four},           // symmetric + euclidean is transitive
      {set_of({A::B, A::BF}), A::CBF},              // symmetric: decreasing is increasing
      {set_of({A::B, A::CBF}), A::BF},
      {set_of({A::T, A::Five, A::CBF}), A::BF},     // equivalence relation is symmetric
      {set_of({A::T, A::Five, A::BF}), A::CBF},
      {set_of({A::UI}), A::CBF},                    // constant domains
      {set_of({A::UI}), A::BF},
  };
  return table;
}

std::vector<Axiom> missing_axioms(AxiomSet s) {
  AxiomSet forced = 0;
  for (const auto& e : closure_table())
    if ((s & e.premises) == e.premises && !has(s, e.conclusion)) forced |= bit(e.conclusion);
  std::vector<Axiom> out;
  for (std::size_t i = 0; i < kAxiomCount; ++i)
    if (has(forced, static_cast<Axiom>(i))) out.push_back(static_cast<Axiom>(i));
  return out;
}

namespace {

std::string missing_message(AxiomSet given, const std::vector<Axiom>& missing) {
  std::string m = "logic " + axiom_set_name(given) + " is not properly closed: requires ";
  for (std::size_t i = 0; i < missing.size(); ++i) {
    if (i) m += ", ";
    m += axiom_name(missing[i]);
  }
  return m;
}

}  // namespace

NotProperlyClosed::NotProperlyClosed(AxiomSet given, std::vector<Axiom> missing)
    : Error(missing_message(given, missing)), given_(given), missing_(std::move(missing)) {}

const std::vector<RuleKind>& calculus_rules() {
  using R = RuleKind;
  static const std::vector<RuleKind> rules = {
      R::Init, R::Lbot, R::Limp, R::Rimp, R::Lall, R::Rall, R::Lbox, R::Rbox,
      R::Ref, R::Repl, R::ReplX, R::Rig, R::RD, R::RB, R::RT, R::R4, R::R5,
      R::Rcbf, R::Rbf, R::Rui, R::R5dom};
  return rules;
}

namespace {

struct RuleNames {
  RuleKind kind;
  const char* tag;
  const char* unicode;
  std::size_t premisses;
};

constexpr std::array<RuleNames, 23> kRuleNames = {{
    {RuleKind::Init, "init", "init", 0},
    {RuleKind::Lbot, "Lbot", "L⊥", 0},
    {RuleKind::Limp, "Limp", "L⊃", 2},
    {RuleKind::Rimp, "Rimp", "R⊃", 1},
    {RuleKind::Lall, "Lall", "L∀", 1},
    {RuleKind::Rall, "Rall", "R∀", 1},
    {RuleKind::Lbox, "Lbox", "L□", 1},
    {RuleKind::Rbox, "Rbox", "R□", 1},
    {RuleKind::Ref, "Ref", "Ref", 1},
    {RuleKind::Repl, "Repl", "Repl", 1},
    {RuleKind::ReplX, "ReplX", "Repl_X", 1},
    {RuleKind::Rig, "Rig", "Rig", 1},
    {RuleKind::RD, "RD", "R_D", 1},
    {RuleKind::RB, "RB", "R_B", 1},
    {RuleKind::RT, "RT", "R_T", 1},
    {RuleKind::R4, "R4", "R_4", 1},
    {RuleKind::R5, "R5", "R_5", 1},
    {RuleKind::Rcbf, "Rcbf", "R_cbf", 1},
    {RuleKind::Rbf, "Rbf", "R_bf", 1},
    {RuleKind::Rui, "Rui", "R_ui", 1},
    {RuleKind::R5dom, "R5dom", "R_5dom", 1},
    {RuleKind::Cut, "Cut", "Cut", 2},
    {RuleKind::LCut, "LCut", "L-Cut", 2},
}};

const RuleNames& names_of(RuleKind k) {
  for (const auto& n : kRuleNames)
    if (n.kind == k) return n;
  throw Error("unknown rule kind");
}

}  // namespace

std::string rule_tag(RuleKind k) { return names_of(k).tag; }
std::string rule_label(RuleKind k, bool unicode) {
  return unicode ? names_of(k).unicode : names_of(k).tag;
}
std::size_t premiss_count(RuleKind k) { return names_of(k).premisses; }

std::optional<RuleKind> rule_from_tag(std::string_view tag) {
  for (const auto& n : kRuleNames)
    if (tag == n.tag) return n.kind;
  return std::nullopt;
}

std::set<RuleKind> rules_for(AxiomSet axioms) {
  using R = RuleKind;
  std::set<RuleKind> rules = {R::Init, R::Lbot, R::Limp, R::Rimp, R::Lall, R::Rall,
                              R::Lbox, R::Rbox, R::Ref, R::Repl, R::ReplX, R::Rig};
  if (has(axioms, Axiom::D)) rules.insert(R::RD);
  if (has(axioms, Axiom::T)) rules.insert(R::RT);
  if (has(axioms, Axiom::B)) rules.insert(R::RB);
  if (has(axioms, Axiom::Four)) rules.insert(R::R4);
  if (has(axioms, Axiom::Five)) rules.insert(R::R5);
  if (has(axioms, Axiom::CBF)) rules.insert(R::Rcbf);
  if (has(axioms, Axiom::BF)) rules.insert(R::Rbf);
  if (has(axioms, Axiom::UI)) rules.insert(R::Rui);
  if (has(axioms, Axiom::Five) && (has(axioms, Axiom::CBF) || has(axioms, Axiom::BF)))
    rules.insert(R::R5dom);
  return rules;
}

LogicSpec make_logic(AxiomSet axioms) {
  auto missing = missing_axioms(axioms);
  if (!missing.empty()) throw NotProperlyClosed(axioms, std::move(missing));
  return LogicSpec{axioms, rules_for(axioms)};
}

LogicSpec make_logic(std::string_view text) { return make_logic(parse_axiom_set(text)); }

// ----- schemas ---------------------------------------------------------------

bool repl_related(const Formula& q, const Formula& q2, const Var& x, const Var& y) {
  if (!q.is_atomic() || q.kind() != q2.kind()) return false;
  if (q.kind() == FormulaKind::Pred && q.symbol() != q2.symbol()) return false;
  if (q.arity() != q2.arity()) return false;
  for (std::size_t i = 0; i < q.arity(); ++i) {
    const Var& a = q.args()[i];
    const Var& b = q2.args()[i];
    if (a != b && !(a == x && b == y)) return false;
  }
  return true;
}

namespace {

bool is_child(const Path& parent, const Path& child) {
  return child.size() == parent.size() + 1 && is_prefix(parent, child);
}

std::string path_str(const Path& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + "]";
}

using Check = std::optional<std::string>;

Check need(bool ok, std::string msg) {
  if (ok) return std::nullopt;
  return msg;
}

Check need_kind(const Formula& a, FormulaKind k, const char* what) {
  return need(a.kind() == k, std::string("principal formula must be ") + what);
}

}  // namespace

std::optional<std::string> schema_error(const RuleInstance& r) {
  using R = RuleKind;
  const NestedSequent& c = r.conclusion;
  if (!has_path(c, r.at)) return "principal position " + path_str(r.at) + " is not a node";
  const Sequent& n = node_at(c, r.at).node;
  auto second = [&]() -> Check {
    if (!has_path(c, r.at2)) return "second position " + path_str(r.at2) + " is not a node";
    return std::nullopt;
  };
  auto child = [&]() -> Check {
    if (auto e = second()) return e;
    return need(is_child(r.at, r.at2), "second position must be a child of the principal node");
  };
  switch (r.kind) {
    case R::Init:
      if (!r.principal.is_atomic()) return "initial sequent needs an atomic formula";
      return need(contains_alpha(n.ant, r.principal) && contains_alpha(n.suc, r.principal),
                  "atom must occur on both sides of the node");
    case R::Lbot:
      return need(contains_alpha(n.ant, Formula::bottom()), "antecedent lacks false");
    case R::Limp:
      if (auto e = need_kind(r.principal, FormulaKind::Implies, "an implication")) return e;
      return need(contains_alpha(n.ant, r.principal), "implication not in the antecedent");
    case R::Rimp:
      if (auto e = need_kind(r.principal, FormulaKind::Implies, "an implication")) return e;
      return need(contains_alpha(n.suc, r.principal), "implication not in the consequent");
    case R::Lall:
      if (auto e = need_kind(r.principal, FormulaKind::Forall, "universal")) return e;
      if (!contains_alpha(n.ant, r.principal)) return "universal formula not in the antecedent";
      return need(contains_var(n.sig, r.var), "instance variable " + r.var + " not in the signature");
    case R::Rall:
      if (auto e = need_kind(r.principal, FormulaKind::Forall, "universal")) return e;
      if (!contains_alpha(n.suc, r.principal)) return "universal formula not in the consequent";
      if (r.eigen.empty()) return "missing eigenvariable";
      return need(!free_names(c).count(r.eigen), "eigenvariable " + r.eigen + " is not fresh");
    case R::Lbox:
    case R::R4:
      if (auto e = child()) return e;
      if (auto e = need_kind(r.principal, FormulaKind::Box, "a box formula")) return e;
      return need(contains_alpha(n.ant, r.principal), "box formula not in the antecedent");
    case R::Rbox:
      if (auto e = need_kind(r.principal, FormulaKind::Box, "a box formula")) return e;
      return need(contains_alpha(n.suc, r.principal), "box formula not in the consequent");
    case R::Ref:
      return need(!r.var.empty(), "missing variable");
    case R::Repl: {
      if (auto e = need_kind(r.principal, FormulaKind::Eq, "an identity")) return e;
      if (!contains_alpha(n.ant, r.principal)) return "identity not in the antecedent";
      if (!r.side.is_atomic()) return "replacement is stated for atomic formulas only";
      if (!contains_alpha(n.ant, r.side)) return "replaced atom not in the antecedent";
      return need(repl_related(r.side, r.produced, r.principal.args()[0], r.principal.args()[1]),
                  "produced atom is not a replacement instance");
    }
    case R::ReplX:
      if (auto e = need_kind(r.principal, FormulaKind::Eq, "an identity")) return e;
      if (!contains_alpha(n.ant, r.principal)) return "identity not in the antecedent";
      return need(contains_var(n.sig, r.principal.args()[0]),
                  "left side of the identity not in the signature");
    case R::Rig:
      if (auto e = second()) return e;
      if (auto e = need_kind(r.principal, FormulaKind::Eq, "an identity")) return e;
      return need(contains_alpha(n.ant, r.principal), "identity not in the antecedent");
    case R::RD:
      return std::nullopt;
    case R::RB: {
      if (auto e = child()) return e;
      if (auto e = need_kind(r.principal, FormulaKind::Box, "a box formula")) return e;
      return need(contains_alpha(node_at(c, r.at2).node.ant, r.principal),
                  "box formula not in the child antecedent");
    }
    case R::RT:
      if (auto e = need_kind(r.principal, FormulaKind::Box, "a box formula")) return e;
      return need(contains_alpha(n.ant, r.principal), "box formula not in the antecedent");
    case R::R5:
      if (auto e = second()) return e;
      if (auto e = need_kind(r.principal, FormulaKind::Box, "a box formula")) return e;
      if (!contains_alpha(n.ant, r.principal)) return "box formula not in the antecedent";
      return need(r.at.size() >= 1, "box formula host at depth 0, depth >= 1 required");
    case R::Rcbf:
      if (auto e = child()) return e;
      return need(contains_var(n.sig, r.var), "variable " + r.var + " not in the parent signature");
    case R::Rbf:
      if (auto e = child()) return e;
      return need(contains_var(node_at(c, r.at2).node.sig, r.var),
                  "variable " + r.var + " not in the child signature");
    case R::Rui:
      return need(!r.var.empty(), "missing variable");
    case R::R5dom:
      if (auto e = second()) return e;
      if (!contains_var(n.sig, r.var)) return "variable " + r.var + " not in the source signature";
      if (r.at.size() < 1) return "source node at depth 0, depth >= 1 required";
      return need(r.at2.size() >= 1, "target node at depth 0, depth >= 1 required");
    case R::Cut:
      return std::nullopt;
    case R::LCut:
      if (auto e = need_kind(r.principal, FormulaKind::Box, "a box formula")) return e;
      for (const auto& p : r.extra)
        if (!has_path(c, p)) return "L-Cut position " + path_str(p) + " is not a node";
      return std::nullopt;
  }
  return "unknown rule";
}

std::vector<NestedSequent> premisses_of(const RuleInstance& r) {
  using R = RuleKind;
  if (auto e = schema_error(r)) throw Error(rule_tag(r.kind) + ": " + *e);
  const NestedSequent& c = r.conclusion;
  auto at = [&](NestedSequent& s) -> Sequent& { return node_at(s, r.at).node; };
  auto at2 = [&](NestedSequent& s) -> Sequent& { return node_at(s, r.at2).node; };
  switch (r.kind) {
    case R::Init:
    case R::Lbot:
      return {};
    case R::Limp: {
      NestedSequent p1 = c, p2 = c;
      erase_one(at(p1).ant, r.principal);
      at(p1).suc.push_back(r.principal.lhs());
      erase_one(at(p2).ant, r.principal);
      at(p2).ant.push_back(r.principal.rhs());
      return {p1, p2};
    }
    case R::Rimp: {
      NestedSequent p = c;
      erase_one(at(p).suc, r.principal);
      at(p).ant.push_back(r.principal.lhs());
      at(p).suc.push_back(r.principal.rhs());
      return {p};
    }
    case R::Lall: {
      NestedSequent p = c;
      at(p).ant.push_back(substitute(r.principal.body(), r.var, r.principal.bound()));
      return {p};
    }
    case R::Rall: {
      NestedSequent p = c;
      erase_one(at(p).suc, r.principal);
      at(p).sig.push_back(r.eigen);
      at(p).suc.push_back(substitute(r.principal.body(), r.eigen, r.principal.bound()));
      return {p};
    }
    case R::Lbox: {
      NestedSequent p = c;
      at2(p).ant.push_back(r.principal.body());
      return {p};
    }
    case R::Rbox: {
      NestedSequent p = c;
      erase_one(at(p).suc, r.principal);
      NestedSequent child;
      child.node.suc.push_back(r.principal.body());
      node_at(p, r.at).children.push_back(std::move(child));
      return {p};
    }
    case R::Ref: {
      NestedSequent p = c;
      at(p).ant.push_back(Formula::eq(r.var, r.var));
      return {p};
    }
    case R::Repl: {
      NestedSequent p = c;
      at(p).ant.push_back(r.produced);
      return {p};
    }
    case R::ReplX: {
      NestedSequent p = c;
      at(p).sig.push_back(r.principal.args()[1]);
      return {p};
    }
    case R::Rig: {
      NestedSequent p = c;
      at2(p).ant.push_back(r.principal);
      return {p};
    }
    case R::RD: {
      NestedSequent p = c;
      node_at(p, r.at).children.emplace_back();
      return {p};
    }
    case R::RB: {
      NestedSequent p = c;
      at(p).ant.push_back(r.principal.body());
      return {p};
    }
    case R::RT: {
      NestedSequent p = c;
      at(p).ant.push_back(r.principal.body());
      return {p};
    }
    case R::R4:
    case R::R5: {
      NestedSequent p = c;
      at2(p).ant.push_back(r.principal);
      return {p};
    }
    case R::Rcbf:
    case R::R5dom: {
      NestedSequent p = c;
      at2(p).sig.push_back(r.var);
      return {p};
    }
    case R::Rbf:
    case R::Rui: {
      NestedSequent p = c;
      at(p).sig.push_back(r.var);
      return {p};
    }
    case R::Cut: {
      NestedSequent p1 = c, p2 = c;
      at(p1).suc.push_back(r.produced);
      at(p2).ant.push_back(r.produced);
      return {p1, p2};
    }
    case R::LCut: {
      NestedSequent p1 = c, p2 = c;
      at(p1).suc.push_back(r.principal);
      at(p2).ant.push_back(r.principal);
      for (const auto& q : r.extra) node_at(p2, q).node.ant.push_back(r.principal);
      return {p1, p2};
    }
  }
  throw Error("unknown rule");
}

std::optional<std::string> side_condition_error(const RuleInstance& r, const LogicSpec& logic) {
  if (r.kind != RuleKind::LCut) return std::nullopt;
  bool four = logic.has_axiom(Axiom::Four);
  bool five = logic.has_axiom(Axiom::Five);
  if (!four && !five && !r.extra.empty()) return "L-Cut with further positions needs 4 or 5";
  if (four && !five)
    for (const auto& q : r.extra)
      if (!is_prefix(r.at, q)) return "L-Cut position " + path_str(q) + " is not below the cut node";
  if (five && !four && !r.extra.empty() && r.at.empty())
    return "L-Cut node at depth 0, depth >= 1 required";
  return std::nullopt;
}

std::optional<std::string> justify_error(const NestedSequent& conclusion,
                                         const std::vector<NestedSequent>& premisses,
                                         const RuleInstance& r) {
  if (auto e = schema_error(r)) return rule_tag(r.kind) + ": " + *e;
  if (!equivalent(r.conclusion, conclusion))
    return rule_tag(r.kind) + ": conclusion does not match the instance";
  auto expected = premisses_of(r);
  if (expected.size() != premisses.size())
    return rule_tag(r.kind) + ": expected " + std::to_string(expected.size()) + " premisses, got " +
           std::to_string(premisses.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (!equivalent(expected[i], premisses[i]))
      return rule_tag(r.kind) + ": premiss " + std::to_string(i + 1) + " does not match the schema";
  return std::nullopt;
}

bool justify(const NestedSequent& conclusion, const std::vector<NestedSequent>& premisses,
             const RuleInstance& r) {
  return !justify_error(conclusion, premisses, r);
}

RuleInstance remap_instance(const RuleInstance& r, const ChildMap& m) {
  RuleInstance out = r;
  out.conclusion = apply_child_map(r.conclusion, m);
  out.at = map_path(m, r.at);
  out.at2 = map_path(m, r.at2);
  for (auto& q : out.extra) q = map_path(m, q);
  return out;
}

// ----- backward matching -----------------------------------------------------

namespace {

std::vector<Formula> distinct(const std::vector<Formula>& m) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (const auto& a : m)
    if (seen.insert(alpha_key(a)).second) out.push_back(a);
  return out;
}

std::vector<Var> distinct(const std::vector<Var>& m) {
  std::set<Var> s(m.begin(), m.end());
  return {s.begin(), s.end()};
}

}  // namespace

std::vector<RuleInstance> match_backward(const NestedSequent& goal, const LogicSpec& logic) {
  using R = RuleKind;
  std::vector<RuleInstance> out;
  const auto paths = all_paths(goal);
  const auto names = free_names(goal);
  NameSupply supply(all_names(goal));
  auto make = [&](R k, const Path& p) {
    RuleInstance r;
    r.kind = k;
    r.conclusion = goal;
    r.at = p;
    return r;
  };
  auto allowed = [&](R k) { return logic.has_rule(k); };

  for (const auto& p : paths) {
    const NestedSequent& ns = node_at(goal, p);
    const Sequent& n = ns.node;
    auto ant = distinct(n.ant);
    auto suc = distinct(n.suc);
    auto sig = distinct(n.sig);
    auto child_path = [&](std::size_t i) {
      Path q = p;
      q.push_back(i);
      return q;
    };

    for (const auto& a : ant) {
      switch (a.kind()) {
        case FormulaKind::Bottom: {
          auto r = make(R::Lbot, p);
          r.principal = a;
          out.push_back(r);
          break;
        }
        case FormulaKind::Pred:
        case FormulaKind::Eq:
          if (contains_alpha(n.suc, a)) {
            auto r = make(R::Init, p);
            r.principal = a;
            out.push_back(r);
          }
          break;
        case FormulaKind::Implies: {
          auto r = make(R::Limp, p);
          r.principal = a;
          out.push_back(r);
          break;
        }
        case FormulaKind::Forall:
          for (const auto& z : sig) {
            auto r = make(R::Lall, p);
            r.principal = a;
            r.var = z;
            out.push_back(r);
          }
          break;
        case FormulaKind::Box:
          for (std::size_t i = 0; i < ns.children.size(); ++i) {
            auto r = make(R::Lbox, p);
            r.principal = a;
            r.at2 = child_path(i);
            out.push_back(r);
            if (allowed(R::R4)) {
              r.kind = R::R4;
              out.push_back(r);
            }
          }
          if (allowed(R::RT)) {
            auto r = make(R::RT, p);
            r.principal = a;
            out.push_back(r);
          }
          if (allowed(R::R5) && !p.empty())
            for (const auto& q : paths) {
              if (q == p) continue;
              auto r = make(R::R5, p);
              r.principal = a;
              r.at2 = q;
              out.push_back(r);
            }
          break;
      }
    }
    for (const auto& a : suc) {
      if (a.kind() == FormulaKind::Implies) {
        auto r = make(R::Rimp, p);
        r.principal = a;
        out.push_back(r);
      } else if (a.kind() == FormulaKind::Forall) {
        auto r = make(R::Rall, p);
        r.principal = a;
        r.eigen = supply.fresh(a.bound());
        out.push_back(r);
      } else if (a.kind() == FormulaKind::Box) {
        auto r = make(R::Rbox, p);
        r.principal = a;
        out.push_back(r);
      }
    }
    for (const auto& x : names) {
      auto r = make(R::Ref, p);
      r.var = x;
      out.push_back(r);
      if (allowed(R::Rui)) {
        r.kind = R::Rui;
        out.push_back(r);
      }
    }
    for (const auto& e : ant) {
      if (e.kind() != FormulaKind::Eq) continue;
      const Var& x = e.args()[0];
      const Var& y = e.args()[1];
      for (const auto& q : ant) {
        if (!q.is_atomic()) continue;
        std::vector<std::size_t> pos;
        for (std::size_t i = 0; i < q.arity(); ++i)
          if (q.args()[i] == x) pos.push_back(i);
        if (pos.empty() || x == y || pos.size() > 8) continue;
        for (unsigned mask = 1; mask < (1u << pos.size()); ++mask) {
          std::vector<Var> args = q.args();
          for (std::size_t j = 0; j < pos.size(); ++j)
            if (mask & (1u << j)) args[pos[j]] = y;
          auto r = make(R::Repl, p);
          r.principal = e;
          r.side = q;
          r.produced = q.kind() == FormulaKind::Pred ? Formula::pred(q.symbol(), args)
                                                     : Formula::eq(args[0], args[1]);
          out.push_back(r);
        }
      }
      if (contains_var(n.sig, x)) {
        auto r = make(R::ReplX, p);
        r.principal = e;
        r.var = y;
        out.push_back(r);
      }
      for (const auto& q : paths) {
        if (q == p) continue;
        auto r = make(R::Rig, p);
        r.principal = e;
        r.at2 = q;
        out.push_back(r);
      }
    }
    if (allowed(R::RD)) out.push_back(make(R::RD, p));
    for (std::size_t i = 0; i < ns.children.size(); ++i) {
      const Sequent& cn = ns.children[i].node;
      if (allowed(R::RB))
        for (const auto& a : distinct(cn.ant)) {
          if (a.kind() != FormulaKind::Box) continue;
          auto r = make(R::RB, p);
          r.principal = a;
          r.at2 = child_path(i);
          out.push_back(r);
        }
      if (allowed(R::Rcbf))
        for (const auto& x : sig) {
          auto r = make(R::Rcbf, p);
          r.var = x;
          r.at2 = child_path(i);
          out.push_back(r);
        }
      if (allowed(R::Rbf))
        for (const auto& x : distinct(cn.sig)) {
          auto r = make(R::Rbf, p);
          r.var = x;
          r.at2 = child_path(i);
          out.push_back(r);
        }
    }
    if (allowed(R::R5dom) && !p.empty())
      for (const auto& x : sig)
        for (const auto& q : paths) {
          if (q.empty() || q == p) continue;
          auto r = make(R::R5dom, p);
          r.var = x;
          r.at2 = q;
          out.push_back(r);
        }
  }
  std::erase_if(out, [&](const RuleInstance& r) { return !allowed(r.kind); });
  return out;
}

}  // namespace nq
