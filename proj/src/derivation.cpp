#include "nq/derivation.hpp"

#include <algorithm>
#include <json.hpp>

#include "nq/parse.hpp"

namespace nq {

namespace {

bool is_identity(const ChildMap& m) {
  for (std::size_t i = 0; i < m.perm.size(); ++i)
    if (m.perm[i] != i || !is_identity(m.sub[i])) return false;
  return true;
}

std::string path_str(const std::vector<std::size_t>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace

Derivation align(const Derivation& d, const NestedSequent& target) {
  auto m = match_children(d.conclusion(), target);
  if (!m)
    throw Error("derivation of '" + to_string(d.conclusion()) + "' does not derive '" +
                to_string(target) + "'");
  if (is_identity(*m)) return d;
  Derivation out;
  out.rule = remap_instance(d.rule, *m);
  auto ps = premisses_of(out.rule);
  for (std::size_t i = 0; i < d.premisses.size(); ++i)
    out.premisses.push_back(align(d.premisses[i], ps.at(i)));
  return out;
}

Derivation rule_step(RuleInstance r, std::vector<Derivation> subs) {
  auto ps = premisses_of(r);
  if (ps.size() != subs.size())
    throw Error(rule_tag(r.kind) + ": expected " + std::to_string(ps.size()) + " subderivations, got " +
                std::to_string(subs.size()));
  Derivation d;
  d.rule = std::move(r);
  for (std::size_t i = 0; i < subs.size(); ++i) d.premisses.push_back(align(subs[i], ps[i]));
  return d;
}

Derivation axiom_step(RuleInstance r) { return rule_step(std::move(r), {}); }

Derivation normalize(const Derivation& d) {
  std::vector<Derivation> subs;
  for (const auto& p : d.premisses) subs.push_back(normalize(p));
  return rule_step(d.rule, std::move(subs));
}

std::size_t height(const Derivation& d) {
  std::size_t h = 0;
  for (const auto& p : d.premisses) h = std::max(h, height(p));
  return h + 1;
}

std::size_t size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premisses) n += size(p);
  return n;
}

void for_each_node(const Derivation& d, const std::function<void(const Derivation&)>& f) {
  f(d);
  for (const auto& p : d.premisses) for_each_node(p, f);
}

std::size_t cut_count(const Derivation& d) {
  std::size_t n = 0;
  for_each_node(d, [&](const Derivation& x) {
    if (x.rule.kind == RuleKind::Cut || x.rule.kind == RuleKind::LCut) ++n;
  });
  return n;
}

bool is_cut_free(const Derivation& d) { return cut_count(d) == 0; }

std::vector<Var> eigenvariables(const Derivation& d) {
  std::vector<Var> out;
  for_each_node(d, [&](const Derivation& x) {
    if (x.rule.kind == RuleKind::Rall) out.push_back(x.rule.eigen);
  });
  return out;
}

std::set<Var> all_names(const Derivation& d) {
  std::set<Var> out;
  for_each_node(d, [&](const Derivation& x) {
    auto n = all_names(x.conclusion());
    out.insert(n.begin(), n.end());
    if (!x.rule.var.empty()) out.insert(x.rule.var);
    if (!x.rule.eigen.empty()) out.insert(x.rule.eigen);
  });
  return out;
}

// ----- checking --------------------------------------------------------------

std::string CheckResult::message() const {
  if (ok) return "ok";
  return "at " + path_str(where) + ": " + reason;
}

namespace {

void check_rec(const Derivation& d, const LogicSpec& logic, const CheckOptions& opt,
               std::vector<std::size_t>& where, CheckResult& res) {
  const auto& r = d.rule;
  auto fail = [&](std::string reason) {
    res.ok = false;
    res.where = where;
    res.reason = std::move(reason);
  };
  bool is_cut = r.kind == RuleKind::Cut || r.kind == RuleKind::LCut;
  if (is_cut ? !opt.allow_cuts : !logic.has_rule(r.kind))
    return fail("rule " + rule_tag(r.kind) + " is not in NQ." + logic.name());
  if (d.premisses.size() != premiss_count(r.kind))
    return fail(rule_tag(r.kind) + ": expected " + std::to_string(premiss_count(r.kind)) + " premisses, got " +
                std::to_string(d.premisses.size()));
  std::vector<NestedSequent> ps;
  for (const auto& p : d.premisses) ps.push_back(p.conclusion());
  if (auto e = justify_error(d.conclusion(), ps, r)) return fail(*e);
  if (auto e = side_condition_error(r, logic)) return fail(*e);
  for (std::size_t i = 0; i < d.premisses.size(); ++i) {
    where.push_back(i);
    check_rec(d.premisses[i], logic, opt, where, res);
    where.pop_back();
    if (!res.ok) return;
  }
}

void purity_rec(const Derivation& d, std::vector<std::size_t>& where, std::set<Var>& eigen,
                std::optional<CheckResult>& res) {
  auto fail = [&](std::string reason) {
    res = CheckResult{false, where, std::move(reason)};
  };
  auto fr = free_names(d.conclusion());
  auto bd = bound_names(d.conclusion());
  for (const auto& v : fr)
    if (bd.count(v)) return fail("impure sequent: " + v + " occurs both free and bound");
  if (d.rule.kind == RuleKind::Rall && !eigen.insert(d.rule.eigen).second)
    return fail("impure derivation: eigenvariable " + d.rule.eigen +
                " is used twice or occurs free in the endsequent");
  for (std::size_t i = 0; i < d.premisses.size(); ++i) {
    where.push_back(i);
    purity_rec(d.premisses[i], where, eigen, res);
    where.pop_back();
    if (res) return;
  }
}

}  // namespace

std::optional<CheckResult> purity_error(const Derivation& d) {
  std::vector<std::size_t> where;
  std::set<Var> eigen = free_names(d.conclusion());
  std::optional<CheckResult> res;
  purity_rec(d, where, eigen, res);
  return res;
}

CheckResult check(const Derivation& d, const LogicSpec& logic, const CheckOptions& opt) {
  CheckResult res;
  std::vector<std::size_t> where;
  try {
    check_rec(d, logic, opt, where, res);
  } catch (const Error& e) {
    res.ok = false;
    res.where = where;
    res.reason = e.what();
  }
  if (res.ok && opt.require_pure)
    if (auto e = purity_error(d)) return *e;
  return res;
}

// ----- substitution and purification -----------------------------------------

namespace {

Var sub_var(const Var& v, const Var& y, const Var& x) { return v == x ? y : v; }

Derivation subst_rec(const Derivation& d, const Var& y, const Var& x, NameSupply& names) {
  RuleInstance r = d.rule;
  std::vector<Derivation> subs = d.premisses;
  if (r.kind == RuleKind::Rall && (r.eigen == x || r.eigen == y)) {
    Var z = names.fresh(r.eigen);
    subs[0] = subst_rec(subs[0], z, r.eigen, names);
    r.eigen = z;
  }
  r.conclusion = nseq_substitute(r.conclusion, y, x);
  r.principal = substitute(r.principal, y, x);
  r.side = substitute(r.side, y, x);
  r.produced = substitute(r.produced, y, x);
  r.var = sub_var(r.var, y, x);
  for (auto& s : subs) s = subst_rec(s, y, x, names);
  return rule_step(std::move(r), std::move(subs));
}

Formula rename_bound(const Formula& a, const std::set<Var>& avoid, NameSupply& names) {
  switch (a.kind()) {
    case FormulaKind::Implies:
      return Formula::implies(rename_bound(a.lhs(), avoid, names), rename_bound(a.rhs(), avoid, names));
    case FormulaKind::Box:
      return Formula::box(rename_bound(a.body(), avoid, names));
    case FormulaKind::Forall: {
      Formula body = rename_bound(a.body(), avoid, names);
      if (!avoid.count(a.bound())) return Formula::forall(a.bound(), body);
      Var z = names.fresh(a.bound());
      return Formula::forall(z, substitute(body, z, a.bound()));
    }
    default:
      return a;
  }
}

void rename_bound_in(NestedSequent& s, const std::set<Var>& avoid, NameSupply& names) {
  for (auto& a : s.node.ant) a = rename_bound(a, avoid, names);
  for (auto& a : s.node.suc) a = rename_bound(a, avoid, names);
  for (auto& c : s.children) rename_bound_in(c, avoid, names);
}

Derivation purify_rec(const Derivation& d, std::set<Var>& eigen, NameSupply& names) {
  RuleInstance r = d.rule;
  std::vector<Derivation> subs = d.premisses;
  if (r.kind == RuleKind::Rall && eigen.count(r.eigen)) {
    Var z = names.fresh(r.eigen);
    subs[0] = subst_rec(subs[0], z, r.eigen, names);
    r.eigen = z;
  }
  if (r.kind == RuleKind::Rall) eigen.insert(r.eigen);
  auto fr = free_names(r.conclusion);
  auto bd = bound_names(r.conclusion);
  std::set<Var> clash;
  for (const auto& v : fr)
    if (bd.count(v)) clash.insert(v);
  if (!clash.empty()) rename_bound_in(r.conclusion, clash, names);
  for (auto& s : subs) s = purify_rec(s, eigen, names);
  return rule_step(std::move(r), std::move(subs));
}

}  // namespace

Derivation substitute_vars(const Derivation& d, const Var& y, const Var& x) {
  if (x == y) return d;
  auto avoid = all_names(d);
  avoid.insert(x);
  avoid.insert(y);
  NameSupply names(std::move(avoid));
  return subst_rec(d, y, x, names);
}

Derivation purify(const Derivation& d) {
  NameSupply names(all_names(d));
  std::set<Var> eigen = free_names(d.conclusion());
  return purify_rec(d, eigen, names);
}

// ----- serialization ---------------------------------------------------------

namespace {

using nlohmann::ordered_json;

bool uses_at2(RuleKind k) {
  using R = RuleKind;
  return k == R::Lbox || k == R::R4 || k == R::RB || k == R::Rcbf || k == R::Rbf || k == R::Rig ||
         k == R::R5 || k == R::R5dom;
}

bool uses_principal(RuleKind k) {
  using R = RuleKind;
  return !(k == R::RD || k == R::Ref || k == R::Rcbf || k == R::Rbf || k == R::Rui || k == R::R5dom ||
           k == R::Cut);
}

bool uses_var(RuleKind k) {
  using R = RuleKind;
  return k == R::Lall || k == R::Ref || k == R::Rcbf || k == R::Rbf || k == R::Rui || k == R::R5dom;
}

std::string fstr(const Formula& a) { return to_string(a); }

ordered_json to_json(const Derivation& d) {
  const auto& r = d.rule;
  ordered_json j;
  j["rule"] = rule_tag(r.kind);
  j["conclusion"] = to_string(d.conclusion());
  j["at"] = r.at;
  if (uses_at2(r.kind)) j["at2"] = r.at2;
  if (uses_principal(r.kind)) j["principal"] = fstr(r.principal);
  if (r.kind == RuleKind::Repl) j["side"] = fstr(r.side);
  if (r.kind == RuleKind::Repl || r.kind == RuleKind::Cut) j["produced"] = fstr(r.produced);
  if (uses_var(r.kind)) j["var"] = r.var;
  if (r.kind == RuleKind::Rall) j["eigen"] = r.eigen;
  if (r.kind == RuleKind::LCut) j["extra"] = r.extra;
  ordered_json ps = ordered_json::array();
  for (const auto& p : d.premisses) ps.push_back(to_json(p));
  j["premisses"] = std::move(ps);
  return j;
}

Derivation from_json(const ordered_json& j) {
  if (!j.is_object()) throw Error("derivation record must be an object");
  auto tag = j.at("rule").get<std::string>();
  auto kind = rule_from_tag(tag);
  if (!kind) throw Error("unknown rule tag '" + tag + "'");
  Derivation d;
  RuleInstance& r = d.rule;
  r.kind = *kind;
  r.conclusion = parse_nested_sequent(j.at("conclusion").get<std::string>());
  if (j.contains("at")) r.at = j["at"].get<Path>();
  if (j.contains("at2")) r.at2 = j["at2"].get<Path>();
  if (j.contains("principal")) r.principal = parse_formula(j["principal"].get<std::string>());
  if (j.contains("side")) r.side = parse_formula(j["side"].get<std::string>());
  if (j.contains("produced")) r.produced = parse_formula(j["produced"].get<std::string>());
  if (j.contains("var")) r.var = j["var"].get<std::string>();
  if (j.contains("eigen")) r.eigen = j["eigen"].get<std::string>();
  if (j.contains("extra")) r.extra = j["extra"].get<std::vector<Path>>();
  if (j.contains("premisses"))
    for (const auto& p : j["premisses"]) d.premisses.push_back(from_json(p));
  return d;
}

}  // namespace

std::string serialize(const Derivation& d) { return to_json(d).dump(2) + "\n"; }

Derivation deserialize(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed derivation file: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed derivation record: ") + e.what());
  }
}

// ----- text rendering --------------------------------------------------------

namespace {

void text_rec(const Derivation& d, const PrintOptions& opt, std::size_t depth, std::string& out) {
  out.append(2 * depth, ' ');
  out += rule_label(d.rule.kind, opt.unicode);
  const auto& r = d.rule;
  if (r.kind == RuleKind::Rall) out += " {" + r.eigen + "}";
  if (uses_var(r.kind)) out += " {" + r.var + "}";
  if (r.kind == RuleKind::Cut) out += " {" + to_string(r.produced, opt) + "}";
  out += "  ";
  out += to_string(d.conclusion(), opt);
  out += '\n';
  for (const auto& p : d.premisses) text_rec(p, opt, depth + 1, out);
}

}  // namespace

std::string to_text(const Derivation& d, const PrintOptions& opt) {
  std::string out;
  text_rec(d, opt, 0, out);
  return out;
}

}  // namespace nq
