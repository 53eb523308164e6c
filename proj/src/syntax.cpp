#include "nq/syntax.hpp"

#include <map>
#include <optional>
#include <sstream>

namespace nq {

struct Formula::Node {
  FormulaKind kind = FormulaKind::Bottom;
  std::string symbol;
  std::vector<Var> vars;  // Pred/Eq args, Forall binder
  Formula a{std::shared_ptr<const Node>()};
  Formula b{std::shared_ptr<const Node>()};
};

namespace {

const std::shared_ptr<const Formula::Node>& bottom_node() {
  static const auto n = std::make_shared<const Formula::Node>();
  return n;
}

const std::vector<Var> kNoVars;
const std::string kNoSymbol;

}  // namespace

Formula::Formula() : node_(bottom_node()) {}

const Formula::Node& Formula::rep() const { return node_ ? *node_ : *bottom_node(); }

Formula Formula::pred(std::string symbol, std::vector<Var> args) {
  if (symbol.empty()) throw Error("predicate symbol must be non-empty");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Pred;
  n->symbol = std::move(symbol);
  n->vars = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::eq(Var lhs, Var rhs) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Eq;
  n->vars = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::bottom() { return Formula(); }

Formula Formula::implies(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Implies;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::forall(Var x, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Forall;
  n->vars = {std::move(x)};
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::box(Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Box;
  n->a = std::move(body);
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return rep().kind; }

const std::string& Formula::symbol() const {
  return rep().kind == FormulaKind::Pred ? rep().symbol : kNoSymbol;
}

const std::vector<Var>& Formula::args() const {
  if (rep().kind == FormulaKind::Pred || rep().kind == FormulaKind::Eq) return rep().vars;
  return kNoVars;
}

const Formula& Formula::lhs() const { return rep().a; }
const Formula& Formula::rhs() const { return rep().b; }
const Formula& Formula::body() const { return rep().a; }

const Var& Formula::bound() const {
  if (rep().kind != FormulaKind::Forall) throw Error("bound(): not a quantifier");
  return rep().vars[0];
}

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = x.rep();
  const auto& b = y.rep();
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case FormulaKind::Pred:
      return a.symbol == b.symbol && a.vars == b.vars;
    case FormulaKind::Eq:
      return a.vars == b.vars;
    case FormulaKind::Bottom:
      return true;
    case FormulaKind::Implies:
      return a.a == b.a && a.b == b.b;
    case FormulaKind::Forall:
      return a.vars == b.vars && a.a == b.a;
    case FormulaKind::Box:
      return a.a == b.a;
  }
  return false;
}

// ----- variables -------------------------------------------------------------

namespace {

void free_vars_rec(const Formula& a, std::set<Var>& bound, std::set<Var>& out) {
  switch (a.kind()) {
    case FormulaKind::Pred:
    case FormulaKind::Eq:
      for (const auto& v : a.args())
        if (!bound.count(v)) out.insert(v);
      return;
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Implies:
      free_vars_rec(a.lhs(), bound, out);
      free_vars_rec(a.rhs(), bound, out);
      return;
    case FormulaKind::Box:
      free_vars_rec(a.body(), bound, out);
      return;
    case FormulaKind::Forall: {
      bool fresh = bound.insert(a.bound()).second;
      free_vars_rec(a.body(), bound, out);
      if (fresh) bound.erase(a.bound());
      return;
    }
  }
}

}  // namespace

std::set<Var> free_vars(const Formula& a) {
  std::set<Var> bound, out;
  free_vars_rec(a, bound, out);
  return out;
}

void collect_names(const Formula& a, std::set<Var>& out) {
  switch (a.kind()) {
    case FormulaKind::Pred:
    case FormulaKind::Eq:
      out.insert(a.args().begin(), a.args().end());
      return;
    case FormulaKind::Bottom:
      return;
    case FormulaKind::Implies:
      collect_names(a.lhs(), out);
      collect_names(a.rhs(), out);
      return;
    case FormulaKind::Box:
      collect_names(a.body(), out);
      return;
    case FormulaKind::Forall:
      out.insert(a.bound());
      collect_names(a.body(), out);
      return;
  }
}

void collect_bound(const Formula& a, std::set<Var>& out) {
  switch (a.kind()) {
    case FormulaKind::Implies:
      collect_bound(a.lhs(), out);
      collect_bound(a.rhs(), out);
      return;
    case FormulaKind::Box:
      collect_bound(a.body(), out);
      return;
    case FormulaKind::Forall:
      out.insert(a.bound());
      collect_bound(a.body(), out);
      return;
    default:
      return;
  }
}

bool occurs_free(const Formula& a, const Var& x) {
  switch (a.kind()) {
    case FormulaKind::Pred:
    case FormulaKind::Eq:
      for (const auto& v : a.args())
        if (v == x) return true;
      return false;
    case FormulaKind::Bottom:
      return false;
    case FormulaKind::Implies:
      return occurs_free(a.lhs(), x) || occurs_free(a.rhs(), x);
    case FormulaKind::Box:
      return occurs_free(a.body(), x);
    case FormulaKind::Forall:
      return a.bound() != x && occurs_free(a.body(), x);
  }
  return false;
}

Var NameSupply::fresh(std::string_view hint) {
  std::string base(hint.empty() ? std::string_view("_v") : hint);
  if (!used_.count(base)) {
    used_.insert(base);
    return base;
  }
  for (std::size_t n = 1;; ++n) {
    std::string cand = base + std::to_string(n);
    if (!used_.count(cand)) {
      used_.insert(cand);
      return cand;
    }
  }
}

Formula substitute(const Formula& a, const Var& y, const Var& x) {
  if (x == y) return a;
  switch (a.kind()) {
    case FormulaKind::Pred:
    case FormulaKind::Eq: {
      bool hit = false;
      std::vector<Var> args = a.args();
      for (auto& v : args)
        if (v == x) {
          v = y;
          hit = true;
        }
      if (!hit) return a;
      return a.kind() == FormulaKind::Pred ? Formula::pred(a.symbol(), std::move(args))
                                           : Formula::eq(args[0], args[1]);
    }
    case FormulaKind::Bottom:
      return a;
    case FormulaKind::Implies: {
      Formula l = substitute(a.lhs(), y, x);
      Formula r = substitute(a.rhs(), y, x);
      if (l == a.lhs() && r == a.rhs()) return a;
      return Formula::implies(std::move(l), std::move(r));
    }
    case FormulaKind::Box: {
      Formula b = substitute(a.body(), y, x);
      if (b == a.body()) return a;
      return Formula::box(std::move(b));
    }
    case FormulaKind::Forall: {
      const Var& v = a.bound();
      if (v == x || !occurs_free(a.body(), x)) return a;
      if (v == y) {
        std::set<Var> avoid{x, y};
        collect_names(a.body(), avoid);
        NameSupply names(std::move(avoid));
        Var z = names.fresh(v);
        return Formula::forall(z, substitute(substitute(a.body(), z, v), y, x));
      }
      return Formula::forall(v, substitute(a.body(), y, x));
    }
  }
  return a;
}

std::size_t weight(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Implies:
      return weight(a.lhs()) + weight(a.rhs()) + 1;
    case FormulaKind::Forall:
    case FormulaKind::Box:
      return weight(a.body()) + 1;
    default:
      return 0;
  }
}

// ----- alpha equivalence -----------------------------------------------------

namespace {

Formula canon_rec(const Formula& a, std::map<Var, Var>& env, std::size_t depth) {
  switch (a.kind()) {
    case FormulaKind::Pred:
    case FormulaKind::Eq: {
      std::vector<Var> args = a.args();
      for (auto& v : args)
        if (auto it = env.find(v); it != env.end()) v = it->second;
      return a.kind() == FormulaKind::Pred ? Formula::pred(a.symbol(), std::move(args))
                                           : Formula::eq(args[0], args[1]);
    }
    case FormulaKind::Bottom:
      return a;
    case FormulaKind::Implies:
      return Formula::implies(canon_rec(a.lhs(), env, depth), canon_rec(a.rhs(), env, depth));
    case FormulaKind::Box:
      return Formula::box(canon_rec(a.body(), env, depth));
    case FormulaKind::Forall: {
      Var name = "_b" + std::to_string(depth);
      auto saved = env.find(a.bound()) != env.end() ? std::optional<Var>(env[a.bound()]) : std::nullopt;
      env[a.bound()] = name;
      Formula body = canon_rec(a.body(), env, depth + 1);
      if (saved) env[a.bound()] = *saved;
      else env.erase(a.bound());
      return Formula::forall(name, std::move(body));
    }
  }
  return a;
}

void key_rec(const Formula& a, std::map<Var, std::size_t>& env, std::size_t depth,
             std::string& out) {
  auto put_var = [&](const Var& v) {
    if (auto it = env.find(v); it != env.end()) {
      out += '#';
      out += std::to_string(it->second);
    } else {
      out += v;
    }
  };
  switch (a.kind()) {
    case FormulaKind::Pred:
      out += a.symbol();
      out += '(';
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (i) out += ',';
        put_var(a.args()[i]);
      }
      out += ')';
      return;
    case FormulaKind::Eq:
      out += "=(";
      put_var(a.args()[0]);
      out += ',';
      put_var(a.args()[1]);
      out += ')';
      return;
    case FormulaKind::Bottom:
      out += 'F';
      return;
    case FormulaKind::Implies:
      out += '{';
      key_rec(a.lhs(), env, depth, out);
      out += '>';
      key_rec(a.rhs(), env, depth, out);
      out += '}';
      return;
    case FormulaKind::Box:
      out += '!';
      key_rec(a.body(), env, depth, out);
      return;
    case FormulaKind::Forall: {
      std::optional<std::size_t> saved;
      if (auto it = env.find(a.bound()); it != env.end()) saved = it->second;
      env[a.bound()] = depth;
      out += "@.";
      key_rec(a.body(), env, depth + 1, out);
      if (saved) env[a.bound()] = *saved;
      else env.erase(a.bound());
      return;
    }
  }
}

}  // namespace

Formula alpha_canonical(const Formula& a) {
  std::map<Var, Var> env;
  return canon_rec(a, env, 0);
}

std::string alpha_key(const Formula& a) {
  std::map<Var, std::size_t> env;
  std::string out;
  key_rec(a, env, 0, out);
  return out;
}

bool alpha_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  return alpha_key(a) == alpha_key(b);
}

// ----- sugar -----------------------------------------------------------------

Formula top() { return Formula::implies(Formula::bottom(), Formula::bottom()); }
Formula neg(const Formula& a) { return Formula::implies(a, Formula::bottom()); }
Formula disj(const Formula& a, const Formula& b) { return Formula::implies(neg(a), b); }
Formula conj(const Formula& a, const Formula& b) { return neg(Formula::implies(a, neg(b))); }
Formula exists(const Var& x, const Formula& a) { return neg(Formula::forall(x, neg(a))); }
Formula dia(const Formula& a) { return neg(Formula::box(neg(a))); }
Formula existence(const Var& x, const Var& y) { return exists(y, Formula::eq(y, x)); }

void collect_names(const SugarFormula& a, std::set<Var>& out) {
  out.insert(a.vars.begin(), a.vars.end());
  for (const auto& s : a.subs) collect_names(s, out);
}

Formula expand_sugar(const SugarFormula& a, NameSupply& names) {
  using K = SugarFormula::Kind;
  auto sub = [&](std::size_t i) { return expand_sugar(a.subs.at(i), names); };
  switch (a.kind) {
    case K::Pred:
      return Formula::pred(a.symbol, a.vars);
    case K::Eq:
      return Formula::eq(a.vars.at(0), a.vars.at(1));
    case K::Bottom:
      return Formula::bottom();
    case K::Implies:
      return Formula::implies(sub(0), sub(1));
    case K::Forall:
      return Formula::forall(a.vars.at(0), sub(0));
    case K::Box:
      return Formula::box(sub(0));
    case K::Not:
      return neg(sub(0));
    case K::And:
      return conj(sub(0), sub(1));
    case K::Or:
      return disj(sub(0), sub(1));
    case K::Exists:
      return exists(a.vars.at(0), sub(0));
    case K::Dia:
      return dia(sub(0));
    case K::Exist: {
      names.reserve(a.vars.at(0));
      Var y = names.fresh("y");
      return existence(a.vars.at(0), y);
    }
  }
  throw Error("expand_sugar: unknown node");
}

Formula expand_sugar(const SugarFormula& a) {
  std::set<Var> avoid;
  collect_names(a, avoid);
  NameSupply names(std::move(avoid));
  return expand_sugar(a, names);
}

// ----- printing --------------------------------------------------------------

namespace {

// Precedence levels: 0 implication, 1 disjunction, 2 conjunction, 3 unary.
class Printer {
 public:
  explicit Printer(const PrintOptions& opt) : opt_(opt) {}

  void print(const Formula& a, int prec, bool rightmost, std::string& out) const {
    if (opt_.sugar && print_sugar(a, prec, rightmost, out)) return;
    switch (a.kind()) {
      case FormulaKind::Pred:
        out += a.symbol();
        if (!a.args().empty()) {
          out += '(';
          for (std::size_t i = 0; i < a.args().size(); ++i) {
            if (i) out += ',';
            out += a.args()[i];
          }
          out += ')';
        }
        return;
      case FormulaKind::Eq:
        out += a.args()[0];
        out += " = ";
        out += a.args()[1];
        return;
      case FormulaKind::Bottom:
        out += opt_.unicode ? "⊥" : "false";
        return;
      case FormulaKind::Implies:
        binary(a.lhs(), a.rhs(), opt_.unicode ? " ⊃ " : " -> ", 0, 1, 0, prec, rightmost, out);
        return;
      case FormulaKind::Forall:
        quantifier(opt_.unicode ? "∀" : "forall ", a.bound(), a.body(), rightmost, out);
        return;
      case FormulaKind::Box:
        out += opt_.unicode ? "□" : "box ";
        print(a.body(), 3, rightmost, out);
        return;
    }
  }

 private:
  static bool is_neg(const Formula& a) {
    return a.kind() == FormulaKind::Implies && a.rhs().kind() == FormulaKind::Bottom;
  }

  // ~x prints as &, exists, dia or != rather than as a plain negation.
  static bool folds_as_negation(const Formula& x) {
    switch (x.kind()) {
      case FormulaKind::Implies: return is_neg(x.rhs());
      case FormulaKind::Forall:
      case FormulaKind::Box: return is_neg(x.body());
      case FormulaKind::Eq: return true;
      default: return false;
    }
  }

  bool print_sugar(const Formula& a, int prec, bool rightmost, std::string& out) const {
    if (a.kind() != FormulaKind::Implies) return false;
    if (is_neg(a)) {
      const Formula& x = a.lhs();
      if (x.kind() == FormulaKind::Implies && is_neg(x.rhs())) {
        binary(x.lhs(), x.rhs().lhs(), opt_.unicode ? " ∧ " : " & ", 2, 2, 3, prec, rightmost, out);
        return true;
      }
      if (x.kind() == FormulaKind::Forall && is_neg(x.body())) {
        quantifier(opt_.unicode ? "∃" : "exists ", x.bound(), x.body().lhs(), rightmost, out);
        return true;
      }
      if (x.kind() == FormulaKind::Box && is_neg(x.body())) {
        out += opt_.unicode ? "◇" : "dia ";
        print(x.body().lhs(), 3, rightmost, out);
        return true;
      }
      if (x.kind() == FormulaKind::Eq) {
        out += x.args()[0];
        out += opt_.unicode ? " ≠ " : " != ";
        out += x.args()[1];
        return true;
      }
      out += opt_.unicode ? "¬" : "~";
      print(x, 3, rightmost, out);
      return true;
    }
    if (is_neg(a.lhs()) && !folds_as_negation(a.lhs().lhs())) {
      binary(a.lhs().lhs(), a.rhs(), opt_.unicode ? " ∨ " : " | ", 1, 1, 2, prec, rightmost, out);
      return true;
    }
    return false;
  }

  void binary(const Formula& l, const Formula& r, const char* op, int own, int lp, int rp,
              int prec, bool rightmost, std::string& out) const {
    bool paren = prec > own;
    if (paren) out += '(';
    print(l, lp, false, out);
    out += op;
    print(r, rp, paren ? true : rightmost, out);
    if (paren) out += ')';
  }

  void quantifier(const char* q, const Var& x, const Formula& body, bool rightmost,
                  std::string& out) const {
    if (!rightmost) out += '(';
    out += q;
    out += x;
    out += ". ";
    print(body, 0, true, out);
    if (!rightmost) out += ')';
  }

  const PrintOptions& opt_;
};

}  // namespace

std::string to_string(const Formula& a, const PrintOptions& opt) {
  std::string out;
  Printer(opt).print(a, 0, true, out);
  return out;
}

}  // namespace nq
