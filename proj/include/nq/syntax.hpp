#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nq {

using Var = std::string;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FormulaKind { Pred, Eq, Bottom, Implies, Forall, Box };

// Immutable formula of the first-order modal language with identity.
// Copies share structure.
class Formula {
 public:
  struct Node;

  Formula();  // bottom

  static Formula pred(std::string symbol, std::vector<Var> args);
  static Formula eq(Var lhs, Var rhs);
  static Formula bottom();
  static Formula implies(Formula lhs, Formula rhs);
  static Formula forall(Var x, Formula body);
  static Formula box(Formula body);

  FormulaKind kind() const;
  bool is_atomic() const {
    return kind() == FormulaKind::Pred || kind() == FormulaKind::Eq;
  }

  // Pred: symbol and args; Eq: args() has two entries.
  const std::string& symbol() const;
  const std::vector<Var>& args() const;
  std::size_t arity() const { return args().size(); }

  // Implies: lhs/rhs. Forall/Box: body. Forall: bound().
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const;
  const Var& bound() const;

  // Exact structural equality (bound names included).
  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& rep() const;  // a null node reads as bottom
  std::shared_ptr<const Node> node_;
};

std::set<Var> free_vars(const Formula& a);
// Every variable name occurring in a, bound or free.
void collect_names(const Formula& a, std::set<Var>& out);
void collect_bound(const Formula& a, std::set<Var>& out);
bool occurs_free(const Formula& a, const Var& x);

// A(y/x): capture-avoiding replacement of the free occurrences of x by y.
Formula substitute(const Formula& a, const Var& y, const Var& x);

std::size_t weight(const Formula& a);

// Binders renamed positionally (by nesting level); free names kept.
Formula alpha_canonical(const Formula& a);
std::string alpha_key(const Formula& a);
bool alpha_equal(const Formula& a, const Formula& b);

// Prefix reserved for machine-generated names. Canonical binder names use
// "_b", fresh names produced by NameSupply use "_v" unless a hint is free.
inline constexpr std::string_view kReservedPrefix = "_";

// Produces names outside a given avoid set. Hint-based: returns the hint
// itself when unused, otherwise hint followed by the first free counter.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<Var> avoid) : used_(std::move(avoid)) {}

  Var fresh(std::string_view hint = "_v");
  void reserve(const Var& v) { used_.insert(v); }
  template <typename Range>
  void reserve_all(const Range& r) {
    for (const auto& v : r) used_.insert(v);
  }
  bool used(const Var& v) const { return used_.count(v) != 0; }

 private:
  std::set<Var> used_;
};

// ----- derived connectives -------------------------------------------------

Formula top();  // bottom -> bottom
Formula neg(const Formula& a);
Formula disj(const Formula& a, const Formula& b);
Formula conj(const Formula& a, const Formula& b);
Formula exists(const Var& x, const Formula& a);
Formula dia(const Formula& a);
// E x := exists y. y = x, with y chosen by the caller.
Formula existence(const Var& x, const Var& y);

// Surface syntax tree before expansion of the defined connectives.
struct SugarFormula {
  enum class Kind {
    Pred, Eq, Bottom, Implies, Forall, Box,
    Not, And, Or, Exists, Dia, Exist
  };
  Kind kind = Kind::Bottom;
  std::string symbol;
  std::vector<Var> vars;
  std::vector<SugarFormula> subs;
};

void collect_names(const SugarFormula& a, std::set<Var>& out);

// Expansion: ~A = A -> false; A | B = ~A -> B; A & B = ~(A -> ~B);
// exists x. A = ~forall x. ~A; dia A = ~box ~A; E x = exists y. y = x,
// where y is drawn from `names` (which should already hold every name of
// the surrounding object).
Formula expand_sugar(const SugarFormula& a, NameSupply& names);
Formula expand_sugar(const SugarFormula& a);

// ----- printing --------------------------------------------------------------

struct PrintOptions {
  bool unicode = false;
  bool sugar = false;  // fold ~, &, |, exists, dia back when printing
};

std::string to_string(const Formula& a, const PrintOptions& opt = {});

}  // namespace nq
