#pragma once

// Shared generators and independent oracles for the test binaries.

#include <random>
#include <string>
#include <vector>

#include "nq/parse.hpp"
#include "nq/sequent.hpp"
#include "nq/syntax.hpp"

namespace nqtest {

using nq::Formula;
using nq::NestedSequent;
using nq::Var;

inline const std::vector<Var> kVars = {"x", "y", "z", "w"};

template <typename T>
T pick(std::mt19937& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

// Random formula over P/1, R/2, Q/0 and identity.
inline Formula random_formula(std::mt19937& rng, int depth, const std::vector<Var>& vars = kVars) {
  int choice = std::uniform_int_distribution<int>(0, depth <= 0 ? 3 : 8)(rng);
  switch (choice) {
    case 0: return Formula::pred("P", {pick(rng, vars)});
    case 1: return Formula::pred("R", {pick(rng, vars), pick(rng, vars)});
    case 2: return Formula::eq(pick(rng, vars), pick(rng, vars));
    case 3: return std::uniform_int_distribution<int>(0, 1)(rng) ? Formula::pred("Q", {}) : Formula::bottom();
    case 4:
    case 5: return Formula::implies(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
    case 6:
    case 7: return Formula::forall(pick(rng, vars), random_formula(rng, depth - 1, vars));
    default: return Formula::box(random_formula(rng, depth - 1, vars));
  }
}

inline NestedSequent random_nested(std::mt19937& rng, int depth, int fdepth = 2) {
  NestedSequent s;
  std::uniform_int_distribution<int> small(0, 2);
  for (int i = small(rng); i > 0; --i) s.node.sig.push_back(pick(rng, kVars));
  for (int i = small(rng); i > 0; --i) s.node.ant.push_back(random_formula(rng, fdepth));
  for (int i = small(rng); i > 0; --i) s.node.suc.push_back(random_formula(rng, fdepth));
  if (depth > 0)
    for (int i = std::uniform_int_distribution<int>(0, 2)(rng); i > 0; --i)
      s.children.push_back(random_nested(rng, depth - 1, fdepth));
  return s;
}

// ----- de Bruijn oracle ------------------------------------------------------
// Bound occurrences become their binder distance; free names stay.

inline std::string debruijn(const Formula& a, std::vector<Var>& env) {
  auto var = [&](const Var& v) {
    for (std::size_t k = env.size(); k-- > 0;)
      if (env[k] == v) return "%" + std::to_string(env.size() - 1 - k);
    return "'" + v;
  };
  switch (a.kind()) {
    case nq::FormulaKind::Pred: {
      std::string s = "p:" + a.symbol() + "(";
      for (const auto& v : a.args()) s += var(v) + " ";
      return s + ")";
    }
    case nq::FormulaKind::Eq: return "eq(" + var(a.args()[0]) + " " + var(a.args()[1]) + ")";
    case nq::FormulaKind::Bottom: return "bot";
    case nq::FormulaKind::Implies: return "imp(" + debruijn(a.lhs(), env) + " " + debruijn(a.rhs(), env) + ")";
    case nq::FormulaKind::Box: return "box(" + debruijn(a.body(), env) + ")";
    case nq::FormulaKind::Forall: {
      env.push_back(a.bound());
      std::string s = "all(" + debruijn(a.body(), env) + ")";
      env.pop_back();
      return s;
    }
  }
  return "?";
}

inline std::string debruijn(const Formula& a) {
  std::vector<Var> env;
  return debruijn(a, env);
}

// A(y/x) computed on the de Bruijn string: replace free 'x by 'y.
inline std::string debruijn_subst(const Formula& a, const Var& y, const Var& x) {
  std::string s = debruijn(a);
  std::string from = "'" + x, to = "'" + y;
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    if (s.compare(i, from.size(), from) == 0 &&
        (i + from.size() == s.size() || s[i + from.size()] == ' ' || s[i + from.size()] == ')')) {
      out += to;
      i += from.size();
    } else {
      out += s[i++];
    }
  }
  return out;
}

inline NestedSequent seq(const std::string& text) { return nq::parse_nested_sequent(text); }
inline Formula fml(const std::string& text) { return nq::parse_formula(text); }

}  // namespace nqtest
