#include "nq/sequent.hpp"

#include <algorithm>
#include <numeric>

namespace nq {

bool has_path(const NestedSequent& s, const Path& p) {
  const NestedSequent* n = &s;
  for (std::size_t i : p) {
    if (i >= n->children.size()) return false;
    n = &n->children[i];
  }
  return true;
}

const NestedSequent& node_at(const NestedSequent& s, const Path& p) {
  const NestedSequent* n = &s;
  for (std::size_t i : p) {
    if (i >= n->children.size()) throw Error("path does not address a node");
    n = &n->children[i];
  }
  return *n;
}

NestedSequent& node_at(NestedSequent& s, const Path& p) {
  NestedSequent* n = &s;
  for (std::size_t i : p) {
    if (i >= n->children.size()) throw Error("path does not address a node");
    n = &n->children[i];
  }
  return *n;
}

namespace {

void paths_rec(const NestedSequent& s, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    cur.push_back(i);
    paths_rec(s.children[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Path> all_paths(const NestedSequent& s) {
  std::vector<Path> out;
  Path cur;
  paths_rec(s, cur, out);
  return out;
}

bool is_prefix(const Path& prefix, const Path& p) {
  return prefix.size() <= p.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

std::size_t node_count(const NestedSequent& s) {
  std::size_t n = 1;
  for (const auto& c : s.children) n += node_count(c);
  return n;
}

void merge_into(NestedSequent& s, const Path& p, const NestedSequent& filler) {
  NestedSequent& n = node_at(s, p);
  n.node.sig.insert(n.node.sig.end(), filler.node.sig.begin(), filler.node.sig.end());
  n.node.ant.insert(n.node.ant.end(), filler.node.ant.begin(), filler.node.ant.end());
  n.node.suc.insert(n.node.suc.end(), filler.node.suc.begin(), filler.node.suc.end());
  n.children.insert(n.children.end(), filler.children.begin(), filler.children.end());
}

NestedSequent plug(const Context& c, const std::vector<std::optional<NestedSequent>>& fillers) {
  if (fillers.size() != c.holes.size())
    throw Error("plug: " + std::to_string(c.holes.size()) + " holes but " +
                std::to_string(fillers.size()) + " fillers");
  for (const auto& h : c.holes)
    if (!has_path(c.skeleton, h)) throw Error("plug: hole path does not address a node");
  // Appending children never invalidates existing paths.
  NestedSequent out = c.skeleton;
  for (std::size_t i = 0; i < fillers.size(); ++i)
    if (fillers[i]) merge_into(out, c.holes[i], *fillers[i]);
  return out;
}

std::size_t hole_depth(const Context& c, std::size_t i) {
  if (i >= c.holes.size()) throw Error("hole_depth: index out of range");
  return c.holes[i].size();
}

// ----- formula interpretation ------------------------------------------------

namespace {

Formula big_conj(const std::vector<Formula>& xs) {
  if (xs.empty()) return top();
  Formula acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
  return acc;
}

Formula big_disj(const std::vector<Formula>& xs) {
  if (xs.empty()) return Formula::bottom();
  Formula acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
  return acc;
}

Formula fm_rec(const NestedSequent& s, NameSupply& names) {
  std::vector<Formula> hyps;
  for (const auto& x : s.node.sig) hyps.push_back(existence(x, names.fresh("y")));
  hyps.insert(hyps.end(), s.node.ant.begin(), s.node.ant.end());
  Formula base = Formula::implies(big_conj(hyps), big_disj(s.node.suc));
  if (s.children.empty()) return base;
  std::vector<Formula> parts{base};
  for (const auto& c : s.children) parts.push_back(Formula::box(fm_rec(c, names)));
  return big_disj(parts);
}

}  // namespace

Formula fm(const NestedSequent& s) {
  NameSupply names(all_names(s));
  return fm_rec(s, names);
}

NestedSequent nseq_substitute(const NestedSequent& s, const Var& y, const Var& x) {
  NestedSequent out;
  for (const auto& v : s.node.sig) out.node.sig.push_back(v == x ? y : v);
  for (const auto& a : s.node.ant) out.node.ant.push_back(substitute(a, y, x));
  for (const auto& a : s.node.suc) out.node.suc.push_back(substitute(a, y, x));
  for (const auto& c : s.children) out.children.push_back(nseq_substitute(c, y, x));
  return out;
}

// ----- names -----------------------------------------------------------------

namespace {

template <typename F>
void each_node(const NestedSequent& s, F&& f) {
  f(s.node);
  for (const auto& c : s.children) each_node(c, f);
}

}  // namespace

std::set<Var> all_names(const NestedSequent& s) {
  std::set<Var> out;
  each_node(s, [&](const Sequent& n) {
    out.insert(n.sig.begin(), n.sig.end());
    for (const auto& a : n.ant) collect_names(a, out);
    for (const auto& a : n.suc) collect_names(a, out);
  });
  return out;
}

std::set<Var> free_names(const Sequent& n) {
  std::set<Var> out(n.sig.begin(), n.sig.end());
  for (const auto& a : n.ant) {
    auto f = free_vars(a);
    out.insert(f.begin(), f.end());
  }
  for (const auto& a : n.suc) {
    auto f = free_vars(a);
    out.insert(f.begin(), f.end());
  }
  return out;
}

std::set<Var> free_names(const NestedSequent& s) {
  std::set<Var> out;
  each_node(s, [&](const Sequent& n) {
    auto f = free_names(n);
    out.insert(f.begin(), f.end());
  });
  return out;
}

std::set<Var> bound_names(const NestedSequent& s) {
  std::set<Var> out;
  each_node(s, [&](const Sequent& n) {
    for (const auto& a : n.ant) collect_bound(a, out);
    for (const auto& a : n.suc) collect_bound(a, out);
  });
  return out;
}

// ----- canonical forms -------------------------------------------------------

namespace {

std::vector<std::string> sorted_keys(const std::vector<Formula>& m) {
  std::vector<std::string> ks;
  ks.reserve(m.size());
  for (const auto& a : m) ks.push_back(alpha_key(a));
  std::sort(ks.begin(), ks.end());
  return ks;
}

void join_into(std::string& out, const std::vector<std::string>& xs, char sep) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
}

}  // namespace

std::string canonical_key(const Sequent& s) {
  std::vector<std::string> sig(s.sig.begin(), s.sig.end());
  std::sort(sig.begin(), sig.end());
  std::string out;
  join_into(out, sig, ' ');
  out += '|';
  join_into(out, sorted_keys(s.ant), ' ');
  out += '|';
  join_into(out, sorted_keys(s.suc), ' ');
  return out;
}

std::string canonical_key(const NestedSequent& s) {
  std::vector<std::string> cs;
  cs.reserve(s.children.size());
  for (const auto& c : s.children) cs.push_back(canonical_key(c));
  std::sort(cs.begin(), cs.end());
  std::string out = canonical_key(s.node);
  for (const auto& c : cs) {
    out += '<';
    out += c;
    out += '>';
  }
  return out;
}

NestedSequent canonicalize(const NestedSequent& s) {
  NestedSequent out;
  out.node.sig = s.node.sig;
  std::sort(out.node.sig.begin(), out.node.sig.end());
  auto canon_multiset = [](const std::vector<Formula>& m) {
    std::vector<std::pair<std::string, Formula>> ks;
    for (const auto& a : m) ks.emplace_back(alpha_key(a), alpha_canonical(a));
    std::sort(ks.begin(), ks.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Formula> r;
    for (auto& [k, a] : ks) r.push_back(std::move(a));
    return r;
  };
  out.node.ant = canon_multiset(s.node.ant);
  out.node.suc = canon_multiset(s.node.suc);
  std::vector<std::pair<std::string, NestedSequent>> cs;
  for (const auto& c : s.children) cs.emplace_back(canonical_key(c), canonicalize(c));
  std::sort(cs.begin(), cs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [k, c] : cs) out.children.push_back(std::move(c));
  return out;
}

bool equivalent(const NestedSequent& a, const NestedSequent& b) {
  return canonical_key(a) == canonical_key(b);
}

std::optional<ChildMap> match_children(const NestedSequent& a, const NestedSequent& b) {
  if (a.children.size() != b.children.size()) return std::nullopt;
  if (canonical_key(a.node) != canonical_key(b.node)) return std::nullopt;
  std::vector<std::string> bk;
  for (const auto& c : b.children) bk.push_back(canonical_key(c));
  std::vector<bool> used(b.children.size(), false);
  ChildMap m;
  for (const auto& ca : a.children) {
    std::string k = canonical_key(ca);
    bool found = false;
    for (std::size_t j = 0; j < bk.size(); ++j) {
      if (used[j] || bk[j] != k) continue;
      auto sub = match_children(ca, b.children[j]);
      if (!sub) return std::nullopt;
      used[j] = true;
      m.perm.push_back(j);
      m.sub.push_back(std::move(*sub));
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return m;
}

Path map_path(const ChildMap& m, const Path& p) {
  Path out;
  const ChildMap* cur = &m;
  for (std::size_t i : p) {
    if (i >= cur->perm.size()) throw Error("map_path: path outside the child map");
    out.push_back(cur->perm[i]);
    cur = &cur->sub[i];
  }
  return out;
}

NestedSequent apply_child_map(const NestedSequent& s, const ChildMap& m) {
  NestedSequent out;
  out.node = s.node;
  out.children.resize(s.children.size());
  for (std::size_t i = 0; i < s.children.size(); ++i)
    out.children[m.perm[i]] = apply_child_map(s.children[i], m.sub[i]);
  return out;
}

ChildMap invert(const ChildMap& m) {
  ChildMap out;
  out.perm.resize(m.perm.size());
  out.sub.resize(m.sub.size());
  for (std::size_t i = 0; i < m.perm.size(); ++i) {
    out.perm[m.perm[i]] = i;
    out.sub[m.perm[i]] = invert(m.sub[i]);
  }
  return out;
}

ChildMap identity_map(const NestedSequent& s) {
  ChildMap m;
  m.perm.resize(s.children.size());
  std::iota(m.perm.begin(), m.perm.end(), 0);
  for (const auto& c : s.children) m.sub.push_back(identity_map(c));
  return m;
}

// ----- multisets -------------------------------------------------------------

std::size_t count_alpha(const std::vector<Formula>& m, const Formula& a) {
  std::size_t n = 0;
  for (const auto& b : m)
    if (alpha_equal(a, b)) ++n;
  return n;
}

bool contains_alpha(const std::vector<Formula>& m, const Formula& a) {
  return std::any_of(m.begin(), m.end(), [&](const Formula& b) { return alpha_equal(a, b); });
}

bool erase_one(std::vector<Formula>& m, const Formula& a) {
  for (auto it = m.begin(); it != m.end(); ++it)
    if (alpha_equal(*it, a)) {
      m.erase(it);
      return true;
    }
  return false;
}

bool erase_one(std::vector<Var>& m, const Var& x) {
  auto it = std::find(m.begin(), m.end(), x);
  if (it == m.end()) return false;
  m.erase(it);
  return true;
}

std::size_t count_var(const std::vector<Var>& m, const Var& x) {
  return static_cast<std::size_t>(std::count(m.begin(), m.end(), x));
}

bool contains_var(const std::vector<Var>& m, const Var& x) {
  return std::find(m.begin(), m.end(), x) != m.end();
}

bool sub_multiset(const std::vector<Formula>& small, const std::vector<Formula>& big) {
  std::vector<Formula> rest = big;
  for (const auto& a : small)
    if (!erase_one(rest, a)) return false;
  return true;
}

bool sub_multiset(const std::vector<Var>& small, const std::vector<Var>& big) {
  std::vector<Var> rest = big;
  for (const auto& x : small)
    if (!erase_one(rest, x)) return false;
  return true;
}

// ----- printing --------------------------------------------------------------

namespace {

std::string join_formulas(const std::vector<Formula>& m, const PrintOptions& opt) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ", ";
    out += to_string(m[i], opt);
  }
  return out;
}

void print_rec(const NestedSequent& s, const PrintOptions& opt, std::string& out) {
  const auto& n = s.node;
  for (std::size_t i = 0; i < n.sig.size(); ++i) {
    if (i) out += ", ";
    out += n.sig[i];
  }
  if (!n.sig.empty()) out += ' ';
  out += ';';
  if (!n.ant.empty()) {
    out += ' ';
    out += join_formulas(n.ant, opt);
  }
  out += opt.unicode ? " ⇒" : " =>";
  bool first = true;
  for (const auto& a : n.suc) {
    out += first ? " " : ", ";
    first = false;
    out += to_string(a, opt);
  }
  for (const auto& c : s.children) {
    out += first ? " [" : ", [";
    first = false;
    print_rec(c, opt, out);
    out += ']';
  }
}

}  // namespace

std::string to_string(const Sequent& s, const PrintOptions& opt) {
  return to_string(NestedSequent{s, {}}, opt);
}

std::string to_string(const NestedSequent& s, const PrintOptions& opt) {
  std::string out;
  print_rec(s, opt, out);
  return out;
}

}  // namespace nq
