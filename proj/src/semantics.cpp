#include "nq/semantics.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace nq {

namespace {

constexpr std::size_t kMaxWorlds = 32;

std::uint32_t full_mask(std::size_t n) { return n >= 32 ? ~0u : ((1u << n) - 1u); }

}  // namespace

void validate(const Frame& f) {
  if (f.worlds == 0 || f.worlds > kMaxWorlds) throw Error("frame: world count must be in 1..32");
  if (f.objects == 0 || f.objects > kMaxWorlds) throw Error("frame: object count must be in 1..32");
  if (f.access.size() != f.worlds || f.domain.size() != f.worlds) throw Error("frame: per-world tables have the wrong size");
  std::uint32_t all = 0;
  for (World w = 0; w < f.worlds; ++w) {
    if (f.access[w] & ~full_mask(f.worlds)) throw Error("frame: edge to an unknown world");
    if (f.domain[w] & ~full_mask(f.objects)) throw Error("frame: domain holds an unknown object");
    all |= f.domain[w];
  }
  if (all != full_mask(f.objects)) throw Error("frame: domains must cover the object set");
}

// ----- frame properties ----------------------------------------------------

std::string property_name(FrameProperty p) {
  switch (p) {
    case FrameProperty::Serial: return "serial";
    case FrameProperty::Reflexive: return "reflexive";
    case FrameProperty::Symmetric: return "symmetric";
    case FrameProperty::Transitive: return "transitive";
    case FrameProperty::Euclidean: return "euclidean";
    case FrameProperty::Increasing: return "increasing";
    case FrameProperty::Decreasing: return "decreasing";
    case FrameProperty::Constant: return "constant";
  }
  return "?";
}

FrameProperty property_from_name(std::string_view name) {
  for (int i = 0; i < 8; ++i) {
    auto p = static_cast<FrameProperty>(i);
    if (property_name(p) == name) return p;
  }
  throw Error("unknown frame property: " + std::string(name));
}

FrameProperty property_of(Axiom a) {
  switch (a) {
    case Axiom::D: return FrameProperty::Serial;
    case Axiom::T: return FrameProperty::Reflexive;
    case Axiom::B: return FrameProperty::Symmetric;
    case Axiom::Four: return FrameProperty::Transitive;
    case Axiom::Five: return FrameProperty::Euclidean;
    case Axiom::CBF: return FrameProperty::Increasing;
    case Axiom::BF: return FrameProperty::Decreasing;
    case Axiom::UI: return FrameProperty::Constant;
  }
  throw Error("unknown axiom");
}

bool frame_has(const Frame& f, FrameProperty p) {
  const std::size_t n = f.worlds;
  auto edges = [&](auto&& pred) {
    for (World w = 0; w < n; ++w)
      for (World v = 0; v < n; ++v)
        if (f.related(w, v) && !pred(w, v)) return false;
    return true;
  };
  auto subset = [](std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; };
  switch (p) {
    case FrameProperty::Serial:
      return std::all_of(f.access.begin(), f.access.end(), [](std::uint32_t a) { return a != 0; });
    case FrameProperty::Reflexive:
      for (World w = 0; w < n; ++w)
        if (!f.related(w, w)) return false;
      return true;
    case FrameProperty::Symmetric: return edges([&](World w, World v) { return f.related(v, w); });
    case FrameProperty::Transitive: return edges([&](World w, World v) { return subset(f.access[v], f.access[w]); });
    case FrameProperty::Euclidean: return edges([&](World w, World v) { return subset(f.access[w], f.access[v]); });
    case FrameProperty::Increasing: return edges([&](World w, World v) { return subset(f.domain[w], f.domain[v]); });
    case FrameProperty::Decreasing: return edges([&](World w, World v) { return subset(f.domain[v], f.domain[w]); });
    case FrameProperty::Constant:
      return std::all_of(f.domain.begin(), f.domain.end(), [&](std::uint32_t d) { return d == f.domain[0]; });
  }
  return false;
}

bool frame_has(const Frame& f, std::string_view property) { return frame_has(f, property_from_name(property)); }

bool in_frame_class(const Frame& f, AxiomSet axioms) {
  for (std::size_t i = 0; i < kAxiomCount; ++i) {
    auto a = static_cast<Axiom>(i);
    if (has(axioms, a) && !frame_has(f, property_of(a))) return false;
  }
  return true;
}

// ----- canonical frames ----------------------------------------------------

namespace {

std::uint64_t frame_code(const Frame& f, const std::vector<std::size_t>& pw, const std::vector<std::size_t>& po) {
  const std::size_t n = f.worlds, k = f.objects;
  std::vector<std::uint32_t> acc(n, 0), dom(n, 0);
  for (World w = 0; w < n; ++w) {
    for (World v = 0; v < n; ++v)
      if (f.related(w, v)) acc[pw[w]] |= 1u << pw[v];
    for (Object o = 0; o < k; ++o)
      if (f.exists_at(w, o)) dom[pw[w]] |= 1u << po[o];
  }
  std::uint64_t code = 0;
  for (World w = 0; w < n; ++w) code = (code << n) | acc[w];
  for (World w = 0; w < n; ++w) code = (code << k) | dom[w];
  return code;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Frame> enumerate_frames(std::size_t n, std::size_t k) {
  auto pws = permutations(n);
  auto pos = permutations(k);
  std::vector<Frame> out;
  Frame f;
  f.worlds = n;
  f.objects = k;
  f.access.assign(n, 0);
  f.domain.assign(n, 0);
  const std::uint64_t rel_count = std::uint64_t{1} << (n * n);
  const std::uint64_t dom_count = std::uint64_t{1} << (n * k);
  for (std::uint64_t r = 0; r < rel_count; ++r) {
    for (World w = 0; w < n; ++w) f.access[w] = static_cast<std::uint32_t>((r >> (w * n)) & full_mask(n));
    for (std::uint64_t d = 0; d < dom_count; ++d) {
      std::uint32_t all = 0;
      for (World w = 0; w < n; ++w) {
        f.domain[w] = static_cast<std::uint32_t>((d >> (w * k)) & full_mask(k));
        all |= f.domain[w];
      }
      if (all != full_mask(k)) continue;
      const std::uint64_t mine = frame_code(f, pws[0], pos[0]);
      bool least = true;
      for (const auto& pw : pws) {
        for (const auto& po : pos)
          if (frame_code(f, pw, po) < mine) {
            least = false;
            break;
          }
        if (!least) break;
      }
      if (least) out.push_back(f);
    }
  }
  return out;
}

}  // namespace

const std::vector<Frame>& canonical_frames(std::size_t worlds, std::size_t objects) {
  if (worlds == 0 || objects == 0 || worlds > 4 || objects > 4 || worlds * (worlds + objects) > 24)
    throw Error("canonical_frames: bounds out of range");
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<Frame>> cache;
  auto key = std::make_pair(worlds, objects);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enumerate_frames(worlds, objects)).first;
  return it->second;
}

// ----- models ----------------------------------------------------------------

Model::Model(Frame f) : frame_(std::move(f)) { validate(frame_); }

std::size_t Model::index(const std::vector<Object>& args) const {
  std::size_t i = 0;
  for (auto o : args) {
    if (o >= frame_.objects) throw Error("model: object out of range");
    i = i * frame_.objects + o;
  }
  return i;
}

bool Model::holds(World w, const std::string& symbol, const std::vector<Object>& args) const {
  auto it = valuation_.find({symbol, args.size()});
  if (it == valuation_.end()) return false;
  return it->second.at(w)[index(args)];
}

void Model::set(World w, const std::string& symbol, const std::vector<Object>& args, bool value) {
  if (w >= frame_.worlds) throw Error("model: world out of range");
  auto& ext = valuation_[{symbol, args.size()}];
  if (ext.empty()) {
    std::size_t tuples = 1;
    for (std::size_t i = 0; i < args.size(); ++i) tuples *= frame_.objects;
    ext.assign(frame_.worlds, std::vector<bool>(tuples, false));
  }
  ext[w][index(args)] = value;
}

std::vector<Model::Fact> Model::facts() const {
  std::vector<Fact> out;
  for (const auto& [key, ext] : valuation_)
    for (World w = 0; w < ext.size(); ++w)
      for (std::size_t t = 0; t < ext[w].size(); ++t) {
        if (!ext[w][t]) continue;
        std::vector<Object> args(key.second);
        std::size_t rest = t;
        for (std::size_t i = key.second; i-- > 0;) {
          args[i] = rest % frame_.objects;
          rest /= frame_.objects;
        }
        out.push_back({w, key.first, std::move(args)});
      }
  return out;
}

namespace {

using Env = std::vector<std::pair<Var, Object>>;

Object lookup(const Env& env, const Var& x) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == x) return it->second;
  throw Error("satisfies: assignment misses variable " + x);
}

bool sat(const Model& m, World w, Env& env, const Formula& a) {
  const Frame& f = m.frame();
  switch (a.kind()) {
    case FormulaKind::Bottom: return false;
    case FormulaKind::Pred: {
      std::vector<Object> args;
      for (const auto& x : a.args()) args.push_back(lookup(env, x));
      return m.holds(w, a.symbol(), args);
    }
    case FormulaKind::Eq: return lookup(env, a.args()[0]) == lookup(env, a.args()[1]);
    case FormulaKind::Implies: return !sat(m, w, env, a.lhs()) || sat(m, w, env, a.rhs());
    case FormulaKind::Forall:
      for (Object o = 0; o < f.objects; ++o) {
        if (!f.exists_at(w, o)) continue;
        env.push_back({a.bound(), o});
        bool ok = sat(m, w, env, a.body());
        env.pop_back();
        if (!ok) return false;
      }
      return true;
    case FormulaKind::Box:
      for (World v = 0; v < f.worlds; ++v)
        if (f.related(w, v) && !sat(m, v, env, a.body())) return false;
      return true;
  }
  return false;
}

}  // namespace

bool satisfies(const Model& m, World w, const Assignment& s, const Formula& a) {
  if (w >= m.frame().worlds) throw Error("satisfies: world out of range");
  for (const auto& x : free_vars(a)) {
    auto it = s.find(x);
    if (it == s.end()) throw Error("satisfies: assignment misses variable " + x);
    if (it->second >= m.frame().objects) throw Error("satisfies: " + x + " is assigned outside D_W");
  }
  Env env(s.begin(), s.end());
  return sat(m, w, env, a);
}

// ----- valuation search ------------------------------------------------------

namespace {

// Formula compiled to slots: free variables first, then one slot per binder.
struct Compiled {
  struct Node {
    FormulaKind kind;
    int pred = -1;
    std::vector<int> slots;  // Pred arguments, Eq operands, Forall binder
    int lhs = -1, rhs = -1;  // children; Forall/Box use lhs
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::string, std::size_t>> preds;
  std::vector<Var> free;
  int slot_count = 0;
  int root = -1;

  explicit Compiled(const Formula& a) {
    std::vector<std::pair<Var, int>> scope;
    for (const auto& x : free_vars(a)) {
      free.push_back(x);
      scope.push_back({x, slot_count++});
    }
    root = build(a, scope);
  }

  int slot_of(const std::vector<std::pair<Var, int>>& scope, const Var& x) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == x) return it->second;
    throw Error("countermodel: unbound variable " + x);
  }

  int build(const Formula& a, std::vector<std::pair<Var, int>>& scope) {
    Node n{a.kind(), -1, {}, -1, -1};
    switch (a.kind()) {
      case FormulaKind::Bottom: break;
      case FormulaKind::Pred: {
        std::pair<std::string, std::size_t> key{a.symbol(), a.arity()};
        auto it = std::find(preds.begin(), preds.end(), key);
        n.pred = static_cast<int>(it - preds.begin());
        if (it == preds.end()) preds.push_back(key);
        [[fallthrough]];
      }
      case FormulaKind::Eq:
        for (const auto& x : a.args()) n.slots.push_back(slot_of(scope, x));
        break;
      case FormulaKind::Implies:
        n.lhs = build(a.lhs(), scope);
        n.rhs = build(a.rhs(), scope);
        break;
      case FormulaKind::Forall:
        n.slots.push_back(slot_count++);
        scope.push_back({a.bound(), n.slots[0]});
        n.lhs = build(a.body(), scope);
        scope.pop_back();
        break;
      case FormulaKind::Box: n.lhs = build(a.body(), scope); break;
    }
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
};

enum Truth : std::int8_t { F = 0, T = 1, U = 2 };

// Three-valued evaluation over a partial valuation; branching on the first
// undecided atom met gives a complete search over total valuations.
class Searcher {
 public:
  Searcher(const Compiled& c, const Frame& f) : c_(c), f_(f) {
    tuples_.resize(c.preds.size());
    offset_.resize(c.preds.size());
    std::size_t total = 0;
    for (std::size_t p = 0; p < c.preds.size(); ++p) {
      std::size_t t = 1;
      for (std::size_t i = 0; i < c.preds[p].second; ++i) t *= f.objects;
      tuples_[p] = t;
      offset_[p] = total;
      total += t * f.worlds;
    }
    val_.assign(total, U);
    env_.assign(static_cast<std::size_t>(c.slot_count), 0);
  }

  // Free slots take `free`; true iff some valuation falsifies at w. On
  // success the valuation is left in place for model().
  bool falsify(World w, const std::vector<Object>& free) {
    std::fill(val_.begin(), val_.end(), U);
    std::vector<Object> env(static_cast<std::size_t>(c_.slot_count), 0);
    std::copy(free.begin(), free.end(), env.begin());
    return expand({Ob{c_.root, w, false, std::move(env)}}, {});
  }

  Model model() const {
    Model m(f_);
    for (std::size_t p = 0; p < c_.preds.size(); ++p) {
      const auto& [sym, arity] = c_.preds[p];
      for (World w = 0; w < f_.worlds; ++w)
        for (std::size_t t = 0; t < tuples_[p]; ++t) {
          std::vector<Object> args(arity);
          std::size_t rest = t;
          for (std::size_t i = arity; i-- > 0;) {
            args[i] = rest % f_.objects;
            rest /= f_.objects;
          }
          // undecided atoms cannot change a decided value
          if (val_[cell(p, w, t)] == T) m.set(w, sym, args);
        }
    }
    return m;
  }

 private:
  std::size_t cell(int p, World w, std::size_t t) const { return offset_[p] + w * tuples_[p] + t; }

  struct Atom {
    int pred = -1;
    World world = 0;
    std::size_t tuple = 0;
  };

  // Signed obligation: node `node` at world w must take truth value `sign`.
  struct Ob {
    int node;
    World w;
    bool sign;
    std::vector<Object> env;
  };

  Ob at(const Ob& o, int node, World w, bool sign) const { return Ob{node, w, sign, o.env}; }
  Ob bind(const Ob& o, int node, int slot, Object v, bool sign) const {
    Ob b{node, o.w, sign, o.env};
    b.env[slot] = v;
    return b;
  }

  std::vector<Object> domain_of(World w) const {
    std::vector<Object> out;
    for (Object o = 0; o < f_.objects; ++o)
      if (f_.exists_at(w, o)) out.push_back(o);
    return out;
  }
  std::vector<World> successors(World w) const {
    std::vector<World> out;
    for (World v = 0; v < f_.worlds; ++v)
      if (f_.related(w, v)) out.push_back(v);
    return out;
  }

  // Ground tableau: non-branching obligations first, literals recorded in
  // the valuation, a clash closes the branch. True iff a branch stays open;
  // its literals then falsify the root under every completion.
  bool expand(std::vector<Ob> alpha, std::vector<Ob> beta) {
    std::vector<std::size_t> trail;
    auto close = [&] {
      for (auto c : trail) val_[c] = U;
      return false;
    };
    while (!alpha.empty()) {
      Ob o = std::move(alpha.back());
      alpha.pop_back();
      const Compiled::Node& n = c_.nodes[o.node];
      switch (n.kind) {
        case FormulaKind::Bottom:
          if (o.sign) return close();
          break;
        case FormulaKind::Eq:
          if ((o.env[n.slots[0]] == o.env[n.slots[1]]) != o.sign) return close();
          break;
        case FormulaKind::Pred: {
          std::size_t t = 0;
          for (int sl : n.slots) t = t * f_.objects + o.env[sl];
          std::size_t c = cell(n.pred, o.w, t);
          std::int8_t want = o.sign ? T : F;
          if (val_[c] == U) {
            val_[c] = want;
            trail.push_back(c);
          } else if (val_[c] != want) {
            return close();
          }
          break;
        }
        case FormulaKind::Implies:
          if (o.sign) {
            beta.push_back(std::move(o));
          } else {
            alpha.push_back(at(o, n.lhs, o.w, true));
            alpha.push_back(at(o, n.rhs, o.w, false));
          }
          break;
        case FormulaKind::Forall: {
          auto objs = domain_of(o.w);
          if (o.sign) {
            for (Object v : objs) alpha.push_back(bind(o, n.lhs, n.slots[0], v, true));
          } else if (objs.empty()) {
            return close();
          } else if (objs.size() == 1) {
            alpha.push_back(bind(o, n.lhs, n.slots[0], objs[0], false));
          } else {
            beta.push_back(std::move(o));
          }
          break;
        }
        case FormulaKind::Box: {
          auto succ = successors(o.w);
          if (o.sign) {
            for (World v : succ) alpha.push_back(at(o, n.lhs, v, true));
          } else if (succ.empty()) {
            return close();
          } else if (succ.size() == 1) {
            alpha.push_back(at(o, n.lhs, succ[0], false));
          } else {
            beta.push_back(std::move(o));
          }
          break;
        }
      }
    }
    // drop branching obligations the literals already decide
    while (!beta.empty()) {
      const Ob& b = beta.back();
      env_ = b.env;
      Truth t = eval(b.node, b.w);
      if (t == U) break;
      if ((t == T) != b.sign) return close();
      beta.pop_back();
    }
    if (beta.empty()) return true;
    Ob b = std::move(beta.back());
    beta.pop_back();
    const Compiled::Node& n = c_.nodes[b.node];
    std::vector<Ob> alts;
    if (n.kind == FormulaKind::Implies) {
      alts.push_back(at(b, n.lhs, b.w, false));
      alts.push_back(at(b, n.rhs, b.w, true));
    } else if (n.kind == FormulaKind::Forall) {
      for (Object v : domain_of(b.w)) alts.push_back(bind(b, n.lhs, n.slots[0], v, false));
    } else {
      for (World v : successors(b.w)) alts.push_back(at(b, n.lhs, v, false));
    }
    for (auto& a : alts)
      if (expand({std::move(a)}, beta)) return true;
    return close();
  }

  Truth eval(int i, World w) {
    const Compiled::Node& n = c_.nodes[i];
    switch (n.kind) {
      case FormulaKind::Bottom: return F;
      case FormulaKind::Eq: return env_[n.slots[0]] == env_[n.slots[1]] ? T : F;
      case FormulaKind::Pred: {
        std::size_t t = 0;
        for (int s : n.slots) t = t * f_.objects + env_[s];
        Truth v = static_cast<Truth>(val_[cell(n.pred, w, t)]);
        if (v == U && open_.pred < 0) open_ = Atom{n.pred, w, t};
        return v;
      }
      case FormulaKind::Implies: {
        Truth a = eval(n.lhs, w);
        if (a == F) return T;
        Truth b = eval(n.rhs, w);
        if (b == T) return T;
        return a == T && b == F ? F : U;
      }
      case FormulaKind::Forall: {
        Truth r = T;
        const int s = n.slots[0];
        for (Object o = 0; o < f_.objects; ++o) {
          if (!f_.exists_at(w, o)) continue;
          env_[s] = o;
          Truth b = eval(n.lhs, w);
          if (b == F) return F;
          if (b == U) r = U;
        }
        return r;
      }
      case FormulaKind::Box: {
        Truth r = T;
        for (World v = 0; v < f_.worlds; ++v) {
          if (!f_.related(w, v)) continue;
          Truth b = eval(n.lhs, v);
          if (b == F) return F;
          if (b == U) r = U;
        }
        return r;
      }
    }
    return U;
  }

  const Compiled& c_;
  const Frame& f_;
  std::vector<std::size_t> tuples_;
  std::vector<Object> env_;
  std::vector<std::size_t> offset_;
  std::vector<std::int8_t> val_;  // by cell()
  Atom open_;
};

// Skips (world, assignment) pairs for which `fresh` returns false.
template <typename Fresh>
std::optional<Countermodel> falsify_compiled(const Compiled& c, const Frame& f, Fresh&& fresh) {
  Searcher s(c, f);
  const std::size_t nfree = c.free.size();
  std::vector<Object> free(nfree, 0);
  for (World w = 0; w < f.worlds; ++w) {
    std::fill(free.begin(), free.end(), 0);
    while (true) {
      if (fresh(w, free) && s.falsify(w, free)) {
        Countermodel out{s.model(), w, {}};
        for (std::size_t i = 0; i < nfree; ++i) out.assignment[c.free[i]] = free[i];
        return out;
      }
      std::size_t i = 0;
      while (i < nfree && ++free[i] == f.objects) free[i++] = 0;
      if (i == nfree) break;
    }
  }
  return std::nullopt;
}

// Truth at w depends only on the worlds reachable from w and their domains.
// The key identifies that rooted structure up to renaming of worlds (w first)
// and objects.
std::uint64_t rooted_key(const Frame& f, World w) {
  std::uint32_t reach = 1u << w, frontier = reach;
  while (frontier) {
    std::uint32_t next = 0;
    for (World v = 0; v < f.worlds; ++v)
      if ((frontier >> v) & 1u) next |= f.access[v];
    frontier = next & ~reach;
    reach |= next;
  }
  std::vector<World> others;
  for (World v = 0; v < f.worlds; ++v)
    if (v != w && ((reach >> v) & 1u)) others.push_back(v);
  const std::size_t m = others.size() + 1, k = f.objects;
  std::vector<std::size_t> po(k);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::vector<World> order{w};
    order.insert(order.end(), others.begin(), others.end());
    std::uint64_t rel = (m << 8) | k;
    for (World a : order)
      for (World b : order) rel = (rel << 1) | (f.related(a, b) ? 1u : 0u);
    std::iota(po.begin(), po.end(), 0);
    do {
      std::uint64_t code = rel;
      for (World a : order) {
        std::uint32_t d = 0;
        for (Object o = 0; o < k; ++o)
          if (f.exists_at(a, o)) d |= 1u << po[o];
        code = (code << k) | d;
      }
      best = std::min(best, code);
    } while (std::next_permutation(po.begin(), po.end()));
  } while (std::next_permutation(others.begin(), others.end()));
  return best;
}

// Object renamings fixing every domain of a world reachable from w; truth at
// w is invariant under them.
std::vector<std::vector<Object>> automorphisms(const Frame& f, World w) {
  std::uint32_t reach = 1u << w, frontier = reach;
  while (frontier) {
    std::uint32_t next = 0;
    for (World v = 0; v < f.worlds; ++v)
      if ((frontier >> v) & 1u) next |= f.access[v];
    frontier = next & ~reach;
    reach |= next;
  }
  std::vector<std::vector<Object>> out;
  std::vector<Object> p(f.objects);
  std::iota(p.begin(), p.end(), 0);
  while (std::next_permutation(p.begin(), p.end())) {
    bool keeps = true;
    for (World v = 0; v < f.worlds && keeps; ++v)
      if ((reach >> v) & 1u)
        for (Object o = 0; o < f.objects && keeps; ++o) keeps = f.exists_at(v, o) == f.exists_at(v, p[o]);
    if (keeps) out.push_back(p);
  }
  return out;
}

// Least assignment in its orbit.
bool orbit_minimal(const std::vector<std::vector<Object>>& auts, const std::vector<Object>& free) {
  for (const auto& p : auts)
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (p[free[i]] < free[i]) return false;
      if (p[free[i]] > free[i]) break;
    }
  return true;
}

}  // namespace

std::optional<Countermodel> falsify_on_frame(const Frame& f, const Formula& a) {
  validate(f);
  return falsify_compiled(Compiled(a), f, [](World, const std::vector<Object>&) { return true; });
}

std::optional<Countermodel> countermodel(const Formula& a, AxiomSet axioms, const Bounds& b) {
  if (b.worlds == 0 || b.objects == 0) throw Error("countermodel: bounds must be at least 1");
  Compiled c(a);
  std::set<std::uint64_t> seen;  // rooted structures already searched
  for (std::size_t n = 1; n <= b.worlds; ++n)
    for (std::size_t k = 1; k <= b.objects; ++k)
      for (const Frame& f : canonical_frames(n, k)) {
        if (!in_frame_class(f, axioms)) continue;
        std::vector<bool> fresh(n);
        std::vector<std::vector<std::vector<Object>>> auts(n);
        bool any = false;
        for (World w = 0; w < n; ++w)
          if (seen.insert(rooted_key(f, w)).second) {
            any = fresh[w] = true;
            if (!c.free.empty()) auts[w] = automorphisms(f, w);
          }
        if (!any) continue;
        auto wanted = [&](World w, const std::vector<Object>& free) { return fresh[w] && orbit_minimal(auts[w], free); };
        if (auto r = falsify_compiled(c, f, wanted)) return r;
      }
  return std::nullopt;
}

std::optional<Countermodel> countermodel(const NestedSequent& s, AxiomSet axioms, const Bounds& b) {
  return countermodel(fm(s), axioms, b);
}

// ----- description -------------------------------------------------------------

namespace {

std::string wname(World w) { return "w" + std::to_string(w); }
std::string oname(Object o) { return "o" + std::to_string(o); }

}  // namespace

std::string describe(const Countermodel& c) {
  const Frame& f = c.model.frame();
  std::ostringstream out;
  out << "worlds:";
  for (World w = 0; w < f.worlds; ++w) out << ' ' << wname(w);
  out << "\nedges:";
  for (World w = 0; w < f.worlds; ++w)
    for (World v = 0; v < f.worlds; ++v)
      if (f.related(w, v)) out << " (" << wname(w) << ',' << wname(v) << ')';
  out << "\ndomains:";
  for (World w = 0; w < f.worlds; ++w) {
    out << ' ' << wname(w) << "={";
    bool first = true;
    for (Object o = 0; o < f.objects; ++o)
      if (f.exists_at(w, o)) {
        out << (first ? "" : ",") << oname(o);
        first = false;
      }
    out << '}';
  }
  out << "\nvaluation:";
  for (const auto& fact : c.model.facts()) {
    out << " (" << wname(fact.world) << ',' << fact.symbol << ",(";
    for (std::size_t i = 0; i < fact.args.size(); ++i) out << (i ? "," : "") << oname(fact.args[i]);
    out << "))";
  }
  out << "\nat: " << wname(c.world) << "\nassignment:";
  for (const auto& [x, o] : c.assignment) out << ' ' << x << '=' << oname(o);
  out << '\n';
  return out.str();
}

std::string describe_json(const Countermodel& c) {
  using nlohmann::ordered_json;
  const Frame& f = c.model.frame();
  ordered_json j;
  j["worlds"] = ordered_json::array();
  j["edges"] = ordered_json::array();
  j["domains"] = ordered_json::object();
  for (World w = 0; w < f.worlds; ++w) {
    j["worlds"].push_back(wname(w));
    ordered_json d = ordered_json::array();
    for (Object o = 0; o < f.objects; ++o)
      if (f.exists_at(w, o)) d.push_back(oname(o));
    j["domains"][wname(w)] = d;
    for (World v = 0; v < f.worlds; ++v)
      if (f.related(w, v)) j["edges"].push_back({wname(w), wname(v)});
  }
  j["valuation"] = ordered_json::array();
  for (const auto& fact : c.model.facts()) {
    ordered_json args = ordered_json::array();
    for (auto o : fact.args) args.push_back(oname(o));
    j["valuation"].push_back({wname(fact.world), fact.symbol, args});
  }
  j["at"] = wname(c.world);
  j["assignment"] = ordered_json::object();
  for (const auto& [x, o] : c.assignment) j["assignment"][x] = oname(o);
  return j.dump(2) + "\n";
}

}  // namespace nq
