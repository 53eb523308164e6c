#pragma once

// Height-preservation and inversion properties over the derivation corpus,
// shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "nq/transform.hpp"

namespace nqtest {

using nq::Derivation;
using nq::LogicSpec;
using nq::Path;

// Receives every output derivation that passed check, with its logic.
using Sink = std::function<void(const Derivation&, nq::AxiomSet)>;

inline Path random_path(std::mt19937& rng, const NestedSequent& s) {
  auto ps = nq::all_paths(s);
  return ps[std::uniform_int_distribution<std::size_t>(0, ps.size() - 1)(rng)];
}

// Counts failures of one property and keeps the first few reports.
struct Tally {
  std::string name;
  std::size_t runs = 0, fails = 0;
  std::vector<std::string> samples;

  void run(const CorpusEntry& e, const std::function<std::optional<std::string>()>& body) {
    ++runs;
    std::optional<std::string> why;
    try {
      why = body();
    } catch (const std::exception& ex) {
      why = std::string("threw: ") + ex.what();
    }
    if (why && ++fails <= 3)
      samples.push_back(name + " on " + e.origin + " [" + nq::axiom_set_name(e.axioms) + "]: " + *why + "\n" +
                        nq::to_text(e.d));
  }
};

// Output must check, keep height, and conclude `want` (up to alpha and order).
inline std::optional<std::string> verdict(const nq::TransformReport& rep, const NestedSequent& want, const LogicSpec& l,
                                          const Sink* sink = nullptr) {
  using namespace nq;
  if (auto res = check(rep.output, l); !res) return "output fails check: " + res.message();
  if (sink && *sink) (*sink)(rep.output, l.axioms);
  if (rep.output_height > rep.input_height)
    return "height " + std::to_string(rep.output_height) + " > " + std::to_string(rep.input_height);
  if (!equivalent(rep.output.conclusion(), want))
    return "concludes " + to_string(rep.output.conclusion()) + ", expected " + to_string(want);
  return std::nullopt;
}

// Weakening (IW, SW, EW), R-bottom, CL, CR, SC, Nec and Merge.
inline std::vector<Tally> structural_suite(const std::vector<CorpusEntry>& corpus, const Sink& sink = {}) {
  using namespace nq;
  std::mt19937 rng(11);
  Tally w{"weakening"}, bot{"R-bottom"}, cl{"CL"}, cr{"CR"}, sc{"SC"}, nec{"Nec"}, merge{"Merge"};
  const Sink* out = &sink;
  for (const auto& e : corpus) {
    LogicSpec l = make_logic(e.axioms);
    const NestedSequent& s = e.d.conclusion();

    w.run(e, [&]() -> std::optional<std::string> {
      Path at = random_path(rng, s);
      StructuralTarget t;
      t.at = at;
      t.ant = {random_formula(rng, 1)};
      t.suc = {random_formula(rng, 1)};
      auto rep = admit_structural(StructuralKind::IW, e.d, t);
      NestedSequent want = s;
      NestedSequent f;
      f.node.ant = t.ant;
      f.node.suc = t.suc;
      merge_into(want, at, f);
      if (auto v = verdict(rep, want, l, out)) return v;
      t.var = pick(rng, kVars);
      rep = admit_structural(StructuralKind::SW, e.d, t);
      want = s;
      node_at(want, at).node.sig.push_back(t.var);
      if (auto v = verdict(rep, want, l, out)) return v;
      t.child = random_nested(rng, 1, 1);
      rep = admit_structural(StructuralKind::EW, e.d, t);
      want = s;
      node_at(want, at).children.push_back(t.child);
      return verdict(rep, want, l, out);
    });

    bot.run(e, [&]() -> std::optional<std::string> {
      Path at = random_path(rng, s);
      NestedSequent f;
      f.node.suc.push_back(Formula::bottom());
      Derivation up = weaken(e.d, at, f);
      StructuralTarget t;
      t.at = at;
      return verdict(admit_structural(StructuralKind::Rbot, up, t), s, l, out);
    });

    // duplicate a formula of the endsequent, then contract it away again
    auto contraction = [&](bool left) -> std::optional<std::string> {
      std::vector<std::pair<Path, Formula>> pool;
      for (const auto& p : all_paths(s))
        for (const auto& a : left ? node_at(s, p).node.ant : node_at(s, p).node.suc) pool.push_back({p, a});
      if (pool.empty()) return std::nullopt;
      auto [at, a] = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      NestedSequent f;
      (left ? f.node.ant : f.node.suc).push_back(a);
      Derivation up = weaken(e.d, at, f);
      StructuralTarget t;
      t.at = at;
      t.formula = a;
      auto rep = admit_structural(left ? StructuralKind::CL : StructuralKind::CR, up, t);
      rep.input_height = height(e.d);
      return verdict(rep, s, l, out);
    };
    cl.run(e, [&] { return contraction(true); });
    cr.run(e, [&] { return contraction(false); });

    sc.run(e, [&]() -> std::optional<std::string> {
      Path at = random_path(rng, s);
      auto names = free_names(s);
      Var x = names.empty() ? Var("x") : *std::next(names.begin(), static_cast<std::ptrdiff_t>(rng() % names.size()));
      NestedSequent f;
      f.node.sig = {x, x};
      Derivation up = weaken(e.d, at, f);
      StructuralTarget t;
      t.at = at;
      t.var = x;
      auto rep = admit_structural(StructuralKind::SC, up, t);
      rep.input_height = height(e.d);
      NestedSequent want = s;
      node_at(want, at).node.sig.push_back(x);
      return verdict(rep, want, l, out);
    });

    nec.run(e, [&] {
      NestedSequent want;
      want.children.push_back(s);
      return verdict(admit_structural(StructuralKind::Nec, e.d, {}), want, l, out);
    });

    merge.run(e, [&]() -> std::optional<std::string> {
      Path at = random_path(rng, s);
      NestedSequent f;
      f.children.push_back(random_nested(rng, 1, 1));
      f.children.push_back(random_nested(rng, 0, 1));
      Derivation up = weaken(e.d, at, f);
      std::size_t n = node_at(up.conclusion(), at).children.size();
      StructuralTarget t;
      t.at = at;
      t.i = rng() % n;
      t.j = (t.i + 1 + rng() % (n - 1)) % n;
      auto rep = admit_structural(StructuralKind::Merge, up, t);
      NestedSequent want = up.conclusion();
      NestedSequent& node = node_at(want, at);
      std::size_t lo = std::min(t.i, t.j), hi = std::max(t.i, t.j);
      NestedSequent moved = node.children[hi];
      node.children.erase(node.children.begin() + static_cast<std::ptrdiff_t>(hi));
      merge_into(node.children[lo], {}, moved);
      return verdict(rep, want, l, out);
    });
  }
  return {w, bot, cl, cr, sc, nec, merge};
}

inline Tally substitution_suite(const std::vector<CorpusEntry>& corpus, const Sink& sink = {}) {
  using namespace nq;
  std::mt19937 rng(5);
  Tally sub{"substitution"};
  for (const auto& e : corpus) {
    LogicSpec l = make_logic(e.axioms);
    sub.run(e, [&]() -> std::optional<std::string> {
      auto names = free_names(e.d.conclusion());
      std::vector<Var> pool(names.begin(), names.end());
      pool.insert(pool.end(), kVars.begin(), kVars.end());
      Var x = pick(rng, pool), y = pick(rng, pool);
      return verdict(admit_substitution(e.d, y, x), nseq_substitute(e.d.conclusion(), y, x), l, &sink);
    });
  }
  return sub;
}

// One run per (rule instance, derivation) pair: every premiss is inverted,
// then the rule is re-applied to the inverted derivations.
inline Tally inversion_suite(const std::vector<CorpusEntry>& corpus, const Sink& sink = {}) {
  using namespace nq;
  std::mt19937 rng(3);
  Tally inv{"inversion"};
  for (const auto& e : corpus) {
    LogicSpec l = make_logic(e.axioms);
    auto rules = match_backward(e.d.conclusion(), l);
    std::erase_if(rules, [](const RuleInstance& r) { return r.kind == RuleKind::Init || r.kind == RuleKind::Lbot; });
    std::shuffle(rules.begin(), rules.end(), rng);
    if (rules.size() > 6) rules.resize(6);
    for (const auto& r : rules) {
      inv.run(e, [&]() -> std::optional<std::string> {
        auto prem = premisses_of(r);
        std::vector<Derivation> outs;
        for (std::size_t i = 0; i < prem.size(); ++i) {
          auto rep = invert_rule(e.d, r, i);
          if (auto v = verdict(rep, prem[i], l, &sink))
            return rule_tag(r.kind) + " premiss " + std::to_string(i) + ": " + *v;
          outs.push_back(rep.output);
        }
        Derivation back = purify(rule_step(r, outs));
        if (auto res = check(back, l); !res) return "re-applied rule fails check: " + res.message();
        if (!equivalent(back.conclusion(), e.d.conclusion())) return std::string("re-applied rule changed the endsequent");
        return std::nullopt;
      });
    }
  }
  return inv;
}

// S_T, S_4, S_5, S_B and LStr at random admissible positions; runs counts
// the applications attempted.
inline Tally special_suite(const std::vector<CorpusEntry>& corpus, const Sink& sink = {}) {
  using namespace nq;
  std::mt19937 rng(9);
  Tally sp{"special"};
  for (const auto& e : corpus) {
    LogicSpec l = make_logic(e.axioms);
    // give every node a child so that each rule has somewhere to act
    NestedSequent f;
    f.children.push_back(random_nested(rng, 1, 1));
    Path root_at = random_path(rng, e.d.conclusion());
    Derivation d = weaken(e.d, root_at, f);
    const NestedSequent& s = d.conclusion();
    auto paths = all_paths(s);
    for (SpecialKind k : {SpecialKind::ST, SpecialKind::S4, SpecialKind::S5, SpecialKind::SB, SpecialKind::LStr}) {
      for (int attempt = 0; attempt < 4; ++attempt) {
        Path p = pick(rng, paths);
        const NestedSequent& n = node_at(s, p);
        if (n.children.empty()) continue;
        SpecialPositions pos;
        pos.parent = p;
        pos.child = rng() % n.children.size();
        if (k == SpecialKind::SB) {
          if (n.children[pos.child].children.empty()) continue;
          pos.grandchild = rng() % n.children[pos.child].children.size();
        }
        pos.target = pick(rng, paths);
        NestedSequent want;
        try {
          want = special_conclusion(k, s, pos, l);
        } catch (const Error&) {
          continue;  // side condition or logic rules out this instance
        }
        sp.run(e, [&]() -> std::optional<std::string> {
          Derivation out = special_structural(k, d, pos, l);
          if (auto res = check(out, l); !res) return special_name(k) + " output fails check: " + res.message();
          if (sink) sink(out, l.axioms);
          if (!equivalent(out.conclusion(), want)) return special_name(k) + " changed the expected conclusion";
          return std::nullopt;
        });
        break;
      }
    }
  }
  return sp;
}

}  // namespace nqtest
