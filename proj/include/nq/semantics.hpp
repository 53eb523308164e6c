#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nq/calculus.hpp"

namespace nq {

using World = std::size_t;
using Object = std::size_t;

// Worlds are 0..worlds-1, objects 0..objects-1. D_W, the union of the
// world domains, is exactly the object set.
struct Frame {
  std::size_t worlds = 1;
  std::size_t objects = 1;
  std::vector<std::uint32_t> access;  // bit v of access[w]: w R v
  std::vector<std::uint32_t> domain;  // bit o of domain[w]: o in D_w

  bool related(World w, World v) const { return (access[w] >> v) & 1u; }
  bool exists_at(World w, Object o) const { return (domain[w] >> o) & 1u; }
};

// Throws Error unless sizes agree, worlds, objects <= 32, and the domains
// cover exactly the object set.
void validate(const Frame& f);

enum class FrameProperty { Serial, Reflexive, Symmetric, Transitive, Euclidean, Increasing, Decreasing, Constant };

std::string property_name(FrameProperty p);
// Throws Error on an unknown name.
FrameProperty property_from_name(std::string_view name);
FrameProperty property_of(Axiom a);

bool frame_has(const Frame& f, FrameProperty p);
bool frame_has(const Frame& f, std::string_view property);
// Every property induced by the axioms. K imposes none.
bool in_frame_class(const Frame& f, AxiomSet axioms);

// Frames with exactly `worlds` worlds and `objects` objects, one per
// isomorphism class under renaming of worlds and of objects. Cached.
const std::vector<Frame>& canonical_frames(std::size_t worlds, std::size_t objects);

using Assignment = std::map<Var, Object>;

class Model {
 public:
  Model() = default;
  explicit Model(Frame f);

  const Frame& frame() const { return frame_; }

  // Truth of symbol(args) at w; args range over D_W.
  bool holds(World w, const std::string& symbol, const std::vector<Object>& args) const;
  void set(World w, const std::string& symbol, const std::vector<Object>& args, bool value = true);

  struct Fact {
    World world;
    std::string symbol;
    std::vector<Object> args;
  };
  // All true atoms, ordered by symbol, arity, world, then tuple.
  std::vector<Fact> facts() const;

 private:
  using Key = std::pair<std::string, std::size_t>;  // symbol, arity
  std::size_t index(const std::vector<Object>& args) const;

  Frame frame_;
  std::map<Key, std::vector<std::vector<bool>>> valuation_;  // [world][tuple index]
};

// The satisfaction relation: the quantifier ranges over D_w, box over
// R-successors, and variables are rigid. Throws Error if s misses a free
// variable of a or maps one outside D_W.
bool satisfies(const Model& m, World w, const Assignment& s, const Formula& a);

struct Bounds {
  std::size_t worlds = 3;
  std::size_t objects = 3;
};

struct Countermodel {
  Model model;
  World world = 0;
  Assignment assignment;
};

// A model of the frame, a world, and an assignment of the free variables
// of a at which a is false; nullopt if none exists on this frame.
std::optional<Countermodel> falsify_on_frame(const Frame& f, const Formula& a);

// Searches every canonical frame within bounds in the class of `axioms`.
// Within a frame the valuation search is complete, so nullopt means no
// falsifying model exists within the bounds. Throws Error if a bound is 0.
std::optional<Countermodel> countermodel(const Formula& a, AxiomSet axioms, const Bounds& b = {});
std::optional<Countermodel> countermodel(const NestedSequent& s, AxiomSet axioms, const Bounds& b = {});

// Worlds w0.., objects o0.., edges, domains, true atoms, the evaluation
// world and the assignment.
std::string describe(const Countermodel& c);
std::string describe_json(const Countermodel& c);

}  // namespace nq
