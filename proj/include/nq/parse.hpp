#pragma once

#include <string>
#include <string_view>

#include "nq/sequent.hpp"
#include "nq/syntax.hpp"

namespace nq {

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Formula grammar, loosest first:
//   A -> B        right associative
//   A | B, A & B  left associative, & binds tighter
//   ~A, box A, dia A, forall x. A, exists x. A
//   false, P, P(x,y), x = y, x != y, E x, (A)
// Quantifier scope extends as far right as possible. Unicode operators
// produced by the printer are accepted as well.
SugarFormula parse_sugar_formula(std::string_view text);
Formula parse_formula(std::string_view text);

// SIG ; ANT => SUC, children written [ ... ] among the consequent items.
// The signature and its ';' may be omitted when empty.
NestedSequent parse_nested_sequent(std::string_view text);

}  // namespace nq
