#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "jreal/nat.hpp"
#include "jreal/term.hpp"

namespace jreal {

/// Step budget. One step is one primitive firing or one decode of a numeral
/// used in function position.
struct Fuel {
  std::uint64_t steps = 100000;
};

struct EvalResult {
  std::optional<Nat> value;  // empty means OutOfFuel
  std::uint64_t steps = 0;

  bool out_of_fuel() const { return !value.has_value(); }
  static EvalResult fuel_exhausted(std::uint64_t used) { return {std::nullopt, used}; }
};

// Call-by-value, function before argument. A numeral in function position is
// decoded as a term and applied, so phi_e(n) is apply(Code{e}, n). A normal
// form that is a partially applied primitive is returned as its Goedel
// number; numeric primitives read such values through the same numbering.

/// Normal form of a closed term.
EvalResult evaluate(const TermPtr& closed, Fuel fuel);

/// phi_e(n)
EvalResult apply(const Code& e, const Nat& n, Fuel fuel);

/// phi_e(n_0)(n_1)...; each intermediate result is reused as a code.
EvalResult apply_curried(const Code& e, std::span<const Nat> args, Fuel fuel);
EvalResult apply_curried(const Code& e, std::initializer_list<Nat> args, Fuel fuel);

}  // namespace jreal
