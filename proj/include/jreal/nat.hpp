#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace jreal {

/// Unbounded natural number. Negative values never arise from the public API.
using Nat = boost::multiprecision::cpp_int;

inline Nat nat(std::uint64_t v) { return Nat(v); }

inline std::string to_string(const Nat& n) { return n.str(); }

/// Parses a decimal natural; throws std::invalid_argument on junk.
Nat parse_nat(const std::string& text);

/// Number of significant bits (0 for zero).
std::size_t bit_length(const Nat& n);

/// Narrowing with a check; throws std::out_of_range when `n` does not fit.
std::uint64_t to_u64(const Nat& n);

}  // namespace jreal
