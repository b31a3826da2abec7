#pragma once

#include <span>
#include <utility>
#include <vector>

#include "jreal/nat.hpp"

namespace jreal {

// Bijective codings used throughout. Every natural number is the code of
// exactly one pair and exactly one finite sequence, and code sizes grow
// additively in the bit lengths of the components (plus a logarithmic
// overhead), so deeply nested structures stay small.

/// Bijection N x N -> N.
Nat pair_code(const Nat& x, const Nat& y);
/// Inverse of pair_code.
std::pair<Nat, Nat> unpair_code(const Nat& z);

/// <a_0, ..., a_{n-1}>; the empty sequence codes to 0.
Nat encode_seq(std::span<const Nat> elems);
Nat encode_seq(std::initializer_list<Nat> elems);
std::vector<Nat> decode_seq(const Nat& s);

/// lh(s)
Nat seq_length(const Nat& s);
/// (s)_i; out-of-range projections return 0.
Nat seq_proj(const Nat& s, const Nat& i);

/// Prepends `head` to the sequence coded by `s`.
Nat seq_cons(const Nat& head, const Nat& s);

/// The length-2 case <a, b>.
inline Nat tuple2(const Nat& a, const Nat& b) { return encode_seq({a, b}); }

}  // namespace jreal
