#include "jreal/seq.hpp"

#include <bit>
#include <stdexcept>

namespace jreal {

Nat parse_nat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  for (char ch : text)
    if (ch < '0' || ch > '9') throw std::invalid_argument("not a natural number: " + text);
  return Nat(text);
}

std::size_t bit_length(const Nat& n) {
  if (n.is_zero()) return 0;
  return boost::multiprecision::msb(n) + 1;
}

std::uint64_t to_u64(const Nat& n) {
  if (n < 0 || n > Nat(std::numeric_limits<std::uint64_t>::max()))
    throw std::out_of_range("natural number too large: " + n.str());
  return n.convert_to<std::uint64_t>();
}

namespace {

// n <-> binary string: n + 1 written in binary with the leading 1 dropped.
struct BitString {
  std::size_t len;
  Nat bits;
};

BitString to_bits(const Nat& n) {
  Nat m = n + 1;
  std::size_t len = bit_length(m) - 1;
  m ^= Nat(1) << len;
  return {len, m};
}

Nat from_bits(std::size_t len, const Nat& bits) { return (Nat(1) << len) + bits - 1; }

// Number of string pairs whose total length is below L.
Nat group_base(std::size_t L) {
  if (L == 0) return 0;
  return Nat(L - 1) * (Nat(1) << L) + 1;
}

// Machine-word versions for codes of total string length below 48, where
// every intermediate value stays below 2^54.
constexpr std::uint64_t small_base(int L) { return L == 0 ? 0 : std::uint64_t(L - 1) * (std::uint64_t{1} << L) + 1; }
const Nat kSmall = Nat(std::uint64_t{1} << 24) - 1;
const Nat kSmallCode = Nat(small_base(48));

}  // namespace

// Pairs are ranked by (|x| + |y|, |x|, x, y), reading x and y as strings.
Nat pair_code(const Nat& x, const Nat& y) {
  if (x < kSmall && y < kSmall) {
    const std::uint64_t ux = x.convert_to<std::uint64_t>() + 1, uy = y.convert_to<std::uint64_t>() + 1;
    const int lx = std::bit_width(ux) - 1, ly = std::bit_width(uy) - 1, L = lx + ly;
    const std::uint64_t bits = (ux ^ (std::uint64_t{1} << lx)) << ly | (uy ^ (std::uint64_t{1} << ly));
    return Nat(small_base(L) + ((std::uint64_t(lx) << L) | bits));
  }
  BitString bx = to_bits(x);
  BitString by = to_bits(y);
  std::size_t L = bx.len + by.len;
  return group_base(L) + ((Nat(bx.len) << L) | (bx.bits << by.len) | by.bits);
}

std::pair<Nat, Nat> unpair_code(const Nat& z) {
  if (z < kSmallCode) {
    const std::uint64_t u = z.convert_to<std::uint64_t>();
    int L = std::bit_width(u) + 1;
    while (small_base(L) > u) --L;
    const std::uint64_t q = u - small_base(L);
    const int lx = static_cast<int>(q >> L), ly = L - lx;
    const std::uint64_t rem = q & ((std::uint64_t{1} << L) - 1);
    const std::uint64_t xb = rem >> ly, yb = rem & ((std::uint64_t{1} << ly) - 1);
    return {Nat((std::uint64_t{1} << lx) + xb - 1), Nat((std::uint64_t{1} << ly) + yb - 1)};
  }
  std::size_t L = bit_length(z) + 1;
  while (group_base(L) > z) --L;
  Nat q = z - group_base(L);
  std::size_t lx = (q >> L).convert_to<std::size_t>();
  Nat rem = q & ((Nat(1) << L) - 1);
  std::size_t ly = L - lx;
  Nat xb = rem >> ly;
  Nat yb = rem & ((Nat(1) << ly) - 1);
  return {from_bits(lx, xb), from_bits(ly, yb)};
}

Nat encode_seq(std::span<const Nat> elems) {
  if (elems.empty()) return 0;
  Nat tail = elems.back();
  for (std::size_t i = elems.size() - 1; i-- > 0;) tail = pair_code(elems[i], tail);
  return pair_code(Nat(elems.size() - 1), tail) + 1;
}

Nat encode_seq(std::initializer_list<Nat> elems) {
  return encode_seq(std::span<const Nat>(elems.begin(), elems.size()));
}

std::vector<Nat> decode_seq(const Nat& s) {
  std::vector<Nat> out;
  if (s.is_zero()) return out;
  auto [len_minus_one, rest] = unpair_code(s - 1);
  if (len_minus_one >= (1u << 20)) throw std::length_error("sequence too long to materialize");
  std::uint64_t n = to_u64(len_minus_one) + 1;
  out.reserve(n);
  for (std::uint64_t i = 0; i + 1 < n; ++i) {
    auto [head, tail] = unpair_code(rest);
    out.push_back(std::move(head));
    rest = std::move(tail);
  }
  out.push_back(std::move(rest));
  return out;
}

Nat seq_length(const Nat& s) {
  if (s.is_zero()) return 0;
  return unpair_code(s - 1).first + 1;
}

Nat seq_proj(const Nat& s, const Nat& i) {
  if (s.is_zero()) return 0;
  auto [len_minus_one, rest] = unpair_code(s - 1);
  if (i > len_minus_one) return 0;
  // unpair(t).second <= t, with equality exactly at t in {0, 1, 2}, where the
  // head is 0; past that point every remaining entry but the last is 0.
  for (Nat k = 0; k < i; ++k) {
    if (rest <= 2) return i == len_minus_one ? rest : Nat(0);
    rest = unpair_code(rest).second;
  }
  if (i == len_minus_one) return rest;
  return unpair_code(rest).first;
}

Nat seq_cons(const Nat& head, const Nat& s) {
  if (s.is_zero()) return pair_code(0, head) + 1;
  auto [len_minus_one, rest] = unpair_code(s - 1);
  return pair_code(len_minus_one + 1, pair_code(head, rest)) + 1;
}

}  // namespace jreal
