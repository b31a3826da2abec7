#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jreal::doctrine {

/// Subset of the carrier {0..N-1} as a bitmask; bits at and above N are clear.
using RSubset = std::uint32_t;
using Elem = std::uint8_t;

inline constexpr int kMaxCarrier = 16;

/// A finite applicative structure: partial application and partial,
/// injective pairing on U = {0..N-1}.
class Doctrine {
 public:
  explicit Doctrine(int n);

  int size() const { return n_; }
  RSubset universe() const { return n_ == 32 ? ~0u : ((1u << n_) - 1); }

  std::optional<Elem> app(Elem e, Elem x) const { return app_[index(e, x)]; }
  std::optional<Elem> pair(Elem x, Elem y) const { return pair_[index(x, y)]; }

  void set_app(Elem e, Elem x, Elem y);
  /// Throws std::invalid_argument if the entry would break injectivity.
  void set_pair(Elem x, Elem y, Elem p);

  bool has_tag_entries(Elem tag) const;

 private:
  std::size_t index(Elem a, Elem b) const { return static_cast<std::size_t>(a) * n_ + b; }

  int n_;
  std::vector<std::optional<Elem>> app_;
  std::vector<std::optional<Elem>> pair_;
};

/// Line format: `doctrine N`, then `app e x = y` and `pair x y = p` lines.
/// Blank lines and `#` comments are ignored. Throws std::runtime_error with a
/// line number on malformed input.
Doctrine parse_doctrine(const std::string& text);
std::string format_doctrine(const Doctrine& d);

/// {e | for all a in A: app(e, a) is defined and in B}
RSubset arrow(RSubset a, RSubset b, const Doctrine& d);
/// {pair(a, b) | a in A, b in B, pair defined}
RSubset wedge(RSubset a, RSubset b, const Doctrine& d);

std::string format_subset(RSubset s, int n);

/// An order-preserving map on the powerset lattice, stored as a table.
class MonoOp {
 public:
  /// Throws std::invalid_argument if the table is not order preserving or
  /// has bits outside the carrier.
  MonoOp(int n, std::vector<RSubset> table);

  int size() const { return n_; }
  RSubset operator()(RSubset a) const { return table_[a]; }
  const std::vector<RSubset>& table() const { return table_; }

  friend bool operator==(const MonoOp&, const MonoOp&) = default;

 private:
  int n_;
  std::vector<RSubset> table_;
};

bool is_order_preserving(int n, const std::vector<RSubset>& table);

MonoOp identity_op(const Doctrine& d);
/// A -> U
MonoOp trivial_op(const Doctrine& d);
/// {} -> {}, nonempty -> U
MonoOp double_negation_op(const Doctrine& d);

enum class Law { Preorder, E1, E2, E3, E4, Uniformity };
std::string law_name(Law law);

struct Witness {
  Elem realizer;
  Law law;
};

/// Least element of the intersection of FA -> GA over all A, if any.
std::optional<Witness> preorder_witness(const MonoOp& f, const MonoOp& g, const Doctrine& d);

/// Exact law sets (as bitmasks over U).
RSubset e1_set(const MonoOp& j, const Doctrine& d);
RSubset e2_set(const MonoOp& j, const Doctrine& d);
RSubset e3_set(const MonoOp& j, const Doctrine& d);
RSubset e4_set(const MonoOp& j, const Doctrine& d);

/// Re-checks a witness against the defining set of its law (preorder
/// witnesses need the second operator, passed as `g`).
bool verify_witness(const Witness& w, const MonoOp& j, const Doctrine& d,
                    const MonoOp* g = nullptr);

struct E4Derivation {
  enum class Status { Derived, NoE1E3, NotRepresentable } status = Status::NoE1E3;
  std::optional<Witness> witness;  // set when Derived
  bool verified = false;
  std::string detail;
};

/// Builds an E4 realizer from E1 and E3 witnesses b, d following
///   p = <x, y>  |->  d(b(h_y)(x)),  h_y(u) = b(g_u)(y),  g_u(v) = <u, v>,
/// where g_u, h_y and the result are elements whose application rows agree
/// with these functions wherever the functions are defined.
E4Derivation derive_e4(const MonoOp& j, const Doctrine& d, Elem b, Elem dd);

struct LawReport {
  std::optional<Witness> e1, e2, e3, e4;
  E4Derivation derived_e4;

  bool is_local() const { return e1 && e2 && e3; }
};

LawReport local_laws(const MonoOp& j, const Doctrine& d);

class UnsuitableDoctrine : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// L(F)A as the limit of B_0 = {0}^A, B_{k+1} = B_k u {1}^F(B_k).
/// Throws UnsuitableDoctrine when no pair(0, .) entry exists.
MonoOp lfp_local(const MonoOp& f, const Doctrine& d);

/// Number of iterations lfp_local needed for A (0 if B_0 is already closed).
int lfp_iterations(const MonoOp& f, const Doctrine& d, RSubset a);

/// A -> union over n < N of ((up n) -> A), with up n truncated to the carrier.
MonoOp pitts_f_finite(const Doctrine& d);

struct UniformityResult {
  std::optional<Witness> witness;
  std::optional<RSubset> failing_set;
  std::string diagnostic;
};

/// Checks <a, a> in (A -> JA) ^ (A -> JA) for all A, over E2 witnesses a.
UniformityResult uniformity_finite(const MonoOp& j, const Doctrine& d);

/// The shipped four- and eight-element doctrines.
Doctrine shipped_d4();
Doctrine shipped_d8();

/// Random doctrine of the given size. `structured` doctrines have a total
/// tag-0 pairing and an application table closed under conjugation by it.
Doctrine random_doctrine(std::uint64_t seed, int n, bool structured);

/// Candidate operators for leastness checks on small doctrines.
std::vector<MonoOp> candidate_operators(const Doctrine& d, std::uint64_t seed, int random_count);

}  // namespace jreal::doctrine
