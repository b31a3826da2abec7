#pragma once

#include <functional>
#include <span>
#include <string>

#include "jreal/jop.hpp"
#include "jreal/lambda.hpp"
#include "jreal/term.hpp"

namespace jreal::jop {

/// Named helper programs (pairing, list utilities, the kit combinators and
/// the sequence constructions), usable as a parse environment.
const Definitions& kit_definitions();
/// Code of a closed program text parsed against kit_definitions().
Code kit_code(std::string_view text);

/// a = \x.<0,x>, b = \g x. tag recursion, c = \f.<1, \m.<0, f m>>,
/// d = JJA -> JA flattening, e = JA^JB -> J(A^B).
struct CombinatorKit {
  Code a, b, c, d, e;
};
const CombinatorKit& combinator_kit();

// Mirrors: host-side transforms of certificates that follow the same
// recursion as the codes.

/// a(x) = <0, x>; `inner` certifies x when the target is itself J(T).
CertPtr mirror_a(const Nat& x, CertPtr inner = nullptr);

/// Maps the certificate of a base payload (a, inner) to the certificate of
/// the corresponding output base value.
using BaseMap = std::function<CertPtr(const Nat& a, const CertPtr& inner)>;

/// b g: Base(a) goes to base_map(a), Lift(n, tails) keeps its shape.
CertPtr mirror_b(const Cert& in, const BaseMap& base_map);

/// c f for f with f(m) in A for every m >= n. Evaluates f on the samples.
/// Returns null if an evaluation runs out of fuel.
CertPtr mirror_c(const Code& f, const Nat& n, const CheckPolicy& p);

/// d: Base(y, inner) goes to inner, Lift keeps its shape.
CertPtr mirror_d(const Cert& in);

/// e on <x, y> with x certified in J(A) by cx and y in J(B) by cy.
CertPtr mirror_e(const Cert& cx, const Cert& cy);

/// Code of G for the total function with code f: <x_0..x_{n-1}> with
/// x_i in J{a_i} goes into J{f(<a_0..a_{n-1}>)}.
Code lemma_g(const Code& f);

/// Certificate for G's output given certificates of the x_i in singletons.
/// Returns null if f runs out of fuel.
CertPtr mirror_g(const Code& f, std::span<const CertPtr> inputs, const CheckPolicy& p);

/// The singleton payload a certificate certifies membership in.
Nat certified_singleton(const Cert& c);

struct CorollaryGH {
  Code fg;  // 0 if some a_i = 0, else 1
  Code fh;  // least i with a_i = 0, else n
  Code g, h;
};
const CorollaryGH& cor_gh();

struct DisjointnessReport {
  std::uint64_t checked = 0;
  std::uint64_t double_certified = 0;  // must stay 0
  std::uint64_t empty_certified = 0;   // must stay 0
  std::uint64_t inclusion_failures = 0;
  std::uint64_t certified_zero = 0, certified_one = 0;
  std::string first_counterexample;

  bool ok() const { return double_certified == 0 && empty_certified == 0 && inclusion_failures == 0; }
};

/// Searches x < budget for a value certified in both J{0} and J{1}, for a
/// certificate of J(empty), and checks that J{0} certificates re-verify for
/// J{0,1}. The second half probes tag-1 values built from codes e < budget.
DisjointnessReport disjointness_probe(std::uint64_t budget, const CheckPolicy& p);

}  // namespace jreal::jop
