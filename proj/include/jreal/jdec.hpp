#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jreal/jop.hpp"
#include "jreal/term.hpp"

namespace jreal::jdec {

using jop::CertPtr;
using jop::CheckPolicy;

struct Decider;
using DeciderPtr = std::shared_ptr<const Decider>;

/// A total code F with F(n) in J{0} for members and J{1} otherwise, together
/// with the construction it came from. The construction is replayed on the
/// host to produce the certificate for F(n).
struct Decider {
  enum class Kind { One, Not, Union, Basic };
  Kind kind = Kind::One;
  Nat n;                          // One
  DeciderPtr inner;               // Not
  std::vector<DeciderPtr> parts;  // Union
  Code chi;                       // Basic: total 0/1-valued code
  std::string label;              // Basic
  Code code;

  std::string to_string() const;
  int tree_depth() const;
};

/// x -> a(chi_n(x)) with chi_n(x) = 0 iff x = n.
DeciderPtr tau1(const Nat& n);
/// x -> b swap (F x) with swap exchanging 0 and 1.
DeciderPtr tau2(DeciderPtr d);
/// x -> d(c(\n. G(<F_0 x, ..., F_n x>))) over the enumerator of `parts`,
/// which continues with a decider of the empty set past the end of the list.
DeciderPtr sigma(std::vector<DeciderPtr> parts);
/// x -> a(chi(x)) for a total code chi with values 0 (member) and 1.
DeciderPtr basic(const Code& chi, std::string label);

/// Code of the enumerator \n. (parts ++ never...)_n.
Code enumerator(const std::vector<DeciderPtr>& parts);

/// Construction text: `one 4`, `not D`, `union D D ...`, parentheses for
/// grouping. Throws std::runtime_error.
DeciderPtr parse_decider(const std::string& text);

/// Membership computed directly from the construction (Basic runs chi).
/// nullopt if chi runs out of fuel.
std::optional<bool> ground_truth(const Decider& d, const Nat& n, Fuel fuel = {});

struct Replay {
  std::optional<int> bit;  // 0: member, 1: not
  CertPtr cert;            // certifies F(n) in J{bit}
  std::string detail;
};

/// Host replay of the construction at n.
Replay replay(const Decider& d, const Nat& n, const CheckPolicy& p);

enum class Verdict { In, Out, Unknown };
std::string verdict_name(Verdict v);

struct DecResult {
  Verdict verdict = Verdict::Unknown;
  Nat value;  // F(n)
  CertPtr cert;
  std::string detail;
};

/// Evaluates F(n) and checks the replayed certificate against it.
DecResult run_decider(const Decider& d, const Nat& n, const CheckPolicy& p);

/// A code F with F(x) in J{f(x)}.
struct RepCode {
  Code code;
  DeciderPtr graph;
};

/// F(x) = d(c(\n. H(<g<x,0>, ..., g<x,n>>))) for a decider g of the graph of f.
RepCode represent_from_graph(DeciderPtr graph);

struct RepResult {
  std::optional<Nat> value;
  CertPtr cert;
  std::string detail;
};

/// f(x) with its certificate; fails if the least y exceeds the horizon.
RepResult run_rep(const RepCode& r, const Nat& x, const CheckPolicy& p);

struct PartialResult {
  enum class Kind { Value, NotInDomain, Unknown } kind = Kind::Unknown;
  Nat value;
  CertPtr cert;
};

/// psi_e(n) = m iff phi_e(n) is certified in J{m}.
PartialResult partial_apply(const Code& e, const Nat& n, const CheckPolicy& p);

}  // namespace jreal::jdec
