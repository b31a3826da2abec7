#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jreal/engine.hpp"
#include "jreal/nat.hpp"

namespace jreal::jop {

/// A set of naturals. Membership is decided for the first four forms; a
/// predicate may answer nullopt when it runs out of fuel.
class JSet {
 public:
  enum class Kind { Finite, Cofinite, Singleton, UpFrom, ByPredicate };
  using Predicate = std::function<std::optional<bool>(const Nat&, Fuel)>;

  static JSet finite(std::vector<Nat> elems);
  static JSet cofinite(std::vector<Nat> excluded);
  static JSet singleton(Nat k);
  static JSet up_from(Nat n);
  static JSet by_predicate(std::string name, Predicate p);
  /// {<a, b> | a in A, b in B}
  static JSet wedge(JSet a, JSet b);
  static JSet empty() { return finite({}); }

  Kind kind() const { return kind_; }
  std::optional<bool> contains(const Nat& x, Fuel fuel = {}) const;
  /// Decided inclusion for the non-predicate forms; nullopt otherwise.
  std::optional<bool> subset_of(const JSet& other) const;
  /// Finite and singleton forms.
  bool is_finite() const { return kind_ == Kind::Finite || kind_ == Kind::Singleton; }
  /// The least `k` members in increasing order. Predicate sets are only
  /// searched below `scan`, and unanswered queries count as non-members.
  std::vector<Nat> first_members(std::size_t k, std::uint64_t scan, Fuel fuel = {}) const;
  /// The k of a singleton.
  const Nat& element() const { return elems_.front(); }

  std::string to_string() const;

 private:
  Kind kind_ = Kind::Finite;
  std::vector<Nat> elems_;  // sorted, unique
  std::string name_;
  Predicate pred_;
};

/// Text forms: `{1,2}`, `co{1,2}` or `cofinite{1,2}`, `single 5`, `up 3` or `upfrom 3`. Throws std::runtime_error.
JSet parse_jset(const std::string& text);

/// What a certificate certifies membership in: either a plain set A, or J(T)
/// for a target T. check_cert(x, T, c) tests x in J(T).
class Target {
 public:
  static Target plain(JSet a);
  static Target j(Target inner);

  bool is_plain() const { return !inner_; }
  const JSet& set() const { return set_; }
  const Target& inner() const { return *inner_; }
  std::string to_string() const;

 private:
  JSet set_;
  std::shared_ptr<const Target> inner_;
};

struct Cert;
using CertPtr = std::shared_ptr<const Cert>;

/// Base(a, inner): x = <0, a> and a in T (inner certifies a in T when T is itself J(T')).
/// Lift(n, tails): x = <1, e> and phi_e(m) is certified by tails[m - n] for
/// every sampled m in [n, horizon + window).
struct Cert {
  enum class Kind { Base, Lift } kind = Kind::Base;
  Nat a;
  CertPtr inner;
  Nat threshold;
  std::vector<std::pair<Nat, CertPtr>> tails;

  static CertPtr base(Nat a, CertPtr inner = nullptr);
  static CertPtr lift(Nat n, std::vector<std::pair<Nat, CertPtr>> tails);

  /// Lift nesting, counting inner certificates.
  int depth() const;
};

/// `(base a)`, `(base a <cert>)`, `(lift n (m cert) ...)`.
std::string format_cert(const Cert& c);
CertPtr parse_cert(const std::string& text);

/// Bounds of the finite approximation. A Lift must have threshold at most
/// `horizon` and sample every m in [threshold, horizon + window), so any two
/// Lifts for the same x share the samples [horizon, horizon + window).
struct CheckPolicy {
  int depth = 4;
  int window = 2;
  int horizon = 3;
  Fuel fuel{200000};

  int sample_end() const { return horizon + window; }
};

struct CheckResult {
  bool accepted = false;
  bool out_of_fuel = false;
  std::string reason;

  explicit operator bool() const { return accepted; }
};

CheckResult check_cert(const Nat& x, const Target& t, const Cert& c, const CheckPolicy& p);
CheckResult check_cert(const Nat& x, const JSet& a, const Cert& c, const CheckPolicy& p);

/// The (tag, payload) of x if x codes a length-2 sequence with tag 0 or 1.
std::optional<std::pair<int, Nat>> tagged(const Nat& x);

struct FindResult {
  CertPtr cert;
  bool out_of_fuel = false;
};

/// Searches for a certificate of x in J(t) within the policy, least
/// thresholds first.
FindResult find_cert(const Nat& x, const Target& t, const CheckPolicy& p);

struct SingletonResult {
  std::optional<Nat> value;  // x in J{value}
  CertPtr cert;
  bool out_of_fuel = false;
};

/// Finds the k with x certified in J{k}. Such k is unique at any policy.
SingletonResult find_singleton(const Nat& x, const CheckPolicy& p);

}  // namespace jreal::jop
