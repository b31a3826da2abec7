#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "jreal/nat.hpp"

namespace jreal {

enum class Prim : std::uint8_t { K, S, Succ, Pred, IfZero, Fix, SeqNil, SeqCons, SeqLen, SeqProj, I, B, C };

inline constexpr std::size_t kPrimCount = 13;

/// Number of arguments after which the primitive fires.
///   K x y        -> x
///   S f g x      -> f x (g x)
///   ifz n f g x  -> f x if n = 0, g x otherwise
///   fix f x      -> f (fix f) x
///   I x          -> x
///   B f g x      -> f (g x)
///   C f g x      -> f x g
int arity(Prim p);
std::string_view prim_name(Prim p);
std::optional<Prim> prim_from_name(std::string_view name);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind : std::uint8_t { Var, Numeral, App, Prim };

  Kind kind;
  std::string var;
  Nat num;
  Prim prim = Prim::K;
  TermPtr fun;
  TermPtr arg;

  static TermPtr make_var(std::string name);
  static TermPtr make_num(Nat n);
  static TermPtr make_prim(Prim p);
  static TermPtr make_app(TermPtr f, TermPtr a);
};

inline TermPtr tvar(std::string name) { return Term::make_var(std::move(name)); }
inline TermPtr tnum(Nat n) { return Term::make_num(std::move(n)); }
inline TermPtr tprim(Prim p) { return Term::make_prim(p); }
inline TermPtr tapp(TermPtr f, TermPtr a) { return Term::make_app(std::move(f), std::move(a)); }
TermPtr tapp(TermPtr f, std::initializer_list<TermPtr> args);

/// A Goedel number of a closed term. Every natural number is one.
struct Code {
  Nat value;
  friend bool operator==(const Code&, const Code&) = default;
};

/// Prim p -> p, Numeral n -> 13 + 2n, App(f, a) -> 14 + 2 <f, a>.
/// Throws std::invalid_argument for open terms.
Nat encode_term(const Term& t);
inline Code code_of(const TermPtr& t) { return Code{encode_term(*t)}; }
TermPtr decode_term(const Nat& code);

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, std::string_view name);
bool is_closed(const Term& t);
bool same_term(const Term& a, const Term& b);

std::string to_string(const Term& t);

}  // namespace jreal
