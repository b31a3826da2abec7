#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jreal/assembly.hpp"

namespace jreal::realize {

using assembly::Assembly;
using assembly::Point;
using jop::CheckPolicy;
using jop::JSet;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Num, Succ, Add, Mul } kind = Kind::Num;
  std::string var;
  Nat num;
  TermPtr l, r;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Bounded quantifiers keep their bound `t`; they stand for the finite
/// conjunction (disjunction) of the body over x = 0, ..., [t]-1, right nested,
/// with `0 = 0` (`0 = S 0`) for the empty case.
struct Formula {
  enum class Kind { Eq, Rel, And, Or, Imp, Forall, Exists } kind = Kind::Eq;
  TermPtr t, s;               // Eq; `t` is the bound of a bounded quantifier
  std::string name;           // Rel symbol or quantified variable
  std::vector<TermPtr> args;  // Rel
  FormulaPtr a, b;            // connectives; `a` is a quantifier body
  bool bounded = false;
};

/// Position-annotated parse error.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t pos);
  std::size_t pos;
};

/// Precedence, loosest first: quantifiers, `->` (right associative), `\/`,
/// `/\`, atoms. Atoms are `t = s`, `t < s` and `R(t, ...)`; terms use `+`, `*`,
/// `S t` and numerals. `forall x < t.` and `exists x < t.` are bounded.
FormulaPtr parse_formula(const std::string& text);
std::string to_string(const Formula& f);
std::string to_string(const Term& t);
std::set<std::string> free_vars(const Formula& f);
/// Nesting depth of connectives and quantifiers; atoms have depth 0.
int depth(const Formula& f);
/// True when every quantifier is bounded.
bool is_delta0(const Formula& f);

FormulaPtr f_eq(TermPtr t, TermPtr s);
FormulaPtr f_rel(std::string name, std::vector<TermPtr> args);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_imp(FormulaPtr a, FormulaPtr b);
FormulaPtr f_forall(std::string x, FormulaPtr body, TermPtr bound = nullptr);
FormulaPtr f_exists(std::string x, FormulaPtr body, TermPtr bound = nullptr);
TermPtr t_var(std::string x);
TermPtr t_num(Nat n);
TermPtr t_succ(TermPtr t);
TermPtr t_add(TermPtr a, TermPtr b);
TermPtr t_mul(TermPtr a, TermPtr b);

/// A J-assembly with interpretations of the arithmetic symbols and of the
/// relation symbols (as maps X^n -> P(N)).
struct Structure {
  Assembly carrier;
  std::function<Point(const Nat&)> numeral;
  std::function<Point(const Point&)> succ;
  std::function<Point(const Point&, const Point&)> add, mul;
  /// The number of points below a bound, for bounded quantifiers.
  std::function<std::size_t(const Point&)> count_below;
  std::map<std::string, std::pair<int, std::function<JSet(const std::vector<Point>&)>>> relations;
  std::string name;
};

/// N with the standard operations and [x < y] = {<x, y>} when x < y.
Structure arithmetic();
/// Z/k on the given assembly (which must have k points); `<` compares indices.
Structure modular(Assembly carrier);

/// Bounds of the checker beyond the certificate policy.
struct Windows {
  int points = 51;    // N is quantified over [0, points)
  int realizers = 64; // the -> clause ranges over m < realizers
  int witness = 64;   // witness search of the builder
};

struct Verdict3 {
  enum class Kind { Realized, Refuted, Unknown } kind = Kind::Unknown;
  std::set<std::string> caveats;  // sampled obligations behind a Realized
  std::string diagnostic;
};
std::string kind_name(Verdict3::Kind k);

/// Assignment of points to the variables of the context, innermost first.
struct Env {
  std::vector<std::pair<std::string, Point>> vars;
};

/// e J-realizes f(env) under the bounded reading of the clauses. The
/// realizer context is the list of env points, innermost first; its wedge is
/// read as JE(x1) for one point and as a coded sequence for several.
Verdict3 jrealizes(const Nat& e, const Formula& f, const Env& env, const Structure& s, const CheckPolicy& p,
                   const Windows& w = {});

/// Classical truth over N; unbounded quantifiers are searched below the witness
/// window (an unbounded forall is refused with std::invalid_argument).
bool classically_true(const Formula& f, const Env& env, const Windows& w = {});

struct Built {
  std::optional<Nat> realizer;
  std::string refusal;
};

/// A realizer for a closed true Delta_0 sentence, or one with unbounded
/// existentials whose witnesses are found below the witness window.
Built build_delta0(const Formula& f, const Windows& w = {});

/// True Delta_0 sentences; the corpus of false sentences is their negations.
std::vector<std::string> delta0_corpus(std::uint64_t seed, int count);
/// `phi -> 0 = S 0`.
FormulaPtr negation(FormulaPtr f);

}  // namespace jreal::realize
