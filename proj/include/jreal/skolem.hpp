#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jreal/assembly.hpp"
#include "jreal/realize.hpp"

namespace jreal::skolem {

using assembly::Point;

/// Coefficients, lowest degree first. Canonical when trailing zeros are
/// trimmed (so the zero polynomial is empty).
using Poly = std::vector<Nat>;

Poly trim(Poly p);
Nat eval(const Poly& p, const Nat& n);
Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
/// outer(inner(n)).
Poly compose(const Poly& outer, const Poly& inner);
/// Degree of a trimmed polynomial; the zero polynomial has degree 0.
std::size_t degree(const Poly& p);
/// Eventual comparison of a(n) and b(n) (lexicographic from the top degree).
int eventual_cmp(const Poly& a, const Poly& b);

/// n -> residues[n mod m](n), with nonnegative integer coefficients.
class QuasiPoly {
 public:
  QuasiPoly() : residues_{Poly{}} {}
  /// Throws std::invalid_argument on an empty residue list.
  explicit QuasiPoly(std::vector<Poly> residues);
  static QuasiPoly constant(const Nat& c);
  static QuasiPoly polynomial(Poly p);
  static QuasiPoly identity();

  std::size_t modulus() const { return residues_.size(); }
  const std::vector<Poly>& residues() const { return residues_; }
  const Poly& residue(std::size_t r) const { return residues_[r % residues_.size()]; }
  Nat operator()(const Nat& n) const;
  /// Largest residue degree.
  std::size_t degree() const;
  bool operator==(const QuasiPoly& o) const = default;

 private:
  std::vector<Poly> residues_;  // canonical: minimal modulus, trimmed
};

QuasiPoly operator+(const QuasiPoly& a, const QuasiPoly& b);
QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b);
/// n -> outer(inner(n)).
QuasiPoly compose(const QuasiPoly& outer, const QuasiPoly& inner);

/// `mod m: 0 -> c0 + c1 n + c2 n^2; 1 -> ...`. A bare polynomial such as
/// `n^2 + 1` is read as modulus 1. Throws std::invalid_argument.
QuasiPoly parse_quasipoly(std::string_view text);
std::string to_string(const Poly& p);
std::string to_string(const QuasiPoly& q);

/// modulus + degree + coefficient sum. Each grade is finite.
std::size_t grade(const QuasiPoly& q);
/// The members of one grade in enumeration order: by modulus, then degree,
/// then the flattened coefficient list lexicographically.
const std::vector<QuasiPoly>& grade_members(std::size_t g);
/// Number of functions of grade <= g.
std::size_t count_up_to_grade(std::size_t g);
QuasiPoly enumerate(std::size_t i);
std::size_t index_of(const QuasiPoly& q);

/// {n >= threshold | n mod modulus in residues}.
struct DefinableSet {
  std::size_t modulus = 1;
  std::vector<bool> residues{true};
  Nat threshold = 0;

  bool contains(const Nat& n) const;
  bool infinite() const;
  /// Least member >= n; requires infinite().
  Nat least_from(const Nat& n) const;
  /// Shrinks the modulus to the least period of the residue set.
  DefinableSet canonical() const;
  /// sub is a subset of *this.
  bool includes(const DefinableSet& sub) const;
  std::string to_string() const;
};

enum class Sign { Less, Equal, Greater };
char sign_char(Sign s);

/// The chain A_0 > A_1 > ... over enumerate(), the selector psi and the
/// order of the enumerated functions on the current A_k.
class Chain {
 public:
  Chain();
  /// Adds enumerate(k + 1).
  void extend();
  void extend_to(std::size_t k);

  std::size_t k() const { return sets_.size() - 1; }
  const DefinableSet& set(std::size_t j) const { return sets_.at(j); }
  const std::vector<Nat>& psi() const { return psi_; }
  const QuasiPoly& alpha(std::size_t i) const { return alphas_.at(i); }
  /// Extends the chain to max(i, j) first.
  Sign sign(std::size_t i, std::size_t j);
  /// Groups of equal functions on A_k, in increasing order.
  std::vector<std::vector<std::size_t>> order() const;

 private:
  std::vector<DefinableSet> sets_;
  std::vector<Nat> psi_;
  std::vector<QuasiPoly> alphas_;
  std::vector<std::size_t> rank_;            // index -> group position
  std::vector<std::vector<std::size_t>> groups_;
};

/// An element [alpha] of the model; `rep` is any representative.
struct ModelElem {
  QuasiPoly rep;
};

/// Skolem's model over the quasi-polynomials. Queries extend the chain as
/// far as they need, up to `max_steps`, and throw std::runtime_error beyond.
/// Not thread-safe: queries mutate the chain.
class Model {
 public:
  explicit Model(std::size_t max_steps = 4000) : max_steps_(max_steps) {}

  Chain& chain() { return chain_; }
  std::size_t max_steps() const { return max_steps_; }

  static ModelElem iota(const Nat& n) { return {QuasiPoly::constant(n)}; }
  static ModelElem apply_fn(const QuasiPoly& f, const ModelElem& e) { return {compose(f, e.rep)}; }

  /// Eventual comparison along psi.
  Sign compare(const QuasiPoly& a, const QuasiPoly& b);
  Sign compare(const ModelElem& a, const ModelElem& b) { return compare(a.rep, b.rep); }
  bool equal(const ModelElem& a, const ModelElem& b) { return compare(a, b) == Sign::Equal; }
  /// The polynomial that alpha agrees with along the tail of psi; equal
  /// elements get equal polynomials.
  Poly canonical(const ModelElem& e);
  /// Bounded along psi, i.e. in the image of iota.
  bool is_standard(const ModelElem& e) { return canonical(e).size() <= 1; }
  std::optional<Nat> standard_value(const ModelElem& e);

 private:
  Chain chain_;
  std::size_t max_steps_;
};

using Args = std::vector<std::pair<std::string, ModelElem>>;

/// The quasi-polynomial a term denotes under args.
QuasiPoly denote(const realize::Term& t, const Args& args);

/// Decides phi(args) in the model for quantifier-free phi over =, <, +, *, S.
/// Throws std::invalid_argument on quantifiers and other relations.
bool truth_qf(Model& m, const realize::Formula& f, const Args& args);

struct TransferReport {
  bool quantifier_free = true;
  std::optional<bool> model;     // truth_qf, or the sampled model truth
  std::optional<bool> sampled;   // truth in N at alpha psi(k) on the window
  std::optional<bool> standard;  // truth in N at the standard values
  std::size_t window_start = 0, window = 0;
  bool agree = false;
  std::string detail;
};

/// Quantifier-free phi: exact comparison of truth_qf, N-truth at psi(k) for
/// every k in the window, and N-truth at the standard values if all args are
/// standard. Quantified phi: a sampled report (model quantifiers range over
/// the classes of the first `window` enumerated functions, N quantifiers
/// below the witness window).
TransferReport transfer_check(Model& m, const realize::FormulaPtr& f, const Args& args, std::size_t window = 50);

/// Point of the model assembly: the sequence code of the canonical polynomial.
Point point_of(Model& m, const ModelElem& e);
Poly poly_of(const Point& p);

/// The model as a structure over the canonical-code assembly E'([a]) = {point},
/// with `<` and the standardness predicate St as relations.
realize::Structure model_structure(std::vector<Point> sample);

struct StReport {
  assembly::Assembly carrier;
  assembly::Subobject st;
  std::vector<Point> sample;
  std::vector<std::pair<std::string, assembly::TrackResult>> tracking;
  assembly::SubobjectResult st_check;
  Nat realizer;  // of forall y (St(y) \/ ~St(y))
  realize::Verdict3 verdict;
  std::string caveat;
  bool verified() const;
};

/// Builds the canonical-code assembly on the classes of the first `sample`
/// distinct enumerated functions, checks tracking of S, +, * and of i : N -> N*,
/// and replays the standardness realizer through jrealizes.
StReport st_assembly(Model& m, const jop::CheckPolicy& p, std::size_t sample = 20);

}  // namespace jreal::skolem
