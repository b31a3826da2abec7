#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jreal/jop.hpp"

namespace jreal::assembly {

using jop::CheckPolicy;
using jop::JSet;

/// Points are naturals: indices for finite carriers, the numbers themselves
/// for N, and pair codes of component points for products.
using Point = Nat;

/// How infinite carriers and infinite realizer sets are sampled.
struct Sampling {
  int points = 51;     // N is sampled on [0, points)
  int realizers = 6;   // at most this many realizers per point
  int scan = 2048;     // predicate sets are searched below this bound
  std::string describe() const;
};

class Assembly {
 public:
  enum class Kind { Finite, Nat, Product, Sampled };

  /// Throws std::invalid_argument if some realizer set is empty.
  static Assembly finite(std::vector<std::string> names, std::vector<JSet> realizers);
  /// The natural numbers object: E(n) = {n}.
  static Assembly nat();
  /// Carrier X x Y with E(x, y) = E(x) ^ F(y).
  static Assembly product(const Assembly& a, const Assembly& b);
  /// An infinite carrier known only through a fixed list of points.
  static Assembly sampled(std::vector<Point> sample, std::function<JSet(const Point&)> realizers,
                          std::function<std::string(const Point&)> names);

  Kind kind() const { return kind_; }
  bool is_finite() const;
  /// Number of points of a finite carrier.
  std::size_t size() const;
  JSet realizers(const Point& x) const;
  std::string name(const Point& x) const;
  /// All points when finite, a sample otherwise.
  std::vector<Point> points(const Sampling& s) const;
  /// All realizers of x when finite, at most s.realizers otherwise.
  std::vector<Nat> sample_realizers(const Point& x, const Sampling& s) const;
  /// The point of a product with the given components.
  static Point pair(const Point& x, const Point& y);
  const Assembly& left() const { return *left_; }
  const Assembly& right() const { return *right_; }

 private:
  Kind kind_ = Kind::Finite;
  std::vector<std::string> names_;
  std::vector<JSet> sets_;
  std::shared_ptr<const Assembly> left_, right_;
  std::vector<Point> sample_;
  std::function<JSet(const Point&)> realizer_fn_;
  std::function<std::string(const Point&)> name_fn_;
};

/// Lines `point <name> realizers <set>`, with `#` comments. Throws
/// std::runtime_error with the line number.
Assembly parse_assembly(const std::string& text);
std::string format_assembly(const Assembly& a);

struct Morphism {
  std::function<Point(const Point&)> map;
  Code tracker;
  std::string name;
};

enum class Verdict { Verified, Failed, Unknown };
std::string verdict_name(Verdict v);

struct TrackResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Point> point;  // witness of failure or of fuel exhaustion
  std::optional<Nat> realizer;
  std::string detail;
  bool sampled = false;
  int obligations = 0;
};

/// Every sampled r in E(x) must be sent by the tracker to a certified
/// member of J F(f(x)).
TrackResult check_tracking(const Morphism& f, const Assembly& src, const Assembly& dst, const CheckPolicy& p,
                           const Sampling& s = {});

/// Tracker \v. d (b m (n v)) for g after f, where f is tracked by n and g by m.
Morphism compose(const Morphism& f, const Morphism& g);
Morphism identity(const Assembly& a);
Morphism projection_left(const Assembly& product);
Morphism projection_right(const Assembly& product);
/// <f, g> : Z -> X x Y, tracked by \v. e <n v, m v>.
Morphism pairing(const Morphism& f, const Morphism& g);

struct Exponent {
  Assembly object;                             // one point per tracked map
  std::vector<std::vector<std::size_t>> maps;  // maps[i][x] = image of x
  std::vector<std::vector<std::size_t>> undecided;
  std::size_t excluded = 0;  // maps with no tracker below the bound
};

/// Exhaustive over all maps between finite carriers with finite realizer
/// sets; trackers are searched among codes below `bound`.
Exponent exponent_finite(const Assembly& a, const Assembly& b, const Nat& bound, const CheckPolicy& p);
/// ev : B^A x A -> B, tracked by \p. (fst p) (snd p).
Morphism evaluation(const Exponent& e, const Assembly& a);

struct Subobject {
  std::function<JSet(const Point&)> r;
  Code tracker;
};

struct SubobjectResult {
  TrackResult check;
  std::vector<Point> support;  // sampled points with R(x) nonempty
};

SubobjectResult subobject_check(const Subobject& r, const Assembly& base, const CheckPolicy& p,
                                const Sampling& s = {});

struct UniformityLine {
  std::string set;
  std::string samples;
  Verdict verdict = Verdict::Unknown;
  std::string detail;
};

struct UniformityReport {
  std::vector<UniformityLine> lines;
  bool doctrine_verified = false;
  std::string doctrine_detail;
  bool verified() const;
};

/// <a, a> in [A = A]: a x is certified in J A for sampled x in A, over a
/// family of finite, cofinite and up-from sets, plus the exact check on the
/// shipped eight-element doctrine.
UniformityReport omega_uniformity(const CheckPolicy& p, const Sampling& s = {});

}  // namespace jreal::assembly
