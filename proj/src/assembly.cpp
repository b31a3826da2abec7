#include "jreal/assembly.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "jreal/doctrine.hpp"
#include "jreal/kit.hpp"
#include "jreal/seq.hpp"

namespace jreal::assembly {

using jop::Target;

std::string Sampling::describe() const {
  return "N sampled on [0," + std::to_string(points - 1) + "], at most " + std::to_string(realizers) +
         " realizers per point, predicate sets scanned below " + std::to_string(scan);
}

Assembly Assembly::finite(std::vector<std::string> names, std::vector<JSet> realizers) {
  if (names.size() != realizers.size()) throw std::invalid_argument("one realizer set per point");
  for (std::size_t i = 0; i < names.size(); ++i) {
    bool empty = realizers[i].kind() == JSet::Kind::Finite && realizers[i].first_members(1, 0).empty();
    if (empty) throw std::invalid_argument("point " + names[i] + " has no realizers");
  }
  Assembly a;
  a.names_ = std::move(names);
  a.sets_ = std::move(realizers);
  return a;
}

Assembly Assembly::nat() {
  Assembly a;
  a.kind_ = Kind::Nat;
  return a;
}

Assembly Assembly::product(const Assembly& l, const Assembly& r) {
  Assembly a;
  a.kind_ = Kind::Product;
  a.left_ = std::make_shared<const Assembly>(l);
  a.right_ = std::make_shared<const Assembly>(r);
  return a;
}

Assembly Assembly::sampled(std::vector<Point> sample, std::function<JSet(const Point&)> realizers,
                           std::function<std::string(const Point&)> names) {
  Assembly a;
  a.kind_ = Kind::Sampled;
  a.sample_ = std::move(sample);
  a.realizer_fn_ = std::move(realizers);
  a.name_fn_ = std::move(names);
  return a;
}

bool Assembly::is_finite() const {
  switch (kind_) {
    case Kind::Finite:
      return true;
    case Kind::Nat:
    case Kind::Sampled:
      return false;
    case Kind::Product:
      return left_->is_finite() && right_->is_finite();
  }
  return false;
}

std::size_t Assembly::size() const {
  if (!is_finite()) throw std::logic_error("size of an infinite carrier");
  return kind_ == Kind::Finite ? names_.size() : left_->size() * right_->size();
}

Point Assembly::pair(const Point& x, const Point& y) { return pair_code(x, y); }

JSet Assembly::realizers(const Point& x) const {
  switch (kind_) {
    case Kind::Finite:
      return sets_.at(static_cast<std::size_t>(to_u64(x)));
    case Kind::Nat:
      return JSet::singleton(x);
    case Kind::Product: {
      auto [l, r] = unpair_code(x);
      return JSet::wedge(left_->realizers(l), right_->realizers(r));
    }
    case Kind::Sampled:
      return realizer_fn_(x);
  }
  return JSet::empty();
}

std::string Assembly::name(const Point& x) const {
  switch (kind_) {
    case Kind::Finite:
      return names_.at(static_cast<std::size_t>(to_u64(x)));
    case Kind::Nat:
      return to_string(x);
    case Kind::Product: {
      auto [l, r] = unpair_code(x);
      return "(" + left_->name(l) + "," + right_->name(r) + ")";
    }
    case Kind::Sampled:
      return name_fn_(x);
  }
  return "?";
}

std::vector<Point> Assembly::points(const Sampling& s) const {
  std::vector<Point> out;
  switch (kind_) {
    case Kind::Finite:
      for (std::size_t i = 0; i < names_.size(); ++i) out.emplace_back(i);
      break;
    case Kind::Nat:
      for (int i = 0; i < s.points; ++i) out.emplace_back(i);
      break;
    case Kind::Product: {
      // Keep products of samples near the requested size.
      Sampling side = s;
      side.points = std::max(2, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(s.points)))));
      for (const auto& l : left_->points(side))
        for (const auto& r : right_->points(side)) out.push_back(pair(l, r));
      break;
    }
    case Kind::Sampled:
      out.assign(sample_.begin(), sample_.begin() + std::min<std::size_t>(sample_.size(), s.points));
      break;
  }
  return out;
}

std::vector<Nat> Assembly::sample_realizers(const Point& x, const Sampling& s) const {
  switch (kind_) {
    case Kind::Finite: {
      const JSet& set = sets_.at(static_cast<std::size_t>(to_u64(x)));
      std::size_t k = set.is_finite() ? std::numeric_limits<std::size_t>::max() : s.realizers;
      return set.first_members(k, s.scan);
    }
    case Kind::Nat:
      return {x};
    case Kind::Product: {
      auto [l, r] = unpair_code(x);
      std::vector<Nat> out;
      for (const auto& u : left_->sample_realizers(l, s))
        for (const auto& v : right_->sample_realizers(r, s)) out.push_back(tuple2(u, v));
      return out;
    }
    case Kind::Sampled: {
      JSet set = realizer_fn_(x);
      return set.first_members(set.is_finite() ? std::numeric_limits<std::size_t>::max() : s.realizers, s.scan);
    }
  }
  return {};
}

namespace {
bool exhaustive(const Assembly& a) {
  switch (a.kind()) {
    case Assembly::Kind::Nat:
    case Assembly::Kind::Sampled:
      return false;
    case Assembly::Kind::Product:
      return exhaustive(a.left()) && exhaustive(a.right());
    case Assembly::Kind::Finite:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (!a.realizers(Point(i)).is_finite()) return false;
      return true;
  }
  return false;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}
}  // namespace

Assembly parse_assembly(const std::string& text) {
  std::vector<std::string> names;
  std::vector<JSet> sets;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + why);
    };
    std::istringstream words(line);
    std::string kw, name, rz;
    words >> kw >> name >> rz;
    if (kw != "point" || name.empty() || rz != "realizers") fail("expected 'point <name> realizers <set>'");
    std::string rest;
    std::getline(words, rest);
    try {
      sets.push_back(jop::parse_jset(trim(rest)));
    } catch (const std::exception& e) {
      fail(e.what());
    }
    for (const auto& n : names)
      if (n == name) fail("duplicate point " + name);
    names.push_back(name);
  }
  try {
    return Assembly::finite(std::move(names), std::move(sets));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

std::string format_assembly(const Assembly& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out += "point " + a.name(Point(i)) + " realizers " + a.realizers(Point(i)).to_string() + "\n";
  return out;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Verified:
      return "Verified";
    case Verdict::Failed:
      return "Failed";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

namespace {
enum class Hit { Yes, No, Unknown };

Hit certified(const Code& tracker, const Nat& r, const JSet& target, const CheckPolicy& p, std::string* why) {
  EvalResult v = apply(tracker, r, p.fuel);
  if (v.out_of_fuel()) {
    if (why) *why = "tracker ran out of fuel on " + to_string(r);
    return Hit::Unknown;
  }
  jop::FindResult f = jop::find_cert(*v.value, Target::plain(target), p);
  if (f.cert) return Hit::Yes;
  if (why)
    *why = "tracker sends " + to_string(r) + " to " + to_string(*v.value) + ", not certified in J" + target.to_string() +
           (f.out_of_fuel ? " (fuel)" : "");
  return f.out_of_fuel ? Hit::Unknown : Hit::No;
}

bool in_carrier(const Assembly& a, const Point& y) {
  if (a.kind() == Assembly::Kind::Finite) return y < a.size();
  if (a.kind() == Assembly::Kind::Product) {
    auto [l, r] = unpair_code(y);
    return in_carrier(a.left(), l) && in_carrier(a.right(), r);
  }
  return true;
}
}  // namespace

TrackResult check_tracking(const Morphism& f, const Assembly& src, const Assembly& dst, const CheckPolicy& p,
                           const Sampling& s) {
  TrackResult out;
  out.sampled = !exhaustive(src);
  bool unknown = false;
  for (const auto& x : src.points(s)) {
    Point y = f.map(x);
    if (!in_carrier(dst, y)) {
      out.verdict = Verdict::Failed;
      out.point = x;
      out.detail = "map sends " + src.name(x) + " outside the target carrier";
      return out;
    }
    JSet target = dst.realizers(y);
    for (const auto& r : src.sample_realizers(x, s)) {
      ++out.obligations;
      std::string why;
      Hit h = certified(f.tracker, r, target, p, &why);
      if (h == Hit::No) {
        out.verdict = Verdict::Failed;
        out.point = x;
        out.realizer = r;
        out.detail = "at " + src.name(x) + ": " + why;
        return out;
      }
      if (h == Hit::Unknown && !unknown) {
        unknown = true;
        out.point = x;
        out.realizer = r;
        out.detail = "at " + src.name(x) + ": " + why;
      }
    }
  }
  out.verdict = unknown ? Verdict::Unknown : Verdict::Verified;
  return out;
}

Morphism compose(const Morphism& f, const Morphism& g) {
  Morphism h;
  h.map = [fm = f.map, gm = g.map](const Point& x) { return gm(fm(x)); };
  h.tracker = jop::kit_code("\\v. d (b " + to_string(g.tracker.value) + " (" + to_string(f.tracker.value) + " v))");
  h.name = g.name + " . " + f.name;
  return h;
}

Morphism identity(const Assembly&) { return {[](const Point& x) { return x; }, jop::kit_code("a"), "id"}; }

Morphism projection_left(const Assembly&) {
  return {[](const Point& x) { return unpair_code(x).first; }, jop::kit_code("\\p. a (fst p)"), "fst"};
}

Morphism projection_right(const Assembly&) {
  return {[](const Point& x) { return unpair_code(x).second; }, jop::kit_code("\\p. a (snd p)"), "snd"};
}

Morphism pairing(const Morphism& f, const Morphism& g) {
  Morphism h;
  h.map = [fm = f.map, gm = g.map](const Point& x) { return Assembly::pair(fm(x), gm(x)); };
  h.tracker = jop::kit_code("\\v. e (pair (" + to_string(f.tracker.value) + " v) (" + to_string(g.tracker.value) +
                            " v))");
  h.name = "<" + f.name + "," + g.name + ">";
  return h;
}

Exponent exponent_finite(const Assembly& a, const Assembly& b, const Nat& bound, const CheckPolicy& p) {
  if (!exhaustive(a) || !exhaustive(b)) throw std::invalid_argument("exponent needs finite carriers and realizer sets");
  const std::size_t nx = a.size(), ny = b.size();
  const Sampling all;
  // hits[e][x][j][y]: the tracker e sends the j-th realizer of x into J F(y).
  std::vector<std::vector<std::vector<std::vector<Hit>>>> hits;
  for (Nat e = 0; e < bound; ++e) {
    auto& he = hits.emplace_back(nx);
    for (std::size_t x = 0; x < nx; ++x)
      for (const auto& r : a.sample_realizers(Point(x), all)) {
        auto& row = he[x].emplace_back(ny, Hit::No);
        for (std::size_t y = 0; y < ny; ++y) row[y] = certified(Code{e}, r, b.realizers(Point(y)), p, nullptr);
      }
  }
  Exponent out;
  std::vector<std::string> names;
  std::vector<JSet> sets;
  std::vector<std::size_t> f(nx, 0);
  for (bool more = true; more;) {
    std::vector<Nat> trackers;
    bool maybe = false;
    for (std::size_t e = 0; e < hits.size(); ++e) {
      bool yes = true, unk = false;
      for (std::size_t x = 0; x < nx && yes; ++x)
        for (const auto& row : hits[e][x]) {
          if (row[f[x]] == Hit::No) yes = false;
          if (row[f[x]] == Hit::Unknown) unk = true;
        }
      if (yes && !unk) trackers.emplace_back(e);
      if (yes && unk) maybe = true;
    }
    if (!trackers.empty()) {
      std::string name = "{";
      for (std::size_t x = 0; x < nx; ++x)
        name += (x ? "," : "") + a.name(Point(x)) + "->" + b.name(Point(f[x]));
      names.push_back(name + "}");
      sets.push_back(JSet::finite(std::move(trackers)));
      out.maps.push_back(f);
    } else if (maybe) {
      out.undecided.push_back(f);
    } else {
      ++out.excluded;
    }
    more = false;
    for (std::size_t x = 0; x < nx; ++x) {
      if (++f[x] < ny) {
        more = true;
        break;
      }
      f[x] = 0;
    }
    if (nx == 0) more = false;
  }
  out.object = names.empty() ? Assembly::finite({}, {}) : Assembly::finite(std::move(names), std::move(sets));
  return out;
}

Morphism evaluation(const Exponent& e, const Assembly&) {
  Morphism m;
  m.map = [maps = e.maps](const Point& x) {
    auto [i, a] = unpair_code(x);
    return Point(maps.at(static_cast<std::size_t>(to_u64(i))).at(static_cast<std::size_t>(to_u64(a))));
  };
  m.tracker = jop::kit_code("\\p. (fst p) (snd p)");
  m.name = "ev";
  return m;
}

SubobjectResult subobject_check(const Subobject& sub, const Assembly& base, const CheckPolicy& p, const Sampling& s) {
  SubobjectResult out;
  out.check.sampled = !base.is_finite();
  bool unknown = false;
  for (const auto& x : base.points(s)) {
    JSet rx = sub.r(x);
    std::size_t k = rx.is_finite() ? std::numeric_limits<std::size_t>::max() : s.realizers;
    if (!rx.is_finite()) out.check.sampled = true;
    std::vector<Nat> rs = rx.first_members(k, s.scan);
    if (rs.empty()) continue;
    out.support.push_back(x);
    for (const auto& r : rs) {
      ++out.check.obligations;
      std::string why;
      Hit h = certified(sub.tracker, r, base.realizers(x), p, &why);
      if (h == Hit::No) {
        out.check.verdict = Verdict::Failed;
        out.check.point = x;
        out.check.realizer = r;
        out.check.detail = "at " + base.name(x) + ": " + why;
        return out;
      }
      if (h == Hit::Unknown && !unknown) {
        unknown = true;
        out.check.point = x;
        out.check.realizer = r;
        out.check.detail = "at " + base.name(x) + ": " + why;
      }
    }
  }
  out.check.verdict = unknown ? Verdict::Unknown : Verdict::Verified;
  return out;
}

bool UniformityReport::verified() const {
  if (!doctrine_verified) return false;
  for (const auto& l : lines)
    if (l.verdict != Verdict::Verified) return false;
  return true;
}

UniformityReport omega_uniformity(const CheckPolicy& p, const Sampling& s) {
  UniformityReport out;
  const Code a = jop::combinator_kit().a;
  const std::vector<JSet> family = {JSet::singleton(0),          JSet::finite({1, 2, 5}), JSet::finite({0, 9, 40}),
                                    JSet::cofinite({0, 3}),      JSet::cofinite({}),      JSet::up_from(10),
                                    JSet::up_from(0)};
  const std::size_t per_set = static_cast<std::size_t>(std::max(11, s.realizers));
  for (const auto& set : family) {
    UniformityLine line;
    line.set = set.to_string();
    std::vector<Nat> xs = set.first_members(per_set, s.scan);
    line.samples = set.is_finite() ? "all members" : "first " + std::to_string(xs.size()) + " members";
    line.verdict = Verdict::Verified;
    for (const auto& x : xs) {
      std::string why;
      Hit h = certified(a, x, set, p, &why);
      if (h != Hit::Yes) {
        line.verdict = h == Hit::No ? Verdict::Failed : Verdict::Unknown;
        line.detail = why;
        break;
      }
    }
    out.lines.push_back(std::move(line));
  }
  using namespace jreal::doctrine;
  Doctrine d8 = shipped_d8();
  MonoOp j = lfp_local(pitts_f_finite(d8), d8);
  UniformityResult u = uniformity_finite(j, d8);
  out.doctrine_verified = u.witness.has_value();
  out.doctrine_detail = u.witness ? "D8: <r,r> in [A=A] for all 256 sets with r = " + std::to_string(u.witness->realizer)
                                  : "D8: " + u.diagnostic;
  return out;
}

}  // namespace jreal::assembly
