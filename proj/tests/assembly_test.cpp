#include <random>

#include "doctest.h"
#include "jreal/assembly.hpp"
#include "jreal/kit.hpp"
#include "jreal/seq.hpp"

using namespace jreal;
using namespace jreal::assembly;

namespace {
Morphism succ_map() { return {[](const Point& n) { return Point(n + 1); }, jop::kit_code("\\r. a (succ r)"), "succ"}; }

// Four points, point i realized by {i, i+4}.
Assembly four() {
  std::vector<std::string> names;
  std::vector<JSet> sets;
  for (int i = 0; i < 4; ++i) {
    names.push_back("p" + std::to_string(i));
    sets.push_back(JSet::finite({i, i + 4}));
  }
  return Assembly::finite(names, sets);
}

// The map given by its table on four(), tracked by table lookup modulo 4.
Morphism table_map(const std::vector<int>& t) {
  std::vector<Nat> seq(t.begin(), t.end());
  seq.insert(seq.end(), t.begin(), t.end());
  Morphism m;
  m.map = [t](const Point& x) { return Point(t.at(static_cast<std::size_t>(to_u64(x)))); };
  m.tracker = jop::kit_code("\\r. a (proj " + to_string(encode_seq(seq)) + " r)");
  m.name = "table";
  return m;
}

CheckPolicy quick() {
  CheckPolicy p;
  p.fuel = Fuel{5000};
  return p;
}
}  // namespace

TEST_CASE("tracking on the natural numbers object") {
  Assembly n = Assembly::nat();
  TrackResult id = check_tracking(identity(n), n, n, {});
  CHECK(id.verdict == Verdict::Verified);
  CHECK(id.sampled);
  CHECK(check_tracking(succ_map(), n, n, {}).verdict == Verdict::Verified);

  Morphism wrong = succ_map();
  wrong.tracker = jop::kit_code("\\r. a 0");
  TrackResult bad = check_tracking(wrong, n, n, {});
  CHECK(bad.verdict == Verdict::Failed);
  REQUIRE(bad.point);
  CHECK(*bad.point == 0);
}

TEST_CASE("composition") {
  Assembly n = Assembly::nat();
  CHECK(check_tracking(compose(identity(n), identity(n)), n, n, {}).verdict == Verdict::Verified);
  Morphism two = compose(succ_map(), succ_map());
  CHECK(two.map(Point(5)) == 7);
  CHECK(check_tracking(two, n, n, {}).verdict == Verdict::Verified);
}

TEST_CASE("composition is associative and coherent on a finite carrier") {
  Assembly x = four();
  std::mt19937 rng(11);
  auto random_table = [&] {
    std::vector<int> t(4);
    for (auto& v : t) v = static_cast<int>(rng() % 4);
    return t;
  };
  for (int trial = 0; trial < 10; ++trial) {
    Morphism f = table_map(random_table()), g = table_map(random_table()), h = table_map(random_table());
    REQUIRE(check_tracking(f, x, x, {}).verdict == Verdict::Verified);
    Morphism left = compose(compose(f, g), h), right = compose(f, compose(g, h));
    for (int p = 0; p < 4; ++p) CHECK(left.map(Point(p)) == right.map(Point(p)));
    CHECK(check_tracking(compose(f, g), x, x, {}).verdict == Verdict::Verified);
    CHECK(check_tracking(left, x, x, {}).verdict == Verdict::Verified);
    CHECK(check_tracking(right, x, x, {}).verdict == Verdict::Verified);
  }
}

TEST_CASE("products") {
  Assembly n = Assembly::nat();
  Assembly nn = Assembly::product(n, n);
  JSet e = nn.realizers(Assembly::pair(3, 8));
  CHECK(e.contains(tuple2(3, 8)) == true);
  CHECK(e.contains(tuple2(3, 9)) == false);
  CHECK(e.contains(tuple2(8, 3)) == false);
  CHECK(check_tracking(projection_left(nn), nn, n, {}).verdict == Verdict::Verified);
  CHECK(check_tracking(projection_right(nn), nn, n, {}).verdict == Verdict::Verified);
  CHECK(check_tracking(pairing(identity(n), succ_map()), n, nn, {}).verdict == Verdict::Verified);

  Assembly small = parse_assembly("point u realizers {1}\npoint v realizers {2,3}\n");
  CHECK(Assembly::product(four(), small).size() == 8);
  Assembly fs = Assembly::product(four(), small);
  CHECK(check_tracking(projection_right(fs), fs, small, {}).verdict == Verdict::Verified);
}

TEST_CASE("assembly text format") {
  Assembly a = parse_assembly("# two points\npoint x realizers {0, 4}\npoint y realizers upfrom 7\n");
  CHECK(a.size() == 2);
  CHECK(a.realizers(1).contains(9) == true);
  CHECK(parse_assembly(format_assembly(a)).realizers(0).to_string() == "{0,4}");
  CHECK_THROWS(parse_assembly("point x realizers {}"));
  CHECK_THROWS(parse_assembly("point x {1}"));
  CHECK_THROWS(parse_assembly("point x realizers {1}\npoint x realizers {2}"));
}

TEST_CASE("exponents of finite assemblies") {
  Assembly one = parse_assembly("point * realizers {0}");
  Exponent e = exponent_finite(one, one, 300, quick());
  REQUIRE(e.object.size() == 1);
  CHECK(e.maps[0] == std::vector<std::size_t>{0});

  // Both points share the realizer 0, and the targets have disjoint
  // realizers, so only the constant maps can be tracked.
  Assembly two = parse_assembly("point p realizers {0}\npoint q realizers {0}");
  Assembly uv = parse_assembly("point u realizers {0}\npoint v realizers {1}");
  Exponent f = exponent_finite(two, uv, 300, quick());
  CHECK(f.object.size() == 2);
  // Codes that run out of fuel leave a map undecided rather than excluded.
  CHECK(f.excluded + f.undecided.size() == 2);
  for (const auto& m : f.maps) CHECK(m[0] == m[1]);
  for (const auto& m : f.undecided) CHECK(m[0] != m[1]);

  Assembly prod = Assembly::product(f.object, two);
  CHECK(check_tracking(evaluation(f, two), prod, uv, quick()).verdict == Verdict::Verified);
}

TEST_CASE("subobjects") {
  Assembly n = Assembly::nat();
  Subobject same{[](const Point& x) { return JSet::singleton(x); }, jop::kit_code("a")};
  SubobjectResult r = subobject_check(same, n, {});
  CHECK(r.check.verdict == Verdict::Verified);
  CHECK(r.support.size() == 51);

  Subobject none{[](const Point&) { return JSet::empty(); }, Code{0}};
  SubobjectResult v = subobject_check(none, n, {});
  CHECK(v.check.verdict == Verdict::Verified);
  CHECK(v.support.empty());

  Subobject evens{[](const Point& x) { return bit_test(x, 0) ? JSet::empty() : JSet::singleton(x); },
                  jop::kit_code("a")};
  SubobjectResult ev = subobject_check(evens, n, {});
  CHECK(ev.check.verdict == Verdict::Verified);
  CHECK(ev.support.size() == 26);
}

TEST_CASE("uniformity realizer") {
  UniformityReport r = omega_uniformity({});
  for (const auto& l : r.lines) {
    INFO(l.set, " ", l.detail);
    CHECK(l.verdict == Verdict::Verified);
  }
  CHECK(r.doctrine_verified);
  CHECK(r.verified());
}
