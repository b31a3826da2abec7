#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "jreal/kit.hpp"
#include "jreal/seq.hpp"

using namespace jreal;
using namespace jreal::jop;

namespace {
CheckPolicy small_policy() {
  CheckPolicy p;
  p.depth = 3;
  p.window = 2;
  p.horizon = 2;
  return p;
}
}  // namespace

TEST_CASE("set text forms") {
  CHECK(parse_jset("{3, 1,2}").to_string() == "{1,2,3}");
  CHECK(parse_jset("co{4}").contains(4) == false);
  CHECK(parse_jset("co{4}").contains(5) == true);
  CHECK(parse_jset("single 5").contains(5) == true);
  CHECK(parse_jset("up 3").contains(2) == false);
  CHECK(parse_jset("{}").contains(0) == false);
  CHECK_THROWS_AS(parse_jset("{1,x}"), std::runtime_error);
  CHECK_THROWS_AS(parse_jset("evens"), std::runtime_error);
  CHECK(JSet::singleton(2).subset_of(JSet::up_from(1)) == true);
  CHECK(JSet::up_from(3).subset_of(JSet::cofinite({0, 2})) == true);
  CHECK(JSet::cofinite({1}).subset_of(JSet::finite({1, 2})) == false);
  CHECK(JSet::wedge(JSet::singleton(1), JSet::singleton(2)).contains(tuple2(1, 2)) == true);
  CHECK(JSet::wedge(JSet::singleton(1), JSet::singleton(2)).contains(tuple2(2, 1)) == false);
}

TEST_CASE("certificate text round trip") {
  for (std::string text : {"(base 5)", "(base 4 (base 9))", "(lift 1 (1 (base 3)) (2 (lift 0 (0 (base 3)))))"})
    CHECK(format_cert(*parse_cert(text)) == text);
  CHECK_THROWS_AS(parse_cert("(base)"), std::runtime_error);
  CHECK_THROWS_AS(parse_cert("(lift 1 (2 (base 1))"), std::runtime_error);
  CHECK_THROWS_AS(parse_cert("(base 1) x"), std::runtime_error);
}

TEST_CASE("base and lift rules") {
  CheckPolicy p = small_policy();
  Nat x = tuple2(0, 5);
  CHECK(check_cert(x, JSet::singleton(5), *Cert::base(5), p));
  CheckResult r = check_cert(x, JSet::singleton(6), *Cert::base(5), p);
  CHECK(!r);
  CHECK(!r.reason.empty());
  CHECK(!check_cert(Nat(7), JSet::singleton(5), *Cert::base(5), p));

  Code three = kit_code("\\m. pair 0 3");
  Nat lifted = tuple2(1, three.value);
  std::vector<std::pair<Nat, CertPtr>> tails;
  for (int m = 0; m < p.sample_end(); ++m) tails.emplace_back(Nat(m), Cert::base(3));
  CHECK(check_cert(lifted, JSet::singleton(3), *Cert::lift(0, tails), p));
  // Thresholds past the horizon and missing samples are rejected.
  auto short_tails = tails;
  short_tails.pop_back();
  CHECK(!check_cert(lifted, JSet::singleton(3), *Cert::lift(0, short_tails), p));
  std::vector<std::pair<Nat, CertPtr>> late{{Nat(p.horizon + 1), Cert::base(3)}};
  CHECK(!check_cert(lifted, JSet::singleton(3), *Cert::lift(p.horizon + 1, late), p));
  FindResult found = find_cert(lifted, Target::plain(JSet::singleton(3)), p);
  REQUIRE(found.cert);
  CHECK(found.cert->threshold == 0);
}

TEST_CASE("fuel exhaustion is reported as such") {
  CheckPolicy p = small_policy();
  p.fuel = Fuel{50};
  Code loop = kit_code("\\m. fix (\\self x. self x) m");
  std::vector<std::pair<Nat, CertPtr>> tails;
  for (int m = 0; m < p.sample_end(); ++m) tails.emplace_back(Nat(m), Cert::base(0));
  CheckResult r = check_cert(tuple2(1, loop.value), JSet::singleton(0), *Cert::lift(0, tails), p);
  CHECK(!r);
  CHECK(r.out_of_fuel);
}

TEST_CASE("kit examples") {
  const CombinatorKit& k = combinator_kit();
  CheckPolicy p = small_policy();
  EvalResult r = apply(k.a, 7, p.fuel);
  REQUIRE(r.value);
  CHECK(*r.value == tuple2(0, 7));
  CHECK(check_cert(*r.value, JSet::singleton(7), *mirror_a(7), p));

  Code three = kit_code("\\m. 3");
  r = apply(k.c, three.value, p.fuel);
  REQUIRE(r.value);
  CHECK(check_cert(*r.value, JSet::singleton(3), *mirror_c(three, 0, p), p));

  Nat aa9 = *apply(k.a, *apply(k.a, 9, p.fuel).value, p.fuel).value;
  r = apply(k.d, aa9, p.fuel);
  REQUIRE(r.value);
  CHECK(*r.value == tuple2(0, 9));
  CHECK(check_cert(*r.value, JSet::singleton(9), *mirror_d(*mirror_a(tuple2(0, 9), Cert::base(9))), p));
}

TEST_CASE("kit codes agree with their mirrors on random certified inputs") {
  const CombinatorKit& k = combinator_kit();
  CheckPolicy p = small_policy();
  std::mt19937_64 rng(11);
  Code succ = kit_code("succ");
  for (int i = 0; i < 15; ++i) {
    Nat a = rng() % 6, b = rng() % 6;
    gen::Certified x = gen::member(rng, a, 2, p);
    gen::Certified y = gen::member(rng, b, 2, p);
    REQUIRE(check_cert(x.value, JSet::singleton(a), *x.cert, p));

    EvalResult rb = apply_curried(k.b, {succ.value, x.value}, p.fuel);
    REQUIRE(rb.value);
    CertPtr cb = mirror_b(*x.cert, [](const Nat& v, const CertPtr&) { return Cert::base(v + 1); });
    CHECK(check_cert(*rb.value, JSet::singleton(a + 1), *cb, p));

    // d on a value of J(J{a}) made by a.
    Nat ax = *apply(k.a, x.value, p.fuel).value;
    EvalResult rd = apply(k.d, ax, p.fuel);
    REQUIRE(rd.value);
    CHECK(check_cert(*rd.value, JSet::singleton(a), *mirror_d(*mirror_a(x.value, x.cert)), p));

    EvalResult re = apply(k.e, tuple2(x.value, y.value), p.fuel);
    REQUIRE(re.value);
    // Lifts of both coordinates stack up in the output.
    CheckPolicy pe = p;
    pe.depth = x.cert->depth() + y.cert->depth();
    CheckResult ce = check_cert(*re.value, JSet::wedge(JSet::singleton(a), JSet::singleton(b)), *mirror_e(*x.cert, *y.cert), pe);
    CHECK_MESSAGE(ce, ce.reason, " x=", format_cert(*x.cert), " y=", format_cert(*y.cert));
  }
}

TEST_CASE("corollary G and H") {
  const CorollaryGH& gh = cor_gh();
  CheckPolicy p = small_policy();
  std::vector<Nat> ones{tuple2(0, 1), tuple2(0, 0), tuple2(0, 0)};
  EvalResult h = apply(gh.h, encode_seq(ones), p.fuel);
  REQUIRE(h.value);
  CHECK(*h.value == tuple2(0, 1));
  EvalResult g = apply(gh.g, encode_seq({tuple2(0, 2), tuple2(0, 5)}), p.fuel);
  REQUIRE(g.value);
  CHECK(*g.value == tuple2(0, 1));
  CHECK(*apply(gh.h, encode_seq({tuple2(0, 3), tuple2(0, 4)}), p.fuel).value == tuple2(0, 2));
  CHECK(*apply(gh.g, Nat(0), p.fuel).value == tuple2(0, 1));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    std::vector<Nat> as, xs;
    std::vector<CertPtr> certs;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < n; ++j) {
      as.push_back(rng() % 3);
      gen::Certified c = gen::member(rng, as.back(), 1, p);
      xs.push_back(c.value);
      certs.push_back(c.cert);
    }
    Nat want_g = 1, want_h = n;
    for (int j = n - 1; j >= 0; --j)
      if (as[j] == 0) want_g = 0, want_h = j;
    EvalResult rg = apply(gh.g, encode_seq(xs), p.fuel);
    EvalResult rh = apply(gh.h, encode_seq(xs), p.fuel);
    REQUIRE(rg.value);
    REQUIRE(rh.value);
    CHECK(check_cert(*rg.value, JSet::singleton(want_g), *mirror_g(gh.fg, certs, p), p));
    CHECK(check_cert(*rh.value, JSet::singleton(want_h), *mirror_g(gh.fh, certs, p), p));
  }
}

TEST_CASE("lemma G is built from the index of F") {
  CheckPolicy p = small_policy();
  Nat s = encode_seq({tuple2(0, 2), tuple2(0, 3)});
  EvalResult r = apply(lemma_g(kit_code("\\s. len s")), s, p.fuel);
  REQUIRE(r.value);
  CHECK(*r.value == tuple2(0, 2));
  r = apply(lemma_g(kit_code("\\s. proj s 1")), s, p.fuel);
  REQUIRE(r.value);
  CHECK(*r.value == tuple2(0, 3));
}

TEST_CASE("disjointness probe at small policies") {
  for (int depth = 1; depth <= 2; ++depth)
    for (int window : {1, 2}) {
      CheckPolicy p = small_policy();
      p.depth = depth;
      p.window = window;
      p.fuel = Fuel{2000};
      DisjointnessReport rep = disjointness_probe(60, p);
      CHECK_MESSAGE(rep.ok(), rep.first_counterexample);
      CHECK(rep.certified_zero > 0);
      CHECK(rep.certified_one > 0);
    }
}

TEST_CASE("find_singleton is unique and matches certificates") {
  CheckPolicy p = small_policy();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    Nat k = rng() % 5;
    gen::Certified x = gen::member(rng, k, 2, p);
    SingletonResult s = find_singleton(x.value, p);
    REQUIRE(s.value);
    CHECK(*s.value == k);
    CHECK(check_cert(x.value, JSet::singleton(k), *s.cert, p));
  }
  CHECK(!find_singleton(Nat(7), p).value);
}
