#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "jreal/kit.hpp"
#include "jreal/seq.hpp"
#include "jreal/skolem.hpp"
#include "skolem_gen.hpp"

using namespace jreal;
using namespace jreal::skolem;

namespace {
std::size_t idx(const char* text) { return index_of(parse_quasipoly(text)); }
}  // namespace

TEST_CASE("quasi-polynomial arithmetic agrees with pointwise evaluation") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    QuasiPoly a = skgen::quasipoly(rng), b = skgen::quasipoly(rng);
    QuasiPoly s = a + b, p = a * b, c = compose(a, b);
    const std::size_t l = std::lcm(a.modulus(), b.modulus());
    for (Nat n = 0; n <= 3 * l; ++n) {
      INFO(to_string(a), " / ", to_string(b), " at ", to_string(n));
      CHECK(s(n) == a(n) + b(n));
      CHECK(p(n) == a(n) * b(n));
      CHECK(c(n) == a(b(n)));
    }
    CHECK(parse_quasipoly(to_string(c)) == c);
  }
  QuasiPoly q = parse_quasipoly("mod 4: 0 -> n; 1 -> 1; 2 -> n; 3 -> 1 + 0 n^2");
  CHECK(q.modulus() == 2);
  CHECK(to_string(q) == "mod 2: 0 -> n; 1 -> 1");
  CHECK(to_string(parse_quasipoly("3 n^2 + n + 2")) == "2 + n + 3 n^2");
  CHECK_THROWS_AS(parse_quasipoly("mod 2: 0 -> n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quasipoly("mod 2: 0 -> n; 0 -> 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quasipoly("n +"), std::invalid_argument);
}

TEST_CASE("enumeration lists every canonical function once, by grade") {
  CHECK(enumerate(0) == QuasiPoly::constant(0));
  CHECK(enumerate(1) == QuasiPoly::constant(1));
  CHECK(enumerate(4) == parse_quasipoly("mod 2: 0 -> 0; 1 -> 1"));

  // Brute force: moduli <= 4, residues of degree <= 3 and coefficient sum <= 3.
  std::vector<Poly> small;
  for (int c0 = 0; c0 <= 3; ++c0)
    for (int c1 = 0; c0 + c1 <= 3; ++c1)
      for (int c2 = 0; c0 + c1 + c2 <= 3; ++c2)
        for (int c3 = 0; c0 + c1 + c2 + c3 <= 3; ++c3) small.push_back(trim({c0, c1, c2, c3}));
  std::set<std::string> expected;
  std::function<void(std::vector<Poly>&, std::size_t)> fill = [&](std::vector<Poly>& res, std::size_t m) {
    if (res.size() == m) {
      QuasiPoly q(res);
      if (grade(q) <= 4) expected.insert(to_string(q));
      return;
    }
    for (const auto& p : small) {
      res.push_back(p);
      fill(res, m);
      res.pop_back();
    }
  };
  for (std::size_t m = 1; m <= 4; ++m) {
    std::vector<Poly> res;
    fill(res, m);
  }
  std::set<std::string> listed;
  const std::size_t k = count_up_to_grade(4);
  for (std::size_t i = 0; i < k; ++i) listed.insert(to_string(enumerate(i)));
  CHECK(listed.size() == k);
  CHECK(listed == expected);
  for (std::size_t i = 0; i < count_up_to_grade(6); ++i) CHECK(index_of(enumerate(i)) == i);
}

TEST_CASE("chain: nesting, psi, and the first infinite cell") {
  Chain c;
  c.extend_to(1);
  CHECK(c.set(1).modulus == 1);
  CHECK(c.sign(0, 1) == Sign::Less);
  c.extend_to(4);
  CHECK(c.set(4).modulus == 2);
  CHECK(std::count(c.set(4).residues.begin(), c.set(4).residues.end(), true) == 1);

  // Replays each split: the cells before the chosen one have no members far
  // out in A_k, and A_{k+1} lies inside the chosen cell.
  Chain audit;
  for (std::size_t k = 0; k < 40; ++k) {
    auto groups = audit.order();
    const DefinableSet before = audit.set(k);
    audit.extend();
    const QuasiPoly& alpha = audit.alpha(k + 1);
    auto cell = [&](const Nat& n) {
      for (std::size_t g = 0; g < groups.size(); ++g) {
        Nat b = audit.alpha(groups[g][0])(n), v = alpha(n);
        if (v < b) return 2 * g;
        if (v == b) return 2 * g + 1;
      }
      return 2 * groups.size();
    };
    std::size_t chosen = cell(audit.set(k + 1).least_from(1000000));
    Nat n = before.least_from(1000000);
    for (int i = 0; i < 400; ++i, n = before.least_from(n + 1)) {
      INFO("step ", k + 1, " n = ", to_string(n));
      CHECK(cell(n) >= chosen);
      if (audit.set(k + 1).contains(n)) CHECK(cell(n) == chosen);
    }
  }

  c.extend_to(200);
  for (std::size_t k = 0; k < 200; ++k) {
    CHECK(c.psi()[k] < c.psi()[k + 1]);
    CHECK(c.set(k).includes(c.set(k + 1)));
    CHECK(c.set(k + 1).infinite());
    CHECK(c.set(k + 1).contains(c.psi()[k + 1]));
  }
}

TEST_CASE("trichotomy matches sampled values along psi") {
  Model m;
  Chain& c = m.chain();
  c.extend_to(80);
  for (std::size_t i = 0; i <= 30; ++i)
    for (std::size_t j = 0; j <= 30; ++j) {
      Sign s = c.sign(i, j);
      CHECK(m.compare(c.alpha(i), c.alpha(j)) == s);
      for (std::size_t k = 30; k < 80; ++k) {
        Nat a = c.alpha(i)(c.psi()[k]), b = c.alpha(j)(c.psi()[k]);
        CHECK((s == Sign::Less ? a < b : s == Sign::Equal ? a == b : a > b));
      }
    }
  CHECK(c.sign(7, 7) == Sign::Equal);
  CHECK(c.sign(idx("n"), idx("5")) == Sign::Greater);
}

TEST_CASE("iota, apply_fn and class equality") {
  Model m;
  ModelElem id{QuasiPoly::identity()};
  CHECK(m.equal({Model::iota(3).rep + Model::iota(4).rep}, Model::iota(7)));
  ModelElem next = Model::apply_fn(parse_quasipoly("n + 1"), id);
  CHECK(m.equal(next, {parse_quasipoly("1 + n")}));
  for (int k = 0; k <= 100; ++k) CHECK_FALSE(m.equal(next, Model::iota(k)));

  // beta agrees with alpha on the classes of psi's tail and differs elsewhere.
  std::mt19937_64 rng(11);
  m.chain().extend_to(60);
  const DefinableSet& tail = m.chain().set(60);
  for (int t = 0; t < 20; ++t) {
    QuasiPoly alpha = skgen::quasipoly(rng), f = skgen::quasipoly(rng);
    const std::size_t l = std::lcm(tail.modulus, alpha.modulus());
    std::vector<Poly> res(l);
    for (std::size_t s = 0; s < l; ++s) res[s] = tail.residues[s % tail.modulus] ? alpha.residue(s) : Poly{Nat(rng() % 9)};
    ModelElem a{alpha}, b{QuasiPoly(res)};
    CHECK(m.equal(a, b));
    CHECK(m.equal(Model::apply_fn(f, a), Model::apply_fn(f, b)));
    CHECK(m.canonical(a) == m.canonical(b));
  }
}

TEST_CASE("quantifier-free truth and transfer") {
  using namespace jreal::realize;
  Model m;
  ModelElem id{QuasiPoly::identity()}, parity{parse_quasipoly("mod 2: 0 -> 0; 1 -> 1")};
  CHECK(truth_qf(m, *parse_formula("5 < x"), {{"x", id}}));
  CHECK(truth_qf(m, *parse_formula("2 * 3 = 6"), {}));
  CHECK(truth_qf(m, *parse_formula("x * x = x"), {{"x", parity}}));
  CHECK_THROWS_AS(truth_qf(m, *parse_formula("exists x. x = 0"), {}), std::invalid_argument);

  TransferReport r = transfer_check(m, parse_formula("x = x"), {{"x", id}});
  CHECK(r.agree);
  CHECK(r.model == true);
  CHECK_FALSE(r.standard);
  TransferReport q = transfer_check(m, parse_formula("exists x. x = S 0"), {});
  CHECK_FALSE(q.quantifier_free);
  CHECK(q.agree);

  std::mt19937_64 rng(23);
  int disagreements = 0;
  for (int i = 0; i < 50; ++i) {
    FormulaPtr f = skgen::qf_formula(rng, 2);
    Args args = skgen::args(rng);
    TransferReport t = transfer_check(m, f, args);
    INFO(to_string(*f), " ", t.detail);
    if (!t.agree) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("standardness is decided along psi") {
  Model m;
  CHECK(m.is_standard(Model::iota(9)));
  CHECK(m.standard_value(Model::iota(9)) == Nat(9));
  CHECK_FALSE(m.is_standard({QuasiPoly::identity()}));
  ModelElem parity{parse_quasipoly("mod 2: 0 -> 0; 1 -> 1")};
  REQUIRE(m.is_standard(parity));
  CHECK(m.equal(parity, Model::iota(*m.standard_value(parity))));

  m.chain().extend_to(120);
  for (std::size_t i = 0; i < 50; ++i) {
    ModelElem e{enumerate(i)};
    bool standard = m.is_standard(e);
    std::set<Nat> values;
    bool increasing = true;
    for (std::size_t k = 60; k < 120; ++k) {
      values.insert(e.rep(m.chain().psi()[k]));
      if (k > 60) increasing = increasing && e.rep(m.chain().psi()[k]) > e.rep(m.chain().psi()[k - 1]);
    }
    INFO(to_string(e.rep));
    CHECK(standard == (values.size() == 1));
    if (!standard) CHECK(increasing);
  }
}

TEST_CASE("St assembly and the standardness realizer") {
  Model m;
  jop::CheckPolicy p;
  StReport r = st_assembly(m, p, 20);
  for (const auto& [name, t] : r.tracking) {
    INFO(name, " ", t.detail);
    CHECK(t.verdict == assembly::Verdict::Verified);
  }
  CHECK(r.st_check.check.verdict == assembly::Verdict::Verified);
  CHECK(r.verdict.kind == realize::Verdict3::Kind::Realized);
  CHECK(r.verified());

  // St(i(3)) takes the left branch, [n] the right one.
  const Nat branch = seq_proj(r.realizer, 1);
  auto tag = [&](const Point& x) {
    EvalResult v = apply(Code{branch}, x, p.fuel);
    REQUIRE(v.value);
    return seq_proj(seq_proj(*v.value, 1), 0);
  };
  CHECK(tag(point_of(m, Model::iota(3))) == 0);
  CHECK(tag(point_of(m, {QuasiPoly::identity()})) == 1);
}
