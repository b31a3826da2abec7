#include "jreal/kit.hpp"

#include <sstream>

#include "jreal/seq.hpp"

namespace jreal::jop {

namespace {
// One definition per line: `name = term`. Later lines may use earlier names.
constexpr std::string_view kKitSource = R"(
I = \x. x
pair = \a b. cons a (cons b nil)
fst = \p. proj p 0
snd = \p. proj p 1
sub = fix (\self a b. ifz b (\u. a) (\u. self (pred a) (pred b)) 0)
eq = \a b. ifz (sub a b) (\u. ifz (sub b a) (\v. 0) (\v. 1) 0) (\u. 1) 0
mapi = fix (\go f s i acc. ifz i (\u. acc) (\u. go f s (pred i) (cons (f (pred i) (proj s (pred i))) acc)) 0)
map = \f s. mapi (\i x. f x) s (len s) nil
replace = \s i v. mapi (\j x. ifz (eq j i) (\u. v) (\u. x) 0) s (len s) nil
firstlift = fix (\go s i. ifz (sub (len s) i) (\u. i) (\u. ifz (fst (proj s i)) (\v. go s (succ i)) (\v. i) 0) 0)
upto = \f n. (fix (\go i acc. ifz i (\u. acc) (\u. go (pred i) (cons (f (pred i)) acc)) 0)) (succ n) nil
a = \x. pair 0 x
c = \f. pair 1 (\m. pair 0 (f m))
b = \g. fix (\self x. ifz (fst x) (\u. pair 0 (g (snd x))) (\u. pair 1 (\m. self (snd x m))) 0)
d = fix (\self x. ifz (fst x) (\u. snd x) (\u. pair 1 (\m. self (snd x m))) 0)
e = \p. d (b (\u. b (\v. pair u v) (snd p)) (fst p))
LG = \F. fix (\self s. (\i. ifz (sub (len s) i) (\u. pair 0 (F (map snd s))) (\u. pair 1 (\m. self (replace s i (snd (proj s i) m)))) 0) (firstlift s 0))
anyzero = fix (\go s i. ifz (sub (len s) i) (\u. 1) (\u. ifz (proj s i) (\v. 0) (\v. go s (succ i)) 0) 0)
FG = \s. anyzero s 0
FH = \s. (fix (\go i. ifz (sub (len s) i) (\u. i) (\u. ifz (proj s i) (\v. i) (\v. go (succ i)) 0) 0)) 0
G = LG FG
H = LG FH
)";

Definitions build_definitions() {
  Definitions defs;
  std::istringstream in{std::string(kKitSource)};
  for (std::string line; std::getline(in, line);) {
    auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    std::string name = line.substr(0, eq);
    defs[name] = parse_closed_term(line.substr(eq + 3), defs);
  }
  return defs;
}

Code named(std::string_view name) { return code_of(kit_definitions().find(name)->second); }
}  // namespace

const Definitions& kit_definitions() {
  static const Definitions defs = build_definitions();
  return defs;
}

Code kit_code(std::string_view text) { return code_of(parse_closed_term(text, kit_definitions())); }

const CombinatorKit& combinator_kit() {
  static const CombinatorKit kit{named("a"), named("b"), named("c"), named("d"), named("e")};
  return kit;
}

CertPtr mirror_a(const Nat& x, CertPtr inner) { return Cert::base(x, std::move(inner)); }

CertPtr mirror_b(const Cert& in, const BaseMap& base_map) {
  if (in.kind == Cert::Kind::Base) return base_map(in.a, in.inner);
  std::vector<std::pair<Nat, CertPtr>> tails;
  for (const auto& [m, t] : in.tails) {
    CertPtr mapped = mirror_b(*t, base_map);
    if (!mapped) return nullptr;
    tails.emplace_back(m, std::move(mapped));
  }
  return Cert::lift(in.threshold, std::move(tails));
}

CertPtr mirror_c(const Code& f, const Nat& n, const CheckPolicy& p) {
  std::vector<std::pair<Nat, CertPtr>> tails;
  for (Nat m = n; m < p.sample_end(); ++m) {
    EvalResult r = apply(f, m, p.fuel);
    if (r.out_of_fuel()) return nullptr;
    tails.emplace_back(m, Cert::base(*r.value));
  }
  return Cert::lift(n, std::move(tails));
}

CertPtr mirror_d(const Cert& in) {
  if (in.kind == Cert::Kind::Base) return in.inner;
  std::vector<std::pair<Nat, CertPtr>> tails;
  for (const auto& [m, t] : in.tails) {
    CertPtr mapped = mirror_d(*t);
    if (!mapped) return nullptr;
    tails.emplace_back(m, std::move(mapped));
  }
  return Cert::lift(in.threshold, std::move(tails));
}

CertPtr mirror_e(const Cert& cx, const Cert& cy) {
  // d (b g x) with g u = b (pair u) y: the outer b's base case lands one
  // level up and d strips it again.
  return mirror_b(cx, [&](const Nat& u, const CertPtr&) {
    return mirror_b(cy, [&](const Nat& v, const CertPtr&) { return Cert::base(tuple2(u, v)); });
  });
}

Code lemma_g(const Code& f) {
  return code_of(tapp(kit_definitions().find("LG")->second, tnum(f.value)));
}

Nat certified_singleton(const Cert& c) {
  return c.kind == Cert::Kind::Base ? c.a : certified_singleton(*c.tails.front().second);
}

CertPtr mirror_g(const Code& f, std::span<const CertPtr> inputs, const CheckPolicy& p) {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Cert& ci = *inputs[i];
    if (ci.kind == Cert::Kind::Base) continue;
    std::vector<CertPtr> replaced(inputs.begin(), inputs.end());
    std::vector<std::pair<Nat, CertPtr>> tails;
    for (const auto& [m, t] : ci.tails) {
      replaced[i] = t;
      CertPtr sub = mirror_g(f, replaced, p);
      if (!sub) return nullptr;
      tails.emplace_back(m, std::move(sub));
    }
    return Cert::lift(ci.threshold, std::move(tails));
  }
  std::vector<Nat> as;
  for (const CertPtr& c : inputs) as.push_back(c->a);
  EvalResult r = apply(f, encode_seq(as), p.fuel);
  if (r.out_of_fuel()) return nullptr;
  return Cert::base(*r.value);
}

const CorollaryGH& cor_gh() {
  static const CorollaryGH gh{named("FG"), named("FH"), named("G"), named("H")};
  return gh;
}

DisjointnessReport disjointness_probe(std::uint64_t budget, const CheckPolicy& p) {
  DisjointnessReport rep;
  const Target zero = Target::plain(JSet::singleton(0));
  const Target one = Target::plain(JSet::singleton(1));
  const Target both = Target::plain(JSet::finite({0, 1}));
  const Target none = Target::plain(JSet::empty());
  auto probe = [&](const Nat& x) {
    ++rep.checked;
    FindResult c0 = find_cert(x, zero, p);
    FindResult c1 = find_cert(x, one, p);
    if (c0.cert) ++rep.certified_zero;
    if (c1.cert) ++rep.certified_one;
    if (c0.cert && c1.cert) {
      if (!rep.double_certified++) rep.first_counterexample = "x=" + to_string(x) + " in J{0} and J{1}";
    }
    if (find_cert(x, none, p).cert) {
      if (!rep.empty_certified++) rep.first_counterexample = "x=" + to_string(x) + " in J(empty)";
    }
    if (c0.cert && !check_cert(x, both, *c0.cert, p)) {
      if (!rep.inclusion_failures++) rep.first_counterexample = "x=" + to_string(x) + " J{0} cert fails for J{0,1}";
    }
  };
  for (std::uint64_t x = 0; x < budget; ++x) probe(Nat(x));
  for (std::uint64_t e = 0; e < budget; ++e) probe(tuple2(1, e));
  return rep;
}

}  // namespace jreal::jop
