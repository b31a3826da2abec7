#include "jreal/realize.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <tuple>

#include "jreal/kit.hpp"
#include "jreal/seq.hpp"

namespace jreal::realize {

using jop::Target;
using jreal::to_string;

Structure arithmetic() {
  Structure s;
  s.carrier = Assembly::nat();
  s.numeral = [](const Nat& n) { return n; };
  s.succ = [](const Point& x) { return Point(x + 1); };
  s.add = [](const Point& x, const Point& y) { return Point(x + y); };
  s.mul = [](const Point& x, const Point& y) { return Point(x * y); };
  s.count_below = [](const Point& x) { return static_cast<std::size_t>(to_u64(x)); };
  s.relations["<"] = {2, [](const std::vector<Point>& v) {
                        return v[0] < v[1] ? JSet::singleton(tuple2(v[0], v[1])) : JSet::empty();
                      }};
  s.name = "N";
  return s;
}

Structure modular(Assembly carrier) {
  const Nat k = carrier.size();
  if (k == 0) throw std::invalid_argument("empty carrier");
  Structure s;
  s.carrier = std::move(carrier);
  s.numeral = [k](const Nat& n) { return Point(n % k); };
  s.succ = [k](const Point& x) { return Point((x + 1) % k); };
  s.add = [k](const Point& x, const Point& y) { return Point((x + y) % k); };
  s.mul = [k](const Point& x, const Point& y) { return Point((x * y) % k); };
  s.count_below = [](const Point& x) { return static_cast<std::size_t>(to_u64(x)); };
  s.relations["<"] = {2, [](const std::vector<Point>& v) {
                        return v[0] < v[1] ? JSet::singleton(tuple2(v[0], v[1])) : JSet::empty();
                      }};
  s.name = "Z/" + to_string(k);
  return s;
}

std::string kind_name(Verdict3::Kind k) {
  switch (k) {
    case Verdict3::Kind::Realized:
      return "Realized";
    case Verdict3::Kind::Refuted:
      return "Refuted";
    case Verdict3::Kind::Unknown:
      return "Unknown";
  }
  return "?";
}

namespace {

// Variables in scope, innermost last. Points bound by a bounded quantifier's
// expansion are not part of the realizer context.
struct Binding {
  std::string name;
  Point point;
  bool in_context;
};
using Scope = std::vector<Binding>;

Scope scope_of(const Env& env) {
  Scope s;
  for (auto it = env.vars.rbegin(); it != env.vars.rend(); ++it) s.push_back({it->first, it->second, true});
  return s;
}

Point lookup(const Scope& sc, const std::string& x) {
  for (auto it = sc.rbegin(); it != sc.rend(); ++it)
    if (it->name == x) return it->point;
  throw std::invalid_argument("unassigned variable " + x);
}

// Context points, innermost first.
std::vector<Point> context(const Scope& sc) {
  std::vector<Point> out;
  for (auto it = sc.rbegin(); it != sc.rend(); ++it)
    if (it->in_context) out.push_back(it->point);
  return out;
}

Point eval(const Term& t, const Scope& sc, const Structure& s) {
  switch (t.kind) {
    case Term::Kind::Var:
      return lookup(sc, t.var);
    case Term::Kind::Num:
      return s.numeral(t.num);
    case Term::Kind::Succ:
      return s.succ(eval(*t.l, sc, s));
    case Term::Kind::Add:
      return s.add(eval(*t.l, sc, s), eval(*t.r, sc, s));
    case Term::Kind::Mul:
      return s.mul(eval(*t.l, sc, s), eval(*t.r, sc, s));
  }
  return 0;
}

const FormulaPtr& truth_atom() {
  static const FormulaPtr f = f_eq(t_num(0), t_num(0));
  return f;
}
const FormulaPtr& false_atom() {
  static const FormulaPtr f = f_eq(t_num(0), t_succ(t_num(0)));
  return f;
}

enum class Truth { Yes, No, Unk };

Truth both(Truth a, Truth b) {
  if (a == Truth::No || b == Truth::No) return Truth::No;
  if (a == Truth::Unk || b == Truth::Unk) return Truth::Unk;
  return Truth::Yes;
}

Nat a_of(const Nat& x) { return tuple2(0, x); }

// The canonical element of JE(x1) ^ ... ^ JE(xn) over N.
Nat nat_context_realizer(const Scope& sc) {
  std::vector<Point> ctx = context(sc);
  if (ctx.empty()) return 0;
  if (ctx.size() == 1) return a_of(ctx[0]);
  std::vector<Nat> parts;
  for (const auto& x : ctx) parts.push_back(a_of(x));
  return encode_seq(parts);
}

bool truth_n(const Formula& f, Scope& sc, const Windows& w, const Structure& n);

class Builder {
 public:
  Builder(const Windows& w) : w_(w), n_(arithmetic()) {}

  // Requires f true under sc; nullopt when a witness is missing.
  std::optional<Nat> build(const Formula& f, Scope& sc) {
    switch (f.kind) {
      case Formula::Kind::Eq:
        return nat_context_realizer(sc);
      case Formula::Kind::Rel:
        if (f.name != "<") return std::nullopt;
        return tuple2(eval(*f.args[0], sc, n_), eval(*f.args[1], sc, n_));
      case Formula::Kind::And: {
        auto l = build(*f.a, sc), r = build(*f.b, sc);
        if (!l || !r) return std::nullopt;
        return tuple2(*l, *r);
      }
      case Formula::Kind::Or:
        if (truth_n(*f.a, sc, w_, n_)) {
          auto l = build(*f.a, sc);
          return l ? std::optional<Nat>(tuple2(0, *l)) : std::nullopt;
        } else {
          auto r = build(*f.b, sc);
          return r ? std::optional<Nat>(tuple2(1, *r)) : std::nullopt;
        }
      case Formula::Kind::Imp: {
        Nat body = 0;
        if (truth_n(*f.b, sc, w_, n_)) {
          auto r = build(*f.b, sc);
          if (!r) return std::nullopt;
          body = *r;
        }
        Code k = jop::kit_code("\\m. a " + to_string(body));
        return tuple2(nat_context_realizer(sc), k.value);
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        if (f.bounded) return bounded(f, sc);
        if (f.kind == Formula::Kind::Forall) return std::nullopt;
        for (int x = 0; x < w_.witness; ++x) {
          sc.push_back({f.name, Point(x), true});
          bool ok = truth_n(*f.a, sc, w_, n_);
          std::optional<Nat> r = ok ? build(*f.a, sc) : std::nullopt;
          sc.pop_back();
          if (r) return tuple2(a_of(x), *r);
        }
        return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  std::optional<Nat> bounded(const Formula& f, Scope& sc) {
    const std::size_t k = n_.count_below(eval(*f.t, sc, n_));
    const bool conj = f.kind == Formula::Kind::Forall;
    if (k == 0) return conj ? std::optional<Nat>(nat_context_realizer(sc)) : std::nullopt;
    auto at = [&](std::size_t i) {
      sc.push_back({f.name, Point(i), false});
      bool ok = truth_n(*f.a, sc, w_, n_);
      std::optional<Nat> r = ok ? build(*f.a, sc) : std::nullopt;
      sc.pop_back();
      return r;
    };
    if (conj) {
      std::optional<Nat> acc = at(k - 1);
      for (std::size_t i = k - 1; i-- > 0 && acc;) {
        auto r = at(i);
        acc = r ? std::optional<Nat>(tuple2(*r, *acc)) : std::nullopt;
      }
      return acc;
    }
    for (std::size_t i = 0; i < k; ++i) {
      auto r = at(i);
      if (!r) continue;
      Nat acc = i + 1 == k ? *r : tuple2(0, *r);
      for (std::size_t j = i; j-- > 0;) acc = tuple2(1, acc);
      return acc;
    }
    return std::nullopt;
  }

  const Windows& w_;
  Structure n_;
};

bool truth_n(const Formula& f, Scope& sc, const Windows& w, const Structure& n) {
  switch (f.kind) {
    case Formula::Kind::Eq:
      return eval(*f.t, sc, n) == eval(*f.s, sc, n);
    case Formula::Kind::Rel:
      if (f.name != "<" || f.args.size() != 2) throw std::invalid_argument("unknown relation " + f.name);
      return eval(*f.args[0], sc, n) < eval(*f.args[1], sc, n);
    case Formula::Kind::And:
      return truth_n(*f.a, sc, w, n) && truth_n(*f.b, sc, w, n);
    case Formula::Kind::Or:
      return truth_n(*f.a, sc, w, n) || truth_n(*f.b, sc, w, n);
    case Formula::Kind::Imp:
      return !truth_n(*f.a, sc, w, n) || truth_n(*f.b, sc, w, n);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const bool all = f.kind == Formula::Kind::Forall;
      if (!f.bounded && all) throw std::invalid_argument("unbounded forall has no decision procedure");
      const std::size_t k =
          f.bounded ? n.count_below(eval(*f.t, sc, n)) : static_cast<std::size_t>(std::max(w.witness, 0));
      for (std::size_t i = 0; i < k; ++i) {
        sc.push_back({f.name, Point(i), false});
        bool v = truth_n(*f.a, sc, w, n);
        sc.pop_back();
        if (v != all) return v;
      }
      return all;
    }
  }
  return false;
}

class Checker {
 public:
  Checker(const Structure& s, const CheckPolicy& p, const Windows& w, std::set<std::string>& caveats)
      : s_(s), p_(p), w_(w), caveats_(caveats), nat_(s.carrier.kind() == Assembly::Kind::Nat) {}

  std::string diagnostic;

  Truth realizes(const Nat& e, const Formula& f, Scope& sc) {
    auto key = std::make_tuple(&f, signature(sc), e);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Truth t = clause(e, f, sc);
    memo_.emplace(std::move(key), t);
    return t;
  }

 private:
  static std::string signature(const Scope& sc) {
    std::string out;
    for (const auto& b : sc) out += b.name + (b.in_context ? "=" : ":") + b.point.str() + ";";
    return out;
  }

  Truth unknown(std::string why) {
    if (diagnostic.empty()) diagnostic = std::move(why);
    return Truth::Unk;
  }

  Truth member(const Nat& v, const JSet& set) {
    jop::FindResult r = jop::find_cert(v, Target::plain(set), p_);
    if (r.cert) return Truth::Yes;
    if (r.out_of_fuel) return unknown("certificate search for " + to_string(v) + " in J" + set.to_string() + " ran out of fuel");
    return Truth::No;
  }

  // e in JE(x1) ^ ... ^ JE(xn).
  Truth in_context(const Nat& e, const Scope& sc) {
    std::vector<Point> ctx = context(sc);
    if (ctx.empty()) return Truth::Yes;
    if (ctx.size() == 1) return member(e, s_.carrier.realizers(ctx[0]));
    if (seq_length(e) != ctx.size()) return Truth::No;
    Truth t = Truth::Yes;
    for (std::size_t i = 0; i < ctx.size() && t != Truth::No; ++i)
      t = both(t, member(seq_proj(e, i), s_.carrier.realizers(ctx[i])));
    return t;
  }

  // The set {k | k realizes f(sc)} as a predicate over a copy of the scope.
  JSet realizer_set(const Formula& f, const Scope& sc) {
    return JSet::by_predicate("{k | k realizes " + to_string(f) + "}",
                              [this, &f, sc](const Nat& k, Fuel) -> std::optional<bool> {
                                Scope local = sc;
                                Truth t = realizes(k, f, local);
                                if (t == Truth::Unk) return std::nullopt;
                                return t == Truth::Yes;
                              });
  }

  // phi_c(m) is defined and in J{k | k realizes f(sc)}.
  Truth maps_into(const Nat& c, const Nat& m, const Formula& f, const Scope& sc) {
    EvalResult r = apply(Code{c}, m, p_.fuel);
    if (r.out_of_fuel()) return unknown("phi_" + to_string(c) + "(" + to_string(m) + ") ran out of fuel");
    return member(*r.value, realizer_set(f, sc));
  }

  std::vector<Point> domain() {
    if (s_.carrier.is_finite()) return s_.carrier.points({});
    if (nat_)
      caveats_.insert("quantifiers over " + s_.name + " range over [0," + std::to_string(w_.points - 1) + "]");
    else
      caveats_.insert("quantifiers over " + s_.name + " range over " + std::to_string(w_.points) + " sampled points");
    assembly::Sampling smp;
    smp.points = w_.points;
    return s_.carrier.points(smp);
  }

  std::vector<Nat> realizers_of(const Point& y) {
    JSet e = s_.carrier.realizers(y);
    if (!e.is_finite() && e.kind() != JSet::Kind::Singleton) caveats_.insert("infinite realizer sets are sampled");
    return s_.carrier.sample_realizers(y, {});
  }

  Truth clause(const Nat& e, const Formula& f, Scope& sc) {
    switch (f.kind) {
      case Formula::Kind::Eq: {
        Truth c = in_context(e, sc);
        if (c == Truth::No) return c;
        return eval(*f.t, sc, s_) == eval(*f.s, sc, s_) ? c : Truth::No;
      }
      case Formula::Kind::Rel: {
        auto it = s_.relations.find(f.name);
        if (it == s_.relations.end() || it->second.first != static_cast<int>(f.args.size()))
          throw std::invalid_argument("relation " + f.name + " is not interpreted with that arity");
        std::vector<Point> args;
        for (const auto& a : f.args) args.push_back(eval(*a, sc, s_));
        auto in = it->second.second(args).contains(e, p_.fuel);
        if (!in) return unknown("membership in [" + f.name + "] ran out of fuel");
        return *in ? Truth::Yes : Truth::No;
      }
      case Formula::Kind::And: {
        Truth l = realizes(seq_proj(e, 0), *f.a, sc);
        if (l == Truth::No) return l;
        return both(l, realizes(seq_proj(e, 1), *f.b, sc));
      }
      case Formula::Kind::Or:
        return realizes(seq_proj(e, 1), seq_proj(e, 0).is_zero() ? *f.a : *f.b, sc);
      case Formula::Kind::Imp:
        return implication(e, f, sc);
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        if (f.bounded) return expansion(e, f, sc, 0, s_.count_below(eval(*f.t, sc, s_)));
        return f.kind == Formula::Kind::Forall ? universal(e, f, sc) : existential(e, f, sc);
    }
    return Truth::No;
  }

  Truth implication(const Nat& e, const Formula& f, Scope& sc) {
    Truth t = in_context(seq_proj(e, 0), sc);
    if (t == Truth::No) return t;
    const Nat c = seq_proj(e, 1);
    std::vector<Nat> ms;
    if (nat_) {
      // The canonical realizer of a true antecedent is always tried.
      try {
        if (truth_n(*f.a, sc, w_, s_))
          if (auto m = Builder(w_).build(*f.a, sc)) ms.push_back(*m);
      } catch (const std::invalid_argument&) {
      }
    }
    for (int m = 0; m < w_.realizers; ++m) ms.emplace_back(m);
    caveats_.insert("-> ranges over antecedent realizers below " + std::to_string(w_.realizers) +
                    (nat_ ? " and the canonical one" : ""));
    for (const auto& m : ms) {
      Truth a = realizes(m, *f.a, sc);
      if (a == Truth::No) continue;
      Truth img = maps_into(c, m, *f.b, sc);
      // An undecided antecedent only matters when the image fails.
      t = both(t, a == Truth::Unk && img == Truth::No ? Truth::Unk : img);
      if (t == Truth::No) return t;
    }
    return t;
  }

  Truth universal(const Nat& e, const Formula& f, Scope& sc) {
    Truth t = in_context(seq_proj(e, 0), sc);
    if (t == Truth::No) return t;
    const Nat c = seq_proj(e, 1);
    for (const auto& y : domain()) {
      sc.push_back({f.name, y, true});
      for (const auto& k : realizers_of(y)) {
        t = both(t, maps_into(c, k, *f.a, sc));
        if (t == Truth::No) break;
      }
      sc.pop_back();
      if (t == Truth::No) return t;
    }
    return t;
  }

  Truth existential(const Nat& e, const Formula& f, Scope& sc) {
    const Nat e0 = seq_proj(e, 0), e1 = seq_proj(e, 1);
    std::vector<Point> candidates;
    if (nat_) {
      // J{a} are pairwise disjoint, so e0 names at most one witness.
      jop::SingletonResult s = jop::find_singleton(e0, p_);
      if (!s.value) return s.out_of_fuel ? unknown("witness search for " + to_string(e0) + " ran out of fuel") : Truth::No;
      candidates.push_back(*s.value);
    } else {
      candidates = domain();
    }
    Truth best = Truth::No;
    for (const auto& a : candidates) {
      Truth t = member(e0, s_.carrier.realizers(a));
      if (t == Truth::No) continue;
      sc.push_back({f.name, a, true});
      t = both(t, realizes(e1, *f.a, sc));
      sc.pop_back();
      if (t == Truth::Yes) return t;
      if (t == Truth::Unk) best = Truth::Unk;
    }
    return best;
  }

  // Realizers of the finite conjunction or disjunction, from position i of k.
  Truth expansion(const Nat& e, const Formula& f, Scope& sc, std::size_t i, std::size_t k) {
    const bool conj = f.kind == Formula::Kind::Forall;
    if (k == 0) return realizes(e, conj ? *truth_atom() : *false_atom(), sc);
    auto body = [&](const Nat& r) {
      sc.push_back({f.name, s_.numeral(i), false});
      Truth t = realizes(r, *f.a, sc);
      sc.pop_back();
      return t;
    };
    if (i + 1 == k) return body(e);
    if (conj) {
      Truth l = body(seq_proj(e, 0));
      if (l == Truth::No) return l;
      return both(l, expansion(seq_proj(e, 1), f, sc, i + 1, k));
    }
    if (seq_proj(e, 0).is_zero()) return body(seq_proj(e, 1));
    return expansion(seq_proj(e, 1), f, sc, i + 1, k);
  }

  const Structure& s_;
  const CheckPolicy& p_;
  const Windows& w_;
  std::set<std::string>& caveats_;
  const bool nat_;
  std::map<std::tuple<const Formula*, std::string, Nat>, Truth> memo_;
};

}  // namespace

Verdict3 jrealizes(const Nat& e, const Formula& f, const Env& env, const Structure& s, const CheckPolicy& p,
                   const Windows& w) {
  Verdict3 out;
  Scope sc = scope_of(env);
  for (const auto& x : free_vars(f)) lookup(sc, x);
  Checker c(s, p, w, out.caveats);
  switch (c.realizes(e, f, sc)) {
    case Truth::Yes:
      out.kind = Verdict3::Kind::Realized;
      break;
    case Truth::No:
      out.kind = Verdict3::Kind::Refuted;
      out.caveats.clear();
      break;
    case Truth::Unk:
      out.kind = Verdict3::Kind::Unknown;
      out.diagnostic = c.diagnostic;
      break;
  }
  return out;
}

bool classically_true(const Formula& f, const Env& env, const Windows& w) {
  Scope sc = scope_of(env);
  return truth_n(f, sc, w, arithmetic());
}

Built build_delta0(const Formula& f, const Windows& w) {
  Built out;
  if (!free_vars(f).empty()) {
    out.refusal = "not a sentence";
    return out;
  }
  Scope sc;
  try {
    if (!truth_n(f, sc, w, arithmetic())) {
      out.refusal = "classically false";
      return out;
    }
  } catch (const std::invalid_argument& e) {
    out.refusal = e.what();
    return out;
  }
  out.realizer = Builder(w).build(f, sc);
  if (!out.realizer) out.refusal = "no witness below " + std::to_string(w.witness);
  return out;
}

namespace {
TermPtr random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1);
  switch (pick(rng)) {
    case 0:
      return t_num(rng() % 6);
    case 1:
      if (!vars.empty()) return t_var(vars[rng() % vars.size()]);
      return t_num(rng() % 6);
    case 2:
    case 3:
      return t_succ(random_term(rng, vars, depth - 1));
    case 4:
      return t_add(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
    default:
      return t_mul(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
  }
}

FormulaPtr random_formula(std::mt19937_64& rng, std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 1);
  switch (pick(rng)) {
    case 0:
      return f_eq(random_term(rng, vars, 2), random_term(rng, vars, 2));
    case 1:
      return f_rel("<", {random_term(rng, vars, 2), random_term(rng, vars, 2)});
    case 2:
      return f_and(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    case 3:
      return f_or(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    case 4:
      return f_imp(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    default: {
      std::string x = std::string(1, static_cast<char>('x' + vars.size() % 3)) +
                      (vars.size() >= 3 ? std::to_string(vars.size()) : "");
      TermPtr bound = t_num(1 + rng() % 4);
      vars.push_back(x);
      FormulaPtr body = random_formula(rng, vars, depth - 1);
      vars.pop_back();
      return rng() % 2 ? f_forall(x, body, bound) : f_exists(x, body, bound);
    }
  }
}
}  // namespace

std::vector<std::string> delta0_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  std::set<std::string> seen;
  while (static_cast<int>(out.size()) < count) {
    std::vector<std::string> vars;
    FormulaPtr f = random_formula(rng, vars, 1 + static_cast<int>(rng() % 3));
    if (!classically_true(*f, {})) continue;
    std::string text = to_string(*f);
    if (seen.insert(text).second) out.push_back(text);
  }
  return out;
}

}  // namespace jreal::realize
