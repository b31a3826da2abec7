#pragma once

// Brute-force reading of the realizability clauses, written without the
// library's scope and memo machinery: bounded quantifiers are expanded by
// substituting numerals into the formula text.

#include <optional>
#include <string>
#include <vector>

#include "jreal/realize.hpp"
#include "jreal/seq.hpp"

namespace oracle {

using jreal::apply;
using jreal::Code;
using jreal::Fuel;
using jreal::Nat;
using jreal::seq_length;
using jreal::seq_proj;
namespace jop = jreal::jop;
namespace assembly = jreal::assembly;
using namespace jreal::realize;

inline TermPtr subst(const TermPtr& t, const std::string& x, const Nat& n) {
  switch (t->kind) {
    case Term::Kind::Var:
      return t->var == x ? t_num(n) : t;
    case Term::Kind::Num:
      return t;
    case Term::Kind::Succ:
      return t_succ(subst(t->l, x, n));
    case Term::Kind::Add:
      return t_add(subst(t->l, x, n), subst(t->r, x, n));
    case Term::Kind::Mul:
      return t_mul(subst(t->l, x, n), subst(t->r, x, n));
  }
  return t;
}

inline FormulaPtr subst(const FormulaPtr& f, const std::string& x, const Nat& n) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      return f_eq(subst(f->t, x, n), subst(f->s, x, n));
    case Formula::Kind::Rel: {
      std::vector<TermPtr> args;
      for (const auto& a : f->args) args.push_back(subst(a, x, n));
      return f_rel(f->name, args);
    }
    case Formula::Kind::And:
      return f_and(subst(f->a, x, n), subst(f->b, x, n));
    case Formula::Kind::Or:
      return f_or(subst(f->a, x, n), subst(f->b, x, n));
    case Formula::Kind::Imp:
      return f_imp(subst(f->a, x, n), subst(f->b, x, n));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      TermPtr bound = f->bounded ? subst(f->t, x, n) : nullptr;
      FormulaPtr body = f->name == x ? f->a : subst(f->a, x, n);
      return f->kind == Formula::Kind::Forall ? f_forall(f->name, body, bound) : f_exists(f->name, body, bound);
    }
  }
  return f;
}

// Context: (variable, point), innermost first.
using Ctx = std::vector<std::pair<std::string, Nat>>;

struct Clauses {
  const Structure& s;
  jop::CheckPolicy p;
  Windows w;

  Nat value(const TermPtr& t, const Ctx& ctx) const {
    switch (t->kind) {
      case Term::Kind::Var:
        for (const auto& [name, pt] : ctx)
          if (name == t->var) return pt;
        throw std::invalid_argument("free " + t->var);
      case Term::Kind::Num:
        return s.numeral(t->num);
      case Term::Kind::Succ:
        return s.succ(value(t->l, ctx));
      case Term::Kind::Add:
        return s.add(value(t->l, ctx), value(t->r, ctx));
      case Term::Kind::Mul:
        return s.mul(value(t->l, ctx), value(t->r, ctx));
    }
    return 0;
  }

  std::optional<bool> in_j(const Nat& v, const jop::JSet& a) const {
    auto r = jop::find_cert(v, jop::Target::plain(a), p);
    if (r.cert) return true;
    if (r.out_of_fuel) return std::nullopt;
    return false;
  }

  std::optional<bool> in_wedge(const Nat& e, const Ctx& ctx) const {
    if (ctx.empty()) return true;
    if (ctx.size() == 1) return in_j(e, s.carrier.realizers(ctx[0].second));
    if (seq_length(e) != ctx.size()) return false;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      auto m = in_j(seq_proj(e, i), s.carrier.realizers(ctx[i].second));
      if (!m || !*m) return m;
    }
    return true;
  }

  std::optional<bool> maps_into(const Nat& c, const Nat& m, const FormulaPtr& f, const Ctx& ctx) const {
    auto r = apply(Code{c}, m, p.fuel);
    if (r.out_of_fuel()) return std::nullopt;
    jop::JSet target = jop::JSet::by_predicate("oracle", [&](const Nat& k, Fuel) { return realizes(k, f, ctx); });
    return in_j(*r.value, target);
  }

  std::vector<Nat> domain() const {
    assembly::Sampling smp;
    smp.points = w.points;
    return s.carrier.points(smp);
  }

  static FormulaPtr expand(const FormulaPtr& f, std::size_t k) {
    const bool conj = f->kind == Formula::Kind::Forall;
    if (k == 0) return conj ? f_eq(t_num(0), t_num(0)) : f_eq(t_num(0), t_succ(t_num(0)));
    FormulaPtr out = subst(f->a, f->name, Nat(k - 1));
    for (std::size_t i = k - 1; i-- > 0;) {
      FormulaPtr here = subst(f->a, f->name, Nat(i));
      out = conj ? f_and(here, out) : f_or(here, out);
    }
    return out;
  }

  std::optional<bool> realizes(const Nat& e, const FormulaPtr& f, const Ctx& ctx) const {
    const Nat e0 = seq_proj(e, 0), e1 = seq_proj(e, 1);
    switch (f->kind) {
      case Formula::Kind::Eq: {
        auto in = in_wedge(e, ctx);
        if (in && !*in) return false;
        if (value(f->t, ctx) != value(f->s, ctx)) return false;
        return in;
      }
      case Formula::Kind::Rel: {
        std::vector<Nat> args;
        for (const auto& a : f->args) args.push_back(value(a, ctx));
        return s.relations.at(f->name).second(args).contains(e);
      }
      case Formula::Kind::And: {
        auto l = realizes(e0, f->a, ctx);
        if (l && !*l) return false;
        auto r = realizes(e1, f->b, ctx);
        if (r && !*r) return false;
        if (!l || !r) return std::nullopt;
        return true;
      }
      case Formula::Kind::Or:
        return realizes(e1, e0 == 0 ? f->a : f->b, ctx);
      case Formula::Kind::Imp: {
        auto in = in_wedge(e0, ctx);
        if (in && !*in) return false;
        bool unknown = !in;
        for (int m = 0; m < w.realizers; ++m) {
          auto a = realizes(Nat(m), f->a, ctx);
          if (a && !*a) continue;
          auto img = maps_into(e1, Nat(m), f->b, ctx);
          if (img && !*img) {
            if (!a) {
              unknown = true;
              continue;
            }
            return false;
          }
          if (!img) unknown = true;
        }
        if (unknown) return std::nullopt;
        return true;
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        if (f->bounded) {
          std::size_t k = s.count_below(value(f->t, ctx));
          return realizes(e, expand(f, k), ctx);
        }
        if (f->kind == Formula::Kind::Forall) {
          auto in = in_wedge(e0, ctx);
          if (in && !*in) return false;
          bool unknown = !in;
          for (const auto& y : domain()) {
            Ctx inner = ctx;
            inner.insert(inner.begin(), {f->name, y});
            for (const auto& k : s.carrier.sample_realizers(y, {})) {
              auto img = maps_into(e1, k, f->a, inner);
              if (img && !*img) return false;
              if (!img) unknown = true;
            }
          }
          if (unknown) return std::nullopt;
          return true;
        }
        bool unknown = false;
        for (const auto& a : domain()) {
          auto in = in_j(e0, s.carrier.realizers(a));
          if (in && !*in) continue;
          Ctx inner = ctx;
          inner.insert(inner.begin(), {f->name, a});
          auto body = realizes(e1, f->a, inner);
          if (in && body && *body) return true;
          if (!in || !body) unknown = true;
        }
        if (unknown) return std::nullopt;
        return false;
      }
    }
    return false;
  }
};

}  // namespace oracle
