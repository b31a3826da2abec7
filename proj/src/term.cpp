#include "jreal/term.hpp"

#include <array>
#include <stdexcept>

#include "jreal/seq.hpp"

namespace jreal {

namespace {
constexpr std::array<std::string_view, kPrimCount> kNames = {"K",   "S",   "succ", "pred", "ifz", "fix", "nil",
                                                             "cons", "len", "proj", "I",    "B",    "C"};
constexpr std::array<int, kPrimCount> kArity = {2, 3, 1, 1, 4, 2, 0, 2, 1, 2, 1, 3, 3};
constexpr unsigned kPrims = kPrimCount;
}  // namespace

int arity(Prim p) { return kArity[static_cast<std::size_t>(p)]; }

std::string_view prim_name(Prim p) { return kNames[static_cast<std::size_t>(p)]; }

std::optional<Prim> prim_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kPrimCount; ++i)
    if (kNames[i] == name) return static_cast<Prim>(i);
  return std::nullopt;
}

TermPtr Term::make_var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->var = std::move(name);
  return t;
}

TermPtr Term::make_num(Nat n) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Numeral;
  t->num = std::move(n);
  return t;
}

TermPtr Term::make_prim(Prim p) {
  // Primitives are shared singletons.
  static const std::array<TermPtr, kPrimCount> table = [] {
    std::array<TermPtr, kPrimCount> out;
    for (std::size_t i = 0; i < kPrimCount; ++i) {
      auto t = std::make_shared<Term>();
      t->kind = Kind::Prim;
      t->prim = static_cast<Prim>(i);
      out[i] = t;
    }
    return out;
  }();
  return table[static_cast<std::size_t>(p)];
}

TermPtr Term::make_app(TermPtr f, TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::App;
  t->fun = std::move(f);
  t->arg = std::move(a);
  return t;
}

TermPtr tapp(TermPtr f, std::initializer_list<TermPtr> args) {
  for (const auto& a : args) f = tapp(f, a);
  return f;
}

Nat encode_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Prim:
      return Nat(static_cast<unsigned>(t.prim));
    case Term::Kind::Numeral:
      return kPrims + 2 * t.num;
    case Term::Kind::App:
      return kPrims + 1 + 2 * pair_code(encode_term(*t.fun), encode_term(*t.arg));
    case Term::Kind::Var:
      break;
  }
  throw std::invalid_argument("cannot number an open term (free variable '" + t.var + "')");
}

TermPtr decode_term(const Nat& code) {
  if (code < kPrims) return tprim(static_cast<Prim>(code.convert_to<unsigned>()));
  Nat d = code - kPrims;
  if (!bit_test(d, 0)) return tnum(d >> 1);
  auto [f, a] = unpair_code(d >> 1);
  return tapp(decode_term(f), decode_term(a));
}

namespace {
void collect_free(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Var:
      out.insert(t.var);
      break;
    case Term::Kind::App:
      collect_free(*t.fun, out);
      collect_free(*t.arg, out);
      break;
    default:
      break;
  }
}
}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

bool occurs_free(const Term& t, std::string_view name) {
  switch (t.kind) {
    case Term::Kind::Var:
      return t.var == name;
    case Term::Kind::App:
      return occurs_free(*t.fun, name) || occurs_free(*t.arg, name);
    default:
      return false;
  }
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

bool same_term(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Var:
      return a.var == b.var;
    case Term::Kind::Numeral:
      return a.num == b.num;
    case Term::Kind::Prim:
      return a.prim == b.prim;
    case Term::Kind::App:
      return same_term(*a.fun, *b.fun) && same_term(*a.arg, *b.arg);
  }
  return false;
}

namespace {
void print(const Term& t, std::string& out, bool in_arg) {
  switch (t.kind) {
    case Term::Kind::Var:
      out += t.var;
      return;
    case Term::Kind::Numeral:
      out += t.num.str();
      return;
    case Term::Kind::Prim:
      out += prim_name(t.prim);
      return;
    case Term::Kind::App:
      if (in_arg) out += '(';
      print(*t.fun, out, false);
      out += ' ';
      print(*t.arg, out, true);
      if (in_arg) out += ')';
      return;
  }
}
}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out, false);
  return out;
}

}  // namespace jreal
