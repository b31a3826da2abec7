#include <cctype>

#include "jreal/realize.hpp"

namespace jreal::realize {

ParseError::ParseError(const std::string& what, std::size_t p)
    : std::runtime_error(what + " at offset " + std::to_string(p)), pos(p) {}

TermPtr t_var(std::string x) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->var = std::move(x);
  return t;
}

TermPtr t_num(Nat n) {
  auto t = std::make_shared<Term>();
  t->num = std::move(n);
  return t;
}

namespace {
TermPtr t_op(Term::Kind k, TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->l = std::move(l);
  t->r = std::move(r);
  return t;
}

FormulaPtr f_bin(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

FormulaPtr f_quant(Formula::Kind k, std::string x, FormulaPtr body, TermPtr bound) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->name = std::move(x);
  f->a = std::move(body);
  f->bounded = bound != nullptr;
  f->t = std::move(bound);
  return f;
}
}  // namespace

TermPtr t_succ(TermPtr t) { return t_op(Term::Kind::Succ, std::move(t), nullptr); }
TermPtr t_add(TermPtr a, TermPtr b) { return t_op(Term::Kind::Add, std::move(a), std::move(b)); }
TermPtr t_mul(TermPtr a, TermPtr b) { return t_op(Term::Kind::Mul, std::move(a), std::move(b)); }

FormulaPtr f_eq(TermPtr t, TermPtr s) {
  auto f = std::make_shared<Formula>();
  f->t = std::move(t);
  f->s = std::move(s);
  return f;
}

FormulaPtr f_rel(std::string name, std::vector<TermPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::Rel;
  f->name = std::move(name);
  f->args = std::move(args);
  return f;
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return f_bin(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return f_bin(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaPtr f_imp(FormulaPtr a, FormulaPtr b) { return f_bin(Formula::Kind::Imp, std::move(a), std::move(b)); }
FormulaPtr f_forall(std::string x, FormulaPtr body, TermPtr bound) {
  return f_quant(Formula::Kind::Forall, std::move(x), std::move(body), std::move(bound));
}
FormulaPtr f_exists(std::string x, FormulaPtr body, TermPtr bound) {
  return f_quant(Formula::Kind::Exists, std::move(x), std::move(body), std::move(bound));
}

namespace {
void print(const Term& t, std::string& out, int ctx) {
  // ctx: 0 sum position, 1 product position, 2 argument of S
  switch (t.kind) {
    case Term::Kind::Var:
      out += t.var;
      return;
    case Term::Kind::Num:
      out += t.num.str();
      return;
    case Term::Kind::Succ:
      if (ctx == 2) out += '(';
      out += "S ";
      print(*t.l, out, 2);
      if (ctx == 2) out += ')';
      return;
    case Term::Kind::Add:
      if (ctx > 0) out += '(';
      print(*t.l, out, 0);
      out += " + ";
      print(*t.r, out, 1);
      if (ctx > 0) out += ')';
      return;
    case Term::Kind::Mul:
      if (ctx > 1) out += '(';
      print(*t.l, out, 1);
      out += " * ";
      print(*t.r, out, 2);
      if (ctx > 1) out += ')';
      return;
  }
}

// Levels: 0 formula, 1 implication operand, 2 disjunct, 3 conjunct.
void print(const Formula& f, std::string& out, int level) {
  auto open = [&](int needs) {
    if (level > needs) out += '(';
  };
  auto close = [&](int needs) {
    if (level > needs) out += ')';
  };
  switch (f.kind) {
    case Formula::Kind::Eq:
      print(*f.t, out, 0);
      out += " = ";
      print(*f.s, out, 0);
      return;
    case Formula::Kind::Rel:
      if (f.name == "<" && f.args.size() == 2) {
        print(*f.args[0], out, 0);
        out += " < ";
        print(*f.args[1], out, 0);
        return;
      }
      out += f.name + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) out += ", ";
        print(*f.args[i], out, 0);
      }
      out += ")";
      return;
    case Formula::Kind::And:
      open(3);
      print(*f.a, out, 3);
      out += " /\\ ";
      print(*f.b, out, 4);
      close(3);
      return;
    case Formula::Kind::Or:
      open(2);
      print(*f.a, out, 2);
      out += " \\/ ";
      print(*f.b, out, 3);
      close(2);
      return;
    case Formula::Kind::Imp:
      open(1);
      print(*f.a, out, 2);
      out += " -> ";
      print(*f.b, out, 1);
      close(1);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      open(0);
      out += f.kind == Formula::Kind::Forall ? "forall " : "exists ";
      out += f.name;
      if (f.bounded) {
        out += " < ";
        print(*f.t, out, 0);
      }
      out += ". ";
      print(*f.a, out, 0);
      close(0);
      return;
  }
}

void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) out.insert(t.var);
  if (t.l) term_vars(*t.l, out);
  if (t.r) term_vars(*t.r, out);
}
}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out, 0);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out, 0);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind) {
    case Formula::Kind::Eq:
      term_vars(*f.t, out);
      term_vars(*f.s, out);
      break;
    case Formula::Kind::Rel:
      for (const auto& a : f.args) term_vars(*a, out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      out = free_vars(*f.a);
      out.merge(free_vars(*f.b));
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out = free_vars(*f.a);
      out.erase(f.name);
      if (f.bounded) term_vars(*f.t, out);
      break;
  }
  return out;
}

int depth(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Rel:
      return 0;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return 1 + std::max(depth(*f.a), depth(*f.b));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return 1 + depth(*f.a);
  }
  return 0;
}

bool is_delta0(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Rel:
      return true;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return is_delta0(*f.a) && is_delta0(*f.b);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return f.bounded && is_delta0(*f.a);
  }
  return false;
}

FormulaPtr negation(FormulaPtr f) { return f_imp(std::move(f), f_eq(t_num(0), t_succ(t_num(0)))); }

namespace {
class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    ws();
    if (pos_ != s_.size()) fail("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) { throw ParseError(why, pos_); }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(const std::string& tok) {
    ws();
    if (s_.compare(pos_, tok.size(), tok) != 0) return false;
    // Keywords must not run into an identifier.
    if (std::isalpha(static_cast<unsigned char>(tok.back())) && pos_ + tok.size() < s_.size() &&
        std::isalnum(static_cast<unsigned char>(s_[pos_ + tok.size()])))
      return false;
    pos_ += tok.size();
    return true;
  }

  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }

  std::string ident() {
    ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(s_[start]))) {
      pos_ = start;
      fail("expected identifier");
    }
    return s_.substr(start, pos_ - start);
  }

  FormulaPtr formula() {
    ws();
    for (const char* q : {"forall", "exists"}) {
      if (eat(q)) {
        std::string x = ident();
        if (x == "S" || x == "forall" || x == "exists") fail("bad variable name");
        TermPtr bound;
        if (eat("<")) bound = term();
        expect(".");
        FormulaPtr body = formula();
        return std::string(q) == "forall" ? f_forall(x, body, bound) : f_exists(x, body, bound);
      }
    }
    FormulaPtr lhs = disjunction();
    if (eat("->")) return f_imp(lhs, formula());
    return lhs;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (eat("\\/")) f = f_or(f, conjunction());
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = primary();
    while (eat("/\\")) f = f_and(f, primary());
    return f;
  }

  FormulaPtr primary() {
    ws();
    std::size_t save = pos_;
    if (s_.compare(pos_, 6, "forall") == 0 || s_.compare(pos_, 6, "exists") == 0) return formula();
    if (eat("(")) {
      // Either a parenthesized formula or a term starting an atom.
      try {
        FormulaPtr f = formula();
        expect(")");
        ws();
        if (pos_ >= s_.size() || (s_[pos_] != '=' && s_[pos_] != '<' && s_[pos_] != '+' && s_[pos_] != '*')) return f;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    ws();
    if (pos_ < s_.size() && std::isupper(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != 'S') {
      std::string r = ident();
      std::vector<TermPtr> args;
      expect("(");
      if (!eat(")")) {
        do args.push_back(term());
        while (eat(","));
        expect(")");
      }
      return f_rel(r, std::move(args));
    }
    TermPtr t = term();
    if (eat("=")) return f_eq(t, term());
    if (eat("<")) return f_rel("<", {t, term()});
    fail("expected '=' or '<'");
  }

  TermPtr term() {
    TermPtr t = product();
    while (eat("+")) t = t_add(t, product());
    return t;
  }

  TermPtr product() {
    TermPtr t = unary();
    while (eat("*")) t = t_mul(t, unary());
    return t;
  }

  TermPtr unary() {
    ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat("(")) {
      TermPtr t = term();
      expect(")");
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return t_num(parse_nat(s_.substr(start, pos_ - start)));
    }
    if (eat("S")) return t_succ(unary());
    std::string x = ident();
    if (std::isupper(static_cast<unsigned char>(x[0])) || x == "forall" || x == "exists") fail("expected a term");
    return t_var(x);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};
}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).parse(); }

}  // namespace jreal::realize
