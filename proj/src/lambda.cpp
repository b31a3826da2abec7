#include "jreal/lambda.hpp"

#include <cctype>
#include <vector>

namespace jreal {

namespace {

// Head primitive and argument count of an application spine, if the head is a primitive.
bool spine(const Term& t, Prim& head, int& nargs, bool& args_are_values) {
  const Term* cur = &t;
  nargs = 0;
  args_are_values = true;
  while (cur->kind == Term::Kind::App) {
    if (!is_syntactic_value(*cur->arg)) args_are_values = false;
    ++nargs;
    cur = cur->fun.get();
  }
  if (cur->kind != Term::Kind::Prim) return false;
  head = cur->prim;
  return true;
}

}  // namespace

bool is_syntactic_value(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Numeral:
    case Term::Kind::Prim:
      return true;
    case Term::Kind::App: {
      Prim head;
      int nargs = 0;
      bool vals = false;
      return spine(t, head, nargs, vals) && vals && nargs < arity(head);
    }
  }
  return false;
}

TermPtr abstract(std::string_view var, const TermPtr& body) {
  if (body->kind == Term::Kind::Var && body->var == var) return tprim(Prim::I);
  const bool free = occurs_free(*body, var);
  if (!free && is_syntactic_value(*body)) return tapp(tprim(Prim::K), body);
  // Only applications remain: values without `var` were handled above.
  const Term& app = *body;
  const bool in_fun = occurs_free(*app.fun, var);
  const bool in_arg = occurs_free(*app.arg, var);
  const bool fun_value = is_syntactic_value(*app.fun);
  if (app.arg->kind == Term::Kind::Var && app.arg->var == var && !in_fun && fun_value) return app.fun;
  if (!in_fun && fun_value) return tapp(tprim(Prim::B), {app.fun, abstract(var, app.arg)});
  if (!in_arg && is_syntactic_value(*app.arg)) return tapp(tprim(Prim::C), {abstract(var, app.fun), app.arg});
  return tapp(tprim(Prim::S), {abstract(var, app.fun), abstract(var, app.arg)});
}

Code lambda_abstract(std::string_view var, const TermPtr& body) {
  for (const auto& name : free_vars(*body))
    if (name != var)
      throw std::invalid_argument("lambda body has free variable '" + name + "' besides '" +
                                  std::string(var) + "'");
  return code_of(abstract(var, body));
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Definitions& defs) : text_(text), defs_(defs) {}

  TermPtr parse() {
    TermPtr t = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError("unexpected input", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  TermPtr expr() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '\\') {
      std::size_t lam_pos = pos_++;
      std::vector<std::string> vars;
      for (;;) {
        skip_ws();
        if (pos_ < text_.size() && ident_start(text_[pos_])) {
          vars.push_back(ident());
        } else {
          break;
        }
      }
      if (vars.empty()) throw SyntaxError("expected variable after '\\'", lam_pos);
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '.') throw SyntaxError("expected '.'", pos_);
      ++pos_;
      for (const auto& v : vars) bound_.push_back(v);
      TermPtr body = expr();
      bound_.resize(bound_.size() - vars.size());
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = abstract(*it, body);
      return body;
    }
    TermPtr head = atom();
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == ')') break;
      if (text_[pos_] == '\\') {
        head = tapp(head, expr());
        break;
      }
      head = tapp(head, atom());
    }
    return head;
  }

  TermPtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      TermPtr t = expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw SyntaxError("expected ')'", pos_);
      ++pos_;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return tnum(Nat(std::string(text_.substr(start, pos_ - start))));
    }
    if (ident_start(c)) {
      std::string name = ident();
      for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
        if (*it == name) return tvar(name);
      if (auto it = defs_.find(name); it != defs_.end()) return it->second;
      if (auto p = prim_from_name(name)) return tprim(*p);
      return tvar(name);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  const Definitions& defs_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

TermPtr parse_term(std::string_view text, const Definitions& defs) {
  return Parser(text, defs).parse();
}

TermPtr parse_closed_term(std::string_view text, const Definitions& defs) {
  TermPtr t = parse_term(text, defs);
  auto fv = free_vars(*t);
  if (!fv.empty()) throw SyntaxError("unbound identifier '" + *fv.begin() + "'", 0);
  return t;
}

}  // namespace jreal
