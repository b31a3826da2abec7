#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jreal/term.hpp"

namespace jreal {

/// Syntax error with a 0-based character offset into the input.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Named closed terms substituted for free identifiers while parsing.
using Definitions = std::map<std::string, TermPtr, std::less<>>;

/// Bracket abstraction [var]body, safe under call-by-value: K is only put in
/// front of syntactic values, so abstraction never evaluates part of the body
/// early. Other free variables of `body` stay free in the result.
TermPtr abstract(std::string_view var, const TermPtr& body);

/// Code of \var. body. Throws std::invalid_argument if body mentions any
/// variable other than `var`.
Code lambda_abstract(std::string_view var, const TermPtr& body);

/// Term syntax: K S succ pred ifz fix nil cons len proj, decimal numerals,
/// identifiers, `\x y. body`, juxtaposition (left associative), parentheses.
/// Identifiers that are neither lambda-bound nor in `defs` stay as variables.
TermPtr parse_term(std::string_view text, const Definitions& defs = {});

/// parse_term followed by a closedness check.
TermPtr parse_closed_term(std::string_view text, const Definitions& defs = {});

/// Syntactic value under call-by-value: numerals, primitives, variables and
/// under-saturated primitive applications of values.
bool is_syntactic_value(const Term& t);

}  // namespace jreal
