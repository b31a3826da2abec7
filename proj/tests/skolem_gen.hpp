#pragma once

// Random quasi-polynomials, model arguments and quantifier-free formulas for
// the transfer runs.

#include <random>

#include "jreal/skolem.hpp"

namespace skgen {

using namespace jreal::skolem;
using namespace jreal::realize;

inline QuasiPoly quasipoly(std::mt19937_64& rng, std::size_t max_mod = 4, std::size_t max_deg = 2) {
  std::vector<Poly> res(1 + rng() % max_mod);
  for (auto& p : res) {
    p.resize(1 + rng() % (max_deg + 1));
    for (auto& c : p) c = rng() % 4;
  }
  return QuasiPoly(res);
}

inline TermPtr term(std::mt19937_64& rng, int depth) {
  switch (depth > 0 ? rng() % 6 : rng() % 2) {
    case 0:
      return t_var(rng() % 2 ? "x" : "y");
    case 1:
      return t_num(rng() % 4);
    case 2:
      return t_succ(term(rng, depth - 1));
    case 3:
      return t_add(term(rng, depth - 1), term(rng, depth - 1));
    default:
      return t_mul(term(rng, depth - 1), term(rng, depth - 1));
  }
}

inline FormulaPtr qf_formula(std::mt19937_64& rng, int depth) {
  switch (depth > 0 ? rng() % 5 : rng() % 2) {
    case 0:
      return f_eq(term(rng, 2), term(rng, 2));
    case 1:
      return f_rel("<", {term(rng, 2), term(rng, 2)});
    case 2:
      return f_and(qf_formula(rng, depth - 1), qf_formula(rng, depth - 1));
    case 3:
      return f_or(qf_formula(rng, depth - 1), qf_formula(rng, depth - 1));
    default:
      return f_imp(qf_formula(rng, depth - 1), qf_formula(rng, depth - 1));
  }
}

/// x and y, each standard with probability 1/3.
inline Args args(std::mt19937_64& rng) {
  Args a;
  for (const char* v : {"x", "y"}) a.push_back({v, rng() % 3 == 0 ? Model::iota(rng() % 5) : ModelElem{quasipoly(rng)}});
  return a;
}

}  // namespace skgen
