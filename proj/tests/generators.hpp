#pragma once

// Random certified members of J{k} for the kit tests and the acceptance run.

#include <random>
#include <string>

#include "jreal/kit.hpp"
#include "jreal/seq.hpp"

namespace gen {

using jreal::Nat;
using jreal::jop::Cert;
using jreal::jop::CertPtr;

struct Certified {
  Nat value;
  CertPtr cert;
};

/// A member of J{k}: either <0,k>, or <1,e> where e returns a deeper member
/// from a random threshold on and junk below it.
inline Certified member(std::mt19937_64& rng, const Nat& k, int depth, const jreal::jop::CheckPolicy& p) {
  if (depth <= 0 || rng() % 3 == 0) return {jreal::tuple2(0, k), Cert::base(k)};
  Certified inner = member(rng, k, depth - 1, p);
  const int t = static_cast<int>(rng() % (p.horizon + 1));
  const std::string junk = std::to_string(rng() % 50);
  const std::string text = "\\m. ifz (sub " + std::to_string(t) + " m) (\\u. " + jreal::to_string(inner.value) +
                           ") (\\u. " + junk + ") 0";
  jreal::Code e = jreal::jop::kit_code(text);
  std::vector<std::pair<Nat, CertPtr>> tails;
  for (int m = t; m < p.sample_end(); ++m) tails.emplace_back(Nat(m), inner.cert);
  return {jreal::tuple2(1, e.value), Cert::lift(Nat(t), std::move(tails))};
}

}  // namespace gen
