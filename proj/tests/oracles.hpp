#pragma once

// Independent reference computations used only by the tests.

#include <cstdint>
#include <vector>

#include "jreal/doctrine.hpp"

namespace oracle {

using jreal::doctrine::Doctrine;
using jreal::doctrine::MonoOp;
using jreal::doctrine::RSubset;

inline bool member(RSubset s, int x) { return (s >> x) & 1u; }

inline RSubset arrow_set(const Doctrine& d, RSubset a, RSubset b) {
  RSubset out = 0;
  for (int e = 0; e < d.size(); ++e) {
    bool ok = true;
    for (int x = 0; x < d.size(); ++x) {
      if (!member(a, x)) continue;
      auto y = d.app(e, x);
      if (!y || !member(b, *y)) ok = false;
    }
    if (ok) out |= 1u << e;
  }
  return out;
}

inline RSubset wedge_set(const Doctrine& d, RSubset a, RSubset b) {
  RSubset out = 0;
  for (int x = 0; x < d.size(); ++x)
    for (int y = 0; y < d.size(); ++y)
      if (member(a, x) && member(b, y))
        if (auto p = d.pair(x, y)) out |= 1u << *p;
  return out;
}

/// Least fixed point as the intersection of all B with {0}^A in B and {1}^FB in B.
inline RSubset lfp_by_intersection(const Doctrine& d, const MonoOp& f, RSubset a) {
  RSubset out = d.universe();
  for (RSubset b = 0; b <= d.universe(); ++b) {
    bool closed = (wedge_set(d, 1u, a) & ~b) == 0 && (wedge_set(d, 2u, f(b)) & ~b) == 0;
    if (closed) out &= b;
  }
  return out;
}

/// Does e realize the law for all sets? Checked element by element.
inline bool realizes_e4(const Doctrine& d, const MonoOp& j, int e) {
  for (RSubset a = 0; a <= d.universe(); ++a)
    for (RSubset b = 0; b <= d.universe(); ++b)
      if (!member(arrow_set(d, wedge_set(d, j(a), j(b)), j(wedge_set(d, a, b))), e)) return false;
  return true;
}

}  // namespace oracle
