#include "jreal/doctrine.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <sstream>

namespace jreal::doctrine {

Doctrine::Doctrine(int n) : n_(n) {
  if (n < 1 || n > kMaxCarrier)
    throw std::invalid_argument("doctrine size must be in [1, 16], got " + std::to_string(n));
  app_.resize(static_cast<std::size_t>(n) * n);
  pair_.resize(static_cast<std::size_t>(n) * n);
}

void Doctrine::set_app(Elem e, Elem x, Elem y) {
  if (e >= n_ || x >= n_ || y >= n_) throw std::invalid_argument("app entry outside the carrier");
  app_[index(e, x)] = y;
}

void Doctrine::set_pair(Elem x, Elem y, Elem p) {
  if (x >= n_ || y >= n_ || p >= n_) throw std::invalid_argument("pair entry outside the carrier");
  for (std::size_t i = 0; i < pair_.size(); ++i)
    if (i != index(x, y) && pair_[i] == p)
      throw std::invalid_argument("pair is not injective: value " + std::to_string(p) +
                                  " already used");
  pair_[index(x, y)] = p;
}

bool Doctrine::has_tag_entries(Elem tag) const {
  if (tag >= n_) return false;
  for (int y = 0; y < n_; ++y)
    if (pair(tag, static_cast<Elem>(y))) return true;
  return false;
}

namespace {
std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

Elem parse_elem(const std::string& s, int lineno) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size() && v >= 0 && v < 256) return static_cast<Elem>(v);
  } catch (const std::exception&) {
  }
  throw std::runtime_error("line " + std::to_string(lineno) + ": bad element '" + s + "'");
}
}  // namespace

Doctrine parse_doctrine(const std::string& text) {
  std::istringstream in(text);
  std::optional<Doctrine> d;
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto tok = tokens(line);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + why);
    };
    if (!d) {
      if (tok.size() != 2 || tok[0] != "doctrine") fail("expected 'doctrine N'");
      try {
        d.emplace(parse_elem(tok[1], lineno));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      continue;
    }
    if (tok.size() != 5 || tok[3] != "=" || (tok[0] != "app" && tok[0] != "pair"))
      fail("expected 'app e x = y' or 'pair x y = p'");
    Elem a = parse_elem(tok[1], lineno), b = parse_elem(tok[2], lineno), c = parse_elem(tok[4], lineno);
    try {
      if (tok[0] == "app")
        d->set_app(a, b, c);
      else
        d->set_pair(a, b, c);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (!d) throw std::runtime_error("missing 'doctrine N' header");
  return *d;
}

std::string format_doctrine(const Doctrine& d) {
  std::ostringstream out;
  out << "doctrine " << d.size() << "\n";
  const int n = d.size();
  for (int e = 0; e < n; ++e)
    for (int x = 0; x < n; ++x)
      if (auto y = d.app(e, x)) out << "app " << e << " " << x << " = " << int(*y) << "\n";
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (auto p = d.pair(x, y)) out << "pair " << x << " " << y << " = " << int(*p) << "\n";
  return out.str();
}

RSubset arrow(RSubset a, RSubset b, const Doctrine& d) {
  RSubset out = 0;
  const int n = d.size();
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (RSubset rest = a; rest && ok; rest &= rest - 1) {
      auto y = d.app(e, static_cast<Elem>(std::countr_zero(rest)));
      ok = y && ((b >> *y) & 1u);
    }
    if (ok) out |= 1u << e;
  }
  return out;
}

RSubset wedge(RSubset a, RSubset b, const Doctrine& d) {
  RSubset out = 0;
  for (RSubset ra = a; ra; ra &= ra - 1)
    for (RSubset rb = b; rb; rb &= rb - 1)
      if (auto p = d.pair(static_cast<Elem>(std::countr_zero(ra)), static_cast<Elem>(std::countr_zero(rb))))
        out |= 1u << *p;
  return out;
}

std::string format_subset(RSubset s, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if ((s >> i) & 1u) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  return out + "}";
}

bool is_order_preserving(int n, const std::vector<RSubset>& table) {
  const RSubset top = (1u << n) - 1;
  if (table.size() != (std::size_t(1) << n)) return false;
  for (RSubset a = 0; a <= top; ++a) {
    if (table[a] & ~top) return false;
    for (int i = 0; i < n; ++i)
      if (!((a >> i) & 1u) && (table[a] & ~table[a | (1u << i)])) return false;
  }
  return true;
}

MonoOp::MonoOp(int n, std::vector<RSubset> table) : n_(n), table_(std::move(table)) {
  if (!is_order_preserving(n, table_)) throw std::invalid_argument("operator table is not monotone");
}

namespace {
template <class Fn>
MonoOp make_op(const Doctrine& d, Fn fn) {
  std::vector<RSubset> t(std::size_t(1) << d.size());
  for (RSubset a = 0; a < t.size(); ++a) t[a] = fn(a);
  return MonoOp(d.size(), std::move(t));
}
}  // namespace

MonoOp identity_op(const Doctrine& d) {
  return make_op(d, [](RSubset a) { return a; });
}

MonoOp trivial_op(const Doctrine& d) {
  return make_op(d, [&](RSubset) { return d.universe(); });
}

MonoOp double_negation_op(const Doctrine& d) {
  return make_op(d, [&](RSubset a) { return a ? d.universe() : 0u; });
}

std::string law_name(Law law) {
  switch (law) {
    case Law::Preorder:
      return "preorder";
    case Law::E1:
      return "E1";
    case Law::E2:
      return "E2";
    case Law::E3:
      return "E3";
    case Law::E4:
      return "E4";
    case Law::Uniformity:
      return "uniformity";
  }
  return "?";
}

namespace {
std::optional<Witness> least(RSubset s, Law law) {
  if (!s) return std::nullopt;
  return Witness{static_cast<Elem>(std::countr_zero(s)), law};
}

RSubset preorder_set(const MonoOp& f, const MonoOp& g, const Doctrine& d) {
  RSubset out = d.universe();
  for (RSubset a = 0; a <= d.universe() && out; ++a) out &= arrow(f(a), g(a), d);
  return out;
}
}  // namespace

std::optional<Witness> preorder_witness(const MonoOp& f, const MonoOp& g, const Doctrine& d) {
  return least(preorder_set(f, g, d), Law::Preorder);
}

RSubset e1_set(const MonoOp& j, const Doctrine& d) {
  const RSubset top = d.universe();
  RSubset out = top;
  for (RSubset a = 0; a <= top && out; ++a)
    for (RSubset b = 0; b <= top && out; ++b) out &= arrow(arrow(a, b, d), arrow(j(a), j(b), d), d);
  return out;
}

RSubset e2_set(const MonoOp& j, const Doctrine& d) {
  RSubset out = d.universe();
  for (RSubset a = 0; a <= d.universe() && out; ++a) out &= arrow(a, j(a), d);
  return out;
}

RSubset e3_set(const MonoOp& j, const Doctrine& d) {
  RSubset out = d.universe();
  for (RSubset a = 0; a <= d.universe() && out; ++a) out &= arrow(j(j(a)), j(a), d);
  return out;
}

RSubset e4_set(const MonoOp& j, const Doctrine& d) {
  const RSubset top = d.universe();
  RSubset out = top;
  for (RSubset a = 0; a <= top && out; ++a)
    for (RSubset b = 0; b <= top && out; ++b) out &= arrow(wedge(j(a), j(b), d), j(wedge(a, b, d)), d);
  return out;
}

bool verify_witness(const Witness& w, const MonoOp& j, const Doctrine& d, const MonoOp* g) {
  RSubset set = 0;
  switch (w.law) {
    case Law::Preorder:
      if (!g) return false;
      set = preorder_set(j, *g, d);
      break;
    case Law::E1:
      set = e1_set(j, d);
      break;
    case Law::E2:
      set = e2_set(j, d);
      break;
    case Law::E3:
      set = e3_set(j, d);
      break;
    case Law::E4:
      set = e4_set(j, d);
      break;
    case Law::Uniformity: {
      auto r = uniformity_finite(j, d);
      return r.witness && r.witness->realizer == w.realizer;
    }
  }
  return (set >> w.realizer) & 1u;
}

namespace {
// Least element whose application row agrees with `target` wherever target is defined.
std::optional<Elem> representative(const Doctrine& d, const std::vector<std::optional<Elem>>& target) {
  for (int e = 0; e < d.size(); ++e) {
    bool ok = true;
    for (int x = 0; x < d.size() && ok; ++x)
      if (target[x]) ok = d.app(e, x) == target[x];
    if (ok) return static_cast<Elem>(e);
  }
  return std::nullopt;
}

std::optional<Elem> app2(const Doctrine& d, std::optional<Elem> f, std::optional<Elem> x) {
  if (!f || !x) return std::nullopt;
  return d.app(*f, *x);
}
}  // namespace

E4Derivation derive_e4(const MonoOp& j, const Doctrine& d, Elem b, Elem dd) {
  E4Derivation out;
  const int n = d.size();
  auto fail = [&](std::string why) {
    out.status = E4Derivation::Status::NotRepresentable;
    out.detail = std::move(why);
    return out;
  };
  // Only first and second components of defined pairs are ever inspected.
  std::vector<bool> first(n), second(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (d.pair(x, y)) first[x] = second[y] = true;
  std::vector<std::optional<Elem>> g(n), h(n);
  for (int u = 0; u < n; ++u) {
    if (!first[u]) continue;
    std::vector<std::optional<Elem>> row(n);
    for (int v = 0; v < n; ++v) row[v] = d.pair(u, v);
    if (!(g[u] = representative(d, row))) return fail("no element represents v -> <" + std::to_string(u) + ",v>");
  }
  for (int y = 0; y < n; ++y) {
    if (!second[y]) continue;
    std::vector<std::optional<Elem>> row(n);
    for (int u = 0; u < n; ++u) row[u] = app2(d, app2(d, b, g[u]), static_cast<Elem>(y));
    if (!(h[y] = representative(d, row)))
      return fail("no element represents u -> b(g_u)(" + std::to_string(y) + ")");
  }
  std::vector<std::optional<Elem>> row(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (auto p = d.pair(x, y)) row[*p] = app2(d, dd, app2(d, app2(d, b, h[y]), static_cast<Elem>(x)));
  auto r = representative(d, row);
  if (!r) return fail("no element represents <x,y> -> d(b(h_y)(x))");
  out.status = E4Derivation::Status::Derived;
  out.witness = Witness{*r, Law::E4};
  out.verified = verify_witness(*out.witness, j, d);
  out.detail = "b=" + std::to_string(b) + " d=" + std::to_string(dd);
  return out;
}

LawReport local_laws(const MonoOp& j, const Doctrine& d) {
  LawReport r;
  const RSubset s1 = e1_set(j, d), s3 = e3_set(j, d);
  r.e1 = least(s1, Law::E1);
  r.e2 = least(e2_set(j, d), Law::E2);
  r.e3 = least(s3, Law::E3);
  r.e4 = least(e4_set(j, d), Law::E4);
  if (!r.e1 || !r.e3) {
    r.derived_e4.status = E4Derivation::Status::NoE1E3;
    r.derived_e4.detail = "E1 or E3 has no witness";
    return r;
  }
  // Any pair of witnesses will do; report the first that yields a realizer.
  for (RSubset rb = s1; rb; rb &= rb - 1)
    for (RSubset rd = s3; rd; rd &= rd - 1) {
      auto attempt = derive_e4(j, d, static_cast<Elem>(std::countr_zero(rb)), static_cast<Elem>(std::countr_zero(rd)));
      if (attempt.status == E4Derivation::Status::Derived) {
        r.derived_e4 = attempt;
        return r;
      }
      if (r.derived_e4.detail.empty()) r.derived_e4 = attempt;
    }
  return r;
}

namespace {
RSubset lfp_at(const MonoOp& f, const Doctrine& d, RSubset a, int* iterations) {
  RSubset b = wedge(1u, a, d);
  const RSubset tag1 = d.size() > 1 ? 2u : 0u;
  int k = 0;
  for (;;) {
    RSubset next = b | wedge(tag1, f(b), d);
    if (next == b) break;
    b = next;
    ++k;
  }
  if (iterations) *iterations = k;
  return b;
}
}  // namespace

MonoOp lfp_local(const MonoOp& f, const Doctrine& d) {
  if (f.size() != d.size()) throw std::invalid_argument("operator and doctrine sizes differ");
  if (!d.has_tag_entries(0)) throw UnsuitableDoctrine("doctrine has no pair(0, .) entries");
  return make_op(d, [&](RSubset a) { return lfp_at(f, d, a, nullptr); });
}

int lfp_iterations(const MonoOp& f, const Doctrine& d, RSubset a) {
  int k = 0;
  lfp_at(f, d, a, &k);
  return k;
}

MonoOp pitts_f_finite(const Doctrine& d) {
  const RSubset top = d.universe();
  return make_op(d, [&](RSubset a) {
    RSubset out = 0;
    for (int n = 0; n < d.size(); ++n) out |= arrow(top & ~((1u << n) - 1), a, d);
    return out;
  });
}

UniformityResult uniformity_finite(const MonoOp& j, const Doctrine& d) {
  UniformityResult r;
  const RSubset e2 = e2_set(j, d);
  if (!e2) {
    r.diagnostic = "no E2 witness";
    for (RSubset a = 0; a <= d.universe(); ++a)
      if (!arrow(a, j(a), d)) {
        r.failing_set = a;
        break;
      }
    return r;
  }
  for (RSubset rest = e2; rest; rest &= rest - 1) {
    Elem a = static_cast<Elem>(std::countr_zero(rest));
    auto p = d.pair(a, a);
    if (!p) {
      r.diagnostic = "pair(" + std::to_string(a) + "," + std::to_string(a) + ") undefined";
      continue;
    }
    bool ok = true;
    for (RSubset s = 0; s <= d.universe() && ok; ++s) {
      RSubset eq = arrow(s, j(s), d);
      if (!((wedge(eq, eq, d) >> *p) & 1u)) {
        ok = false;
        r.failing_set = s;
      }
    }
    if (ok) {
      r.witness = Witness{a, Law::Uniformity};
      r.failing_set.reset();
      r.diagnostic.clear();
      return r;
    }
  }
  return r;
}

Doctrine shipped_d4() {
  Doctrine d(4);
  d.set_pair(0, 0, 2);
  d.set_pair(1, 0, 3);
  std::mt19937 rng(4);
  for (int x = 0; x < 4; ++x) {
    d.set_app(0, x, 2);
    d.set_app(1, x, x);
  }
  for (int e = 2; e < 4; ++e)
    for (int x = 0; x < 4; ++x)
      if (rng() % 4 != 0) d.set_app(e, x, rng() % 4);
  return d;
}

Doctrine shipped_d8() { return random_doctrine(8, 8, true); }

Doctrine random_doctrine(std::uint64_t seed, int n, bool structured) {
  std::mt19937_64 rng(seed);
  Doctrine d(n);
  if (structured) {
    if (n < 7) throw std::invalid_argument("structured doctrines need at least 7 elements");
    // pi is an involution fixing 0..5. Rows: 0 = pi, 1 = pi^-1, 2 = id,
    // 3..5 = constants 0..2, k >= 6 = constant k. Conjugation by pi maps
    // each row to the row of its pi-image.
    std::vector<Elem> moving(n - 6);
    std::iota(moving.begin(), moving.end(), 6);
    std::shuffle(moving.begin(), moving.end(), rng);
    std::vector<Elem> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    for (std::size_t i = 0; i + 1 < moving.size(); i += 2)
      if (rng() % 4 != 0) std::swap(pi[moving[i]], pi[moving[i + 1]]);
    for (int x = 0; x < n; ++x) {
      d.set_pair(0, x, pi[x]);
      d.set_app(0, x, pi[x]);
      d.set_app(1, x, pi[x]);
      d.set_app(2, x, x);
      for (int k = 0; k < 3; ++k) d.set_app(3 + k, x, k);
      for (int k = 6; k < n; ++k) d.set_app(k, x, k);
    }
    return d;
  }
  // Pairs: tags {0, 1} into the upper half.
  std::vector<std::pair<int, int>> slots;
  for (int tag = 0; tag < std::min(n, 2); ++tag)
    for (int x = 0; x < n; ++x) slots.emplace_back(tag, x);
  std::shuffle(slots.begin(), slots.end(), rng);
  const int upper = n - n / 2;
  std::sort(slots.begin(), slots.begin() + std::min<std::size_t>(n / 2, slots.size()));
  if (n >= 2) {
    // Keep at least one tag-0 entry.
    auto zero = std::find_if(slots.begin(), slots.end(), [](auto s) { return s.first == 0; });
    std::iter_swap(slots.begin(), zero);
  }
  for (int i = 0; i < n / 2; ++i) d.set_pair(slots[i].first, slots[i].second, upper + i);
  const Elem konst = static_cast<Elem>(rng() % n);
  for (int x = 0; x < n; ++x) {
    d.set_app(0, x, x);
    if (n > 1) d.set_app(1, x, konst);
  }
  for (int e = 2; e < n; ++e)
    for (int x = 0; x < n; ++x)
      if (rng() % 10 < 7) d.set_app(e, x, rng() % n);
  return d;
}

std::vector<MonoOp> candidate_operators(const Doctrine& d, std::uint64_t seed, int random_count) {
  std::vector<MonoOp> out;
  auto push = [&](MonoOp op) {
    if (std::find(out.begin(), out.end(), op) == out.end()) out.push_back(std::move(op));
  };
  const RSubset top = d.universe();
  push(identity_op(d));
  push(trivial_op(d));
  push(double_negation_op(d));
  push(make_op(d, [](RSubset) { return 0u; }));
  for (RSubset c = 0; c <= top; ++c) {
    push(make_op(d, [&](RSubset a) { return a | c; }));
    push(make_op(d, [&](RSubset a) { return a ? (a | c) : 0u; }));
    push(make_op(d, [&](RSubset a) { return a ? c : 0u; }));
    push(make_op(d, [&](RSubset a) { return wedge(1u, a, d) | c; }));
  }
  if (d.has_tag_entries(0)) {
    for (const MonoOp& f : {identity_op(d), trivial_op(d), pitts_f_finite(d), double_negation_op(d)})
      push(lfp_local(f, d));
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) {
    std::vector<RSubset> t(std::size_t(1) << d.size());
    for (auto& v : t) v = static_cast<RSubset>(rng()) & top & static_cast<RSubset>(rng());
    // Monotone closure: T'(A) = union of T(B) over B subset of A.
    for (int bit = 0; bit < d.size(); ++bit)
      for (RSubset a = 0; a <= top; ++a)
        if ((a >> bit) & 1u) t[a] |= t[a ^ (1u << bit)];
    push(MonoOp(d.size(), std::move(t)));
  }
  return out;
}

}  // namespace jreal::doctrine
