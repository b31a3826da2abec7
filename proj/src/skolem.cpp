#include "jreal/skolem.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "jreal/kit.hpp"
#include "jreal/lambda.hpp"
#include "jreal/seq.hpp"

namespace jreal::skolem {

using jop::JSet;
using realize::Formula;
using realize::Term;

// ---------------------------------------------------------------- polynomials

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Nat eval(const Poly& p, const Nat& n) {
  Nat v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * n + *it;
  return v;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
  return trim(std::move(out));
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return trim(std::move(out));
}

Poly compose(const Poly& outer, const Poly& inner) {
  Poly v;
  for (auto it = outer.rbegin(); it != outer.rend(); ++it) v = add(mul(v, inner), Poly{*it});
  return v;
}

std::size_t degree(const Poly& p) { return p.empty() ? 0 : p.size() - 1; }

int eventual_cmp(const Poly& a, const Poly& b) {
  Poly x = trim(a), y = trim(b);
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
  return 0;
}

namespace {

struct Eventual {
  int sign = 0;
  Nat from = 0;  // sign(a(n) - b(n)) = sign for every n >= from
};

// The coefficients of a - b may be negative; the sign of the leading one wins
// beyond the Cauchy root bound, and we walk the bound down to the last change.
Eventual eventual(const Poly& a, const Poly& b) {
  Poly d(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
  d = trim(std::move(d));
  if (d.empty()) return {};
  const Nat lead = abs(d.back());
  Nat worst = 0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) worst = std::max(worst, Nat((abs(d[i]) + lead - 1) / lead));
  Eventual e{d.back() > 0 ? 1 : -1, worst + 1};
  auto sgn = [](const Nat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  while (e.from > 0 && sgn(eval(d, e.from - 1)) == e.sign) e.from -= 1;
  return e;
}

std::size_t lcm(std::size_t a, std::size_t b) { return std::lcm(a, b); }

}  // namespace

// ---------------------------------------------------------------- quasi-polynomials

QuasiPoly::QuasiPoly(std::vector<Poly> residues) {
  if (residues.empty()) throw std::invalid_argument("quasi-polynomial needs a modulus >= 1");
  for (auto& p : residues) {
    p = trim(std::move(p));
    for (const auto& c : p)
      if (c < 0) throw std::invalid_argument("negative coefficient");
  }
  const std::size_t m = residues.size();
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    bool periodic = true;
    for (std::size_t s = d; s < m && periodic; ++s) periodic = residues[s] == residues[s % d];
    if (periodic) {
      residues.resize(d);
      break;
    }
  }
  residues_ = std::move(residues);
}

QuasiPoly QuasiPoly::constant(const Nat& c) { return QuasiPoly({Poly{c}}); }
QuasiPoly QuasiPoly::polynomial(Poly p) { return QuasiPoly({std::move(p)}); }
QuasiPoly QuasiPoly::identity() { return QuasiPoly({Poly{0, 1}}); }

Nat QuasiPoly::operator()(const Nat& n) const {
  return eval(residues_[static_cast<std::size_t>(to_u64(n % Nat(residues_.size())))], n);
}

std::size_t QuasiPoly::degree() const {
  std::size_t d = 0;
  for (const auto& p : residues_) d = std::max(d, skolem::degree(p));
  return d;
}

QuasiPoly operator+(const QuasiPoly& a, const QuasiPoly& b) {
  std::vector<Poly> r(lcm(a.modulus(), b.modulus()));
  for (std::size_t s = 0; s < r.size(); ++s) r[s] = add(a.residue(s), b.residue(s));
  return QuasiPoly(std::move(r));
}

QuasiPoly operator*(const QuasiPoly& a, const QuasiPoly& b) {
  std::vector<Poly> r(lcm(a.modulus(), b.modulus()));
  for (std::size_t s = 0; s < r.size(); ++s) r[s] = mul(a.residue(s), b.residue(s));
  return QuasiPoly(std::move(r));
}

// On n = s mod lcm, inner is the polynomial p = inner.residue(s), and p(n) mod
// m_outer depends only on n mod m_outer, which divides the lcm.
QuasiPoly compose(const QuasiPoly& outer, const QuasiPoly& inner) {
  std::vector<Poly> r(lcm(outer.modulus(), inner.modulus()));
  for (std::size_t s = 0; s < r.size(); ++s) {
    const Poly& p = inner.residue(s);
    auto j = static_cast<std::size_t>(to_u64(eval(p, s) % Nat(outer.modulus())));
    r[s] = compose(outer.residue(j), p);
  }
  return QuasiPoly(std::move(r));
}

std::string to_string(const Poly& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || p[i] != 1) out += jreal::to_string(p[i]);
    if (i > 0) out += (p[i] != 1 ? " n" : "n") + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out.empty() ? "0" : out;
}

std::string to_string(const QuasiPoly& q) {
  if (q.modulus() == 1) return to_string(q.residue(0));
  std::string out = "mod " + std::to_string(q.modulus()) + ":";
  for (std::size_t r = 0; r < q.modulus(); ++r)
    out += (r ? "; " : " ") + std::to_string(r) + " -> " + to_string(q.residue(r));
  return out;
}

namespace {

class PolyReader {
 public:
  explicit PolyReader(std::string_view s) : s_(s) {}

  Poly poly() {
    Poly p;
    do {
      auto [c, k] = term();
      if (p.size() <= k) p.resize(k + 1);
      p[k] += c;
    } while (eat('+'));
    return trim(std::move(p));
  }
  std::size_t number() {
    skip();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("number expected");
    std::size_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = v * 10 + (s_[i_++] - '0');
    return v;
  }
  Nat big() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("number expected");
    return Nat(std::string(s_.substr(start, i_ - start)));
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) return ++i_, true;
    return false;
  }
  bool eat(std::string_view w) {
    skip();
    if (s_.substr(i_, w.size()) == w) return i_ += w.size(), true;
    return false;
  }
  bool at_end() {
    skip();
    return i_ == s_.size();
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument(why + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }

 private:
  std::pair<Nat, std::size_t> term() {
    skip();
    Nat c = 1;
    bool has_c = i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
    if (has_c) c = big();
    eat('*');
    if (!eat('n')) {
      if (!has_c) fail("term expected");
      return {c, 0};
    }
    return {c, eat('^') ? number() : 1};
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

QuasiPoly parse_quasipoly(std::string_view text) {
  PolyReader r(text);
  if (!r.eat("mod")) {
    Poly p = r.poly();
    if (!r.at_end()) r.fail("trailing input");
    return QuasiPoly::polynomial(std::move(p));
  }
  std::size_t m = r.number();
  if (m == 0) r.fail("modulus must be >= 1");
  if (!r.eat(':')) r.fail("':' expected");
  std::vector<std::optional<Poly>> res(m);
  do {
    std::size_t k = r.number();
    if (k >= m) r.fail("residue out of range");
    if (res[k]) r.fail("duplicate residue");
    if (!r.eat("->")) r.fail("'->' expected");
    res[k] = r.poly();
  } while (r.eat(';'));
  if (!r.at_end()) r.fail("trailing input");
  std::vector<Poly> out;
  for (std::size_t k = 0; k < m; ++k) {
    if (!res[k]) r.fail("residue " + std::to_string(k) + " missing");
    out.push_back(*res[k]);
  }
  return QuasiPoly(std::move(out));
}

// ---------------------------------------------------------------- enumeration

std::size_t grade(const QuasiPoly& q) {
  Nat sum = 0;
  for (const auto& p : q.residues())
    for (const auto& c : p) sum += c;
  return q.modulus() + q.degree() + static_cast<std::size_t>(to_u64(sum));
}

namespace {

// Weak compositions of `total` into `slots` parts, lexicographically.
void compositions(std::size_t total, std::size_t slots, std::vector<std::size_t>& cur,
                  const std::function<void(const std::vector<std::size_t>&)>& emit) {
  if (cur.size() + 1 == slots) {
    cur.push_back(total);
    emit(cur);
    cur.pop_back();
    return;
  }
  for (std::size_t v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, slots, cur, emit);
    cur.pop_back();
  }
}

std::vector<QuasiPoly> build_grade(std::size_t g) {
  std::vector<QuasiPoly> out;
  for (std::size_t m = 1; m <= g; ++m)
    for (std::size_t d = 0; m + d <= g; ++d) {
      const std::size_t width = d + 1;
      std::vector<std::size_t> cur;
      compositions(g - m - d, m * width, cur, [&](const std::vector<std::size_t>& v) {
        std::vector<Poly> res(m);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t j = 0; j < width; ++j) res[r].push_back(v[r * width + j]);
        QuasiPoly q(std::move(res));
        if (q.modulus() == m && q.degree() == d) out.push_back(q);
      });
    }
  return out;
}

struct Grades {
  std::mutex mu;
  std::deque<std::vector<QuasiPoly>> members{{}};  // grade 0 is empty
  std::deque<std::size_t> cumulative{0};
};

Grades& grades() {
  static Grades g;
  return g;
}

void ensure_grade(Grades& gs, std::size_t g) {
  while (gs.members.size() <= g) {
    gs.members.push_back(build_grade(gs.members.size()));
    gs.cumulative.push_back(gs.cumulative.back() + gs.members.back().size());
  }
}

}  // namespace

const std::vector<QuasiPoly>& grade_members(std::size_t g) {
  Grades& gs = grades();
  std::lock_guard lock(gs.mu);
  ensure_grade(gs, g);
  return gs.members[g];
}

std::size_t count_up_to_grade(std::size_t g) {
  Grades& gs = grades();
  std::lock_guard lock(gs.mu);
  ensure_grade(gs, g);
  return gs.cumulative[g];
}

QuasiPoly enumerate(std::size_t i) {
  Grades& gs = grades();
  std::lock_guard lock(gs.mu);
  for (std::size_t g = 1;; ++g) {
    ensure_grade(gs, g);
    if (i < gs.cumulative[g]) return gs.members[g][i - gs.cumulative[g - 1]];
  }
}

std::size_t index_of(const QuasiPoly& q) {
  const std::size_t g = grade(q);
  const auto& ms = grade_members(g);
  auto it = std::find(ms.begin(), ms.end(), q);
  if (it == ms.end()) throw std::logic_error("quasi-polynomial missing from its grade");
  return count_up_to_grade(g - 1) + static_cast<std::size_t>(it - ms.begin());
}

// ---------------------------------------------------------------- definable sets

bool DefinableSet::contains(const Nat& n) const {
  return n >= threshold && residues[static_cast<std::size_t>(to_u64(n % Nat(modulus)))];
}

bool DefinableSet::infinite() const { return std::find(residues.begin(), residues.end(), true) != residues.end(); }

Nat DefinableSet::least_from(const Nat& n) const {
  if (!infinite()) throw std::logic_error("least_from on a finite set");
  Nat x = std::max(n, threshold);
  while (!contains(x)) ++x;
  return x;
}

DefinableSet DefinableSet::canonical() const {
  DefinableSet out = *this;
  for (std::size_t d = 1; d <= modulus; ++d) {
    if (modulus % d != 0) continue;
    bool periodic = true;
    for (std::size_t s = d; s < modulus && periodic; ++s) periodic = residues[s] == residues[s % d];
    if (periodic) {
      out.modulus = d;
      out.residues.resize(d);
      break;
    }
  }
  return out;
}

bool DefinableSet::includes(const DefinableSet& sub) const {
  const std::size_t l = lcm(modulus, sub.modulus);
  for (std::size_t s = 0; s < l; ++s)
    if (sub.residues[s % sub.modulus] && !residues[s % modulus]) return false;
  for (Nat n = sub.threshold; n < threshold; ++n)
    if (sub.contains(n)) return false;
  return true;
}

std::string DefinableSet::to_string() const {
  std::string rs;
  for (std::size_t s = 0; s < modulus; ++s)
    if (residues[s]) rs += (rs.empty() ? "" : ",") + std::to_string(s);
  return "{n >= " + jreal::to_string(threshold) + " | n mod " + std::to_string(modulus) + " in {" + rs + "}}";
}

char sign_char(Sign s) { return s == Sign::Less ? '<' : (s == Sign::Equal ? '=' : '>'); }

// ---------------------------------------------------------------- the chain

Chain::Chain() : sets_{DefinableSet{}}, psi_{0}, alphas_{enumerate(0)}, rank_{0}, groups_{{0}} {}

// The cells of the split, in order, are numbered 2g (below group g), 2g + 1
// (equal to group g) and 2l (above all l groups). On a residue class every
// comparison is eventually constant, so a cell is infinite iff it owns a
// class; the new set keeps those classes from the point where all
// comparisons have settled.
void Chain::extend() {
  const QuasiPoly alpha = enumerate(alphas_.size());
  const DefinableSet& a = sets_.back();
  std::size_t l = lcm(a.modulus, alpha.modulus());
  for (const auto& g : groups_) l = lcm(l, alphas_[g[0]].modulus());

  std::vector<std::size_t> cell(l, SIZE_MAX);
  std::vector<Nat> from(l, 0);
  std::size_t best = SIZE_MAX;
  for (std::size_t s = 0; s < l; ++s) {
    if (!a.residues[s % a.modulus]) continue;
    cell[s] = 2 * groups_.size();
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      Eventual e = eventual(alpha.residue(s), alphas_[groups_[g][0]].residue(s));
      from[s] = std::max(from[s], e.from);
      if (cell[s] == 2 * groups_.size() && e.sign <= 0) cell[s] = 2 * g + (e.sign == 0 ? 1 : 0);
    }
    best = std::min(best, cell[s]);
  }

  DefinableSet next;
  next.modulus = l;
  next.residues.assign(l, false);
  next.threshold = a.threshold;
  for (std::size_t s = 0; s < l; ++s)
    if (cell[s] == best) {
      next.residues[s] = true;
      next.threshold = std::max(next.threshold, from[s]);
    }
  sets_.push_back(next.canonical());

  const std::size_t index = alphas_.size();
  alphas_.push_back(alpha);
  if (best % 2 == 1) {
    groups_[best / 2].push_back(index);
  } else {
    groups_.insert(groups_.begin() + static_cast<std::ptrdiff_t>(best / 2), std::vector<std::size_t>{index});
  }
  rank_.assign(alphas_.size(), 0);
  for (std::size_t g = 0; g < groups_.size(); ++g)
    for (auto i : groups_[g]) rank_[i] = g;
  psi_.push_back(sets_.back().least_from(psi_.back() + 1));
}

void Chain::extend_to(std::size_t k) {
  while (this->k() < k) extend();
}

Sign Chain::sign(std::size_t i, std::size_t j) {
  extend_to(std::max(i, j));
  if (rank_[i] == rank_[j]) return Sign::Equal;
  return rank_[i] < rank_[j] ? Sign::Less : Sign::Greater;
}

std::vector<std::vector<std::size_t>> Chain::order() const { return groups_; }

// ---------------------------------------------------------------- the model

// psi(n) lies in A_K for all n >= K, so a property that holds on every class
// of A_K (beyond the thresholds) holds along the tail of psi.
Sign Model::compare(const QuasiPoly& x, const QuasiPoly& y) {
  for (;;) {
    const DefinableSet& a = chain_.set(chain_.k());
    const std::size_t l = lcm(a.modulus, lcm(x.modulus(), y.modulus()));
    std::set<int> seen;
    for (std::size_t s = 0; s < l; ++s)
      if (a.residues[s % a.modulus]) seen.insert(eventual_cmp(x.residue(s), y.residue(s)));
    if (seen.size() == 1) return *seen.begin() < 0 ? Sign::Less : (*seen.begin() == 0 ? Sign::Equal : Sign::Greater);
    if (chain_.k() >= max_steps_) throw std::runtime_error("comparison undecided after " + std::to_string(max_steps_) + " chain steps");
    chain_.extend();
  }
}

Poly Model::canonical(const ModelElem& e) {
  for (;;) {
    const DefinableSet& a = chain_.set(chain_.k());
    const std::size_t l = lcm(a.modulus, e.rep.modulus());
    std::set<Poly> seen;
    for (std::size_t s = 0; s < l; ++s)
      if (a.residues[s % a.modulus]) seen.insert(e.rep.residue(s));
    if (seen.size() == 1) return *seen.begin();
    if (chain_.k() >= max_steps_) throw std::runtime_error("class of " + to_string(e.rep) + " unresolved after " + std::to_string(max_steps_) + " chain steps");
    chain_.extend();
  }
}

std::optional<Nat> Model::standard_value(const ModelElem& e) {
  Poly p = canonical(e);
  if (p.size() > 1) return std::nullopt;
  return p.empty() ? Nat(0) : p[0];
}

QuasiPoly denote(const Term& t, const Args& args) {
  switch (t.kind) {
    case Term::Kind::Var:
      for (const auto& [name, e] : args)
        if (name == t.var) return e.rep;
      throw std::invalid_argument("no argument for " + t.var);
    case Term::Kind::Num:
      return QuasiPoly::constant(t.num);
    case Term::Kind::Succ:
      return denote(*t.l, args) + QuasiPoly::constant(1);
    case Term::Kind::Add:
      return denote(*t.l, args) + denote(*t.r, args);
    case Term::Kind::Mul:
      return denote(*t.l, args) * denote(*t.r, args);
  }
  return {};
}

namespace {

bool is_qf(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Rel:
      return true;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return false;
    default:
      return is_qf(*f.a) && is_qf(*f.b);
  }
}

// The two sides of each atom, for the thresholds of the sampled window.
void atoms(const Formula& f, const Args& args, std::vector<std::pair<QuasiPoly, QuasiPoly>>& out) {
  switch (f.kind) {
    case Formula::Kind::Eq:
      out.emplace_back(denote(*f.t, args), denote(*f.s, args));
      return;
    case Formula::Kind::Rel:
      out.emplace_back(denote(*f.args.at(0), args), denote(*f.args.at(1), args));
      return;
    default:
      atoms(*f.a, args, out);
      atoms(*f.b, args, out);
  }
}

bool atom_truth(Model& m, const Formula& f, const Args& args) {
  if (f.kind == Formula::Kind::Eq) return m.compare(denote(*f.t, args), denote(*f.s, args)) == Sign::Equal;
  if (f.name != "<" || f.args.size() != 2) throw std::invalid_argument("relation " + f.name + " is not in the language");
  return m.compare(denote(*f.args[0], args), denote(*f.args[1], args)) == Sign::Less;
}

// Model truth with quantifiers over the given sample of elements; bounded
// quantifiers with a standard bound are exact.
bool sampled_model_truth(Model& m, const Formula& f, Args& args, const std::vector<ModelElem>& sample) {
  switch (f.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Rel:
      return atom_truth(m, f, args);
    case Formula::Kind::And:
      return sampled_model_truth(m, *f.a, args, sample) && sampled_model_truth(m, *f.b, args, sample);
    case Formula::Kind::Or:
      return sampled_model_truth(m, *f.a, args, sample) || sampled_model_truth(m, *f.b, args, sample);
    case Formula::Kind::Imp:
      return !sampled_model_truth(m, *f.a, args, sample) || sampled_model_truth(m, *f.b, args, sample);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const bool all = f.kind == Formula::Kind::Forall;
      std::vector<ModelElem> range;
      std::optional<Nat> bound;
      if (f.bounded) bound = m.standard_value({denote(*f.t, args)});
      if (bound) {
        for (Nat i = 0; i < *bound; ++i) range.push_back(Model::iota(i));
      } else {
        for (const auto& e : sample)
          if (!f.bounded || m.compare(e.rep, denote(*f.t, args)) == Sign::Less) range.push_back(e);
      }
      for (const auto& e : range) {
        args.insert(args.begin(), {f.name, e});
        bool t = sampled_model_truth(m, *f.a, args, sample);
        args.erase(args.begin());
        if (t != all) return t;
      }
      return all;
    }
  }
  return false;
}

Nat term_value(const Term& t, const std::vector<std::pair<std::string, Nat>>& env) {
  switch (t.kind) {
    case Term::Kind::Var:
      for (const auto& [name, v] : env)
        if (name == t.var) return v;
      throw std::invalid_argument("unbound " + t.var);
    case Term::Kind::Num:
      return t.num;
    case Term::Kind::Succ:
      return term_value(*t.l, env) + 1;
    case Term::Kind::Add:
      return term_value(*t.l, env) + term_value(*t.r, env);
    case Term::Kind::Mul:
      return term_value(*t.l, env) * term_value(*t.r, env);
  }
  return 0;
}

// Truth in N with unbounded quantifiers read over [0, window).
bool sampled_n_truth(const Formula& f, std::vector<std::pair<std::string, Nat>>& env, int window) {
  switch (f.kind) {
    case Formula::Kind::Eq:
      return term_value(*f.t, env) == term_value(*f.s, env);
    case Formula::Kind::Rel:
      if (f.name != "<" || f.args.size() != 2) throw std::invalid_argument("relation " + f.name + " is not in the language");
      return term_value(*f.args[0], env) < term_value(*f.args[1], env);
    case Formula::Kind::And:
      return sampled_n_truth(*f.a, env, window) && sampled_n_truth(*f.b, env, window);
    case Formula::Kind::Or:
      return sampled_n_truth(*f.a, env, window) || sampled_n_truth(*f.b, env, window);
    case Formula::Kind::Imp:
      return !sampled_n_truth(*f.a, env, window) || sampled_n_truth(*f.b, env, window);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const bool all = f.kind == Formula::Kind::Forall;
      const Nat end = f.bounded ? term_value(*f.t, env) : Nat(window);
      for (Nat i = 0; i < end; ++i) {
        env.insert(env.begin(), {f.name, i});
        bool t = sampled_n_truth(*f.a, env, window);
        env.erase(env.begin());
        if (t != all) return t;
      }
      return all;
    }
  }
  return false;
}

}  // namespace

bool truth_qf(Model& m, const Formula& f, const Args& args) {
  switch (f.kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Rel:
      return atom_truth(m, f, args);
    case Formula::Kind::And:
      return truth_qf(m, *f.a, args) && truth_qf(m, *f.b, args);
    case Formula::Kind::Or:
      return truth_qf(m, *f.a, args) || truth_qf(m, *f.b, args);
    case Formula::Kind::Imp:
      return !truth_qf(m, *f.a, args) || truth_qf(m, *f.b, args);
    default:
      throw std::invalid_argument("truth_qf needs a quantifier-free formula");
  }
}

TransferReport transfer_check(Model& m, const realize::FormulaPtr& f, const Args& args, std::size_t window) {
  TransferReport r;
  r.window = window;
  r.quantifier_free = is_qf(*f);
  std::vector<std::optional<Nat>> std_values;
  for (const auto& [name, e] : args) std_values.push_back(m.standard_value(e));
  const bool all_standard =
      std::all_of(std_values.begin(), std_values.end(), [](const auto& v) { return v.has_value(); });

  std::size_t k0 = 0;
  if (r.quantifier_free) {
    r.model = truth_qf(m, *f, args);
    // Past K every atom is decided on all classes of A_K; past the threshold
    // each class shows its eventual behaviour.
    std::vector<std::pair<QuasiPoly, QuasiPoly>> sides;
    atoms(*f, args, sides);
    Nat threshold = 0;
    for (const auto& [x, y] : sides) {
      const std::size_t l = lcm(x.modulus(), y.modulus());
      for (std::size_t s = 0; s < l; ++s) threshold = std::max(threshold, eventual(x.residue(s), y.residue(s)).from);
    }
    k0 = m.chain().k();
    while (true) {
      m.chain().extend_to(k0);
      if (m.chain().psi()[k0] >= threshold) break;
      ++k0;
    }
  } else {
    std::vector<ModelElem> sample;
    std::set<Poly> seen;
    for (std::size_t i = 0; sample.size() < window; ++i) {
      ModelElem e{enumerate(i)};
      if (seen.insert(m.canonical(e)).second) sample.push_back(e);
    }
    Args scratch = args;
    r.model = sampled_model_truth(m, *f, scratch, sample);
    k0 = m.chain().k();
  }
  r.window_start = k0;
  m.chain().extend_to(k0 + window - 1);

  std::optional<bool> first;
  bool uniform = true;
  for (std::size_t k = k0; k < k0 + window; ++k) {
    std::vector<std::pair<std::string, Nat>> env;
    for (const auto& [name, e] : args) env.emplace_back(name, e.rep(m.chain().psi()[k]));
    bool t = sampled_n_truth(*f, env, static_cast<int>(window));
    if (!first) first = t;
    if (t != *first) {
      uniform = false;
      r.detail = "truth at psi(k) changes at k = " + std::to_string(k);
      break;
    }
  }
  if (uniform) r.sampled = first;
  if (all_standard) {
    std::vector<std::pair<std::string, Nat>> env;
    for (std::size_t i = 0; i < args.size(); ++i) env.emplace_back(args[i].first, *std_values[i]);
    r.standard = sampled_n_truth(*f, env, static_cast<int>(window));
  }
  r.agree = r.sampled && r.model == r.sampled && (!r.standard || r.standard == r.model);
  if (r.detail.empty())
    r.detail = r.agree ? (r.quantifier_free ? "exact" : "sampled: quantifiers over " + std::to_string(window) + " elements")
                       : "disagreement";
  return r;
}

// ---------------------------------------------------------------- the J-assembly

Point point_of(Model& m, const ModelElem& e) { return encode_seq(m.canonical(e)); }

Poly poly_of(const Point& p) { return decode_seq(p); }

namespace {
Point encode(const Poly& p) { return encode_seq(p); }
}  // namespace

realize::Structure model_structure(std::vector<Point> sample) {
  realize::Structure s;
  s.name = "N*";
  s.carrier = assembly::Assembly::sampled(
      std::move(sample), [](const Point& x) { return JSet::singleton(x); },
      [](const Point& x) { return "[" + to_string(poly_of(x)) + "]"; });
  s.numeral = [](const Nat& n) { return encode(trim({n})); };
  s.succ = [](const Point& x) { return encode(add(poly_of(x), {1})); };
  s.add = [](const Point& x, const Point& y) { return encode(add(poly_of(x), poly_of(y))); };
  s.mul = [](const Point& x, const Point& y) { return encode(mul(poly_of(x), poly_of(y))); };
  s.count_below = [](const Point& b) -> std::size_t {
    Poly p = poly_of(b);
    if (p.size() > 1) throw std::invalid_argument("bounded quantifier with a nonstandard bound");
    return p.empty() ? 0 : static_cast<std::size_t>(to_u64(p[0]));
  };
  s.relations["<"] = {2, [](const std::vector<Point>& v) {
                        return eventual_cmp(poly_of(v[0]), poly_of(v[1])) < 0 ? JSet::singleton(tuple2(v[0], v[1]))
                                                                              : JSet::empty();
                      }};
  s.relations["St"] = {1, [](const std::vector<Point>& v) {
                         return poly_of(v[0]).size() <= 1 ? JSet::singleton(v[0]) : JSet::empty();
                       }};
  return s;
}

namespace {

// Coefficient-list arithmetic on sequence codes.
constexpr std::string_view kPolySource = R"(
add2 = fix (\self x y. ifz y (\u. x) (\u. self (succ x) (pred y)) 0)
mul2 = fix (\self x y. ifz y (\u. 0) (\u. add2 x (self x (pred y))) 0)
max2 = \x y. ifz (sub x y) (\u. y) (\u. x) 0
gen = \f n. (fix (\go i acc. ifz i (\u. acc) (\u. go (pred i) (cons (f (pred i)) acc)) 0)) n nil
padd = \p q. gen (\i. add2 (proj p i) (proj q i)) (max2 (len p) (len q))
psucc = \p. gen (\i. ifz i (\u. succ (proj p 0)) (\u. proj p i) 0) (max2 (len p) 1)
conv = \p q k. (fix (\go i acc. ifz i (\u. acc) (\u. go (pred i) (add2 acc (mul2 (proj p (pred i)) (proj q (sub k (pred i)))))) 0)) (succ k) 0
pmul = \p q. ifz (len p) (\u. nil) (\u. ifz (len q) (\v. nil) (\v. gen (conv p q) (pred (add2 (len p) (len q)))) 0) 0
)";

const Definitions& poly_definitions() {
  static const Definitions defs = [] {
    Definitions d = jop::kit_definitions();
    std::istringstream in{std::string(kPolySource)};
    for (std::string line; std::getline(in, line);) {
      auto eq = line.find(" = ");
      if (eq == std::string::npos) continue;
      d[line.substr(0, eq)] = parse_closed_term(line.substr(eq + 3), d);
    }
    return d;
  }();
  return defs;
}

Code poly_code(std::string_view text) { return code_of(parse_closed_term(text, poly_definitions())); }

}  // namespace

bool StReport::verified() const {
  for (const auto& [name, t] : tracking)
    if (t.verdict != assembly::Verdict::Verified) return false;
  return st_check.check.verdict == assembly::Verdict::Verified && verdict.kind == realize::Verdict3::Kind::Realized;
}

StReport st_assembly(Model& m, const jop::CheckPolicy& p, std::size_t sample_size) {
  StReport r;
  std::set<Point> seen;
  for (std::size_t i = 0; r.sample.size() < sample_size; ++i) {
    Point x = point_of(m, {enumerate(i)});
    if (seen.insert(x).second) r.sample.push_back(x);
  }
  realize::Structure s = model_structure(r.sample);
  r.carrier = s.carrier;
  using assembly::Assembly;
  using assembly::Morphism;

  assembly::Sampling all;
  all.points = static_cast<int>(sample_size * sample_size);
  const Assembly pairs = Assembly::product(r.carrier, r.carrier);
  auto binary = [](const std::function<Point(const Point&, const Point&)>& op) {
    return [op](const Point& z) {
      auto [x, y] = unpair_code(z);
      return op(x, y);
    };
  };
  r.tracking.emplace_back("S", check_tracking(Morphism{s.succ, poly_code("\\k. a (psucc k)"), "S"}, r.carrier,
                                              r.carrier, p, all));
  r.tracking.emplace_back(
      "+", check_tracking(Morphism{binary(s.add), poly_code("\\z. a (padd (fst z) (snd z))"), "+"}, pairs, r.carrier, p, all));
  r.tracking.emplace_back(
      "*", check_tracking(Morphism{binary(s.mul), poly_code("\\z. a (pmul (fst z) (snd z))"), "*"}, pairs, r.carrier, p, all));
  assembly::Sampling thirty;
  thirty.points = 31;
  r.tracking.emplace_back("i", check_tracking(Morphism{s.numeral, poly_code("\\x. a (ifz x (\\u. nil) (\\u. cons x nil) 0)"), "i"},
                                              Assembly::nat(), r.carrier, p, thirty));

  r.st.r = [](const Point& x) { return poly_of(x).size() <= 1 ? JSet::singleton(x) : JSet::empty(); };
  r.st.tracker = jop::combinator_kit().a;
  r.st_check = subobject_check(r.st, r.carrier, p, all);

  // (e)_1 reads the length of the canonical code: at most one coefficient
  // means bounded, so St holds and the code itself realizes it; otherwise the
  // negation holds vacuously.
  Code branch = poly_code("\\k. a (ifz (sub (len k) 1) (\\u. pair 0 k) (\\u. pair 1 (pair (a k) 0)) 0)");
  r.realizer = tuple2(0, branch.value);
  using namespace realize;
  FormulaPtr st = f_rel("St", {t_var("y")});
  FormulaPtr f = f_forall("y", f_or(st, negation(st)));
  Windows w;
  w.points = static_cast<int>(sample_size);
  r.verdict = jrealizes(r.realizer, *f, {}, s, p, w);
  r.caveat = "E'([a]) holds only the canonical code of [a]; other representatives are not covered";
  return r;
}

}  // namespace jreal::skolem
