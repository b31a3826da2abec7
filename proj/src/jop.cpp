#include "jreal/jop.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "jreal/seq.hpp"

namespace jreal::jop {

namespace {
std::vector<Nat> normalized(std::vector<Nat> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool has(const std::vector<Nat>& sorted, const Nat& x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

std::string list_text(const std::vector<Nat>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + jreal::to_string(v[i]);
  return out + "}";
}
}  // namespace

JSet JSet::finite(std::vector<Nat> elems) {
  JSet s;
  s.kind_ = Kind::Finite;
  s.elems_ = normalized(std::move(elems));
  return s;
}

JSet JSet::cofinite(std::vector<Nat> excluded) {
  JSet s;
  s.kind_ = Kind::Cofinite;
  s.elems_ = normalized(std::move(excluded));
  return s;
}

JSet JSet::singleton(Nat k) {
  JSet s;
  s.kind_ = Kind::Singleton;
  s.elems_ = {std::move(k)};
  return s;
}

JSet JSet::up_from(Nat n) {
  JSet s;
  s.kind_ = Kind::UpFrom;
  s.elems_ = {std::move(n)};
  return s;
}

JSet JSet::by_predicate(std::string name, Predicate p) {
  JSet s;
  s.kind_ = Kind::ByPredicate;
  s.name_ = std::move(name);
  s.pred_ = std::move(p);
  return s;
}

JSet JSet::wedge(JSet a, JSet b) {
  std::string name = a.to_string() + "^" + b.to_string();
  return by_predicate(std::move(name), [a = std::move(a), b = std::move(b)](const Nat& x, Fuel f) -> std::optional<bool> {
    if (seq_length(x) != 2) return false;
    auto in_a = a.contains(seq_proj(x, 0), f);
    if (in_a && !*in_a) return false;
    auto in_b = b.contains(seq_proj(x, 1), f);
    if (in_b && !*in_b) return false;
    if (!in_a || !in_b) return std::nullopt;
    return true;
  });
}

std::vector<Nat> JSet::first_members(std::size_t k, std::uint64_t scan, Fuel fuel) const {
  std::vector<Nat> out;
  switch (kind_) {
    case Kind::Finite:
    case Kind::Singleton:
      for (std::size_t i = 0; i < elems_.size() && out.size() < k; ++i) out.push_back(elems_[i]);
      return out;
    case Kind::UpFrom:
      for (std::size_t i = 0; i < k; ++i) out.push_back(elems_.front() + i);
      return out;
    case Kind::Cofinite:
      for (Nat x = 0; out.size() < k; ++x)
        if (!std::binary_search(elems_.begin(), elems_.end(), x)) out.push_back(x);
      return out;
    case Kind::ByPredicate:
      for (std::uint64_t x = 0; x < scan && out.size() < k; ++x)
        if (pred_(Nat(x), fuel).value_or(false)) out.push_back(Nat(x));
      return out;
  }
  return out;
}

std::optional<bool> JSet::contains(const Nat& x, Fuel fuel) const {
  switch (kind_) {
    case Kind::Finite:
      return has(elems_, x);
    case Kind::Cofinite:
      return !has(elems_, x);
    case Kind::Singleton:
      return x == elems_.front();
    case Kind::UpFrom:
      return x >= elems_.front();
    case Kind::ByPredicate:
      return pred_(x, fuel);
  }
  return std::nullopt;
}

std::optional<bool> JSet::subset_of(const JSet& other) const {
  if (kind_ == Kind::ByPredicate || other.kind_ == Kind::ByPredicate) return std::nullopt;
  switch (kind_) {
    case Kind::Finite:
    case Kind::Singleton:
      return std::all_of(elems_.begin(), elems_.end(), [&](const Nat& x) { return *other.contains(x); });
    case Kind::Cofinite:
      if (other.kind_ == Kind::Cofinite)
        return std::all_of(other.elems_.begin(), other.elems_.end(), [&](const Nat& x) { return has(elems_, x); });
      if (other.kind_ == Kind::UpFrom) {
        for (Nat k = 0; k < other.elems_.front(); ++k)
          if (!has(elems_, k)) return false;
        return true;
      }
      return false;
    case Kind::UpFrom:
      if (other.kind_ == Kind::UpFrom) return other.elems_.front() <= elems_.front();
      if (other.kind_ == Kind::Cofinite)
        return std::all_of(other.elems_.begin(), other.elems_.end(), [&](const Nat& x) { return x < elems_.front(); });
      return false;
    case Kind::ByPredicate:
      break;
  }
  return std::nullopt;
}

std::string JSet::to_string() const {
  switch (kind_) {
    case Kind::Finite:
      return list_text(elems_);
    case Kind::Cofinite:
      return "co" + list_text(elems_);
    case Kind::Singleton:
      return "single " + jreal::to_string(elems_.front());
    case Kind::UpFrom:
      return "up " + jreal::to_string(elems_.front());
    case Kind::ByPredicate:
      return name_;
  }
  return "?";
}

JSet parse_jset(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto fail = [&]() -> JSet { throw std::runtime_error("bad set '" + text + "'"); };
  auto nat_of = [&](const std::string& digits) {
    try {
      return parse_nat(digits);
    } catch (const std::invalid_argument&) {
      fail();
    }
    return Nat(0);
  };
  auto list_of = [&](std::string body) {
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') fail();
    body = body.substr(1, body.size() - 2);
    std::vector<Nat> out;
    std::stringstream in(body);
    for (std::string item; std::getline(in, item, ',');) out.push_back(nat_of(item));
    if (!body.empty() && body.back() == ',') fail();
    return out;
  };
  if (s.rfind("cofinite{", 0) == 0) return JSet::cofinite(list_of(s.substr(8)));
  if (s.rfind("co{", 0) == 0) return JSet::cofinite(list_of(s.substr(2)));
  if (s.rfind("{", 0) == 0) return JSet::finite(list_of(s));
  if (s.rfind("single", 0) == 0) return JSet::singleton(nat_of(s.substr(6)));
  if (s.rfind("upfrom", 0) == 0) return JSet::up_from(nat_of(s.substr(6)));
  if (s.rfind("up", 0) == 0) return JSet::up_from(nat_of(s.substr(2)));
  return fail();
}

Target Target::plain(JSet a) {
  Target t;
  t.set_ = std::move(a);
  return t;
}

Target Target::j(Target inner) {
  Target t;
  t.inner_ = std::make_shared<const Target>(std::move(inner));
  return t;
}

std::string Target::to_string() const { return is_plain() ? set_.to_string() : "J(" + inner_->to_string() + ")"; }

CertPtr Cert::base(Nat a, CertPtr inner) {
  auto c = std::make_shared<Cert>();
  c->kind = Kind::Base;
  c->a = std::move(a);
  c->inner = std::move(inner);
  return c;
}

CertPtr Cert::lift(Nat n, std::vector<std::pair<Nat, CertPtr>> tails) {
  auto c = std::make_shared<Cert>();
  c->kind = Kind::Lift;
  c->threshold = std::move(n);
  c->tails = std::move(tails);
  return c;
}

int Cert::depth() const {
  if (kind == Kind::Base) return inner ? inner->depth() : 0;
  int deepest = 0;
  for (const auto& [m, t] : tails) deepest = std::max(deepest, t->depth());
  return deepest + 1;
}

std::string format_cert(const Cert& c) {
  if (c.kind == Cert::Kind::Base)
    return "(base " + to_string(c.a) + (c.inner ? " " + format_cert(*c.inner) : "") + ")";
  std::string out = "(lift " + to_string(c.threshold);
  for (const auto& [m, t] : c.tails) out += " (" + to_string(m) + " " + format_cert(*t) + ")";
  return out + ")";
}

namespace {
class CertParser {
 public:
  explicit CertParser(const std::string& text) : s_(text) {}

  CertPtr parse() {
    CertPtr c = cert();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::runtime_error("certificate: " + why + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char ch) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  bool peek(char ch) {
    skip();
    return pos_ < s_.size() && s_[pos_] == ch;
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a word");
    return s_.substr(start, pos_ - start);
  }
  Nat number() {
    try {
      return parse_nat(word());
    } catch (const std::invalid_argument&) {
      fail("expected a number");
    }
  }
  CertPtr cert() {
    expect('(');
    std::string head = word();
    if (head == "base") {
      Nat a = number();
      CertPtr inner = peek('(') ? cert() : nullptr;
      expect(')');
      return Cert::base(std::move(a), std::move(inner));
    }
    if (head != "lift") fail("expected 'base' or 'lift'");
    Nat n = number();
    std::vector<std::pair<Nat, CertPtr>> tails;
    while (peek('(')) {
      expect('(');
      Nat m = number();
      CertPtr t = cert();
      expect(')');
      tails.emplace_back(std::move(m), std::move(t));
    }
    expect(')');
    return Cert::lift(std::move(n), std::move(tails));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

CheckResult accept() { return {true, false, ""}; }
CheckResult reject(std::string why, bool fuel = false) { return {false, fuel, std::move(why)}; }

CheckResult check(const Nat& x, const Target& t, const Cert& c, const CheckPolicy& p, int depth_left) {
  auto tag = tagged(x);
  if (!tag) return reject(to_string(x) + " is not tagged <0,_> or <1,_>");
  if (c.kind == Cert::Kind::Base) {
    if (tag->first != 0) return reject("base rule on a tag-1 value " + to_string(x));
    if (tag->second != c.a) return reject("base payload is " + to_string(tag->second) + ", certificate says " + to_string(c.a));
    if (t.is_plain()) {
      if (c.inner) return reject("inner certificate for a plain set");
      auto in = t.set().contains(c.a, p.fuel);
      if (!in) return reject("membership of " + to_string(c.a) + " in " + t.set().to_string() + " ran out of fuel", true);
      if (!*in) return reject(to_string(c.a) + " is not in " + t.set().to_string());
      return accept();
    }
    if (!c.inner) return reject("missing inner certificate for " + t.to_string());
    return check(c.a, t.inner(), *c.inner, p, depth_left);
  }
  if (tag->first != 1) return reject("lift rule on a tag-0 value " + to_string(x));
  if (depth_left <= 0) return reject("lift nesting exceeds depth " + std::to_string(p.depth));
  if (c.threshold > p.horizon)
    return reject("threshold " + to_string(c.threshold) + " exceeds horizon " + std::to_string(p.horizon));
  const std::size_t want = static_cast<std::size_t>(p.sample_end() - to_u64(c.threshold));
  if (c.tails.size() != want) return reject("lift needs samples " + to_string(c.threshold) + ".." + std::to_string(p.sample_end() - 1));
  Code e{tag->second};
  for (std::size_t i = 0; i < want; ++i) {
    const auto& [m, sub] = c.tails[i];
    if (m != c.threshold + i) return reject("sample " + to_string(m) + " out of order");
    EvalResult r = apply(e, m, p.fuel);
    if (r.out_of_fuel()) return reject("evaluation at m=" + to_string(m) + " ran out of fuel", true);
    CheckResult inner = check(*r.value, t, *sub, p, depth_left - 1);
    if (!inner) {
      inner.reason = "m=" + to_string(m) + ": " + inner.reason;
      return inner;
    }
  }
  return accept();
}

FindResult find(const Nat& x, const Target& t, const CheckPolicy& p, int depth_left) {
  auto tag = tagged(x);
  if (!tag) return {};
  if (tag->first == 0) {
    if (t.is_plain()) {
      auto in = t.set().contains(tag->second, p.fuel);
      if (!in) return {nullptr, true};
      return {*in ? Cert::base(tag->second) : nullptr, false};
    }
    FindResult inner = find(tag->second, t.inner(), p, depth_left);
    if (!inner.cert) return inner;
    return {Cert::base(tag->second, inner.cert), false};
  }
  if (depth_left <= 0) return {};
  Code e{tag->second};
  std::vector<std::pair<Nat, CertPtr>> tails;
  bool fuel = false;
  for (int m = p.sample_end() - 1; m >= 0; --m) {
    EvalResult r = apply(e, Nat(m), p.fuel);
    if (r.out_of_fuel()) {
      fuel = true;
      break;
    }
    FindResult sub = find(*r.value, t, p, depth_left - 1);
    if (!sub.cert) {
      fuel = sub.out_of_fuel;
      break;
    }
    tails.emplace_back(Nat(m), sub.cert);
  }
  if (static_cast<int>(tails.size()) < p.window) return {nullptr, fuel};
  std::reverse(tails.begin(), tails.end());
  Nat n = tails.front().first;
  if (n > p.horizon) return {nullptr, fuel};
  return {Cert::lift(std::move(n), std::move(tails)), false};
}

SingletonResult singleton(const Nat& x, const CheckPolicy& p, int depth_left) {
  auto tag = tagged(x);
  if (!tag) return {};
  if (tag->first == 0) return {tag->second, Cert::base(tag->second), false};
  if (depth_left <= 0) return {};
  Code e{tag->second};
  std::optional<Nat> k;
  std::vector<std::pair<Nat, CertPtr>> tails;
  bool fuel = false;
  for (int m = p.sample_end() - 1; m >= 0; --m) {
    EvalResult r = apply(e, Nat(m), p.fuel);
    if (r.out_of_fuel()) {
      fuel = true;
      break;
    }
    SingletonResult sub = singleton(*r.value, p, depth_left - 1);
    if (!sub.value || (k && *k != *sub.value)) {
      fuel = sub.out_of_fuel;
      break;
    }
    k = sub.value;
    tails.emplace_back(Nat(m), sub.cert);
  }
  if (static_cast<int>(tails.size()) < p.window) return {std::nullopt, nullptr, fuel};
  std::reverse(tails.begin(), tails.end());
  Nat n = tails.front().first;
  if (n > p.horizon) return {std::nullopt, nullptr, fuel};
  return {k, Cert::lift(std::move(n), std::move(tails)), false};
}
}  // namespace

CertPtr parse_cert(const std::string& text) { return CertParser(text).parse(); }

std::optional<std::pair<int, Nat>> tagged(const Nat& x) {
  if (seq_length(x) != 2) return std::nullopt;
  Nat tag = seq_proj(x, 0);
  if (tag > 1) return std::nullopt;
  return std::make_pair(static_cast<int>(to_u64(tag)), seq_proj(x, 1));
}

CheckResult check_cert(const Nat& x, const Target& t, const Cert& c, const CheckPolicy& p) {
  return check(x, t, c, p, p.depth);
}

CheckResult check_cert(const Nat& x, const JSet& a, const Cert& c, const CheckPolicy& p) {
  return check_cert(x, Target::plain(a), c, p);
}

FindResult find_cert(const Nat& x, const Target& t, const CheckPolicy& p) { return find(x, t, p, p.depth); }

SingletonResult find_singleton(const Nat& x, const CheckPolicy& p) { return singleton(x, p, p.depth); }

}  // namespace jreal::jop
