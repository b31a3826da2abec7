#include "jreal/jdec.hpp"

#include <cctype>
#include <sstream>

#include "jreal/kit.hpp"
#include "jreal/lambda.hpp"
#include "jreal/seq.hpp"

namespace jreal::jdec {

using jop::Cert;

namespace {
constexpr std::string_view kDeciderSource = R"(
T1 = \n x. a (eq x n)
swap = \v. ifz v (\u. 1) (\u. 0) 0
T2 = \e x. b swap (e x)
never = \x. a 1
ENUM = \L n. ifz (sub (len L) n) (\u. never) (\u. proj L n) 0
SIG = \e x. d (c (\n. G (upto (\i. (e i) x) n)))
BASIC = \h x. a (h x)
REP = \g x. d (c (\n. H (upto (\y. g (pair x y)) n)))
)";

const Definitions& defs() {
  static const Definitions d = [] {
    Definitions out = jop::kit_definitions();
    std::istringstream in{std::string(kDeciderSource)};
    for (std::string line; std::getline(in, line);) {
      auto eq = line.find(" = ");
      if (eq != std::string::npos) out[line.substr(0, eq)] = parse_closed_term(line.substr(eq + 3), out);
    }
    return out;
  }();
  return d;
}

Code applied(std::string_view name, const Nat& arg) {
  return code_of(tapp(defs().find(name)->second, tnum(arg)));
}

Replay fail(std::string why) { return {std::nullopt, nullptr, std::move(why)}; }
}  // namespace

std::string Decider::to_string() const {
  switch (kind) {
    case Kind::One:
      return "one " + jreal::to_string(n);
    case Kind::Not:
      return "not (" + inner->to_string() + ")";
    case Kind::Union: {
      std::string out = "union";
      for (const auto& p : parts) out += " (" + p->to_string() + ")";
      return out;
    }
    case Kind::Basic:
      return "basic " + label;
  }
  return "?";
}

int Decider::tree_depth() const {
  switch (kind) {
    case Kind::Not:
      return 1 + inner->tree_depth();
    case Kind::Union: {
      int deepest = 0;
      for (const auto& p : parts) deepest = std::max(deepest, p->tree_depth());
      return 1 + deepest;
    }
    default:
      return 1;
  }
}

DeciderPtr tau1(const Nat& n) {
  auto d = std::make_shared<Decider>();
  d->kind = Decider::Kind::One;
  d->n = n;
  d->code = applied("T1", n);
  return d;
}

DeciderPtr tau2(DeciderPtr inner) {
  auto d = std::make_shared<Decider>();
  d->kind = Decider::Kind::Not;
  d->code = applied("T2", inner->code.value);
  d->inner = std::move(inner);
  return d;
}

Code enumerator(const std::vector<DeciderPtr>& parts) {
  std::vector<Nat> codes;
  for (const auto& p : parts) codes.push_back(p->code.value);
  return applied("ENUM", encode_seq(codes));
}

DeciderPtr sigma(std::vector<DeciderPtr> parts) {
  auto d = std::make_shared<Decider>();
  d->kind = Decider::Kind::Union;
  d->code = applied("SIG", enumerator(parts).value);
  d->parts = std::move(parts);
  return d;
}

DeciderPtr basic(const Code& chi, std::string label) {
  auto d = std::make_shared<Decider>();
  d->kind = Decider::Kind::Basic;
  d->chi = chi;
  d->label = std::move(label);
  d->code = applied("BASIC", chi.value);
  return d;
}

namespace {
class DeciderParser {
 public:
  explicit DeciderParser(const std::string& text) : in_(text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      char ch = text[i];
      if (ch == '(' || ch == ')') {
        toks_.emplace_back(1, ch);
      } else if (!std::isspace(static_cast<unsigned char>(ch))) {
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' && text[j] != ')') ++j;
        toks_.push_back(text.substr(i, j - i));
        i = j - 1;
      }
    }
  }

  DeciderPtr parse() {
    DeciderPtr d = expr();
    if (pos_ != toks_.size()) fail("trailing '" + toks_[pos_] + "'");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& why) { throw std::runtime_error("decider '" + in_ + "': " + why); }
  bool at_end() const { return pos_ >= toks_.size(); }
  std::string next() {
    if (at_end()) fail("unexpected end");
    return toks_[pos_++];
  }
  DeciderPtr expr() {
    std::string head = next();
    if (head == "(") {
      DeciderPtr d = expr();
      if (next() != ")") fail("expected ')'");
      return d;
    }
    if (head == "one") {
      try {
        return tau1(parse_nat(next()));
      } catch (const std::invalid_argument&) {
        fail("'one' needs a number");
      }
    }
    if (head == "not") return tau2(expr());
    if (head == "union") {
      std::vector<DeciderPtr> parts;
      while (!at_end() && toks_[pos_] != ")") parts.push_back(expr());
      return sigma(std::move(parts));
    }
    fail("unknown construction '" + head + "'");
  }

  std::string in_;
  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};
}  // namespace

DeciderPtr parse_decider(const std::string& text) { return DeciderParser(text).parse(); }

std::optional<bool> ground_truth(const Decider& d, const Nat& n, Fuel fuel) {
  switch (d.kind) {
    case Decider::Kind::One:
      return n == d.n;
    case Decider::Kind::Not: {
      auto in = ground_truth(*d.inner, n, fuel);
      if (!in) return std::nullopt;
      return !*in;
    }
    case Decider::Kind::Union: {
      bool unknown = false;
      for (const auto& p : d.parts) {
        auto in = ground_truth(*p, n, fuel);
        if (in && *in) return true;
        unknown |= !in;
      }
      if (unknown) return std::nullopt;
      return false;
    }
    case Decider::Kind::Basic: {
      EvalResult r = apply(d.chi, n, fuel);
      if (r.out_of_fuel()) return std::nullopt;
      return *r.value == 0;
    }
  }
  return std::nullopt;
}

Replay replay(const Decider& d, const Nat& n, const CheckPolicy& p) {
  switch (d.kind) {
    case Decider::Kind::One: {
      int bit = n == d.n ? 0 : 1;
      return {bit, Cert::base(bit), ""};
    }
    case Decider::Kind::Basic: {
      EvalResult r = apply(d.chi, n, p.fuel);
      if (r.out_of_fuel()) return fail("characteristic function ran out of fuel");
      if (*r.value > 1) return fail("characteristic function returned " + to_string(*r.value));
      int bit = static_cast<int>(to_u64(*r.value));
      return {bit, Cert::base(bit), ""};
    }
    case Decider::Kind::Not: {
      Replay r = replay(*d.inner, n, p);
      if (!r.bit) return r;
      CertPtr c = jop::mirror_b(*r.cert, [](const Nat& v, const CertPtr&) { return Cert::base(v == 0 ? 1 : 0); });
      return {1 - *r.bit, c, ""};
    }
    case Decider::Kind::Union: {
      std::vector<CertPtr> certs;
      std::optional<std::size_t> witness;
      for (std::size_t i = 0; i < d.parts.size(); ++i) {
        Replay r = replay(*d.parts[i], n, p);
        if (!r.bit) return r;
        if (*r.bit == 0 && !witness) witness = i;
        certs.push_back(r.cert);
      }
      const std::size_t thr = witness.value_or(0);
      if (thr > static_cast<std::size_t>(p.horizon))
        return fail("witness index " + std::to_string(thr) + " is beyond the horizon");
      std::vector<std::pair<Nat, CertPtr>> tails;
      for (int m = static_cast<int>(thr); m < p.sample_end(); ++m) {
        std::vector<CertPtr> prefix;
        for (int i = 0; i <= m; ++i)
          prefix.push_back(i < static_cast<int>(certs.size()) ? certs[i] : Cert::base(1));
        CertPtr g = jop::mirror_g(jop::cor_gh().fg, prefix, p);
        if (!g) return fail("G mirror ran out of fuel");
        tails.emplace_back(Nat(m), std::move(g));
      }
      return {witness ? 0 : 1, Cert::lift(Nat(thr), std::move(tails)), ""};
    }
  }
  return fail("unknown construction");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::In:
      return "In";
    case Verdict::Out:
      return "Out";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

DecResult run_decider(const Decider& d, const Nat& n, const CheckPolicy& p) {
  DecResult out;
  EvalResult r = apply(d.code, n, p.fuel);
  if (r.out_of_fuel()) {
    out.detail = "evaluation ran out of fuel";
    return out;
  }
  out.value = *r.value;
  Replay rep = replay(d, n, p);
  if (!rep.bit) {
    out.detail = rep.detail;
    return out;
  }
  jop::CheckResult c = jop::check_cert(out.value, jop::JSet::singleton(*rep.bit), *rep.cert, p);
  if (!c) {
    out.detail = "certificate rejected: " + c.reason;
    return out;
  }
  out.verdict = *rep.bit == 0 ? Verdict::In : Verdict::Out;
  out.cert = rep.cert;
  return out;
}

RepCode represent_from_graph(DeciderPtr graph) { return {applied("REP", graph->code.value), std::move(graph)}; }

RepResult run_rep(const RepCode& rc, const Nat& x, const CheckPolicy& p) {
  RepResult out;
  EvalResult r = apply(rc.code, x, p.fuel);
  if (r.out_of_fuel()) {
    out.detail = "evaluation ran out of fuel";
    return out;
  }
  std::vector<CertPtr> certs;
  std::optional<int> least;
  for (int y = 0; y < p.sample_end(); ++y) {
    Replay g = replay(*rc.graph, tuple2(x, y), p);
    if (!g.bit) {
      out.detail = g.detail;
      return out;
    }
    certs.push_back(g.cert);
    if (*g.bit == 0 && !least) least = y;
  }
  if (!least || *least > p.horizon) {
    out.detail = "no y <= horizon with <x,y> in the graph";
    return out;
  }
  std::vector<std::pair<Nat, CertPtr>> tails;
  for (int m = *least; m < p.sample_end(); ++m) {
    std::vector<CertPtr> prefix(certs.begin(), certs.begin() + m + 1);
    CertPtr h = jop::mirror_g(jop::cor_gh().fh, prefix, p);
    if (!h) {
      out.detail = "H mirror ran out of fuel";
      return out;
    }
    tails.emplace_back(Nat(m), std::move(h));
  }
  CertPtr cert = Cert::lift(Nat(*least), std::move(tails));
  jop::CheckResult c = jop::check_cert(*r.value, jop::JSet::singleton(*least), *cert, p);
  if (!c) {
    out.detail = "certificate rejected: " + c.reason;
    return out;
  }
  out.value = Nat(*least);
  out.cert = cert;
  return out;
}

PartialResult partial_apply(const Code& e, const Nat& n, const CheckPolicy& p) {
  PartialResult out;
  EvalResult r = apply(e, n, p.fuel);
  if (r.out_of_fuel()) return out;
  jop::SingletonResult s = jop::find_singleton(*r.value, p);
  if (s.value) {
    out.kind = PartialResult::Kind::Value;
    out.value = *s.value;
    out.cert = s.cert;
  } else if (!s.out_of_fuel) {
    out.kind = PartialResult::Kind::NotInDomain;
  }
  return out;
}

}  // namespace jreal::jdec
