#include "jreal/engine.hpp"

#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "jreal/seq.hpp"

namespace jreal {

namespace {

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

// A runtime value: a number, or a primitive waiting for more arguments.
struct Value {
  bool is_num = true;
  Nat num;
  Prim prim = Prim::K;
  std::vector<ValuePtr> args;
  // Lazily computed Goedel number of the closure's term. Engine-local.
  mutable std::optional<Nat> code;
};

ValuePtr make_num(Nat n) {
  auto v = std::make_shared<Value>();
  v->num = std::move(n);
  return v;
}

ValuePtr make_partial(Prim p, std::vector<ValuePtr> args) {
  auto v = std::make_shared<Value>();
  v->is_num = false;
  v->prim = p;
  v->args = std::move(args);
  return v;
}

Nat term_code(const Value& v);

Nat closure_code(const Value& v) {
  if (!v.code) {
    Nat c = static_cast<unsigned>(v.prim);
    for (const auto& a : v.args) c = kPrimCount + 1 + 2 * pair_code(c, term_code(*a));
    v.code = std::move(c);
  }
  return *v.code;
}

// Code of the term that denotes `v`.
Nat term_code(const Value& v) { return v.is_num ? kPrimCount + 2 * v.num : closure_code(v); }

// The number a value stands for when used as data.
Nat as_nat(const Value& v) { return v.is_num ? v.num : closure_code(v); }

struct NatHash {
  std::size_t operator()(const Nat& n) const { return boost::hash<Nat>{}(n); }
};

// Decoding is a pure function of the number; the memo only saves time.
TermPtr decode_cached(const Nat& n) {
  thread_local std::unordered_map<Nat, TermPtr, NatHash> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  if (memo.size() > 200000) memo.clear();
  TermPtr t = decode_term(n);
  memo.emplace(n, t);
  return t;
}

struct Frame {
  enum class Kind : std::uint8_t { EvalArg, CallWith, ThenApplyTo, SecondS } kind;
  TermPtr term;
  ValuePtr a;
  ValuePtr b;
};

class Machine {
 public:
  explicit Machine(Fuel fuel) : budget_(fuel.steps) {}

  std::optional<ValuePtr> run_term(const TermPtr& t) {
    mode_ = Mode::Eval;
    term_ = t;
    return loop();
  }

  std::optional<ValuePtr> run_apply(ValuePtr f, ValuePtr x) {
    mode_ = Mode::Apply;
    fn_ = std::move(f);
    val_ = std::move(x);
    return loop();
  }

  std::uint64_t used() const { return used_; }

 private:
  enum class Mode { Eval, Apply, Return };

  bool tick() { return ++used_ <= budget_; }

  std::optional<ValuePtr> loop() {
    stack_.clear();
    for (;;) {
      switch (mode_) {
        case Mode::Eval:
          if (!eval_step()) return std::nullopt;
          break;
        case Mode::Apply:
          if (!apply_step()) return std::nullopt;
          break;
        case Mode::Return:
          if (stack_.empty()) return val_;
          pop_frame();
          break;
      }
    }
  }

  bool eval_step() {
    const Term& t = *term_;
    switch (t.kind) {
      case Term::Kind::Numeral:
        ret(make_num(t.num));
        return true;
      case Term::Kind::Prim:
        if (t.prim == Prim::SeqNil) {
          if (!tick()) return false;
          ret(make_num(0));
        } else {
          ret(make_partial(t.prim, {}));
        }
        return true;
      case Term::Kind::App:
        stack_.push_back({Frame::Kind::EvalArg, t.arg, nullptr, nullptr});
        term_ = t.fun;
        return true;
      case Term::Kind::Var:
        break;
    }
    throw std::invalid_argument("evaluation of an open term (free variable '" + t.var + "')");
  }

  void pop_frame() {
    Frame fr = std::move(stack_.back());
    stack_.pop_back();
    switch (fr.kind) {
      case Frame::Kind::EvalArg:
        stack_.push_back({Frame::Kind::CallWith, nullptr, val_, nullptr});
        mode_ = Mode::Eval;
        term_ = fr.term;
        break;
      case Frame::Kind::CallWith:
        call(fr.a, val_);
        break;
      case Frame::Kind::ThenApplyTo:
        call(val_, fr.a);
        break;
      case Frame::Kind::SecondS:
        stack_.push_back({Frame::Kind::CallWith, nullptr, val_, nullptr});
        call(fr.a, fr.b);
        break;
    }
  }

  bool apply_step() {
    ValuePtr f = std::move(fn_);
    ValuePtr x = std::move(val_);
    if (f->is_num) {
      if (!tick()) return false;
      stack_.push_back({Frame::Kind::ThenApplyTo, nullptr, std::move(x), nullptr});
      mode_ = Mode::Eval;
      term_ = decode_cached(f->num);
      return true;
    }
    const Prim p = f->prim;
    if (static_cast<int>(f->args.size()) + 1 < arity(p)) {
      std::vector<ValuePtr> args = f->args;
      args.push_back(std::move(x));
      ret(make_partial(p, std::move(args)));
      return true;
    }
    if (!tick()) return false;
    const auto& a = f->args;
    switch (p) {
      case Prim::K:
        ret(a[0]);
        break;
      case Prim::S:
        stack_.push_back({Frame::Kind::SecondS, nullptr, a[1], x});
        call(a[0], x);
        break;
      case Prim::Succ:
        ret(make_num(as_nat(*x) + 1));
        break;
      case Prim::Pred: {
        Nat n = as_nat(*x);
        ret(make_num(n.is_zero() ? n : Nat(n - 1)));
        break;
      }
      case Prim::IfZero:
        call(as_nat(*a[0]).is_zero() ? a[1] : a[2], x);
        break;
      case Prim::Fix:
        stack_.push_back({Frame::Kind::ThenApplyTo, nullptr, x, nullptr});
        call(a[0], make_partial(Prim::Fix, {a[0]}));
        break;
      case Prim::SeqCons:
        ret(make_num(seq_cons(as_nat(*a[0]), as_nat(*x))));
        break;
      case Prim::SeqLen:
        ret(make_num(seq_length(as_nat(*x))));
        break;
      case Prim::SeqProj:
        ret(make_num(seq_proj(as_nat(*a[0]), as_nat(*x))));
        break;
      case Prim::SeqNil:
        ret(make_num(0));
        break;
      case Prim::I:
        ret(x);
        break;
      case Prim::B:
        stack_.push_back({Frame::Kind::CallWith, nullptr, a[0], nullptr});
        call(a[1], x);
        break;
      case Prim::C:
        stack_.push_back({Frame::Kind::ThenApplyTo, nullptr, a[1], nullptr});
        call(a[0], x);
        break;
    }
    return true;
  }

  void ret(ValuePtr v) {
    mode_ = Mode::Return;
    val_ = std::move(v);
  }

  void call(ValuePtr f, ValuePtr x) {
    mode_ = Mode::Apply;
    fn_ = std::move(f);
    val_ = std::move(x);
  }

  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  Mode mode_ = Mode::Eval;
  TermPtr term_;
  ValuePtr fn_;
  ValuePtr val_;
  std::vector<Frame> stack_;
};

}  // namespace

EvalResult evaluate(const TermPtr& closed, Fuel fuel) {
  Machine m(fuel);
  auto v = m.run_term(closed);
  if (!v) return EvalResult::fuel_exhausted(m.used());
  return {as_nat(**v), m.used()};
}

namespace {
struct PairHash {
  std::size_t operator()(const std::pair<Nat, Nat>& k) const {
    std::size_t h = boost::hash<Nat>{}(k.first);
    boost::hash_combine(h, k.second);
    return h;
  }
};
}  // namespace

// Evaluation is deterministic, so a finished run answers every budget: it
// succeeds iff the budget covers its steps. An exhausted run only answers
// budgets no larger than the one it was given.
EvalResult apply(const Code& e, const Nat& n, Fuel fuel) {
  thread_local std::unordered_map<std::pair<Nat, Nat>, EvalResult, PairHash> memo;
  auto key = std::make_pair(e.value, n);
  if (auto it = memo.find(key); it != memo.end()) {
    const EvalResult& r = it->second;
    if (!r.out_of_fuel()) return r.steps <= fuel.steps ? r : EvalResult::fuel_exhausted(fuel.steps + 1);
    if (fuel.steps <= r.steps - 1) return EvalResult::fuel_exhausted(fuel.steps + 1);
  }
  Machine m(fuel);
  auto v = m.run_apply(make_num(e.value), make_num(n));
  EvalResult out = v ? EvalResult{as_nat(**v), m.used()} : EvalResult::fuel_exhausted(m.used());
  if (memo.size() > 100000) memo.clear();
  memo.insert_or_assign(std::move(key), out);
  return out;
}

EvalResult apply_curried(const Code& e, std::span<const Nat> args, Fuel fuel) {
  Machine m(fuel);
  ValuePtr f = make_num(e.value);
  for (const auto& arg : args) {
    auto v = m.run_apply(f, make_num(arg));
    if (!v) return EvalResult::fuel_exhausted(m.used());
    f = *v;
  }
  return {as_nat(*f), m.used()};
}

EvalResult apply_curried(const Code& e, std::initializer_list<Nat> args, Fuel fuel) {
  return apply_curried(e, std::span<const Nat>(args.begin(), args.size()), fuel);
}

}  // namespace jreal
