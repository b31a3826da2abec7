// Command-line front end: one subcommand per module, reports on stdout.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jreal/assembly.hpp"
#include "jreal/doctrine.hpp"
#include "jreal/jdec.hpp"
#include "jreal/jop.hpp"
#include "jreal/kit.hpp"
#include "jreal/lambda.hpp"
#include "jreal/realize.hpp"
#include "jreal/report.hpp"
#include "jreal/seq.hpp"
#include "jreal/skolem.hpp"

using namespace jreal;
using cli::Outcome;
using cli::Report;

namespace {

struct Globals {
  jop::CheckPolicy policy;
  std::uint64_t fuel = 200000;
  std::uint64_t seed = 1;
  std::string format = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::filesystem::path> files_in(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Nat parse_nat(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw std::runtime_error("not a natural: " + s);
  return Nat(s);
}

Outcome pass_if(bool ok) { return ok ? Outcome::Pass : Outcome::Fail; }

// ---------------------------------------------------------------- doctrine

doctrine::MonoOp pick_op(const std::string& name, const doctrine::Doctrine& d) {
  if (name == "lfp") return doctrine::lfp_local(doctrine::pitts_f_finite(d), d);
  if (name == "identity") return doctrine::identity_op(d);
  if (name == "trivial") return doctrine::trivial_op(d);
  if (name == "dn") return doctrine::double_negation_op(d);
  throw std::runtime_error("unknown operator " + name + " (lfp, identity, trivial, dn)");
}

void doctrine_laws(Report& r, const std::string& file, const std::string& op) {
  auto d = doctrine::parse_doctrine(read_file(file));
  auto j = pick_op(op, d);
  auto laws = doctrine::local_laws(j, d);
  auto show = [&](const char* name, const std::optional<doctrine::Witness>& w) {
    r.add(name, w ? "Witness" : "None", pass_if(w.has_value()), w ? "realizer " + std::to_string(w->realizer) : "");
  };
  show("E1", laws.e1);
  show("E2", laws.e2);
  show("E3", laws.e3);
  show("E4", laws.e4);
  const auto& de = laws.derived_e4;
  if (de.status == doctrine::E4Derivation::Status::NoE1E3)
    r.add("E4-derived", "Skipped", Outcome::Unknown, de.detail);
  else
    r.add("E4-derived", de.status == doctrine::E4Derivation::Status::Derived ? "Derived" : "NotRepresentable",
          pass_if(de.verified), de.detail);
  r.notes.push_back("operator " + op + " on " + std::to_string(d.size()) + " elements");
}

void doctrine_lfp(Report& r, const std::string& file, const std::string& set) {
  auto d = doctrine::parse_doctrine(read_file(file));
  auto j = doctrine::lfp_local(doctrine::pitts_f_finite(d), d);
  std::vector<doctrine::RSubset> sets;
  if (set == "all") {
    for (doctrine::RSubset a = 0; a <= d.universe(); ++a) sets.push_back(a);
  } else {
    sets.push_back(static_cast<doctrine::RSubset>(std::stoul(set, nullptr, 0)));
  }
  for (auto a : sets) {
    if (a > d.universe()) throw std::runtime_error("set outside the carrier");
    r.add("A=" + doctrine::format_subset(a, d.size()), doctrine::format_subset(j(a), d.size()), Outcome::Pass,
          "iterations " + std::to_string(doctrine::lfp_iterations(doctrine::pitts_f_finite(d), d, a)));
  }
}

void doctrine_uniformity(Report& r, const std::string& file) {
  auto d = doctrine::parse_doctrine(read_file(file));
  auto j = doctrine::lfp_local(doctrine::pitts_f_finite(d), d);
  auto u = doctrine::uniformity_finite(j, d);
  r.add("uniformity", u.witness ? "Verified" : "Failed", pass_if(u.witness.has_value()),
        u.witness ? "a = " + std::to_string(u.witness->realizer) + " over all " +
                        std::to_string(1u << d.size()) + " sets"
                  : u.diagnostic);
}

// ---------------------------------------------------------------- jcert

void jcert_check(Report& r, const Globals& g, const std::string& x, const std::string& set, const std::string& cert_file) {
  jop::JSet a = jop::parse_jset(set);
  Nat xv = parse_nat(x);
  if (cert_file.empty()) {
    auto f = jop::find_cert(xv, jop::Target::plain(a), g.policy);
    if (f.cert)
      r.add(x, "Certified", Outcome::Pass, jop::format_cert(*f.cert));
    else
      r.add(x, f.out_of_fuel ? "Unknown" : "NoCertificate", f.out_of_fuel ? Outcome::Unknown : Outcome::Fail,
            "no certificate within the policy");
  } else {
    auto c = jop::parse_cert(read_file(cert_file));
    auto res = jop::check_cert(xv, a, *c, g.policy);
    r.add(x, res.accepted ? "Accepted" : (res.out_of_fuel ? "Unknown" : "Rejected"),
          res.accepted ? Outcome::Pass : (res.out_of_fuel ? Outcome::Unknown : Outcome::Fail), res.reason);
  }
  r.caveats.insert("membership in J" + a.to_string() + " is checked up to depth " + std::to_string(g.policy.depth) +
                   ", horizon " + std::to_string(g.policy.horizon) + ", window " + std::to_string(g.policy.window));
}

// ---------------------------------------------------------------- jdec

void jdec_build(Report& r, const std::string& expr, const std::string& out) {
  auto d = jdec::parse_decider(expr);
  r.add(d->to_string(), "Built", Outcome::Pass, "code of " + std::to_string(bit_length(d->code.value)) + " bits");
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << d->to_string() << "\n";
  }
}

void jdec_run_one(Report& r, const Globals& g, const jdec::Decider& d, const Nat& n) {
  auto res = jdec::run_decider(d, n, g.policy);
  auto truth = jdec::ground_truth(d, n);
  Outcome o = Outcome::Unknown;
  if (res.verdict != jdec::Verdict::Unknown && truth) o = pass_if((res.verdict == jdec::Verdict::In) == *truth);
  r.add(to_string(n), jdec::verdict_name(res.verdict), o, res.detail);
}

void jdec_run(Report& r, const Globals& g, const std::string& file, const std::string& n, const std::string& upto) {
  auto d = jdec::parse_decider(lines_of(read_file(file)).at(0));
  r.notes.push_back("decider " + d->to_string());
  if (!upto.empty()) {
    for (Nat k = 0; k <= parse_nat(upto); ++k) jdec_run_one(r, g, *d, k);
  } else {
    jdec_run_one(r, g, *d, parse_nat(n));
  }
  r.caveats.insert("verdicts rest on certificates checked up to depth " + std::to_string(g.policy.depth) +
                   " and horizon " + std::to_string(g.policy.horizon));
}

// ---------------------------------------------------------------- asm

assembly::Assembly load_assembly(const std::string& spec) {
  if (spec == "nat") return assembly::Assembly::nat();
  return assembly::parse_assembly(read_file(spec));
}

void track_result(Report& r, const std::string& id, const assembly::TrackResult& t) {
  Outcome o = t.verdict == assembly::Verdict::Verified ? Outcome::Pass
              : t.verdict == assembly::Verdict::Failed ? Outcome::Fail
                                                       : Outcome::Unknown;
  std::string detail = t.detail.empty() ? std::to_string(t.obligations) + " obligations" : t.detail;
  r.add(id, assembly::verdict_name(t.verdict), o, detail);
  if (t.sampled) r.caveats.insert("tracking of " + id + " was checked on a sample of points and realizers");
}

void asm_track(Report& r, const Globals& g, const std::string& src_s, const std::string& dst_s, const std::string& map,
               const std::string& map_term, const std::string& tracker) {
  auto src = load_assembly(src_s), dst = load_assembly(dst_s);
  assembly::Morphism f;
  f.tracker = jop::kit_code(tracker);
  f.name = "f";
  if (!map.empty()) {
    std::vector<assembly::Point> images;
    std::istringstream in(map);
    for (std::string w; in >> w;) images.push_back(parse_nat(w));
    f.map = [images](const assembly::Point& x) { return images.at(static_cast<std::size_t>(to_u64(x))); };
  } else if (!map_term.empty()) {
    Code c = jop::kit_code(map_term);
    Fuel fuel{g.fuel};
    f.map = [c, fuel](const assembly::Point& x) {
      auto v = apply(c, x, fuel);
      if (!v.value) throw std::runtime_error("map term ran out of fuel at " + to_string(x));
      return *v.value;
    };
  } else {
    throw std::runtime_error("give --map or --map-term");
  }
  track_result(r, "f", assembly::check_tracking(f, src, dst, g.policy));
}

void asm_product(Report& r, const Globals& g, const std::string& a_s, const std::string& b_s) {
  auto a = load_assembly(a_s), b = load_assembly(b_s);
  auto p = assembly::Assembly::product(a, b);
  auto pl = assembly::projection_left(p), pr = assembly::projection_right(p);
  track_result(r, "projection-left", assembly::check_tracking(pl, p, a, g.policy));
  track_result(r, "projection-right", assembly::check_tracking(pr, p, b, g.policy));
  track_result(r, "pairing", assembly::check_tracking(assembly::pairing(pl, pr), p, p, g.policy));
}

void asm_exp(Report& r, const Globals& g, const std::string& a_s, const std::string& b_s, const std::string& bound) {
  auto a = load_assembly(a_s), b = load_assembly(b_s);
  auto e = assembly::exponent_finite(a, b, parse_nat(bound), g.policy);
  auto show = [](const std::vector<std::size_t>& m) {
    std::string s;
    for (auto v : m) s += (s.empty() ? "" : " ") + std::to_string(v);
    return "[" + s + "]";
  };
  for (std::size_t i = 0; i < e.maps.size(); ++i)
    r.add("map" + show(e.maps[i]), "Tracked", Outcome::Pass, e.object.name(assembly::Point(i)));
  for (const auto& m : e.undecided) r.add("map" + show(m), "Undecided", Outcome::Unknown, "trackers below the bound ran out of fuel");
  r.notes.push_back(std::to_string(e.excluded) + " maps have no tracker below " + bound);
  if (!e.maps.empty())
    track_result(r, "evaluation",
                 assembly::check_tracking(assembly::evaluation(e, a), assembly::Assembly::product(e.object, a), b, g.policy));
  r.caveats.insert("trackers are searched only among codes below " + bound);
}

void asm_sub(Report& r, const Globals& g, const std::string& base_s, const std::string& sub_file, const std::string& tracker) {
  auto base = load_assembly(base_s);
  auto sub = assembly::parse_assembly(read_file(sub_file));
  assembly::Subobject s;
  // Points of the base past the end of the file are outside the subobject.
  s.r = [sub](const assembly::Point& x) { return x < sub.size() ? sub.realizers(x) : jop::JSet::finite({}); };
  s.tracker = jop::kit_code(tracker);
  auto res = assembly::subobject_check(s, base, g.policy);
  std::string support;
  for (const auto& x : res.support) support += (support.empty() ? "" : ",") + base.name(x);
  r.notes.push_back("support {" + support + "}");
  track_result(r, "inclusion", res.check);
}

void asm_uniformity(Report& r, const Globals& g) {
  auto u = assembly::omega_uniformity(g.policy);
  for (const auto& l : u.lines) {
    r.add(l.set, assembly::verdict_name(l.verdict),
          l.verdict == assembly::Verdict::Verified ? Outcome::Pass
          : l.verdict == assembly::Verdict::Failed ? Outcome::Fail
                                                   : Outcome::Unknown,
          l.samples + (l.detail.empty() ? "" : "; " + l.detail));
  }
  r.add("D8", u.doctrine_verified ? "Verified" : "Failed", pass_if(u.doctrine_verified), u.doctrine_detail);
  r.caveats.insert("infinite sets are checked on sampled members");
}

// ---------------------------------------------------------------- realize

Outcome outcome_of(realize::Verdict3::Kind k) {
  switch (k) {
    case realize::Verdict3::Kind::Realized:
      return Outcome::Pass;
    case realize::Verdict3::Kind::Refuted:
      return Outcome::Fail;
    default:
      return Outcome::Unknown;
  }
}

void add_verdict(Report& r, const std::string& id, const realize::Verdict3& v, Outcome o) {
  r.add(id, realize::kind_name(v.kind), o, v.diagnostic);
  for (const auto& c : v.caveats) r.caveats.insert(c);
}

void realize_check(Report& r, const Globals& g, const std::string& formula, const std::string& e,
                   const std::string& asm_file, const std::string& env_s) {
  auto f = realize::parse_formula(formula);
  realize::Structure s = asm_file.empty() ? realize::arithmetic() : realize::modular(assembly::parse_assembly(read_file(asm_file)));
  realize::Env env;
  std::istringstream in(env_s);
  for (std::string item; std::getline(in, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("--env expects x=point,...");
    env.vars.push_back({item.substr(0, eq), parse_nat(item.substr(eq + 1))});
  }
  auto v = realize::jrealizes(parse_nat(e), *f, env, s, g.policy);
  add_verdict(r, e, v, outcome_of(v.kind));
}

void realize_build(Report& r, const Globals& g, const std::string& formula) {
  auto f = realize::parse_formula(formula);
  auto b = realize::build_delta0(*f);
  if (!b.realizer) {
    r.add("build", "Refused", Outcome::Fail, b.refusal);
    return;
  }
  r.notes.push_back("realizer " + to_string(*b.realizer));
  auto v = realize::jrealizes(*b.realizer, *f, {}, realize::arithmetic(), g.policy);
  add_verdict(r, "self-check", v, outcome_of(v.kind));
}

// Files whose name starts with "false" hold sentences that must not be
// realized; every other file holds true sentences.
void realize_corpus(Report& r, const Globals& g, const std::string& dir, int scan) {
  for (const auto& path : files_in(dir)) {
    const bool expect_false = path.filename().string().rfind("false", 0) == 0;
    int line_no = 0;
    for (const auto& text : lines_of(read_file(path.string()))) {
      const std::string id = path.filename().string() + ":" + std::to_string(++line_no);
      auto f = realize::parse_formula(text);
      auto b = realize::build_delta0(*f);
      if (!expect_false) {
        if (!b.realizer) {
          r.add(id, "Refused", Outcome::Fail, b.refusal);
          continue;
        }
        auto v = realize::jrealizes(*b.realizer, *f, {}, realize::arithmetic(), g.policy);
        add_verdict(r, id, v, outcome_of(v.kind));
        continue;
      }
      if (b.realizer) {
        r.add(id, "Built", Outcome::Fail, "builder produced " + to_string(*b.realizer));
        continue;
      }
      bool any = false, unknown = false;
      for (int e = 0; e < scan && !any; ++e) {
        auto v = realize::jrealizes(e, *f, {}, realize::arithmetic(), g.policy);
        any = v.kind == realize::Verdict3::Kind::Realized;
        unknown = unknown || v.kind == realize::Verdict3::Kind::Unknown;
        for (const auto& c : v.caveats) r.caveats.insert(c);
      }
      r.add(id, any ? "Realized" : (unknown ? "Unknown" : "NotRealized"),
            any ? Outcome::Fail : (unknown ? Outcome::Unknown : Outcome::Pass), "scanned e < " + std::to_string(scan));
    }
  }
}

// ---------------------------------------------------------------- skolem

skolem::Args parse_args(const std::string& s) {
  skolem::Args out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("--args expects x=<quasi-polynomial>,...");
    std::string name = item.substr(0, eq);
    name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
    out.push_back({name, {skolem::parse_quasipoly(item.substr(eq + 1))}});
  }
  return out;
}

void skolem_extend(Report& r, skolem::Model& m, std::size_t steps) {
  auto& c = m.chain();
  c.extend_to(steps);
  for (std::size_t k = 0; k <= steps; ++k) {
    bool ok = c.set(k).infinite() && c.set(k).contains(c.psi()[k]) &&
              (k == 0 || (c.set(k - 1).includes(c.set(k)) && c.psi()[k - 1] < c.psi()[k]));
    r.add("A" + std::to_string(k), "psi=" + to_string(c.psi()[k]), pass_if(ok),
          "alpha=" + skolem::to_string(c.alpha(k)) + " A=" + c.set(k).to_string());
  }
}

void skolem_sign(Report& r, skolem::Model& m, std::size_t i, std::size_t j) {
  auto s = m.chain().sign(i, j);
  r.add(std::to_string(i) + "," + std::to_string(j), std::string(1, skolem::sign_char(s)), Outcome::Pass,
        skolem::to_string(m.chain().alpha(i)) + " vs " + skolem::to_string(m.chain().alpha(j)));
}

void transfer_case(Report& r, skolem::Model& m, const std::string& id, const std::string& formula, const std::string& args) {
  auto f = realize::parse_formula(formula);
  auto t = skolem::transfer_check(m, f, parse_args(args));
  auto b = [](const std::optional<bool>& v) { return v ? (*v ? "true" : "false") : "-"; };
  std::string detail = std::string("model=") + b(t.model) + " sampled=" + b(t.sampled) + " standard=" + b(t.standard) +
                       " window=[" + std::to_string(t.window_start) + "," + std::to_string(t.window_start + t.window) +
                       ") " + t.detail;
  r.add(id, t.agree ? "Agree" : "Disagree", pass_if(t.agree), detail);
  if (!t.quantifier_free) r.caveats.insert("quantified formulas are compared on samples of the model and of N");
}

void skolem_standard(Report& r, skolem::Model& m, const std::string& elem) {
  skolem::ModelElem e{skolem::parse_quasipoly(elem)};
  auto v = m.standard_value(e);
  r.add(skolem::to_string(e.rep), v ? "Standard" : "Nonstandard", Outcome::Pass,
        v ? "equals iota(" + to_string(*v) + ")" : "class of " + skolem::to_string(m.canonical(e)));
}

void skolem_transfer(Report& r, skolem::Model& m, const std::string& dir) {
  for (const auto& path : files_in(dir)) {
    int line_no = 0;
    for (const auto& line : lines_of(read_file(path.string()))) {
      auto bar = line.find('|');
      transfer_case(r, m, path.filename().string() + ":" + std::to_string(++line_no), line.substr(0, bar),
                    bar == std::string::npos ? "" : line.substr(bar + 1));
    }
  }
}

void skolem_st(Report& r, const Globals& g, skolem::Model& m, std::size_t sample) {
  auto st = skolem::st_assembly(m, g.policy, sample);
  for (const auto& [name, t] : st.tracking) track_result(r, name, t);
  track_result(r, "St-inclusion", st.st_check.check);
  r.notes.push_back("realizer " + to_string(st.realizer));
  add_verdict(r, "forall y (St(y) \\/ ~St(y))", st.verdict, outcome_of(st.verdict.kind));
  r.caveats.insert(st.caveat);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"J-realizability workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--fuel", g.fuel, "evaluation step budget")->capture_default_str();
  app.add_option("--depth", g.policy.depth, "certificate depth")->capture_default_str();
  app.add_option("--window", g.policy.window, "lift window")->capture_default_str();
  app.add_option("--horizon", g.policy.horizon, "largest lift threshold")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for generated inputs")->capture_default_str();
  app.add_option("--format", g.format, "text or tsv")->check(CLI::IsMember({"text", "tsv"}))->capture_default_str();

  Report report;
  std::function<void()> action;
  std::string file, file2, set = "all", op = "lfp", x, cert, expr, out, n, upto, map, map_term, tracker = "a",
                       bound = "300", formula, e, asm_file, env, dir, args, elem;
  std::size_t steps = 200, i = 0, j = 0, sample = 20;
  int scan = 256;

  auto* doc = app.add_subcommand("doctrine", "finite doctrines and local operators");
  doc->require_subcommand(1);
  auto* laws = doc->add_subcommand("laws", "E1-E4 witnesses of an operator");
  laws->add_option("file", file)->required();
  laws->add_option("--op", op, "lfp, identity, trivial or dn")->capture_default_str();
  laws->callback([&] { action = [&] { doctrine_laws(report, file, op); }; });
  auto* lfp = doc->add_subcommand("lfp", "the least local operator above F");
  lfp->add_option("file", file)->required();
  lfp->add_option("--set", set, "bitmask or 'all'")->capture_default_str();
  lfp->callback([&] { action = [&] { doctrine_lfp(report, file, set); }; });
  auto* uni = doc->add_subcommand("uniformity", "<a, a> in [A = A] for every A");
  uni->add_option("file", file)->required();
  uni->callback([&] { action = [&] { doctrine_uniformity(report, file); }; });

  auto* jc = app.add_subcommand("jcert", "J-membership certificates");
  jc->require_subcommand(1);
  auto* check = jc->add_subcommand("check", "check or search a certificate");
  check->add_option("--x", x)->required();
  check->add_option("--set", set)->required();
  check->add_option("--cert", cert, "certificate file; searched when absent");
  check->callback([&] { action = [&] { jcert_check(report, g, x, set, cert); }; });

  auto* jd = app.add_subcommand("jdec", "J-deciders built from one/not/union");
  jd->require_subcommand(1);
  auto* build = jd->add_subcommand("build", "compile a construction");
  build->add_option("expr", expr)->required();
  build->add_option("-o", out, "write the construction to a file");
  build->callback([&] { action = [&] { jdec_build(report, expr, out); }; });
  auto* run = jd->add_subcommand("run", "decide one input");
  run->add_option("file", file)->required();
  run->add_option("--n", n)->required();
  run->callback([&] { action = [&] { jdec_run(report, g, file, n, ""); }; });
  auto* table = jd->add_subcommand("table", "decide 0..upto");
  table->add_option("file", file)->required();
  table->add_option("--upto", upto)->default_val("30");
  table->callback([&] { action = [&] { jdec_run(report, g, file, "", upto); }; });

  auto* as = app.add_subcommand("asm", "J-assemblies");
  as->require_subcommand(1);
  auto* track = as->add_subcommand("track", "check a tracker");
  track->add_option("src", file, "assembly file or 'nat'")->required();
  track->add_option("dst", file2, "assembly file or 'nat'")->required();
  track->add_option("--map", map, "images of the points 0, 1, ...");
  track->add_option("--map-term", map_term, "program computing the map");
  track->add_option("--tracker", tracker)->required();
  track->callback([&] { action = [&] { asm_track(report, g, file, file2, map, map_term, tracker); }; });
  auto* prod = as->add_subcommand("product", "projections and pairing of a product");
  prod->add_option("a", file)->required();
  prod->add_option("b", file2)->required();
  prod->callback([&] { action = [&] { asm_product(report, g, file, file2); }; });
  auto* ex = as->add_subcommand("exp", "exponent of finite assemblies");
  ex->add_option("a", file)->required();
  ex->add_option("b", file2)->required();
  ex->add_option("--bound", bound, "trackers are searched below this code")->capture_default_str();
  ex->callback([&] { action = [&] { asm_exp(report, g, file, file2, bound); }; });
  auto* sub = as->add_subcommand("sub", "subobject given by a realizer file");
  sub->add_option("base", file)->required();
  sub->add_option("sub", file2)->required();
  sub->add_option("--tracker", tracker)->capture_default_str();
  sub->callback([&] { action = [&] { asm_sub(report, g, file, file2, tracker); }; });
  auto* au = as->add_subcommand("uniformity", "<a, a> in [A = A] on sampled sets");
  au->callback([&] { action = [&] { asm_uniformity(report, g); }; });

  auto* rz = app.add_subcommand("realize", "J-realizability of arithmetic formulas");
  rz->require_subcommand(1);
  auto* rc = rz->add_subcommand("check", "does e realize the formula");
  rc->add_option("--formula", formula)->required();
  rc->add_option("--e", e)->required();
  rc->add_option("--asm", asm_file, "finite assembly read as Z/k");
  rc->add_option("--env", env, "x=point,...");
  rc->callback([&] { action = [&] { realize_check(report, g, formula, e, asm_file, env); }; });
  auto* rb = rz->add_subcommand("build", "realizer of a true Delta_0 sentence");
  rb->add_option("--formula", formula)->required();
  rb->callback([&] { action = [&] { realize_build(report, g, formula); }; });
  auto* rco = rz->add_subcommand("corpus", "run a directory of sentences");
  rco->add_option("dir", dir)->required();
  rco->add_option("--scan", scan, "codes tried against false sentences")->capture_default_str();
  rco->callback([&] { action = [&] { realize_corpus(report, g, dir, scan); }; });

  auto* sk = app.add_subcommand("skolem", "Skolem's model over quasi-polynomials");
  sk->require_subcommand(1);
  skolem::Model model;
  auto* sx = sk->add_subcommand("extend", "run the chain");
  sx->add_option("--steps", steps)->capture_default_str();
  sx->callback([&] { action = [&] { skolem_extend(report, model, steps); }; });
  auto* ss = sk->add_subcommand("sign", "eventual order of alpha_i and alpha_j");
  ss->add_option("i", i)->required();
  ss->add_option("j", j)->required();
  ss->callback([&] { action = [&] { skolem_sign(report, model, i, j); }; });
  auto* se = sk->add_subcommand("eval", "truth and transfer of a quantifier-free formula");
  se->add_option("--formula", formula)->required();
  se->add_option("--args", args, "x=<quasi-polynomial>,...");
  se->callback([&] { action = [&] { transfer_case(report, model, "eval", formula, args); }; });
  auto* sst = sk->add_subcommand("standard", "is the element standard");
  sst->add_option("elem", elem)->required();
  sst->callback([&] { action = [&] { skolem_standard(report, model, elem); }; });
  auto* str = sk->add_subcommand("transfer", "transfer checks over a corpus");
  str->add_option("--corpus", dir)->required();
  str->callback([&] { action = [&] { skolem_transfer(report, model, dir); }; });
  auto* sa = sk->add_subcommand("st", "the St subobject and its decidability realizer");
  sa->add_option("--sample", sample)->capture_default_str();
  sa->callback([&] { action = [&] { skolem_st(report, g, model, sample); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  }
  g.policy.fuel = Fuel{g.fuel};
  report.command.clear();
  for (int a = 1; a < argc; ++a) report.command += (a > 1 ? " " : "") + std::string(argv[a]);
  report.policy = "depth=" + std::to_string(g.policy.depth) + " window=" + std::to_string(g.policy.window) +
                  " horizon=" + std::to_string(g.policy.horizon) + " fuel=" + std::to_string(g.fuel) +
                  " seed=" + std::to_string(g.seed);
  try {
    action();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
  std::cout << cli::emit_report(report, g.format == "tsv" ? cli::Format::Tsv : cli::Format::Text);
  return report.exit_code();
}
