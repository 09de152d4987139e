// Command-line front end: parse, typecheck, translate, normalize, compare, and
// replay the named demonstration scenarios.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ni2/equivalence.hpp"
#include "ni2/gen.hpp"
#include "ni2/parse.hpp"
#include "ni2/rewrite.hpp"
#include "ni2/translate.hpp"
#include "ni2/typecheck.hpp"

using namespace ni2;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDistinct = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInput = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Env parse_assumptions(const std::vector<std::string>& assumes) {
  Env env;
  for (const auto& a : assumes) {
    auto colon = a.find(':');
    if (colon == std::string::npos) throw Error("--assume expects label:formula, got " + a);
    env.bind(a.substr(0, colon), parse_formula(a.substr(colon + 1)));
  }
  return env;
}

Fragment fragment_from(const std::string& s) {
  if (s == "ni2or") return Fragment::NI2or;
  if (s == "ni2") return Fragment::NI2;
  if (s == "ni2at") return Fragment::NI2at;
  throw Error("unknown fragment: " + s);
}

RuleSet rules_for_theory(Theory th) {
  switch (th) {
    case Theory::Beta: return {Rule::BetaImp, Rule::BetaAll, Rule::BetaOr};
    case Theory::BetaEta:
      return {Rule::BetaImp, Rule::BetaAll, Rule::BetaOr,
              Rule::EtaImpRed, Rule::EtaAllRed, Rule::EtaOrRed};
    case Theory::BetaEpsTilde: return {Rule::BetaImp, Rule::BetaAll, Rule::BetaOr, Rule::Eps};
    case Theory::BetaEtaEpsTilde:
      return {Rule::BetaImp, Rule::BetaAll, Rule::BetaOr, Rule::Eps,
              Rule::EtaImpRed, Rule::EtaAllRed, Rule::EtaOrRed};
  }
  return {};
}

Strategy strategy_from(const std::string& s, std::uint64_t seed) {
  if (s == "lo") return {StrategyKind::LeftmostOutermost, 0};
  if (s == "li") return {StrategyKind::LeftmostInnermost, 0};
  if (s == "random") return {StrategyKind::RandomSeeded, seed};
  throw Error("unknown strategy: " + s);
}

int demo_gamma_g_loop(bool json) {
  TermInstance loop = gamma_loop_term();
  NormalizeResult r = normalize(loop.env, loop.term, {Rule::GammaGOr},
                                  {StrategyKind::LeftmostInnermost, 0}, 120);
  bool growing = r.trace.steps.size() >= 100;
  for (const auto& s : r.trace.steps)
    if (s.nodes_after <= s.nodes_before) growing = false;
  if (json) {
    std::cout << trace_to_json(r.trace) << "\n";
  } else {
    std::cout << "start: " << print_term(loop.term) << "\n";
    std::size_t k = 0;
    for (const auto& s : r.trace.steps)
      std::cout << "step " << ++k << ": " << rule_name(s.rule) << " at " << position_str(s.pos)
                << "  nodes " << s.nodes_before << " -> " << s.nodes_after << "\n";
    std::cout << (growing ? "node count grew strictly for 100+ generalized permutation steps\n"
                          : "unexpected: chain did not keep growing\n");
  }
  return growing ? kExitOk : kExitDistinct;
}

int demo_epsilon_strict(bool json) {
  EquationInstance e = epsilon_strict_pair();
  Verdict full = equiv(e.env, e.lhs, e.rhs, Theory::BetaEtaEpsTilde);
  Verdict be = equiv(e.env, e.lhs, e.rhs, Theory::BetaEta);
  if (json) {
    nlohmann::json j;
    j["lhs"] = print_term(e.lhs);
    j["rhs"] = print_term(e.rhs);
    j["betaetaeps"] = verdict_str(full);
    j["betaeta"] = verdict_str(be);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "lhs: " << print_term(e.lhs) << "\nrhs: " << print_term(e.rhs) << "\n";
    std::cout << "under betaetaeps: " << verdict_str(full) << "\n";
    std::cout << "under betaeta:    " << verdict_str(be) << "\n";
  }
  bool ok = full.kind == VerdictKind::Equal && be.kind == VerdictKind::Distinct;
  return ok ? kExitOk : kExitDistinct;
}

int demo_bheps_nonconfluent(bool json) {
  Formula wy = imp(atom("W"), atom("Y"));
  Formula uty = imp(wy, atom("Y"));
  Env env;
  env.bind("u", uty);
  Term start = imp_i("n", wy, imp_e(hyp("u"), hyp("n")));

  Term eta_route =
      normalize(env, start, {Rule::BetaImp, Rule::EtaImpRed, Rule::EtaAllRed}, {}, 1000).term;

  EpsilonSplit split;
  split.anchor = {};
  split.head = {};
  split.schematic = "V";
  split.from = atom("Y");
  split.to = uty;
  split.spine = imp_e(hyp("u"), hyp("h0"));
  split.chosen = {{"h0", imp(atom("W"), atom("V"))}};
  split.minors = {hyp("n")};
  split.context = Context{{K3Imp{"n", wy}}, atom("Y"), uty};
  Term eps_route = epsilon_step(env, start, split);
  Env eps_env;
  eps_env.bind("u", imp(imp(atom("W"), uty), uty));

  bool alpha_distinct = !alpha_eq_term(eta_route, eps_route);
  bool tilde_distinct =
      !alpha_eq_term(tilde_canonical(env, eta_route), tilde_canonical(eps_env, eps_route));
  if (json) {
    nlohmann::json j;
    j["start"] = print_term(start);
    j["etaNormalForm"] = print_term(eta_route);
    j["epsNormalForm"] = print_term(eps_route);
    j["alphaEqual"] = !alpha_distinct;
    j["tildeEqual"] = !tilde_distinct;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "start (u : " << print_formula(uty) << "):\n  " << print_term(start) << "\n";
    std::cout << "eta route normal form:\n  " << print_term(eta_route) << "\n";
    std::cout << "eps route normal form (u retyped to "
              << print_formula(*eps_env.lookup("u")) << "):\n  " << print_term(eps_route) << "\n";
    std::cout << "alpha-equal: " << (alpha_distinct ? "no" : "yes")
              << ", tilde-equal: " << (tilde_distinct ? "no" : "yes") << "\n";
  }
  return alpha_distinct && tilde_distinct ? kExitOk : kExitDistinct;
}

int demo_church_consistency(bool json) {
  Term zero = church_numeral(0);
  Term one = church_numeral(1);
  Env env;
  bool never_equal = true;
  nlohmann::json results = nlohmann::json::array();
  for (std::uint64_t fuel : {1000ULL, 10000ULL, 100000ULL}) {
    for (Theory th :
         {Theory::Beta, Theory::BetaEta, Theory::BetaEpsTilde, Theory::BetaEtaEpsTilde}) {
      EquivOptions opts;
      opts.fuel = fuel;
      Verdict v = equiv(env, zero, one, th, opts);
      if (v.kind == VerdictKind::Equal) never_equal = false;
      nlohmann::json e;
      e["theory"] = theory_name(th);
      e["fuel"] = fuel;
      e["verdict"] = verdict_str(v);
      results.push_back(e);
      if (!json)
        std::cout << "theory " << theory_name(th) << " fuel " << fuel << ": " << verdict_str(v)
                  << "\n";
    }
  }
  if (json) std::cout << results.dump(2) << "\n";
  std::cout << (never_equal ? "numeral 0 and numeral 1 are never identified\n"
                            : "unexpected identification of distinct numerals\n");
  return never_equal ? kExitOk : kExitDistinct;
}

int demo_naturality_spotcheck(bool json) {
  nlohmann::json results = nlohmann::json::array();
  bool all = true;
  for (std::uint64_t seed : {11ULL, 23ULL, 42ULL}) {
    NaturalityInstance inst = gen_naturality_instance(seed);
    bool ok = check_naturality(inst);
    all = all && ok;
    if (json) {
      nlohmann::json e;
      e["seed"] = seed;
      e["term"] = print_term(inst.term);
      e["conclusion"] = print_formula(inst.conclusion);
      e["commutes"] = ok;
      results.push_back(e);
    } else {
      std::cout << "seed " << seed << ": derivation " << print_term(inst.term) << " : "
                << print_formula(inst.conclusion) << " -> square "
                << (ok ? "commutes" : "FAILS") << "\n";
    }
  }
  if (json) std::cout << results.dump(2) << "\n";
  return all ? kExitOk : kExitDistinct;
}

int demo_ferreira_roundtrip(bool json) {
  Env env;
  env.bind("c", disj(atom("P"), atom("Q")));
  Term t = parse_term("case hyp c of { n: P => inr [Q] hyp n | m: Q => inl [P] hyp m }");
  Term star = rp_derivation(env, t);
  Env env_star = rp_env(env);
  Term down = ff_overflow(env_star, star);
  Judgment j = typecheck(env_star, down, Fragment::NI2at);
  EquivOptions opts;
  opts.eta_search_depth = 4;
  opts.eta_search_width = 96;
  Verdict v = equiv(env_star, star, down, Theory::BetaEtaEpsTilde, opts);
  if (json) {
    nlohmann::json e;
    e["source"] = print_term(t);
    e["translated"] = print_term(star);
    e["atomic"] = print_term(down);
    e["conclusion"] = print_formula(j.conclusion);
    e["equivalent"] = verdict_str(v);
    std::cout << e.dump(2) << "\n";
  } else {
    std::cout << "source:      " << print_term(t) << "\n";
    std::cout << "translated:  " << print_term(star) << "\n";
    std::cout << "atomic form: " << print_term(down) << "\n";
    std::cout << "atomic fragment conclusion: " << print_formula(j.conclusion) << "\n";
    std::cout << "equivalence of the two routes: " << verdict_str(v) << "\n";
  }
  return v.kind == VerdictKind::Equal ? kExitOk : kExitDistinct;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ni2: proof-term kernel and rewriting engine for second-order natural deduction"};
  app.require_subcommand(1);

  std::string file, file_b, theory = "beta", strategy = "lo", fragment = "ni2or";
  std::string trace_path, mode = "rp", demo_name, overflow_var = "S0";
  std::vector<std::string> assumes;
  std::uint64_t fuel = 100000, seed = 0;
  int count = 20;
  bool json = false;

  auto* check = app.add_subcommand("check", "typecheck a term file and print its conclusion");
  check->add_option("file", file)->required();
  check->add_option("--fragment", fragment, "ni2or|ni2|ni2at");
  check->add_option("--assume", assumes, "open assumption label:formula (repeatable)");
  check->add_flag("--json", json);

  auto* translate = app.add_subcommand("translate", "translate a derivation");
  translate->add_option("file", file)->required();
  translate->add_option("--mode", mode, "rp|ff|gen-overflow");
  translate->add_option("--assume", assumes);
  translate->add_option("--var", overflow_var, "distinguished variable for gen-overflow");
  translate->add_flag("--json", json);

  auto* norm = app.add_subcommand("normalize", "normalize a term under a theory's rules");
  norm->add_option("file", file)->required();
  norm->add_option("--theory", theory, "beta|betaeta|betaeps|betaetaeps");
  norm->add_option("--strategy", strategy, "lo|li|random");
  norm->add_option("--fuel", fuel);
  norm->add_option("--seed", seed, "seed (required for --strategy random)");
  norm->add_option("--trace", trace_path, "write the reduction trace to this path");
  norm->add_option("--assume", assumes);
  norm->add_flag("--json", json);

  auto* eq = app.add_subcommand("equiv", "decide proof identity under a theory");
  eq->add_option("file", file)->required();
  eq->add_option("fileB", file_b)->required();
  eq->add_option("--theory", theory);
  eq->add_option("--fuel", fuel);
  eq->add_option("--assume", assumes);
  eq->add_flag("--json", json);

  auto* demo = app.add_subcommand("demo", "replay a named scenario");
  demo->add_option("name", demo_name,
                   "gamma-g-loop      unrestricted case permutation diverges, terms grow\n"
                   "epsilon-strict    a pair equal under betaetaeps but distinct under betaeta\n"
                   "bheps-nonconfluent  one term, two unjoinable normal forms\n"
                   "church-consistency  numerals 0 and 1 are never identified\n"
                   "naturality-spotcheck  naturality squares commute on samples\n"
                   "ferreira-roundtrip  sum translation composed with atomic overflow")
      ->required();
  demo->add_flag("--json", json);

  auto* suite = app.add_subcommand("suite", "run the theorem-instance families");
  suite->add_option("--seed", seed)->required();
  suite->add_option("--count", count);
  suite->add_flag("--json", json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      Env env = parse_assumptions(assumes);
      Term t = parse_term(slurp(file));
      try {
        Judgment j = typecheck(env, t, fragment_from(fragment));
        if (json) {
          nlohmann::json e;
          e["conclusion"] = print_formula(j.conclusion);
          std::cout << e.dump(2) << "\n";
        } else {
          std::cout << print_formula(j.conclusion) << "\n";
        }
        return kExitOk;
      } catch (const CheckError& e) {
        std::cerr << "type error: " << e.what() << "\n";
        return kExitDistinct;
      }
    }

    if (*translate) {
      Env env = parse_assumptions(assumes);
      Term t = parse_term(slurp(file));
      Term out;
      if (mode == "rp") {
        out = rp_derivation(env, t);
      } else if (mode == "ff") {
        out = ff_overflow(env, t);
      } else if (mode == "gen-overflow") {
        out = gen_overflow(env, t, overflow_var);
      } else {
        throw Error("unknown mode: " + mode);
      }
      std::cout << print_term(out) << "\n";
      return kExitOk;
    }

    if (*norm) {
      if (strategy == "random" && !norm->count("--seed"))
        throw Error("--strategy random requires an explicit --seed");
      Env env = parse_assumptions(assumes);
      Term t = parse_term(slurp(file));
      typecheck(env, t);
      NormalizeResult r =
          normalize(env, t, rules_for_theory(theory_from_name(theory)),
                    strategy_from(strategy, seed), fuel);
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        out << trace_to_json(r.trace) << "\n";
      }
      if (json) {
        nlohmann::json e;
        e["term"] = print_term(r.term);
        e["steps"] = r.trace.steps.size();
        e["terminated"] =
            r.trace.terminated == Terminated::NormalForm ? "NormalForm" : "FuelExhausted";
        std::cout << e.dump(2) << "\n";
      } else {
        std::cout << print_term(r.term) << "\n";
      }
      return r.trace.terminated == Terminated::NormalForm ? kExitOk : kExitUnknown;
    }

    if (*eq) {
      Env env = parse_assumptions(assumes);
      Term a = parse_term(slurp(file));
      Term b = parse_term(slurp(file_b));
      typecheck(env, a);
      typecheck(env, b);
      EquivOptions opts;
      opts.fuel = fuel;
      Verdict v = equiv(env, a, b, theory_from_name(theory), opts);
      if (json) {
        nlohmann::json e;
        e["verdict"] = verdict_str(v);
        std::cout << e.dump(2) << "\n";
      } else {
        std::cout << verdict_str(v) << "\n";
      }
      switch (v.kind) {
        case VerdictKind::Equal: return kExitOk;
        case VerdictKind::Distinct: return kExitDistinct;
        case VerdictKind::Unknown: return kExitUnknown;
      }
    }

    if (*demo) {
      if (demo_name == "gamma-g-loop") return demo_gamma_g_loop(json);
      if (demo_name == "epsilon-strict") return demo_epsilon_strict(json);
      if (demo_name == "bheps-nonconfluent") return demo_bheps_nonconfluent(json);
      if (demo_name == "church-consistency") return demo_church_consistency(json);
      if (demo_name == "naturality-spotcheck") return demo_naturality_spotcheck(json);
      if (demo_name == "ferreira-roundtrip") return demo_ferreira_roundtrip(json);
      throw Error("unknown demo: " + demo_name);
    }

    if (*suite) {
      SuiteReport r = theorem_suite(seed, count);
      std::cout << (json ? r.to_json() : r.to_text());
      return r.all_passed() ? kExitOk : kExitDistinct;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
