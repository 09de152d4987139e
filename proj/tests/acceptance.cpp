// Acceptance harness: runs every release criterion and prints one PASS/FAIL
// line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ni2/equivalence.hpp"
#include "ni2/gen.hpp"
#include "ni2/parse.hpp"
#include "ni2/rewrite.hpp"
#include "ni2/translate.hpp"
#include "ni2/typecheck.hpp"

using namespace ni2;

namespace {

int failures = 0;

void report(int idx, const std::string& what, bool ok, const std::string& detail) {
  std::printf("%s - C%d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, what.c_str(), detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const RuleSet kAllRules{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr, Rule::Beta0,
                        Rule::EtaImpRed, Rule::EtaAllRed, Rule::EtaOrRed,
                        Rule::GammaOr, Rule::GammaGOr, Rule::Eps};
const RuleSet kBeta{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr};
const RuleSet kSnRules{Rule::BetaImp, Rule::BetaAll, Rule::EtaImpRed, Rule::EtaAllRed, Rule::Eps};
const RuleSet kBetaEps{Rule::BetaImp, Rule::BetaAll, Rule::Eps};

Term beta_nf(const Env& env, const Term& t) {
  NormalizeResult r = normalize(env, t, kBeta, {}, 200000);
  if (r.trace.terminated == Terminated::FuelExhausted)
    throw FuelExhaustedError("beta_nf: fuel exhausted");
  return r.term;
}

// C1: single-step type preservation over every rule
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  int terms = 0, steps = 0, bad = 0;
  for (std::uint64_t seed = 1; terms < 1000; ++seed) {
    TermInstance inst = gen_ni2or_term(seed, 40);
    ++terms;
    Formula c;
    try {
      c = conclusion_of(inst.env, inst.term);
    } catch (const Error&) {
      ++bad;
      continue;
    }
    std::vector<Redex> rs;
    try {
      rs = find_redexes(inst.env, inst.term, kAllRules);
    } catch (const Error&) {
      ++bad;
      continue;
    }
    for (const auto& r : rs) {
      ++steps;
      try {
        Term next = step(inst.env, inst.term, r.pos, r.rule);
        if (!alpha_eq(conclusion_of(inst.env, next), c)) ++bad;
      } catch (const Error&) {
        ++bad;
      }
    }
  }
  double secs = seconds_since(t0);
  bool ok = bad == 0 && secs <= 120.0;
  report(1, "type preservation across all single steps", ok,
         std::to_string(terms) + " terms, " + std::to_string(steps) + " steps, " +
             std::to_string(bad) + " failures, " + std::to_string(secs) + "s");
}

// C2: β-pairs translate to β-equal derivations
void criterion2() {
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    try {
      EquationInstance e = gen_beta_pair(seed);
      Env env_star = rp_env(e.env);
      Term l = beta_nf(env_star, rp_derivation(e.env, e.lhs));
      Term r = beta_nf(env_star, rp_derivation(e.env, e.rhs));
      if (!alpha_eq_term(l, r)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(2, "beta preservation under the sum translation", bad == 0,
         "200 pairs, " + std::to_string(bad) + " failures");
}

// C3: m-closed γ_g and η∨ instances become β-equal after translation
void criterion3() {
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    try {
      EquationInstance e = gen_gamma_g_pair(seed, true);
      Env env_star = rp_env(e.env);
      if (!alpha_eq_term(beta_nf(env_star, rp_derivation(e.env, e.lhs)),
                         beta_nf(env_star, rp_derivation(e.env, e.rhs))))
        ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  for (std::uint64_t seed = 3001; seed <= 3100; ++seed) {
    try {
      EquationInstance e = gen_eta_or_pair(seed, true);
      Env env_star = rp_env(e.env);
      if (!alpha_eq_term(beta_nf(env_star, rp_derivation(e.env, e.lhs)),
                         beta_nf(env_star, rp_derivation(e.env, e.rhs))))
        ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(3, "major-closed permutation and expansion instances collapse to beta", bad == 0,
         "100+100 pairs, " + std::to_string(bad) + " failures");
}

// C4: naturality squares commute up to β
void criterion4() {
  int bad = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    try {
      if (!check_naturality(gen_naturality_instance(seed))) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(4, "naturality squares commute up to beta", bad == 0,
         "200 squares, " + std::to_string(bad) + " failures");
}

// C5: γ_g pairs translate into βε~-equal derivations
void criterion5() {
  int bad = 0;
  for (std::uint64_t seed = 5001; seed <= 5100; ++seed) {
    try {
      EquationInstance e = gen_gamma_g_pair(seed, false);
      Env env_star = rp_env(e.env);
      Verdict v = equiv(env_star, rp_derivation(e.env, e.lhs), rp_derivation(e.env, e.rhs),
                        Theory::BetaEpsTilde);
      if (v.kind != VerdictKind::Equal) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(5, "generalized permutations map into the beta-eps theory", bad == 0,
         "100 pairs, " + std::to_string(bad) + " failures");
}

// C6: the η∨ chain replay
void criterion6() {
  int bad = 0;
  for (std::uint64_t seed = 6001; seed <= 6050; ++seed) {
    try {
      if (!replay_eta_or_chain(gen_eta_or_pair(seed, false))) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(6, "sum-expansion chain replays mechanically", bad == 0,
         "50 pairs, " + std::to_string(bad) + " failures");
}

// C7: generalized overflow lands in the atomic fragment and stays equivalent
void criterion7() {
  int bad = 0;
  for (std::uint64_t seed = 7001; seed <= 7030; ++seed) {
    try {
      OverflowInstance inst = gen_overflow_instance(seed);
      Term down = gen_overflow(inst.env, inst.term, inst.x);
      typecheck(inst.env, down, Fragment::NI2at);
      Verdict v = equiv(inst.env, inst.term, down, Theory::BetaEtaEpsTilde);
      if (v.kind != VerdictKind::Equal) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(7, "generalized overflow is atomic and equivalent", bad == 0,
         "30 instances, " + std::to_string(bad) + " failures");
}

// C8: empirical strong normalization of {β, η-contraction, ε}
void criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  int exhausted = 0;
  for (std::uint64_t seed = 8001; seed <= 8500; ++seed) {
    TermInstance inst = gen_ni2_term(seed, 60);
    NormalizeResult r = normalize(inst.env, inst.term, kSnRules, {}, 100000);
    if (r.trace.terminated == Terminated::FuelExhausted) ++exhausted;
  }
  double secs = seconds_since(t0);
  bool ok = exhausted == 0 && secs <= 300.0;
  report(8, "beta-eta-eps normalization terminates empirically", ok,
         "500 terms, " + std::to_string(exhausted) + " exhausted, " + std::to_string(secs) + "s");
}

// C9: confluence of {β, ε} modulo ~
void criterion9() {
  int bad = 0;
  for (std::uint64_t seed = 9001; seed <= 9500; ++seed) {
    TermInstance inst = gen_ni2_term(seed, 60);
    try {
      Term a = normalize(inst.env, inst.term, kBetaEps,
                         {StrategyKind::RandomSeeded, seed * 2 + 1}, 100000)
                   .term;
      Term b = normalize(inst.env, inst.term, kBetaEps,
                         {StrategyKind::RandomSeeded, seed * 2 + 2}, 100000)
                   .term;
      if (!tilde_equal(inst.env, a, b)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(9, "beta-eps reduction is confluent modulo the trivial equivalence", bad == 0,
         "500 terms x 2 sequences, " + std::to_string(bad) + " failures");
}

// C10: the four counterexample replays
void criterion10() {
  bool ok = true;
  std::string detail;

  {  // strictly growing generalized-permutation chain
    TermInstance loop = gamma_loop_term();
    NormalizeResult r = normalize(loop.env, loop.term, {Rule::GammaGOr},
                                  {StrategyKind::LeftmostInnermost, 0}, 120);
    bool grows = r.trace.steps.size() >= 100;
    for (const auto& s : r.trace.steps)
      if (s.nodes_after <= s.nodes_before) grows = false;
    if (r.trace.terminated != Terminated::FuelExhausted) grows = false;
    ok = ok && grows;
    detail += std::string("loop=") + (grows ? "ok" : "FAIL");
  }

  {  // two normal forms that are neither α- nor ~-equal
    Formula wy = imp(atom("W"), atom("Y"));
    Formula uty = imp(wy, atom("Y"));
    Env env;
    env.bind("u", uty);
    Term start = imp_i("n", wy, imp_e(hyp("u"), hyp("n")));

    Term eta_route =
        normalize(env, start, {Rule::BetaImp, Rule::EtaImpRed, Rule::EtaAllRed}, {}, 1000).term;

    // the general permutation instance, supplied explicitly
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

    bool distinct = !alpha_eq_term(eta_route, eps_route);
    bool eta_normal = find_redexes(env, eta_route, kAllRules).empty();
    bool eps_normal = find_redexes(eps_env, eps_route, kAllRules).empty();
    bool tilde_distinct =
        !alpha_eq_term(tilde_canonical(env, eta_route), tilde_canonical(eps_env, eps_route));
    bool typed = alpha_eq(conclusion_of(eps_env, eps_route), conclusion_of(env, start));
    bool pass = distinct && eta_normal && eps_normal && tilde_distinct && typed;
    ok = ok && pass;
    detail += std::string(", nonconfluent=") + (pass ? "ok" : "FAIL");
  }

  {  // the strictness pair
    EquationInstance e = epsilon_strict_pair();
    bool pass = equiv(e.env, e.lhs, e.rhs, Theory::BetaEtaEpsTilde).kind == VerdictKind::Equal &&
                equiv(e.env, e.lhs, e.rhs, Theory::BetaEta).kind == VerdictKind::Distinct;
    ok = ok && pass;
    detail += std::string(", strictness=") + (pass ? "ok" : "FAIL");
  }

  {  // numerals are never identified
    Term zero = church_numeral(0);
    Term one = church_numeral(1);
    Env env;
    bool pass = true;
    for (std::uint64_t fuel : {1000ULL, 10000ULL, 100000ULL}) {
      for (Theory th :
           {Theory::Beta, Theory::BetaEta, Theory::BetaEpsTilde, Theory::BetaEtaEpsTilde}) {
        EquivOptions opts;
        opts.fuel = fuel;
        if (equiv(env, zero, one, th, opts).kind == VerdictKind::Equal) pass = false;
      }
    }
    ok = ok && pass;
    detail += std::string(", numerals=") + (pass ? "ok" : "FAIL");
  }

  report(10, "counterexample replays", ok, detail);
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  return failures == 0 ? 0 : 1;
}
