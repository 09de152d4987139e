#include "doctest.h"
#include "ni2/equivalence.hpp"
#include "ni2/gen.hpp"
#include "ni2/parse.hpp"
#include "ni2/translate.hpp"

using namespace ni2;

namespace {
Formula F(const std::string& s) { return parse_formula(s); }
Term T(const std::string& s) { return parse_term(s); }
}

TEST_CASE("equiv is reflexive and checks signatures") {
  Env env;
  env.bind("f", F("P -> Q"));
  Term t = T("hyp f");
  for (Theory th : {Theory::Beta, Theory::BetaEta, Theory::BetaEpsTilde, Theory::BetaEtaEpsTilde})
    CHECK(equiv(env, t, t, th).kind == VerdictKind::Equal);
  Env env2;
  env2.bind("f", F("P -> Q"));
  env2.bind("g", F("P -> P"));
  CHECK_THROWS_AS(equiv(env2, T("hyp f"), T("hyp g"), Theory::Beta), SignatureMismatch);
}

TEST_CASE("strictness pair separates the theories") {
  EquationInstance e = epsilon_strict_pair();
  CHECK(equiv(e.env, e.lhs, e.rhs, Theory::BetaEta).kind == VerdictKind::Distinct);
  CHECK(equiv(e.env, e.lhs, e.rhs, Theory::BetaEpsTilde).kind == VerdictKind::Equal);
  CHECK(equiv(e.env, e.lhs, e.rhs, Theory::BetaEtaEpsTilde).kind == VerdictKind::Equal);
}

TEST_CASE("church numerals stay distinct") {
  Term zero = church_numeral(0);
  Term one = church_numeral(1);
  Env env;
  for (Theory th : {Theory::Beta, Theory::BetaEta, Theory::BetaEpsTilde, Theory::BetaEtaEpsTilde}) {
    Verdict v = equiv(env, zero, one, th);
    CHECK(v.kind != VerdictKind::Equal);
  }
}

TEST_CASE("congruence of Equal under enclosing contexts") {
  EquationInstance e = epsilon_strict_pair();
  // both sides conclude Q; wrap them in a shared context
  Env env = e.env;
  env.bind("out", F("Q -> W"));
  Term l = imp_e(hyp("out"), e.lhs);
  Term r = imp_e(hyp("out"), e.rhs);
  CHECK(equiv(env, l, r, Theory::BetaEpsTilde).kind == VerdictKind::Equal);
  Term l2 = imp_i("z", F("W"), e.lhs);
  Term r2 = imp_i("z", F("W"), e.rhs);
  CHECK(equiv(e.env, l2, r2, Theory::BetaEpsTilde).kind == VerdictKind::Equal);
}

TEST_CASE("naturality holds on generated instances") {
  for (std::uint64_t seed = 50; seed < 80; ++seed)
    CHECK(check_naturality(gen_naturality_instance(seed)));
}

TEST_CASE("rp images of gamma_g pairs are beta-eps-equal") {
  for (std::uint64_t seed = 10; seed < 25; ++seed) {
    EquationInstance e = gen_gamma_g_pair(seed, false);
    Env env_star = rp_env(e.env);
    Term l = rp_derivation(e.env, e.lhs);
    Term r = rp_derivation(e.env, e.rhs);
    Verdict v = equiv(env_star, l, r, Theory::BetaEpsTilde);
    CHECK(v.kind == VerdictKind::Equal);
  }
}

TEST_CASE("eta-or replay chain") {
  for (std::uint64_t seed = 10; seed < 20; ++seed)
    CHECK(replay_eta_or_chain(gen_eta_or_pair(seed, false)));
}

TEST_CASE("ferr roundtrip equivalence") {
  for (std::uint64_t seed = 800; seed < 806; ++seed) {
    OverflowInstance inst = gen_overflow_instance(seed);
    Term down = gen_overflow(inst.env, inst.term, inst.x);
    CHECK_NOTHROW(typecheck(inst.env, down, Fragment::NI2at));
    Verdict v = equiv(inst.env, inst.term, down, Theory::BetaEtaEpsTilde);
    CHECK(v.kind == VerdictKind::Equal);
  }
}

TEST_CASE("suite report smoke") {
  SuiteReport r = theorem_suite(7, 3);
  CHECK(!r.families.empty());
  CHECK(r.all_passed());
  CHECK(r.to_text().find("betapres") != std::string::npos);
  CHECK(r.to_json().find("\"family\"") != std::string::npos);
}
