#include "doctest.h"
#include "ni2/gen.hpp"
#include "ni2/parse.hpp"
#include "ni2/typecheck.hpp"

using namespace ni2;

namespace {
Formula F(const std::string& s) { return parse_formula(s); }
Term T(const std::string& s) { return parse_term(s); }
}

TEST_CASE("identity derivations") {
  Judgment j = typecheck({}, T("\\n: A. hyp n"), Fragment::NI2);
  CHECK(alpha_eq(j.conclusion, F("A -> A")));

  // ∀I then ∀E at B
  Judgment k = typecheck({}, T("(/\\X. \\n: X. hyp n) [B]"), Fragment::NI2);
  CHECK(alpha_eq(k.conclusion, F("B -> B")));
}

TEST_CASE("errors carry positions and kinds") {
  CHECK_THROWS_AS(typecheck({}, T("hyp n")), CheckError);
  try {
    typecheck({}, T("hyp n"));
  } catch (const CheckError& e) {
    CHECK(e.kind == CheckErrorKind::UnboundLabel);
  }

  Env env;
  env.bind("f", F("P -> Q"));
  env.bind("x", F("R"));
  try {
    typecheck(env, T("hyp f hyp x"));
    CHECK(false);
  } catch (const CheckError& e) {
    CHECK(e.kind == CheckErrorKind::TypeMismatch);
  }
}

TEST_CASE("eigenvariable condition") {
  Env env;
  env.bind("n", F("X"));
  CHECK_THROWS_AS(typecheck(env, T("/\\X. hyp n")), CheckError);
  // fine when the assumption is not used
  Env env2;
  env2.bind("n", F("X"));
  env2.bind("p", F("P"));
  Judgment j = typecheck(env2, T("/\\X. hyp p"));
  CHECK(alpha_eq(j.conclusion, F("forall X. P")));
}

TEST_CASE("fragments") {
  Env env;
  env.bind("w", F("forall X. X"));
  env.bind("c", F("P \\/ Q"));
  // NI2at forbids non-atomic instantiation
  CHECK_NOTHROW(typecheck(env, T("hyp w [Y]"), Fragment::NI2at));
  CHECK_THROWS_AS(typecheck(env, T("hyp w [Y -> Y]"), Fragment::NI2at), CheckError);
  CHECK_NOTHROW(typecheck(env, T("hyp w [Y -> Y]"), Fragment::NI2));
  // ∨-rules only in NI2or
  Term c = T("case hyp c of { n: P => hyp n | m: Q => hyp p }");
  Env env2 = env;
  env2.bind("p", F("P"));
  CHECK_NOTHROW(typecheck(env2, c, Fragment::NI2or));
  CHECK_THROWS_AS(typecheck(env2, c, Fragment::NI2), CheckError);
}

TEST_CASE("x-safety") {
  Term noalle = T("\\n: P. hyp n");
  CHECK(is_x_safe(noalle, "X"));
  Term e = T("hyp w [X]");
  CHECK_FALSE(is_x_safe(e, "X"));
  CHECK(is_x_safe(e, "Y"));
}

TEST_CASE("measures") {
  Env env;
  CHECK(measure_height(env, T("hyp n")) == 1);
  CHECK(measure_height(env, T("\\n: X. hyp n")) == 2);
  // ⊃E: h1+h2+2^s+s with s = s(X⊃X) = 0
  CHECK(measure_height(env, T("(\\n: X. hyp n) hyp m")) == 4);
  CHECK_THROWS_AS(measure_height(env, T("inl [Q] hyp p")), NotL2);
}

TEST_CASE("closed beta-normal terms end with an introduction") {
  RuleSet betas{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr};
  int checked = 0;
  for (std::uint64_t seed = 501; seed < 560; ++seed) {
    TermInstance inst = gen_ni2or_term(seed, 40);
    NormalizeResult nf = normalize(inst.env, inst.term, betas, {}, 100000);
    REQUIRE(nf.trace.terminated == Terminated::NormalForm);
    if (!is_closed(nf.term)) continue;
    CHECK(ends_with_intro(nf.term));
    ++checked;
  }
  // closed outputs are rare with hypothesis-rich environments; build a few directly
  Term t = parse_term("(\\n: P -> P. hyp n) (\\m: P. hyp m)");
  NormalizeResult nf = normalize({}, t, betas, {}, 1000);
  CHECK(ends_with_intro(nf.term));
}
