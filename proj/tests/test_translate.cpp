#include "doctest.h"
#include "ni2/gen.hpp"
#include "ni2/parse.hpp"
#include "ni2/translate.hpp"

using namespace ni2;

namespace {
Formula F(const std::string& s) { return parse_formula(s); }
Term T(const std::string& s) { return parse_term(s); }
}

TEST_CASE("rp_formula clauses") {
  CHECK(alpha_eq(rp_formula(F("Y")), F("Y")));
  CHECK(alpha_eq(rp_formula(F("Y \\/ Z")), F("forall X. (Y -> X) -> (Z -> X) -> X")));
  CHECK(alpha_eq(rp_formula(F("Y \\/ Z -> W")),
                 F("(forall X. (Y -> X) -> (Z -> X) -> X) -> W")));
  CHECK(alpha_eq(rp_formula(F("forall Y. Y \\/ Q")),
                 F("forall Y. forall X. (Y -> X) -> (Q -> X) -> X")));
  // the bound variable is fresh for the translated disjuncts
  CHECK(alpha_eq(rp_formula(F("X \\/ Z")), F("forall W. (X -> W) -> (Z -> W) -> W")));
}

TEST_CASE("rp_derivation types its output") {
  // hypotheses translate to hypotheses
  Env env;
  env.bind("n", F("P \\/ Q"));
  Term t = T("hyp n");
  CHECK(alpha_eq_term(rp_derivation(env, t), t));

  // injections compile to the double-⊃I/∀I wrapper
  Env env2;
  env2.bind("p", F("P"));
  Term inj = T("inl [Q] hyp p");
  Term star = rp_derivation(env2, inj);
  Judgment j = typecheck(rp_env(env2), star, Fragment::NI2);
  CHECK(alpha_eq(j.conclusion, rp_formula(F("P \\/ Q"))));
}

TEST_CASE("rp commutes with typechecking on random terms") {
  for (std::uint64_t seed = 90; seed < 140; ++seed) {
    TermInstance inst = gen_ni2or_term(seed, 40);
    Formula src = conclusion_of(inst.env, inst.term, Fragment::NI2or);
    Term star = rp_derivation(inst.env, inst.term);
    Formula got = conclusion_of(rp_env(inst.env), star, Fragment::NI2);
    CHECK(alpha_eq(got, rp_formula(src)));
  }
}

TEST_CASE("c_expand clauses") {
  // x not free: the expansion is the assumption itself
  Term d = T("hyp dd hyp a0");  // B from a0:A and dd:A⊃B
  Term e = c_expand(F("P -> Q"), "X", d, "a0", "src");
  CHECK(alpha_eq_term(e, T("hyp src")));

  // C ≡ X: the expansion is d with the designated hypothesis renamed
  Term ex = c_expand(F("X"), "X", d, "a0", "src");
  CHECK(alpha_eq_term(ex, T("hyp dd hyp src")));

  // C ≡ F⊃X: the ⊃E/⊃I sandwich
  Term ei = c_expand(F("P -> X"), "X", d, "a0", "src");
  Env env;
  env.bind("src", F("P -> A"));
  env.bind("dd", F("A -> B"));
  Judgment j = typecheck(env, ei, Fragment::NI2);
  CHECK(alpha_eq(j.conclusion, F("P -> B")));
}

TEST_CASE("c_expand quantifier clause renames eagerly") {
  Term d = T("hyp dd hyp a0");
  Term e = c_expand(F("forall Y. P -> X"), "X", d, "a0", "src");
  Env env;
  env.bind("src", F("forall Y. P -> A"));
  env.bind("dd", F("A -> B"));
  Judgment j = typecheck(env, e, Fragment::NI2);
  CHECK(alpha_eq(j.conclusion, F("forall Y. P -> B")));
}

TEST_CASE("lemma-style substitution compatibility of c_expand") {
  // c_expand(C[F/Y]) ≡ c_expand(C)[F/Y] when x ∉ F, Y not in d
  Term d = T("hyp dd hyp a0");
  Formula c = F("(Y -> Q) -> X");
  Formula f = F("P -> P");
  Term lhs = c_expand(subst_formula(c, f, "Y"), "X", d, "a0", "src");
  Term rhs = subst_type_in_term(c_expand(c, "X", d, "a0", "src"), f, "Y");
  CHECK(alpha_eq_term(lhs, rhs));
}

TEST_CASE("eta spines rebuild the eta-long assumption") {
  Formula c = F("forall Y. P -> (forall Z. Q -> X)");
  EtaSpines sp = eta_spines(c, "X");
  Term full = apply_intro_half(sp, apply_elim_half(sp, hyp("h")));
  Env env;
  env.bind("h", c);
  Judgment j = typecheck(env, full, Fragment::NI2);
  CHECK(alpha_eq(j.conclusion, c));
}

TEST_CASE("ff_overflow on sum encodings") {
  // ∀E at an atom stays as-is
  Env env;
  env.bind("s", rp_formula(F("P \\/ Q")));
  Term t = T("hyp s [Y]");
  CHECK(alpha_eq_term(ff_overflow(env, t), t));

  // ∀E at an implication becomes an NI2at derivation of the same conclusion
  Term t2 = T("hyp s [P -> Q]");
  Term down = ff_overflow(env, t2);
  Judgment j = typecheck(env, down, Fragment::NI2at);
  CHECK(alpha_eq(j.conclusion, conclusion_of(env, t2)));

  // non-encoding premises are rejected
  Env env2;
  env2.bind("s", F("forall X. X -> X"));
  CHECK_THROWS_AS(ff_overflow(env2, parse_term("hyp s [P -> Q]")), NotRpImage);
}

TEST_CASE("ff_overflow handles rp images of case analysis") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    TermInstance inst = gen_prop_term(seed, 30);
    Env env_star = rp_env(inst.env);
    Term star = rp_derivation(inst.env, inst.term);
    Term down = ff_overflow(env_star, star);
    Judgment j = typecheck(env_star, down, Fragment::NI2at);
    CHECK(alpha_eq(j.conclusion, conclusion_of(env_star, star)));
  }
}

TEST_CASE("gen_overflow produces NI2at derivations") {
  for (std::uint64_t seed = 700; seed < 730; ++seed) {
    OverflowInstance inst = gen_overflow_instance(seed);
    Term down = gen_overflow(inst.env, inst.term, inst.x);
    Judgment j = typecheck(inst.env, down, Fragment::NI2at);
    CHECK(alpha_eq(j.conclusion, conclusion_of(inst.env, inst.term)));
  }
}

TEST_CASE("gen_overflow agrees with ff_overflow on rp images modulo conversion") {
  for (std::uint64_t seed = 40; seed < 60; ++seed) {
    TermInstance inst = gen_prop_term(seed, 25);
    Env env_star = rp_env(inst.env);
    Term star = rp_derivation(inst.env, inst.term);
    Term a = ff_overflow(env_star, star);
    Term b = gen_overflow(env_star, star, "S0");
    CHECK_NOTHROW(typecheck(env_star, a, Fragment::NI2at));
    CHECK_NOTHROW(typecheck(env_star, b, Fragment::NI2at));
    // the two constructions agree up to β
    RuleSet betas{Rule::BetaImp, Rule::BetaAll};
    Term na = normalize(env_star, a, betas, {}, 200000).term;
    Term nb = normalize(env_star, b, betas, {}, 200000).term;
    CHECK(alpha_eq_term(na, nb));
  }
}
