#include "doctest.h"
#include "ni2/gen.hpp"
#include "ni2/parse.hpp"
#include "ni2/rewrite.hpp"

using namespace ni2;

namespace {
Formula F(const std::string& s) { return parse_formula(s); }
Term T(const std::string& s) { return parse_term(s); }

const RuleSet kAllRules{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr, Rule::Beta0,
                        Rule::EtaImpRed, Rule::EtaAllRed, Rule::EtaOrRed,
                        Rule::GammaOr, Rule::GammaGOr, Rule::Eps};
}

TEST_CASE("basic redexes") {
  Env env;
  env.bind("u", F("P"));
  Term t = T("(\\n: P. hyp n) hyp u");
  auto rs = find_redexes(env, t, {Rule::BetaImp});
  REQUIRE(rs.size() == 1);
  CHECK(alpha_eq_term(step(env, t, rs[0].pos, Rule::BetaImp), T("hyp u")));
  // also a trivial redex
  CHECK(find_redexes(env, t, {Rule::Beta0}).size() == 1);

  Env env2;
  Term t2 = T("(/\\X. \\n: X. hyp n) [B]");
  auto rs2 = find_redexes(env2, t2, {Rule::BetaAll});
  REQUIRE(rs2.size() == 1);
  CHECK(alpha_eq_term(step(env2, t2, rs2[0].pos, Rule::BetaAll), T("\\n: B. hyp n")));

  Env env3;
  env3.bind("p", F("P"));
  env3.bind("k", F("P -> R"));
  env3.bind("l", F("Q -> R"));
  Term t3 = T("case inl [Q] hyp p of { n: P => hyp k hyp n | m: Q => hyp l hyp m }");
  auto rs3 = find_redexes(env3, t3, {Rule::BetaOr});
  REQUIRE(rs3.size() == 1);
  CHECK(alpha_eq_term(step(env3, t3, rs3[0].pos, Rule::BetaOr), T("hyp k hyp p")));
}

TEST_CASE("eta contractions") {
  Env env;
  env.bind("f", F("P -> Q"));
  Term t = T("\\n: P. hyp f hyp n");
  auto rs = find_redexes(env, t, {Rule::EtaImpRed});
  REQUIRE(rs.size() == 1);
  CHECK(alpha_eq_term(step(env, t, rs[0].pos, Rule::EtaImpRed), T("hyp f")));

  // side condition: the bound label must not occur in the function part
  Term bad = T("\\n: P. hyp n hyp n");
  CHECK(find_redexes(env, bad, {Rule::EtaImpRed}).empty());

  Env env2;
  env2.bind("w", F("forall X. X -> X"));
  Term t2 = T("/\\Y. hyp w [Y]");
  auto rs2 = find_redexes(env2, t2, {Rule::EtaAllRed});
  REQUIRE(rs2.size() == 1);
  CHECK(alpha_eq_term(step(env2, t2, rs2[0].pos, Rule::EtaAllRed), T("hyp w")));

  Env env3;
  env3.bind("c", F("P \\/ Q"));
  Term t3 = T("case hyp c of { n: P => inl [Q] hyp n | m: Q => inr [P] hyp m }");
  auto rs3 = find_redexes(env3, t3, {Rule::EtaOrRed});
  REQUIRE(rs3.size() == 1);
  CHECK(alpha_eq_term(step(env3, t3, rs3[0].pos, Rule::EtaOrRed), T("hyp c")));
}

TEST_CASE("eta expansion") {
  Env env;
  env.bind("f", F("P -> Q"));
  Term e = eta_expand_at(env, T("hyp f"), {});
  CHECK(alpha_eq_term(e, T("\\m: P. hyp f hyp m")));

  Env env2;
  env2.bind("w", F("forall X. X"));
  Term e2 = eta_expand_at(env2, T("hyp w"), {});
  CHECK(alpha_eq_term(e2, T("/\\Y. hyp w [Y]")));

  // refuses to create an immediate β-redex with the parent
  Env env3;
  env3.bind("f", F("P -> Q"));
  env3.bind("p", F("P"));
  Term app = T("hyp f hyp p");
  CHECK_THROWS_AS(eta_expand_at(env3, app, {0}), WouldLoop);
}

TEST_CASE("gamma permutations") {
  Env env;
  env.bind("c", F("P \\/ Q"));
  env.bind("b1", F("R -> W"));
  env.bind("b2", F("R -> W"));
  env.bind("r", F("R"));
  // (case c of {..: R⊃W}) r  — the ∨E is the major premise of ⊃E
  Term t = T("(case hyp c of { n: P => hyp b1 | m: Q => hyp b2 }) hyp r");
  auto rg = find_redexes(env, t, {Rule::GammaOr});
  REQUIRE(rg.size() == 1);
  Term stepped = step(env, t, rg[0].pos, Rule::GammaOr);
  CHECK(stepped->kind == TKind::OrE);
  CHECK(alpha_eq(conclusion_of(env, stepped), F("W")));
  // γ_g also applies here
  CHECK(find_redexes(env, t, {Rule::GammaGOr}).size() == 1);

  // minor-premise position: γ_g only
  Term loop = gamma_loop_term().term;
  Env lenv = gamma_loop_term().env;
  CHECK(find_redexes(lenv, loop, {Rule::GammaOr}).empty());
  CHECK(!find_redexes(lenv, loop, {Rule::GammaGOr}).empty());
}

TEST_CASE("gamma_g loop grows strictly and never terminates") {
  TermInstance loop = gamma_loop_term();
  NormalizeResult r = normalize(loop.env, loop.term, {Rule::GammaGOr},
                                  {StrategyKind::LeftmostInnermost, 0}, 120);
  CHECK(r.trace.terminated == Terminated::FuelExhausted);
  CHECK(r.trace.steps.size() == 120);
  for (const auto& s : r.trace.steps) CHECK(s.nodes_after > s.nodes_before);
  // while γ alone terminates immediately
  NormalizeResult g = normalize(loop.env, loop.term, {Rule::GammaOr}, {}, 120);
  CHECK(g.trace.terminated == Terminated::NormalForm);
}

TEST_CASE("lift_context and composition") {
  // context: apply to hyp r (one K1App frame), type (R⊃Q) → Q
  Env env;
  Context c{{K1App{T("hyp r")}}, F("R -> Q"), F("Q")};
  // f = x: the lift is the context itself
  Context lx = lift_context(c, F("X"), "X");
  CHECK(lx.frames.size() == 1);
  // x absent: identity action
  Context lid = lift_context(c, F("P"), "X");
  CHECK(lid.empty());
  // f = G⊃x: the sandwich
  Context lg = lift_context(c, F("G -> X"), "X");
  env.bind("r", F("R"));
  env.bind("h", F("G -> R -> Q"));
  Term plugged = plug(lg, T("hyp h"));
  CHECK(alpha_eq(conclusion_of(env, plugged), F("G -> Q")));

  // composition concatenates and type-checks
  Context d{{K1App{T("hyp s")}}, F("Q"), F("W")};
  Context comp = compose_contexts(d, c);
  CHECK(comp.frames.size() == 2);
  CHECK(alpha_eq(comp.hole_type, F("R -> Q")));
  CHECK(alpha_eq(comp.result_type, F("W")));
  Context empty_disc{{}, F("R -> Q"), F("R -> Q")};
  Context same = compose_contexts(c, empty_disc);
  CHECK(same.frames.size() == c.frames.size());
}

TEST_CASE("lifted composition beta-reduces to composed lift") {
  // (C_F ∘ C'_F)[ ] →β (C∘C')_F[ ]
  Env env;
  env.bind("k1", F("P -> Q"));
  env.bind("k2", F("Q -> R"));
  env.bind("h", F("G -> P"));
  // K2 frames: the hole is in argument position, fun applied to hole
  Context d1{{K2{T("hyp k1")}}, F("P"), F("Q")};
  Context d2{{K2{T("hyp k2")}}, F("Q"), F("R")};
  Formula f = F("G -> X");
  Context lift1 = lift_context(d1, f, "X");
  Context lift2 = lift_context(d2, f, "X");
  Term via_parts = plug(lift2, plug(lift1, T("hyp h")));
  Term via_whole = plug(lift_context(compose_contexts(d2, d1), f, "X"), T("hyp h"));
  RuleSet betas{Rule::BetaImp, Rule::BetaAll};
  Term n1 = normalize(env, via_parts, betas, {}, 10000).term;
  Term n2 = normalize(env, via_whole, betas, {}, 10000).term;
  CHECK(alpha_eq_term(n1, n2));
}

TEST_CASE("epsilon detection and step on the strictness pair") {
  EquationInstance e = epsilon_strict_pair();
  auto splits = epsilon_detect(e.env, e.lhs);
  REQUIRE(splits.size() == 1);
  Term stepped = epsilon_step(e.env, e.lhs, splits[0]);
  CHECK(alpha_eq_term(stepped, e.rhs));
  // subject reduction
  CHECK(alpha_eq(conclusion_of(e.env, stepped), conclusion_of(e.env, e.lhs)));
  // the reduct has no further ε-redex
  CHECK(epsilon_detect(e.env, stepped).empty());
}

TEST_CASE("epsilon ignores pure discriminator contexts") {
  // w : ∀X((P⊃X)⊃X) applied at Q, with the result consumed by a discriminator
  // frame only (d : (P⊃Q)⊃Q ... shaped as Fα⊃Gα with F=(P⊃V),G=V)
  Env env;
  env.bind("w", F("forall X. (P -> X) -> X"));
  env.bind("m", F("P -> Q"));
  env.bind("d", F("Q -> Q"));
  // context [K4] only: d (w [Q] m) where d's type abstracts to V⊃V
  Term t = T("hyp d (hyp w [Q] hyp m)");
  CHECK(epsilon_detect(env, t).empty());
  // with a consuming frame below it becomes legal
  Env env2;
  env2.bind("w", F("forall X. (P -> X) -> X"));
  env2.bind("m", F("P -> Q"));
  env2.bind("d", F("Q -> Q"));
  env2.bind("out", F("Q -> R"));
  Term t2 = T("hyp out (hyp d (hyp w [Q] hyp m))");
  auto splits = epsilon_detect(env2, t2);
  REQUIRE(splits.size() == 1);
  CHECK(splits[0].context.frames.size() == 2);
  Term stepped = epsilon_step(env2, t2, splits[0]);
  CHECK(alpha_eq(conclusion_of(env2, stepped), F("R")));
}

TEST_CASE("permutation by parts joins after beta") {
  // permuting C∘C' at once equals permuting C' then C, then β-reducing
  Env env;
  env.bind("w", F("forall X. (P -> X) -> X"));
  env.bind("m", F("P -> Q"));
  env.bind("k", F("Q -> R"));
  env.bind("l", F("R -> W"));
  Term t = T("hyp l (hyp k (hyp w [Q] hyp m))");
  auto splits = epsilon_detect(env, t);
  REQUIRE(splits.size() == 1);
  CHECK(splits[0].context.frames.size() == 2);
  Term whole = epsilon_step(env, t, splits[0]);

  // route 2: restrict to the inner frame first
  EpsilonSplit inner = splits[0];
  inner.context.frames.resize(1);
  inner.context.result_type = F("R");
  inner.to = F("R");
  inner.anchor = splits[0].anchor;
  inner.anchor.push_back(1);  // one frame less: the inner ImpE node
  Term part1 = epsilon_step(env, t, inner);
  auto splits2 = epsilon_detect(env, part1);
  REQUIRE(!splits2.empty());
  Term part2 = epsilon_step(env, part1, splits2[0]);

  RuleSet betas{Rule::BetaImp, Rule::BetaAll};
  Term na = normalize(env, whole, betas, {}, 10000).term;
  Term nb = normalize(env, part2, betas, {}, 10000).term;
  CHECK(alpha_eq_term(na, nb));
}

TEST_CASE("tilde canonical") {
  // trivial β-redexes contract
  Env env;
  env.bind("m", F("P"));
  env.bind("f", F("P -> Q"));
  Term t = T("(\\n: P. hyp f hyp n) hyp m");
  CHECK(alpha_eq_term(tilde_canonical(env, t), T("hyp f hyp m")));
  // no discriminators, no trivial redexes: fixpoint is the term itself
  Term u = T("hyp f hyp m");
  CHECK(alpha_eq_term(tilde_canonical(env, u), u));
}

TEST_CASE("subject reduction across all rules on random terms") {
  for (std::uint64_t seed = 1000; seed < 1080; ++seed) {
    TermInstance inst = gen_ni2or_term(seed, 40);
    Formula c = conclusion_of(inst.env, inst.term);
    auto rs = find_redexes(inst.env, inst.term, kAllRules);
    for (const auto& r : rs) {
      Term next = step(inst.env, inst.term, r.pos, r.rule);
      CHECK(alpha_eq(conclusion_of(inst.env, next), c));
    }
  }
}

TEST_CASE("beta confluence on random terms") {
  RuleSet betas{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr};
  for (std::uint64_t seed = 2000; seed < 2040; ++seed) {
    TermInstance inst = gen_ni2or_term(seed, 40);
    Term a = normalize(inst.env, inst.term, betas, {StrategyKind::LeftmostOutermost, 0}, 100000).term;
    Term b = normalize(inst.env, inst.term, betas, {StrategyKind::RandomSeeded, seed}, 100000).term;
    Term c = normalize(inst.env, inst.term, betas, {StrategyKind::LeftmostInnermost, 0}, 100000).term;
    CHECK(alpha_eq_term(a, b));
    CHECK(alpha_eq_term(a, c));
  }
}

TEST_CASE("trace serialization") {
  TermInstance loop = gamma_loop_term();
  NormalizeResult r = normalize(loop.env, loop.term, {Rule::GammaGOr}, {}, 3);
  std::string j = trace_to_json(r.trace);
  CHECK(j.find("\"rule\"") != std::string::npos);
  CHECK(j.find("\"path\"") != std::string::npos);
  CHECK(j.find("\"nodesBefore\"") != std::string::npos);
  CHECK(j.find("\"nodesAfter\"") != std::string::npos);
  CHECK(j.find("FuelExhausted") != std::string::npos);
}
