#include "doctest.h"
#include "ni2/gen.hpp"
#include "ni2/parse.hpp"

using namespace ni2;

TEST_CASE("formula parsing") {
  Formula f = parse_formula("forall X. X -> X");
  REQUIRE(is_forall(f));
  CHECK(is_imp(f->lhs));

  // -> is right-associative, \/ binds tighter
  CHECK(alpha_eq(parse_formula("P -> Q -> R"), imp(atom("P"), imp(atom("Q"), atom("R")))));
  CHECK(alpha_eq(parse_formula("P \\/ Q -> R"), imp(disj(atom("P"), atom("Q")), atom("R"))));
  CHECK(alpha_eq(parse_formula("P \\/ Q \\/ R"), disj(disj(atom("P"), atom("Q")), atom("R"))));

  CHECK_THROWS_AS(parse_formula("forall . X"), ParseError);
  CHECK_THROWS_AS(parse_formula("(X -> "), ParseError);
}

TEST_CASE("term parsing") {
  Term t = parse_term("\\n: A. hyp n");
  REQUIRE(t->kind == TKind::ImpI);
  CHECK(t->a->kind == TKind::Hyp);

  Term app = parse_term("hyp f hyp x");
  CHECK(app->kind == TKind::ImpE);

  Term inst = parse_term("hyp w [P -> Q]");
  CHECK(inst->kind == TKind::AllE);

  Term tl = parse_term("/\\X. \\n: X. hyp n");
  CHECK(tl->kind == TKind::AllI);

  Term inj = parse_term("inl [Q] hyp p");
  CHECK(inj->kind == TKind::OrI1);

  Term c = parse_term("case hyp c of { n: P => hyp n | m: Q => hyp p }");
  CHECK(c->kind == TKind::OrE);

  CHECK_THROWS_AS(parse_term("case hyp c of { }"), ParseError);
}

TEST_CASE("print/parse round-trip on random terms") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 220; ++seed) {
    TermInstance inst = gen_ni2or_term(seed, 60);
    Term back = parse_term(print_term(inst.term));
    CHECK(alpha_eq_term(back, inst.term));
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("print/parse round-trip on formulas") {
  TermGen g(11);
  for (int i = 0; i < 100; ++i) {
    Formula f = g.random_formula(3, true);
    CHECK(alpha_eq(parse_formula(print_formula(f)), f));
  }
}
