#include "doctest.h"
#include "ni2/parse.hpp"
#include "ni2/term.hpp"

using namespace ni2;

TEST_CASE("free labels and closedness") {
  Term t = parse_term("\\n: A. hyp n");
  CHECK(is_closed(t));
  CHECK(ends_with_intro(t));
  Term u = parse_term("hyp n");
  CHECK_FALSE(is_closed(u));
  CHECK_FALSE(ends_with_intro(u));
  CHECK(free_labels(parse_term("hyp f hyp x")) == std::set<Label>{"f", "x"});
}

TEST_CASE("term alpha equivalence is two-level") {
  CHECK(alpha_eq_term(parse_term("\\n: P. hyp n"), parse_term("\\m: P. hyp m")));
  CHECK(alpha_eq_term(parse_term("/\\X. \\n: X. hyp n"), parse_term("/\\Y. \\k: Y. hyp k")));
  CHECK_FALSE(alpha_eq_term(parse_term("\\n: P. hyp n"), parse_term("\\n: Q. hyp n")));
  CHECK_FALSE(alpha_eq_term(parse_term("hyp n"), parse_term("hyp m")));
}

TEST_CASE("graft") {
  Term u = parse_term("hyp f hyp x");
  CHECK(alpha_eq_term(graft(hyp("n"), "n", u), u));
  Term t = parse_term("hyp n hyp m");
  Term r = graft(t, "m", parse_term("\\k: P. hyp k"));
  CHECK(alpha_eq_term(r, parse_term("hyp n (\\k: P. hyp k)")));
  // shadowed occurrences stay put
  Term s = parse_term("\\n: P. hyp n");
  CHECK(alpha_eq_term(graft(s, "n", u), s));
}

TEST_CASE("graft refuses capture in strict mode") {
  // grafting a term with free label d under a binder for d
  Term t = parse_term("\\d: D. hyp c");
  Term u = parse_term("hyp d");
  CHECK_THROWS_AS(graft(t, "c", u, GraftPolicy::Strict), LabelCapture);
  Term ok = graft(t, "c", u, GraftPolicy::AvoidCapture);
  // the binder was renamed; the grafted d stays free
  CHECK(free_labels(ok).count("d"));
}

TEST_CASE("type substitution in terms") {
  Term t = parse_term("\\n: X. hyp n");
  CHECK(alpha_eq_term(subst_type_in_term(t, atom("A"), "X"), parse_term("\\n: A. hyp n")));
  Term q = parse_term("/\\X. \\n: X. hyp n");
  CHECK(alpha_eq_term(subst_type_in_term(q, atom("A"), "X"), q));
  // capture: ΛY with A containing Y free forces a rename
  Term r = parse_term("/\\Y. \\n: X -> Y. hyp n");
  Term sub = subst_type_in_term(r, atom("Y"), "X");
  CHECK(alpha_eq_term(sub, parse_term("/\\Z. \\n: Y -> Z. hyp n")));
}

TEST_CASE("refresh binders keeps alpha class") {
  Term t = parse_term("\\n: P. (/\\X. \\m: X. hyp m) [Q] hyp n");
  Term r = refresh_binders(t);
  CHECK(alpha_eq_term(t, r));
  CHECK(print_term(t) != print_term(r));
}

TEST_CASE("node counts") {
  CHECK(node_count(parse_term("hyp n")) == 1);
  CHECK(node_count(parse_term("hyp f hyp x")) == 3);
}
