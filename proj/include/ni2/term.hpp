#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ni2/formula.hpp"

namespace ni2 {

using Label = std::string;

struct TNode;
using Term = std::shared_ptr<const TNode>;

enum class TKind { Hyp, ImpI, ImpE, AllI, AllE, OrI1, OrI2, OrE };

// Curry-Howard derivation term. Children by index:
//   ImpI/AllI/AllE/OrI1/OrI2: 0 = a; ImpE: 0 = a (fun), 1 = b (arg);
//   OrE: 0 = a (scrutinee), 1 = b (branch 1), 2 = c (branch 2).
struct TNode {
  TKind kind;
  Label lab;     // Hyp: the label; ImpI: bound label; OrE: branch-1 label
  Label lab2;    // OrE: branch-2 label
  Var tvar;      // AllI: bound type variable
  Formula ann;   // ImpI: hyp type; AllE: instantiation; OrI1: right type;
                 // OrI2: left type; OrE: branch-1 hyp type
  Formula ann2;  // OrE: branch-2 hyp type
  Term a, b, c;
};

struct LabelCapture : Error {
  using Error::Error;
};

Term hyp(Label l);
Term imp_i(Label l, Formula hyp_type, Term body);
Term imp_e(Term fun, Term arg);
Term all_i(Var x, Term body);
Term all_e(Term body, Formula at);
Term or_i1(Formula right_type, Term body);
Term or_i2(Formula left_type, Term body);
Term or_e(Term scrut, Label l1, Formula t1, Term br1, Label l2, Formula t2, Term br2);

std::size_t node_count(const Term& t);
std::size_t child_count(const Term& t);
Term child(const Term& t, std::size_t i);
Term with_child(const Term& t, std::size_t i, Term repl);

bool contains_or_node(const Term& t);

std::set<Label> free_labels(const Term& t);
std::set<Label> all_labels(const Term& t);  // free and bound
bool is_closed(const Term& t);
bool ends_with_intro(const Term& t);

// Free type variables of a term's annotations (AllI binds within its body).
std::set<Var> free_type_vars(const Term& t);
std::set<Var> all_type_vars(const Term& t);

bool alpha_eq_term(const Term& s, const Term& t);
std::string alpha_key_term(const Term& t);

// t[a/x] on every annotation, capture-avoiding at the AllI level.
Term subst_type_in_term(const Term& t, const Formula& a, const Var& x);

enum class GraftPolicy { Strict, AvoidCapture };

// Replace every free occurrence of Hyp(l) in t by u. Bound labels of u are
// refreshed per occurrence. Strict throws LabelCapture when a binder of t
// would capture a free label of u; AvoidCapture renames the binder instead.
Term graft(const Term& t, const Label& l, const Term& u,
           GraftPolicy policy = GraftPolicy::Strict);

// Rename every bound label and bound type variable to a fresh name.
Term refresh_binders(const Term& t, NameGen& labels, NameGen& tyvars);
Term refresh_binders(const Term& t);

// Rename free label `from` to `to`.
Term rename_free_label(const Term& t, const Label& from, const Label& to);

std::string print_term(const Term& t);

}  // namespace ni2
