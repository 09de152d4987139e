#include "ni2/term.hpp"

#include <map>

namespace ni2 {

static Term mk(TNode n) { return std::make_shared<TNode>(std::move(n)); }

Term hyp(Label l) { return mk({TKind::Hyp, std::move(l), {}, {}, nullptr, nullptr, nullptr, nullptr, nullptr}); }

Term imp_i(Label l, Formula hyp_type, Term body) {
  return mk({TKind::ImpI, std::move(l), {}, {}, std::move(hyp_type), nullptr, std::move(body), nullptr, nullptr});
}

Term imp_e(Term fun, Term arg) {
  return mk({TKind::ImpE, {}, {}, {}, nullptr, nullptr, std::move(fun), std::move(arg), nullptr});
}

Term all_i(Var x, Term body) {
  return mk({TKind::AllI, {}, {}, std::move(x), nullptr, nullptr, std::move(body), nullptr, nullptr});
}

Term all_e(Term body, Formula at) {
  return mk({TKind::AllE, {}, {}, {}, std::move(at), nullptr, std::move(body), nullptr, nullptr});
}

Term or_i1(Formula right_type, Term body) {
  return mk({TKind::OrI1, {}, {}, {}, std::move(right_type), nullptr, std::move(body), nullptr, nullptr});
}

Term or_i2(Formula left_type, Term body) {
  return mk({TKind::OrI2, {}, {}, {}, std::move(left_type), nullptr, std::move(body), nullptr, nullptr});
}

Term or_e(Term scrut, Label l1, Formula t1, Term br1, Label l2, Formula t2, Term br2) {
  return mk({TKind::OrE, std::move(l1), std::move(l2), {}, std::move(t1), std::move(t2),
             std::move(scrut), std::move(br1), std::move(br2)});
}

std::size_t child_count(const Term& t) {
  switch (t->kind) {
    case TKind::Hyp: return 0;
    case TKind::ImpE: return 2;
    case TKind::OrE: return 3;
    default: return 1;
  }
}

Term child(const Term& t, std::size_t i) {
  switch (i) {
    case 0: return t->a;
    case 1: return t->b;
    default: return t->c;
  }
}

Term with_child(const Term& t, std::size_t i, Term repl) {
  TNode n = *t;
  if (i == 0) n.a = std::move(repl);
  else if (i == 1) n.b = std::move(repl);
  else n.c = std::move(repl);
  return mk(std::move(n));
}

std::size_t node_count(const Term& t) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < child_count(t); ++i) n += node_count(child(t, i));
  return n;
}

bool contains_or_node(const Term& t) {
  if (t->kind == TKind::OrI1 || t->kind == TKind::OrI2 || t->kind == TKind::OrE) return true;
  for (std::size_t i = 0; i < child_count(t); ++i)
    if (contains_or_node(child(t, i))) return true;
  return false;
}

static void free_labels_rec(const Term& t, std::set<Label>& bound, std::set<Label>& out) {
  switch (t->kind) {
    case TKind::Hyp:
      if (!bound.count(t->lab)) out.insert(t->lab);
      return;
    case TKind::ImpI: {
      bool fresh = bound.insert(t->lab).second;
      free_labels_rec(t->a, bound, out);
      if (fresh) bound.erase(t->lab);
      return;
    }
    case TKind::OrE: {
      free_labels_rec(t->a, bound, out);
      bool f1 = bound.insert(t->lab).second;
      free_labels_rec(t->b, bound, out);
      if (f1) bound.erase(t->lab);
      bool f2 = bound.insert(t->lab2).second;
      free_labels_rec(t->c, bound, out);
      if (f2) bound.erase(t->lab2);
      return;
    }
    default:
      for (std::size_t i = 0; i < child_count(t); ++i) free_labels_rec(child(t, i), bound, out);
      return;
  }
}

std::set<Label> free_labels(const Term& t) {
  std::set<Label> bound, out;
  free_labels_rec(t, bound, out);
  return out;
}

static void all_labels_rec(const Term& t, std::set<Label>& out) {
  if (t->kind == TKind::Hyp || t->kind == TKind::ImpI) out.insert(t->lab);
  if (t->kind == TKind::OrE) {
    out.insert(t->lab);
    out.insert(t->lab2);
  }
  for (std::size_t i = 0; i < child_count(t); ++i) all_labels_rec(child(t, i), out);
}

std::set<Label> all_labels(const Term& t) {
  std::set<Label> out;
  all_labels_rec(t, out);
  return out;
}

bool is_closed(const Term& t) { return free_labels(t).empty(); }

bool ends_with_intro(const Term& t) {
  switch (t->kind) {
    case TKind::ImpI:
    case TKind::AllI:
    case TKind::OrI1:
    case TKind::OrI2: return true;
    default: return false;
  }
}

static void ftv_rec(const Term& t, std::set<Var>& bound, std::set<Var>& out) {
  auto add_formula = [&](const Formula& f) {
    if (!f) return;
    for (const auto& v : free_vars(f))
      if (!bound.count(v)) out.insert(v);
  };
  add_formula(t->ann);
  add_formula(t->ann2);
  if (t->kind == TKind::AllI) {
    bool fresh = bound.insert(t->tvar).second;
    ftv_rec(t->a, bound, out);
    if (fresh) bound.erase(t->tvar);
    return;
  }
  for (std::size_t i = 0; i < child_count(t); ++i) ftv_rec(child(t, i), bound, out);
}

std::set<Var> free_type_vars(const Term& t) {
  std::set<Var> bound, out;
  ftv_rec(t, bound, out);
  return out;
}

static void atv_rec(const Term& t, std::set<Var>& out) {
  if (t->ann) {
    auto vs = all_vars(t->ann);
    out.insert(vs.begin(), vs.end());
  }
  if (t->ann2) {
    auto vs = all_vars(t->ann2);
    out.insert(vs.begin(), vs.end());
  }
  if (t->kind == TKind::AllI) out.insert(t->tvar);
  for (std::size_t i = 0; i < child_count(t); ++i) atv_rec(child(t, i), out);
}

std::set<Var> all_type_vars(const Term& t) {
  std::set<Var> out;
  atv_rec(t, out);
  return out;
}

namespace {

struct KeyCtx {
  std::map<Label, int> labels;
  std::map<Var, int> tyvars;
  int label_depth = 0;
  int tyvar_depth = 0;
};

void formula_key(const Formula& f, const KeyCtx& ctx, std::map<Var, int>& bound, int depth,
                 std::string& out) {
  switch (f->kind) {
    case FKind::Atom: {
      auto it = bound.find(f->name);
      if (it != bound.end()) {
        out += 'b';
        out += std::to_string(depth - 1 - it->second);
      } else {
        auto ot = ctx.tyvars.find(f->name);
        if (ot != ctx.tyvars.end()) {
          out += 't';
          out += std::to_string(ot->second);
        } else {
          out += 'a';
          out += f->name;
        }
      }
      out += ';';
      return;
    }
    case FKind::Imp:
    case FKind::Or:
      out += f->kind == FKind::Imp ? '>' : '|';
      formula_key(f->lhs, ctx, bound, depth, out);
      formula_key(f->rhs, ctx, bound, depth, out);
      return;
    case FKind::Forall: {
      out += '!';
      auto it = bound.find(f->name);
      int saved = it == bound.end() ? -1 : it->second;
      bound[f->name] = depth;
      formula_key(f->lhs, ctx, bound, depth + 1, out);
      if (saved < 0) bound.erase(f->name); else bound[f->name] = saved;
      return;
    }
  }
}

void fkey(const Formula& f, const KeyCtx& ctx, std::string& out) {
  std::map<Var, int> bound;
  formula_key(f, ctx, bound, 0, out);
}

void term_key(const Term& t, KeyCtx& ctx, std::string& out) {
  auto label_ref = [&](const Label& l) {
    auto it = ctx.labels.find(l);
    if (it != ctx.labels.end()) {
      out += 'l';
      out += std::to_string(it->second);
    } else {
      out += 'f';
      out += l;
    }
    out += ';';
  };
  switch (t->kind) {
    case TKind::Hyp:
      out += 'h';
      label_ref(t->lab);
      return;
    case TKind::ImpI: {
      out += 'L';
      fkey(t->ann, ctx, out);
      auto it = ctx.labels.find(t->lab);
      int saved = it == ctx.labels.end() ? -1 : it->second;
      ctx.labels[t->lab] = ctx.label_depth++;
      term_key(t->a, ctx, out);
      --ctx.label_depth;
      if (saved < 0) ctx.labels.erase(t->lab); else ctx.labels[t->lab] = saved;
      return;
    }
    case TKind::ImpE:
      out += '@';
      term_key(t->a, ctx, out);
      term_key(t->b, ctx, out);
      return;
    case TKind::AllI: {
      out += '^';
      auto it = ctx.tyvars.find(t->tvar);
      int saved = it == ctx.tyvars.end() ? -1 : it->second;
      ctx.tyvars[t->tvar] = ctx.tyvar_depth++;
      term_key(t->a, ctx, out);
      --ctx.tyvar_depth;
      if (saved < 0) ctx.tyvars.erase(t->tvar); else ctx.tyvars[t->tvar] = saved;
      return;
    }
    case TKind::AllE:
      out += '[';
      fkey(t->ann, ctx, out);
      term_key(t->a, ctx, out);
      return;
    case TKind::OrI1:
    case TKind::OrI2:
      out += t->kind == TKind::OrI1 ? '<' : '>';
      out += 'i';
      fkey(t->ann, ctx, out);
      term_key(t->a, ctx, out);
      return;
    case TKind::OrE: {
      out += 'C';
      fkey(t->ann, ctx, out);
      fkey(t->ann2, ctx, out);
      term_key(t->a, ctx, out);
      auto bind = [&](const Label& l, const Term& body) {
        auto it = ctx.labels.find(l);
        int saved = it == ctx.labels.end() ? -1 : it->second;
        ctx.labels[l] = ctx.label_depth++;
        term_key(body, ctx, out);
        --ctx.label_depth;
        if (saved < 0) ctx.labels.erase(l); else ctx.labels[l] = saved;
      };
      bind(t->lab, t->b);
      bind(t->lab2, t->c);
      return;
    }
  }
}

}  // namespace

std::string alpha_key_term(const Term& t) {
  KeyCtx ctx;
  std::string out;
  term_key(t, ctx, out);
  return out;
}

bool alpha_eq_term(const Term& s, const Term& t) {
  if (s == t) return true;
  return alpha_key_term(s) == alpha_key_term(t);
}

Term subst_type_in_term(const Term& t, const Formula& a, const Var& x) {
  auto sub = [&](const Formula& f) { return f ? subst_formula(f, a, x) : f; };
  switch (t->kind) {
    case TKind::Hyp: return t;
    case TKind::ImpI: return imp_i(t->lab, sub(t->ann), subst_type_in_term(t->a, a, x));
    case TKind::ImpE:
      return imp_e(subst_type_in_term(t->a, a, x), subst_type_in_term(t->b, a, x));
    case TKind::AllI: {
      if (t->tvar == x) return t;
      if (free_vars(a).count(t->tvar)) {
        NameGen gen;
        gen.reserve_all(free_vars(a));
        gen.reserve_all(all_type_vars(t));
        gen.reserve(x);
        Var y = gen.fresh(t->tvar);
        Term renamed = subst_type_in_term(t->a, atom(y), t->tvar);
        return all_i(y, subst_type_in_term(renamed, a, x));
      }
      return all_i(t->tvar, subst_type_in_term(t->a, a, x));
    }
    case TKind::AllE: return all_e(subst_type_in_term(t->a, a, x), sub(t->ann));
    case TKind::OrI1: return or_i1(sub(t->ann), subst_type_in_term(t->a, a, x));
    case TKind::OrI2: return or_i2(sub(t->ann), subst_type_in_term(t->a, a, x));
    case TKind::OrE:
      return or_e(subst_type_in_term(t->a, a, x), t->lab, sub(t->ann),
                  subst_type_in_term(t->b, a, x), t->lab2, sub(t->ann2),
                  subst_type_in_term(t->c, a, x));
  }
  throw Error("unreachable term kind");
}

namespace {

Term graft_rec(const Term& t, const Label& l, const Term& u, const std::set<Label>& u_free,
               GraftPolicy policy, NameGen& labels, NameGen& tyvars, bool& used) {
  switch (t->kind) {
    case TKind::Hyp:
      if (t->lab == l) {
        used = true;
        return refresh_binders(u, labels, tyvars);
      }
      return t;
    case TKind::ImpI: {
      if (t->lab == l) return t;  // shadowed below this binder
      if (u_free.count(t->lab)) {
        if (policy == GraftPolicy::Strict)
          throw LabelCapture("graft: binder '" + t->lab + "' would capture a free label");
        Label fresh = labels.fresh(t->lab);
        Term body = rename_free_label(t->a, t->lab, fresh);
        return imp_i(fresh, t->ann, graft_rec(body, l, u, u_free, policy, labels, tyvars, used));
      }
      return imp_i(t->lab, t->ann, graft_rec(t->a, l, u, u_free, policy, labels, tyvars, used));
    }
    case TKind::OrE: {
      Term scrut = graft_rec(t->a, l, u, u_free, policy, labels, tyvars, used);
      Label l1 = t->lab;
      Term b1 = t->b;
      if (l1 != l) {
        if (u_free.count(l1)) {
          if (policy == GraftPolicy::Strict)
            throw LabelCapture("graft: binder '" + l1 + "' would capture a free label");
          Label fresh = labels.fresh(l1);
          b1 = rename_free_label(b1, l1, fresh);
          l1 = fresh;
        }
        b1 = graft_rec(b1, l, u, u_free, policy, labels, tyvars, used);
      }
      Label l2 = t->lab2;
      Term b2 = t->c;
      if (l2 != l) {
        if (u_free.count(l2)) {
          if (policy == GraftPolicy::Strict)
            throw LabelCapture("graft: binder '" + l2 + "' would capture a free label");
          Label fresh = labels.fresh(l2);
          b2 = rename_free_label(b2, l2, fresh);
          l2 = fresh;
        }
        b2 = graft_rec(b2, l, u, u_free, policy, labels, tyvars, used);
      }
      return or_e(scrut, l1, t->ann, b1, l2, t->ann2, b2);
    }
    default: {
      TNode n = *t;
      if (child_count(t) >= 1) n.a = graft_rec(t->a, l, u, u_free, policy, labels, tyvars, used);
      if (child_count(t) >= 2) n.b = graft_rec(t->b, l, u, u_free, policy, labels, tyvars, used);
      return std::make_shared<TNode>(std::move(n));
    }
  }
}

}  // namespace

Term graft(const Term& t, const Label& l, const Term& u, GraftPolicy policy) {
  std::set<Label> u_free = free_labels(u);
  NameGen labels, tyvars;
  labels.reserve_all(all_labels(t));
  labels.reserve_all(all_labels(u));
  tyvars.reserve_all(all_type_vars(t));
  tyvars.reserve_all(all_type_vars(u));
  bool used = false;
  return graft_rec(t, l, u, u_free, policy, labels, tyvars, used);
}

Term rename_free_label(const Term& t, const Label& from, const Label& to) {
  switch (t->kind) {
    case TKind::Hyp: return t->lab == from ? hyp(to) : t;
    case TKind::ImpI:
      if (t->lab == from) return t;
      return imp_i(t->lab, t->ann, rename_free_label(t->a, from, to));
    case TKind::OrE: {
      Term scrut = rename_free_label(t->a, from, to);
      Term b1 = t->lab == from ? t->b : rename_free_label(t->b, from, to);
      Term b2 = t->lab2 == from ? t->c : rename_free_label(t->c, from, to);
      return or_e(scrut, t->lab, t->ann, b1, t->lab2, t->ann2, b2);
    }
    default: {
      TNode n = *t;
      if (child_count(t) >= 1) n.a = rename_free_label(t->a, from, to);
      if (child_count(t) >= 2) n.b = rename_free_label(t->b, from, to);
      return std::make_shared<TNode>(std::move(n));
    }
  }
}

Term refresh_binders(const Term& t, NameGen& labels, NameGen& tyvars) {
  switch (t->kind) {
    case TKind::Hyp: return t;
    case TKind::ImpI: {
      Label fresh = labels.fresh(t->lab);
      Term body = rename_free_label(t->a, t->lab, fresh);
      return imp_i(fresh, t->ann, refresh_binders(body, labels, tyvars));
    }
    case TKind::AllI: {
      Var fresh = tyvars.fresh(t->tvar);
      Term body = subst_type_in_term(t->a, atom(fresh), t->tvar);
      return all_i(fresh, refresh_binders(body, labels, tyvars));
    }
    case TKind::OrE: {
      Term scrut = refresh_binders(t->a, labels, tyvars);
      Label f1 = labels.fresh(t->lab);
      Term b1 = refresh_binders(rename_free_label(t->b, t->lab, f1), labels, tyvars);
      Label f2 = labels.fresh(t->lab2);
      Term b2 = refresh_binders(rename_free_label(t->c, t->lab2, f2), labels, tyvars);
      return or_e(scrut, f1, t->ann, b1, f2, t->ann2, b2);
    }
    default: {
      TNode n = *t;
      if (child_count(t) >= 1) n.a = refresh_binders(t->a, labels, tyvars);
      if (child_count(t) >= 2) n.b = refresh_binders(t->b, labels, tyvars);
      return std::make_shared<TNode>(std::move(n));
    }
  }
}

Term refresh_binders(const Term& t) {
  NameGen labels, tyvars;
  labels.reserve_all(all_labels(t));
  tyvars.reserve_all(all_type_vars(t));
  return refresh_binders(t, labels, tyvars);
}

// term := \ LABEL : formula . term | /\ IDENT . term | case ... | appchain
// appchain := primary (primary | "[" formula "]")*
static void print_term_rec(const Term& t, int level, std::string& out) {
  // level 0 = term, 1 = appchain head/operand, 2 = primary
  auto paren = [&](auto&& body) {
    out += '(';
    body();
    out += ')';
  };
  switch (t->kind) {
    case TKind::Hyp:
      out += "hyp " + t->lab;
      return;
    case TKind::ImpI:
      if (level > 0) { paren([&] { print_term_rec(t, 0, out); }); return; }
      out += "\\" + t->lab + ": " + print_formula(t->ann) + ". ";
      print_term_rec(t->a, 0, out);
      return;
    case TKind::AllI:
      if (level > 0) { paren([&] { print_term_rec(t, 0, out); }); return; }
      out += "/\\" + t->tvar + ". ";
      print_term_rec(t->a, 0, out);
      return;
    case TKind::ImpE:
      if (level > 1) { paren([&] { print_term_rec(t, 0, out); }); return; }
      print_term_rec(t->a, 1, out);
      out += ' ';
      print_term_rec(t->b, 2, out);
      return;
    case TKind::AllE:
      if (level > 1) { paren([&] { print_term_rec(t, 0, out); }); return; }
      print_term_rec(t->a, 1, out);
      out += " [" + print_formula(t->ann) + "]";
      return;
    case TKind::OrI1:
    case TKind::OrI2:
      if (level > 1) { paren([&] { print_term_rec(t, 0, out); }); return; }
      out += t->kind == TKind::OrI1 ? "inl [" : "inr [";
      out += print_formula(t->ann) + "] ";
      print_term_rec(t->a, 2, out);
      return;
    case TKind::OrE:
      if (level > 0) { paren([&] { print_term_rec(t, 0, out); }); return; }
      out += "case ";
      print_term_rec(t->a, 1, out);
      out += " of { " + t->lab + ": " + print_formula(t->ann) + " => ";
      print_term_rec(t->b, 0, out);
      out += " | " + t->lab2 + ": " + print_formula(t->ann2) + " => ";
      print_term_rec(t->c, 0, out);
      out += " }";
      return;
  }
}

std::string print_term(const Term& t) {
  std::string out;
  print_term_rec(t, 0, out);
  return out;
}

}  // namespace ni2
