#include "ni2/translate.hpp"

#include <functional>

namespace ni2 {

namespace {

Formula rp_formula_rec(const Formula& f, NameGen& vars) {
  switch (f->kind) {
    case FKind::Atom: return f;
    case FKind::Imp: {
      Formula a = rp_formula_rec(f->lhs, vars);
      Formula b = rp_formula_rec(f->rhs, vars);
      return imp(a, b);
    }
    case FKind::Forall: return forall(f->name, rp_formula_rec(f->lhs, vars));
    case FKind::Or: {
      Formula a = rp_formula_rec(f->lhs, vars);
      Formula b = rp_formula_rec(f->rhs, vars);
      Var x = vars.fresh("X");
      Formula ax = atom(x);
      return forall(x, imp(imp(a, ax), imp(imp(b, ax), ax)));
    }
  }
  throw Error("unreachable formula kind");
}

// Scope over the source (untranslated) types, innermost binding last.
struct SrcScope {
  const Env* base;
  std::vector<std::pair<Label, Formula>> locals;

  Env as_env() const {
    std::vector<std::pair<Label, Formula>> flat;
    for (const auto& kv : base->items()) flat.push_back(kv);
    for (const auto& kv : locals) {
      bool replaced = false;
      for (auto& e : flat)
        if (e.first == kv.first) { e.second = kv.second; replaced = true; break; }
      if (!replaced) flat.push_back(kv);
    }
    Env env;
    for (auto& kv : flat) env.bind(kv.first, kv.second);
    return env;
  }
};

struct RpCtx {
  NameGen vars;
  NameGen labels;
  SrcScope scope;

  Formula type_of(const Term& t) { return conclusion_of(scope.as_env(), t, Fragment::NI2or); }
};

Term rp_term(const Term& t, RpCtx& cx) {
  auto rp_ann = [&](const Formula& f) { return rp_formula_rec(f, cx.vars); };
  switch (t->kind) {
    case TKind::Hyp: return t;
    case TKind::ImpI: {
      Formula ann = rp_ann(t->ann);
      cx.scope.locals.emplace_back(t->lab, t->ann);
      Term body = rp_term(t->a, cx);
      cx.scope.locals.pop_back();
      return imp_i(t->lab, ann, body);
    }
    case TKind::ImpE: return imp_e(rp_term(t->a, cx), rp_term(t->b, cx));
    case TKind::AllI: return all_i(t->tvar, rp_term(t->a, cx));
    case TKind::AllE: return all_e(rp_term(t->a, cx), rp_ann(t->ann));
    case TKind::OrI1:
    case TKind::OrI2: {
      bool left = t->kind == TKind::OrI1;
      Formula body_ty = cx.type_of(t->a);
      Term body = rp_term(t->a, cx);
      Formula astar = left ? rp_ann(body_ty) : rp_ann(t->ann);
      Formula bstar = left ? rp_ann(t->ann) : rp_ann(body_ty);
      Var x = cx.vars.fresh("X");
      Formula ax = atom(x);
      Label n = cx.labels.fresh("n");
      Label m = cx.labels.fresh("n");
      if (left) {
        // ΛX. λn:A*⊃X. λm:B*⊃X. n body
        return all_i(x, imp_i(n, imp(astar, ax), imp_i(m, imp(bstar, ax), imp_e(hyp(n), body))));
      }
      return all_i(x, imp_i(m, imp(astar, ax), imp_i(n, imp(bstar, ax), imp_e(hyp(n), body))));
    }
    case TKind::OrE: {
      cx.scope.locals.emplace_back(t->lab, t->ann);
      Formula c_ty = cx.type_of(t->b);
      cx.scope.locals.pop_back();
      Formula cstar = rp_ann(c_ty);
      Term scrut = rp_term(t->a, cx);
      Formula a1 = rp_ann(t->ann);
      Formula a2 = rp_ann(t->ann2);
      cx.scope.locals.emplace_back(t->lab, t->ann);
      Term b1 = rp_term(t->b, cx);
      cx.scope.locals.pop_back();
      cx.scope.locals.emplace_back(t->lab2, t->ann2);
      Term b2 = rp_term(t->c, cx);
      cx.scope.locals.pop_back();
      return imp_e(imp_e(all_e(scrut, cstar), imp_i(t->lab, a1, b1)), imp_i(t->lab2, a2, b2));
    }
  }
  throw Error("unreachable term kind");
}

}  // namespace

Formula rp_formula(const Formula& f) {
  NameGen vars;
  vars.reserve_all(all_vars(f));
  return rp_formula_rec(f, vars);
}

Env rp_env(const Env& env) {
  Env out;
  for (const auto& kv : env.items()) out.bind(kv.first, rp_formula(kv.second));
  return out;
}

Term rp_derivation(const Env& env, const Term& t) {
  RpCtx cx;
  cx.vars.reserve_all(all_type_vars(t));
  cx.labels.reserve_all(all_labels(t));
  for (const auto& kv : env.items()) {
    cx.labels.reserve(kv.first);
    cx.vars.reserve_all(all_vars(kv.second));
  }
  cx.scope.base = &env;
  return rp_term(t, cx);
}

Term rp_derivation(const Term& t) {
  Env empty;
  return rp_derivation(empty, t);
}

namespace {

Term c_expand_rec(const Formula& c, const Var& x, const Term& d, const Label& d_hyp,
                  const Label& source_hyp, NameGen& labels, NameGen& vars) {
  if (!free_vars(c).count(x)) return hyp(source_hyp);
  switch (c->kind) {
    case FKind::Atom:
      // c ≡ x
      return graft(d, d_hyp, hyp(source_hyp), GraftPolicy::AvoidCapture);
    case FKind::Forall: {
      // rename the binder eagerly so it is fresh for d and the instances
      Var y = vars.fresh(c->name);
      Formula body = subst_formula(c->lhs, atom(y), c->name);
      Label k = labels.fresh("c");
      Term rec = c_expand_rec(body, x, d, d_hyp, k, labels, vars);
      return all_i(y, graft(rec, k, all_e(hyp(source_hyp), atom(y)), GraftPolicy::AvoidCapture));
    }
    case FKind::Imp: {
      // x does not occur in the antecedent of an sp-x formula
      if (free_vars(c->lhs).count(x)) throw NotSpX("c_expand: formula is not sp-x");
      Label m = labels.fresh("m");
      Label k = labels.fresh("c");
      Term rec = c_expand_rec(c->rhs, x, d, d_hyp, k, labels, vars);
      return imp_i(m, c->lhs,
                   graft(rec, k, imp_e(hyp(source_hyp), hyp(m)), GraftPolicy::AvoidCapture));
    }
    case FKind::Or: throw NotSpX("c_expand: ∨ is outside the sp-x language");
  }
  throw Error("unreachable formula kind");
}

}  // namespace

Term c_expand(const Formula& c, const Var& x, const Term& d, const Label& d_hyp,
              const Label& source_hyp) {
  if (!is_sp_x(c, x)) throw NotSpX("c_expand: formula is not sp-x");
  NameGen labels, vars;
  labels.reserve_all(all_labels(d));
  labels.reserve(d_hyp);
  labels.reserve(source_hyp);
  vars.reserve_all(all_type_vars(d));
  vars.reserve_all(all_vars(c));
  vars.reserve(x);
  return c_expand_rec(c, x, d, d_hyp, source_hyp, labels, vars);
}

EtaSpines eta_spines(const Formula& c, const Var& x) {
  if (!is_sp_x(c, x)) throw NotSpX("eta_spines: formula is not sp-x");
  EtaSpines out;
  out.x = x;
  // freshen the spine binders so the elimination half can instantiate at them
  NameGen vars, labels;
  vars.reserve_all(all_vars(c));
  vars.reserve(x);
  SpSpine raw = decompose_sp(c, x);
  Formula renamed = c;
  // rebuild with fresh, pairwise-distinct binders
  SpSpine s;
  s.tail = raw.tail;
  {
    Formula cur = c;
    std::vector<Var> prefix;
    for (;;) {
      if (is_forall(cur)) {
        Var y = vars.fresh(cur->name);
        prefix.push_back(y);
        cur = subst_formula(cur->lhs, atom(y), cur->name);
      } else if (is_imp(cur)) {
        s.blocks.push_back({prefix, cur->lhs});
        prefix.clear();
        cur = cur->rhs;
      } else {
        s.tail_quants = prefix;
        s.tail = cur->name;
        break;
      }
    }
  }
  for (const auto& b : s.blocks) out.hyp_labels.emplace_back(labels.fresh("m"), b.antecedent);
  out.spine = s;
  (void)renamed;
  return out;
}

Term apply_elim_half(const EtaSpines& sp, Term t) {
  for (std::size_t i = 0; i < sp.spine.blocks.size(); ++i) {
    for (const auto& q : sp.spine.blocks[i].quants) t = all_e(t, atom(q));
    t = imp_e(t, hyp(sp.hyp_labels[i].first));
  }
  for (const auto& q : sp.spine.tail_quants) t = all_e(t, atom(q));
  return t;
}

Term apply_intro_half(const EtaSpines& sp, Term t) {
  for (auto it = sp.spine.tail_quants.rbegin(); it != sp.spine.tail_quants.rend(); ++it)
    t = all_i(*it, t);
  for (std::size_t i = sp.spine.blocks.size(); i-- > 0;) {
    t = imp_i(sp.hyp_labels[i].first, sp.spine.blocks[i].antecedent, t);
    const auto& qs = sp.spine.blocks[i].quants;
    for (auto it = qs.rbegin(); it != qs.rend(); ++it) t = all_i(*it, t);
  }
  return t;
}

namespace {

// ---- instantiation overflow, case-by-case form -----------------------------

struct OverflowCtx {
  SrcScope scope;
  NameGen labels;
  NameGen vars;
};

bool is_sum_encoding(const Formula& f) {
  // ∀X((A⊃X)⊃(B⊃X)⊃X), with X not free in A, B
  if (!is_forall(f)) return false;
  const Var& x = f->name;
  Formula body = f->lhs;
  if (!is_imp(body) || !is_imp(body->rhs)) return false;
  Formula p = body->lhs, q = body->rhs->lhs, tail = body->rhs->rhs;
  if (!is_atom(tail) || tail->name != x) return false;
  if (!is_imp(p) || !is_atom(p->rhs) || p->rhs->name != x) return false;
  if (!is_imp(q) || !is_atom(q->rhs) || q->rhs->name != x) return false;
  return !free_vars(p->lhs).count(x) && !free_vars(q->lhs).count(x);
}

bool is_bottom_encoding(const Formula& f) {
  return is_forall(f) && is_atom(f->lhs) && f->lhs->name == f->name;
}

Term ff_rec(const Term& t, OverflowCtx& cx);

Term ff_all_e(const Term& d1, Formula premise, const Formula& inst, OverflowCtx& cx) {
  if (is_atom(inst)) return all_e(ff_rec(d1, cx), inst);
  if (is_bottom_encoding(premise)) {
    if (is_forall(inst)) {
      Var y = cx.vars.fresh(inst->name);
      Formula body = subst_formula(inst->lhs, atom(y), inst->name);
      return all_i(y, ff_all_e(d1, premise, body, cx));
    }
    // inst ≡ C⊃D
    Label m = cx.labels.fresh("m");
    return imp_i(m, inst->lhs, ff_all_e(d1, premise, inst->rhs, cx));
  }
  if (!is_sum_encoding(premise)) throw NotRpImage("ff_overflow: ∀E premise is not a sum or bottom encoding");
  Formula a = premise->lhs->lhs->lhs;         // A
  Formula b = premise->lhs->rhs->lhs->lhs;    // B
  if (is_forall(inst)) {
    Var y = cx.vars.fresh(inst->name);
    Formula dsub = subst_formula(inst->lhs, atom(y), inst->name);
    Term rec = ff_all_e(d1, premise, dsub, cx);
    Label k1 = cx.labels.fresh("k");
    Label k2 = cx.labels.fresh("k");
    Label o1 = cx.labels.fresh("o");
    Label o2 = cx.labels.fresh("o");
    Formula fyd = forall(y, dsub);
    Term minor1 = imp_i(o1, a, all_e(imp_e(hyp(k1), hyp(o1)), atom(y)));
    Term minor2 = imp_i(o2, b, all_e(imp_e(hyp(k2), hyp(o2)), atom(y)));
    Term core = imp_e(imp_e(rec, minor1), minor2);
    return imp_i(k1, imp(a, fyd), imp_i(k2, imp(b, fyd), all_i(y, core)));
  }
  // inst ≡ C⊃D
  Formula cf = inst->lhs, df = inst->rhs;
  Term rec = ff_all_e(d1, premise, df, cx);
  Label k1 = cx.labels.fresh("k");
  Label k2 = cx.labels.fresh("k");
  Label o1 = cx.labels.fresh("o");
  Label o2 = cx.labels.fresh("o");
  Label m = cx.labels.fresh("m");
  Term minor1 = imp_i(o1, a, imp_e(imp_e(hyp(k1), hyp(o1)), hyp(m)));
  Term minor2 = imp_i(o2, b, imp_e(imp_e(hyp(k2), hyp(o2)), hyp(m)));
  Term core = imp_e(imp_e(rec, minor1), minor2);
  return imp_i(k1, imp(a, inst), imp_i(k2, imp(b, inst), imp_i(m, cf, core)));
}

Term ff_rec(const Term& t, OverflowCtx& cx) {
  switch (t->kind) {
    case TKind::Hyp: return t;
    case TKind::AllE: {
      Formula premise = conclusion_of(cx.scope.as_env(), t->a, Fragment::NI2or);
      return ff_all_e(t->a, premise, t->ann, cx);
    }
    case TKind::ImpI: {
      cx.scope.locals.emplace_back(t->lab, t->ann);
      Term body = ff_rec(t->a, cx);
      cx.scope.locals.pop_back();
      return imp_i(t->lab, t->ann, body);
    }
    case TKind::ImpE: return imp_e(ff_rec(t->a, cx), ff_rec(t->b, cx));
    case TKind::AllI: return all_i(t->tvar, ff_rec(t->a, cx));
    default: throw NotRpImage("ff_overflow: ∨-rule in input");
  }
}

// ---- generalized instantiation overflow ------------------------------------

struct GenCtx {
  SrcScope scope;
  NameGen labels;
  NameGen vars;
};

// freshen all spine binders of f, returning the renamed spine
SpSpine freshen_spine(const Formula& f, NameGen& vars) {
  SpSpine s;
  Formula cur = f;
  std::vector<Var> prefix;
  for (;;) {
    if (is_forall(cur)) {
      Var y = vars.fresh(cur->name);
      prefix.push_back(y);
      cur = subst_formula(cur->lhs, atom(y), cur->name);
    } else if (is_imp(cur)) {
      s.blocks.push_back({prefix, cur->lhs});
      prefix.clear();
      cur = cur->rhs;
    } else if (is_atom(cur)) {
      s.tail_quants = prefix;
      s.tail = cur->name;
      break;
    } else {
      throw NotL2("gen_overflow: ∨ in instantiation formula");
    }
  }
  return s;
}

Term gen_rec(const Term& t, GenCtx& cx);

Term gen_all_e(const Term& d1, const Formula& premise, const Formula& inst, GenCtx& cx,
               const Position& pos) {
  if (is_atom(inst)) return all_e(gen_rec(d1, cx), inst);
  if (!is_quasi_sp_x(premise, premise->name))
    throw PreconditionViolation("gen_overflow: ∀E premise " + print_formula(premise) +
                                " is not quasi sp-X [at " + position_str(pos) + "]");
  const Var x = premise->name;

  // G : target instantiation formula, spine fully freshened
  SpSpine g = freshen_spine(inst, cx.vars);
  Formula g_renamed = reassemble_sp(g);
  Var z = g.tail;

  // elimination skeleton d_G : Z from g0 : G plus the minor hypotheses gj
  Label g0 = cx.labels.fresh("w");
  std::vector<Label> g_hyps;
  Term dg = hyp(g0);
  for (const auto& blk : g.blocks) {
    for (const auto& q : blk.quants) dg = all_e(dg, atom(q));
    Label gj = cx.labels.fresh("g");
    g_hyps.push_back(gj);
    dg = imp_e(dg, hyp(gj));
  }
  for (const auto& q : g.tail_quants) dg = all_e(dg, atom(q));

  // F spine, freshened
  SpSpine fsp = freshen_spine(premise->lhs, cx.vars);

  // head: recurse, instantiate at the tail atom of G
  Term cur = all_e(gen_rec(d1, cx), atom(z));
  std::vector<Label> k_labels;
  std::vector<Formula> k_types;
  for (const auto& blk : fsp.blocks) {
    for (const auto& q : blk.quants) cur = all_e(cur, atom(q));
    Label k = cx.labels.fresh("k");
    k_labels.push_back(k);
    k_types.push_back(subst_formula(blk.antecedent, g_renamed, x));
    Term minor = c_expand(blk.antecedent, x, dg, g0, k);
    cur = imp_e(cur, minor);
  }
  // conclusion is the tail atom z; rebuild G with the intro half
  for (auto it = g.tail_quants.rbegin(); it != g.tail_quants.rend(); ++it) cur = all_i(*it, cur);
  for (std::size_t j = g.blocks.size(); j-- > 0;) {
    cur = imp_i(g_hyps[j], g.blocks[j].antecedent, cur);
    const auto& qs = g.blocks[j].quants;
    for (auto it = qs.rbegin(); it != qs.rend(); ++it) cur = all_i(*it, cur);
  }
  // now rebuild F[G/X] with the k-discharges
  for (std::size_t i = fsp.blocks.size(); i-- > 0;) {
    cur = imp_i(k_labels[i], k_types[i], cur);
    const auto& qs = fsp.blocks[i].quants;
    for (auto it = qs.rbegin(); it != qs.rend(); ++it) cur = all_i(*it, cur);
  }
  return cur;
}

Term gen_rec(const Term& t, GenCtx& cx) {
  switch (t->kind) {
    case TKind::Hyp: return t;
    case TKind::AllE: {
      Formula premise = conclusion_of(cx.scope.as_env(), t->a, Fragment::NI2);
      if (!is_forall(premise)) throw Error("gen_overflow: ∀E premise is not quantified");
      return gen_all_e(t->a, premise, t->ann, cx, {});
    }
    case TKind::ImpI: {
      cx.scope.locals.emplace_back(t->lab, t->ann);
      Term body = gen_rec(t->a, cx);
      cx.scope.locals.pop_back();
      return imp_i(t->lab, t->ann, body);
    }
    case TKind::ImpE: return imp_e(gen_rec(t->a, cx), gen_rec(t->b, cx));
    case TKind::AllI: return all_i(t->tvar, gen_rec(t->a, cx));
    default: throw PreconditionViolation("gen_overflow: ∨-rule in input");
  }
}

}  // namespace

Term ff_overflow(const Env& env, const Term& t) {
  OverflowCtx cx;
  cx.scope.base = &env;
  cx.labels.reserve_all(all_labels(t));
  cx.vars.reserve_all(all_type_vars(t));
  for (const auto& kv : env.items()) {
    cx.labels.reserve(kv.first);
    cx.vars.reserve_all(all_vars(kv.second));
  }
  return ff_rec(t, cx);
}

Term ff_overflow(const Term& t) {
  Env empty;
  return ff_overflow(empty, t);
}

Term gen_overflow(const Env& env, const Term& t, const Var& x) {
  if (!is_x_safe(t, x))
    throw PreconditionViolation("gen_overflow: input is not " + x + "-safe");
  GenCtx cx;
  cx.scope.base = &env;
  cx.labels.reserve_all(all_labels(t));
  cx.vars.reserve_all(all_type_vars(t));
  cx.vars.reserve(x);
  for (const auto& kv : env.items()) {
    cx.labels.reserve(kv.first);
    cx.vars.reserve_all(all_vars(kv.second));
  }
  return gen_rec(t, cx);
}

}  // namespace ni2
