#include "ni2/typecheck.hpp"

#include <functional>
#include <limits>

namespace ni2 {

std::string position_str(const Position& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + "]";
}

Env::Env(std::initializer_list<std::pair<Label, Formula>> init) {
  for (auto& kv : init) bind(kv.first, kv.second);
}

void Env::bind(Label l, Formula f) {
  if (lookup(l)) throw Error("duplicate label in environment: " + l);
  items_.emplace_back(std::move(l), std::move(f));
}

const Formula* Env::lookup(const Label& l) const {
  for (auto it = items_.rbegin(); it != items_.rend(); ++it)
    if (it->first == l) return &it->second;
  return nullptr;
}

namespace {

// Scope with shadowing; the ambient Env is the outermost layer.
struct Scope {
  const Env* base;
  std::vector<std::pair<Label, Formula>> locals;

  const Formula* lookup(const Label& l) const {
    for (auto it = locals.rbegin(); it != locals.rend(); ++it)
      if (it->first == l) return &it->second;
    return base->lookup(l);
  }
};

struct Checker {
  Fragment fragment;
  const std::function<void(const Position&, const Term&, const Formula&, const Env&)>* visitor = nullptr;

  Formula check(const Term& t, Scope& scope, Position& pos) {
    Formula out = check_node(t, scope, pos);
    if (visitor) {
      // combined env view with innermost binding winning
      std::vector<std::pair<Label, Formula>> flat;
      for (const auto& kv : scope.base->items()) flat.push_back(kv);
      for (const auto& kv : scope.locals) {
        bool replaced = false;
        for (auto& existing : flat)
          if (existing.first == kv.first) { existing.second = kv.second; replaced = true; break; }
        if (!replaced) flat.push_back(kv);
      }
      Env combined;
      for (auto& kv : flat) combined.bind(kv.first, kv.second);
      (*visitor)(pos, t, out, combined);
    }
    return out;
  }

  Formula check_node(const Term& t, Scope& scope, Position& pos) {
    switch (t->kind) {
      case TKind::Hyp: {
        const Formula* f = scope.lookup(t->lab);
        if (!f) throw CheckError(CheckErrorKind::UnboundLabel, pos, "unbound label '" + t->lab + "'");
        return *f;
      }
      case TKind::ImpI: {
        scope.locals.emplace_back(t->lab, t->ann);
        pos.push_back(0);
        Formula body = check(t->a, scope, pos);
        pos.pop_back();
        scope.locals.pop_back();
        return imp(t->ann, body);
      }
      case TKind::ImpE: {
        pos.push_back(0);
        Formula f = check(t->a, scope, pos);
        pos.pop_back();
        pos.push_back(1);
        Formula a = check(t->b, scope, pos);
        pos.pop_back();
        if (!is_imp(f))
          throw CheckError(CheckErrorKind::TypeMismatch, pos,
                           "function of application has non-implication type " + print_formula(f));
        if (!alpha_eq(f->lhs, a))
          throw CheckError(CheckErrorKind::TypeMismatch, pos,
                           "argument type " + print_formula(a) + " does not match " +
                               print_formula(f->lhs));
        return f->rhs;
      }
      case TKind::AllI: {
        pos.push_back(0);
        Formula body = check(t->a, scope, pos);
        pos.pop_back();
        // eigenvariable: t->tvar must not occur free in any open assumption
        // used by the body
        for (const auto& l : free_labels(t->a)) {
          const Formula* f = scope.lookup(l);
          if (f && free_vars(*f).count(t->tvar))
            throw CheckError(CheckErrorKind::EigenvariableViolation, pos,
                             "variable " + t->tvar + " occurs free in assumption '" + l + "'");
        }
        return forall(t->tvar, body);
      }
      case TKind::AllE: {
        pos.push_back(0);
        Formula f = check(t->a, scope, pos);
        pos.pop_back();
        if (!is_forall(f))
          throw CheckError(CheckErrorKind::TypeMismatch, pos,
                           "∀-elimination on non-quantified type " + print_formula(f));
        if (fragment == Fragment::NI2at && !is_atom(t->ann))
          throw CheckError(CheckErrorKind::FragmentViolation, pos,
                           "NI2at requires atomic instantiation, got " + print_formula(t->ann));
        return subst_formula(f->lhs, t->ann, f->name);
      }
      case TKind::OrI1:
      case TKind::OrI2: {
        require_or_allowed(pos);
        pos.push_back(0);
        Formula body = check(t->a, scope, pos);
        pos.pop_back();
        return t->kind == TKind::OrI1 ? disj(body, t->ann) : disj(t->ann, body);
      }
      case TKind::OrE: {
        require_or_allowed(pos);
        pos.push_back(0);
        Formula s = check(t->a, scope, pos);
        pos.pop_back();
        if (!is_or(s))
          throw CheckError(CheckErrorKind::TypeMismatch, pos,
                           "case on non-disjunction type " + print_formula(s));
        if (!alpha_eq(s->lhs, t->ann))
          throw CheckError(CheckErrorKind::TypeMismatch, pos,
                           "branch-1 hypothesis type does not match scrutinee");
        if (!alpha_eq(s->rhs, t->ann2))
          throw CheckError(CheckErrorKind::TypeMismatch, pos,
                           "branch-2 hypothesis type does not match scrutinee");
        scope.locals.emplace_back(t->lab, t->ann);
        pos.push_back(1);
        Formula c1 = check(t->b, scope, pos);
        pos.pop_back();
        scope.locals.pop_back();
        scope.locals.emplace_back(t->lab2, t->ann2);
        pos.push_back(2);
        Formula c2 = check(t->c, scope, pos);
        pos.pop_back();
        scope.locals.pop_back();
        if (!alpha_eq(c1, c2))
          throw CheckError(CheckErrorKind::TypeMismatch, pos,
                           "case branches conclude different formulas");
        return c1;
      }
    }
    throw Error("unreachable term kind");
  }

  void require_or_allowed(const Position& pos) {
    if (fragment != Fragment::NI2or)
      throw CheckError(CheckErrorKind::FragmentViolation, pos,
                       "∨-rule outside the NI2or fragment");
  }
};

}  // namespace

Judgment typecheck(const Env& env, const Term& t, Fragment fragment) {
  Checker ck{fragment};
  Scope scope{&env, {}};
  Position pos;
  Formula c = ck.check(t, scope, pos);
  return Judgment{env, t, c};
}

Formula conclusion_of(const Env& env, const Term& t, Fragment fragment) {
  return typecheck(env, t, fragment).conclusion;
}

void visit_typed(const Env& env, const Term& t, Fragment fragment,
                 const std::function<void(const Position&, const Term&, const Formula&, const Env&)>& fn) {
  Checker ck{fragment, &fn};
  Scope scope{&env, {}};
  Position pos;
  ck.check(t, scope, pos);
}

SubtermInfo subterm_info(const Env& env, const Term& t, const Position& pos, Fragment fragment) {
  // walk down collecting binders, then typecheck the subterm in that scope
  Env scope;
  for (const auto& kv : env.items()) scope.bind(kv.first, kv.second);
  Term cur = t;
  auto rebind = [&](const Label& l, const Formula& f) {
    if (scope.lookup(l)) {
      Env replaced;
      for (const auto& kv : scope.items())
        replaced.bind(kv.first, kv.first == l ? f : kv.second);
      scope = replaced;
    } else {
      scope.bind(l, f);
    }
  };
  for (std::size_t i : pos) {
    if (i >= child_count(cur)) throw Error("subterm_info: invalid position");
    if (cur->kind == TKind::ImpI && i == 0) rebind(cur->lab, cur->ann);
    if (cur->kind == TKind::OrE && i == 1) rebind(cur->lab, cur->ann);
    if (cur->kind == TKind::OrE && i == 2) rebind(cur->lab2, cur->ann2);
    cur = child(cur, i);
  }
  return SubtermInfo{conclusion_of(scope, cur, fragment), scope};
}

bool is_x_safe(const Term& t, const Var& x) {
  if (t->kind == TKind::AllE && free_vars(t->ann).count(x)) return false;
  for (std::size_t i = 0; i < child_count(t); ++i)
    if (!is_x_safe(child(t, i), x)) return false;
  return true;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_pow2(std::uint64_t e) {
  if (e >= 63) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << e;
}

std::uint64_t height_rec(const Term& t, Scope& scope, Position& pos, Checker& ck) {
  switch (t->kind) {
    case TKind::Hyp: return 1;
    case TKind::ImpI: {
      scope.locals.emplace_back(t->lab, t->ann);
      std::uint64_t h = height_rec(t->a, scope, pos, ck);
      scope.locals.pop_back();
      return sat_add(h, 1);
    }
    case TKind::AllI:
    case TKind::AllE: return sat_add(height_rec(t->a, scope, pos, ck), 1);
    case TKind::ImpE: {
      Formula major = ck.check_node(t->a, scope, pos);
      std::uint64_t s = measure_size(major);
      std::uint64_t h1 = height_rec(t->a, scope, pos, ck);
      std::uint64_t h2 = height_rec(t->b, scope, pos, ck);
      return sat_add(sat_add(h1, h2), sat_add(sat_pow2(s), s));
    }
    default: throw NotL2("measure_height: ∨-rule outside the measured language");
  }
}

}  // namespace

std::uint64_t measure_height(const Env& env, const Term& t) {
  if (contains_or_node(t)) throw NotL2("measure_height: ∨-rule outside the measured language");
  Checker ck{Fragment::NI2};
  Scope scope{&env, {}};
  Position pos;
  return height_rec(t, scope, pos, ck);
}

}  // namespace ni2
