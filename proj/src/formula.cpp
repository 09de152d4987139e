#include "ni2/formula.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace ni2 {

Formula atom(Var v) { return std::make_shared<FNode>(FNode{FKind::Atom, std::move(v), nullptr, nullptr}); }

Formula imp(Formula a, Formula b) {
  return std::make_shared<FNode>(FNode{FKind::Imp, {}, std::move(a), std::move(b)});
}

Formula forall(Var x, Formula body) {
  return std::make_shared<FNode>(FNode{FKind::Forall, std::move(x), std::move(body), nullptr});
}

Formula disj(Formula a, Formula b) {
  return std::make_shared<FNode>(FNode{FKind::Or, {}, std::move(a), std::move(b)});
}

bool contains_or(const Formula& f) {
  switch (f->kind) {
    case FKind::Atom: return false;
    case FKind::Or: return true;
    case FKind::Imp: return contains_or(f->lhs) || contains_or(f->rhs);
    case FKind::Forall: return contains_or(f->lhs);
  }
  return false;
}

static void free_vars_rec(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
  switch (f->kind) {
    case FKind::Atom:
      if (!bound.count(f->name)) out.insert(f->name);
      break;
    case FKind::Imp:
    case FKind::Or:
      free_vars_rec(f->lhs, bound, out);
      free_vars_rec(f->rhs, bound, out);
      break;
    case FKind::Forall: {
      bool fresh = bound.insert(f->name).second;
      free_vars_rec(f->lhs, bound, out);
      if (fresh) bound.erase(f->name);
      break;
    }
  }
}

std::set<Var> free_vars(const Formula& f) {
  std::set<Var> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

static void all_vars_rec(const Formula& f, std::set<Var>& out) {
  switch (f->kind) {
    case FKind::Atom: out.insert(f->name); break;
    case FKind::Imp:
    case FKind::Or:
      all_vars_rec(f->lhs, out);
      all_vars_rec(f->rhs, out);
      break;
    case FKind::Forall:
      out.insert(f->name);
      all_vars_rec(f->lhs, out);
      break;
  }
}

std::set<Var> all_vars(const Formula& f) {
  std::set<Var> out;
  all_vars_rec(f, out);
  return out;
}

std::string NameGen::fresh(const std::string& base) {
  std::string root = base;
  auto pos = root.rfind('#');
  if (pos != std::string::npos && pos + 1 < root.size() &&
      root.find_first_not_of("0123456789", pos + 1) == std::string::npos) {
    root = root.substr(0, pos);
  }
  if (root.empty()) root = "v";
  for (int k = 1;; ++k) {
    std::string cand = root + "#" + std::to_string(k);
    if (used_.insert(cand).second) return cand;
  }
}

Formula subst_formula(const Formula& f, const Formula& a, const Var& x) {
  switch (f->kind) {
    case FKind::Atom: return f->name == x ? a : f;
    case FKind::Imp: return imp(subst_formula(f->lhs, a, x), subst_formula(f->rhs, a, x));
    case FKind::Or: return disj(subst_formula(f->lhs, a, x), subst_formula(f->rhs, a, x));
    case FKind::Forall: {
      if (f->name == x) return f;
      std::set<Var> fv_body = free_vars(f->lhs);
      if (!fv_body.count(x)) return f;  // no free occurrence below; avoid useless renames
      std::set<Var> fv_a = free_vars(a);
      if (fv_a.count(f->name)) {
        NameGen gen;
        gen.reserve_all(fv_a);
        gen.reserve_all(all_vars(f->lhs));
        gen.reserve(x);
        Var y = gen.fresh(f->name);
        Formula renamed = subst_formula(f->lhs, atom(y), f->name);
        return forall(y, subst_formula(renamed, a, x));
      }
      return forall(f->name, subst_formula(f->lhs, a, x));
    }
  }
  throw Error("unreachable formula kind");
}

static bool alpha_eq_rec(const Formula& f, const Formula& g, std::map<Var, int>& bf,
                         std::map<Var, int>& bg, int depth) {
  if (f->kind != g->kind) return false;
  switch (f->kind) {
    case FKind::Atom: {
      auto itf = bf.find(f->name);
      auto itg = bg.find(g->name);
      if (itf == bf.end() && itg == bg.end()) return f->name == g->name;
      if (itf == bf.end() || itg == bg.end()) return false;
      return itf->second == itg->second;
    }
    case FKind::Imp:
    case FKind::Or:
      return alpha_eq_rec(f->lhs, g->lhs, bf, bg, depth) &&
             alpha_eq_rec(f->rhs, g->rhs, bf, bg, depth);
    case FKind::Forall: {
      auto of = bf.find(f->name);
      auto og = bg.find(g->name);
      int sf = of == bf.end() ? -1 : of->second;
      int sg = og == bg.end() ? -1 : og->second;
      bf[f->name] = depth;
      bg[g->name] = depth;
      bool ok = alpha_eq_rec(f->lhs, g->lhs, bf, bg, depth + 1);
      if (sf < 0) bf.erase(f->name); else bf[f->name] = sf;
      if (sg < 0) bg.erase(g->name); else bg[g->name] = sg;
      return ok;
    }
  }
  return false;
}

bool alpha_eq(const Formula& f, const Formula& g) {
  if (f == g) return true;
  std::map<Var, int> bf, bg;
  return alpha_eq_rec(f, g, bf, bg, 0);
}

static void alpha_key_rec(const Formula& f, std::map<Var, int>& bound, int depth,
                          std::string& out) {
  switch (f->kind) {
    case FKind::Atom: {
      auto it = bound.find(f->name);
      if (it == bound.end()) {
        out += 'a';
        out += f->name;
      } else {
        out += 'b';
        out += std::to_string(depth - 1 - it->second);
      }
      out += ';';
      break;
    }
    case FKind::Imp:
    case FKind::Or:
      out += f->kind == FKind::Imp ? '>' : '|';
      alpha_key_rec(f->lhs, bound, depth, out);
      alpha_key_rec(f->rhs, bound, depth, out);
      break;
    case FKind::Forall: {
      out += '!';
      auto it = bound.find(f->name);
      int saved = it == bound.end() ? -1 : it->second;
      bound[f->name] = depth;
      alpha_key_rec(f->lhs, bound, depth + 1, out);
      if (saved < 0) bound.erase(f->name); else bound[f->name] = saved;
      break;
    }
  }
}

std::string alpha_key(const Formula& f) {
  std::string out;
  std::map<Var, int> bound;
  alpha_key_rec(f, bound, 0, out);
  return out;
}

static void subformulas_rec(const Formula& f, std::unordered_set<std::string>& seen,
                            std::vector<Formula>& out) {
  if (!seen.insert(alpha_key(f)).second) return;
  out.push_back(f);
  switch (f->kind) {
    case FKind::Atom: break;
    case FKind::Imp:
      subformulas_rec(f->lhs, seen, out);
      subformulas_rec(f->rhs, seen, out);
      break;
    case FKind::Forall: subformulas_rec(f->lhs, seen, out); break;
    case FKind::Or: throw NotL2("subformulas: ∨ is outside the measured language");
  }
}

std::vector<Formula> subformulas(const Formula& f) {
  if (contains_or(f)) throw NotL2("subformulas: ∨ is outside the measured language");
  std::unordered_set<std::string> seen;
  std::vector<Formula> out;
  subformulas_rec(f, seen, out);
  return out;
}

bool is_sp_x(const Formula& f, const Var& x) {
  switch (f->kind) {
    case FKind::Atom: return true;
    case FKind::Imp: return !free_vars(f->lhs).count(x) && is_sp_x(f->rhs, x);
    case FKind::Forall: {
      if (f->name == x) return false;
      return is_sp_x(f->lhs, x);
    }
    case FKind::Or: return false;
  }
  return false;
}

SpSpine decompose_sp(const Formula& f, const Var& x) {
  SpSpine s;
  Formula cur = f;
  std::vector<Var> prefix;
  for (;;) {
    if (is_forall(cur)) {
      if (cur->name == x) throw NotSpX("decompose_sp: quantifier binds the distinguished variable");
      prefix.push_back(cur->name);
      cur = cur->lhs;
    } else if (is_imp(cur)) {
      s.blocks.push_back({prefix, cur->lhs});
      prefix.clear();
      cur = cur->rhs;
    } else if (is_atom(cur)) {
      s.tail_quants = prefix;
      s.tail = cur->name;
      break;
    } else {
      throw NotSpX("decompose_sp: ∨ inside spine");
    }
  }
  // validate: sp-X spine, or the body of a quasi sp-X formula
  bool plain_sp = is_sp_x(f, x);
  if (!plain_sp) {
    bool quasi_body = s.tail == x && s.tail_quants.empty();
    if (quasi_body) {
      for (const auto& b : s.blocks) {
        if (!is_sp_x(b.antecedent, x)) { quasi_body = false; break; }
        for (const auto& q : b.quants)
          if (q == x) { quasi_body = false; break; }
      }
    }
    if (!quasi_body) throw NotSpX("decompose_sp: not sp-X and not a quasi sp-X body");
  }
  return s;
}

Formula reassemble_sp(const SpSpine& s) {
  Formula cur = atom(s.tail);
  for (auto it = s.tail_quants.rbegin(); it != s.tail_quants.rend(); ++it) cur = forall(*it, cur);
  for (auto bit = s.blocks.rbegin(); bit != s.blocks.rend(); ++bit) {
    cur = imp(bit->antecedent, cur);
    for (auto qit = bit->quants.rbegin(); qit != bit->quants.rend(); ++qit) cur = forall(*qit, cur);
  }
  return cur;
}

bool is_quasi_sp_x(const Formula& f, const Var& x) {
  if (!is_forall(f) || f->name != x) return false;
  SpSpine s;
  try {
    s = decompose_sp(f->lhs, x);
  } catch (const NotSpX&) {
    return false;
  }
  if (s.tail != x || !s.tail_quants.empty()) return false;
  for (const auto& b : s.blocks) {
    for (const auto& q : b.quants)
      if (q == x) return false;
    if (!is_sp_x(b.antecedent, x)) return false;
  }
  return true;
}

std::uint64_t measure_size(const Formula& f) {
  switch (f->kind) {
    case FKind::Atom: return 0;
    case FKind::Imp: return measure_size(f->lhs) + measure_size(f->rhs);
    case FKind::Forall: return measure_size(f->lhs) + 1;
    case FKind::Or: throw NotL2("measure_size: ∨ is outside the measured language");
  }
  return 0;
}

// formula := forall | imp ; imp := or ("->" imp)? ; or := atom ("\/" atom)*
static void print_rec(const Formula& f, int level, std::string& out) {
  // level 0 = formula, 1 = imp operand (no top forall), 2 = or operand (atoms only)
  switch (f->kind) {
    case FKind::Atom: out += f->name; return;
    case FKind::Forall:
      if (level > 0) {
        out += '(';
        print_rec(f, 0, out);
        out += ')';
      } else {
        out += "forall " + f->name + ". ";
        print_rec(f->lhs, 0, out);
      }
      return;
    case FKind::Imp:
      if (level > 1) {
        out += '(';
        print_rec(f, 0, out);
        out += ')';
      } else {
        print_rec(f->lhs, 2, out);
        out += " -> ";
        print_rec(f->rhs, 1, out);
      }
      return;
    case FKind::Or:
      if (level > 2) {
        out += '(';
        print_rec(f, 0, out);
        out += ')';
      } else {
        // left-associated chain of atoms
        print_rec(f->lhs, f->lhs->kind == FKind::Or ? 2 : 3, out);
        out += " \\/ ";
        print_rec(f->rhs, 3, out);
      }
      return;
  }
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

}  // namespace ni2
