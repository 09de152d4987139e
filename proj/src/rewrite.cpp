#include "ni2/rewrite.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "json.hpp"

namespace ni2 {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::BetaImp: return "beta-imp";
    case Rule::BetaAll: return "beta-all";
    case Rule::BetaOr: return "beta-or";
    case Rule::Beta0: return "beta0";
    case Rule::EtaImpRed: return "eta-imp";
    case Rule::EtaAllRed: return "eta-all";
    case Rule::EtaOrRed: return "eta-or";
    case Rule::GammaOr: return "gamma-or";
    case Rule::GammaGOr: return "gamma-g-or";
    case Rule::Eps: return "eps";
  }
  return "?";
}

Term subterm_at(const Term& t, const Position& pos) {
  Term cur = t;
  for (std::size_t i : pos) {
    if (i >= child_count(cur)) throw Error("subterm_at: invalid position");
    cur = child(cur, i);
  }
  return cur;
}

Term replace_at(const Term& t, const Position& pos, const Term& repl) {
  if (pos.empty()) return repl;
  Position rest(pos.begin() + 1, pos.end());
  return with_child(t, pos.front(), replace_at(child(t, pos.front()), rest, repl));
}

// ---- contexts ----------------------------------------------------------------

bool Context::is_discriminator() const {
  for (const auto& f : frames)
    if (!std::holds_alternative<K4>(f)) return false;
  return true;
}

Term plug(const Context& c, Term t) {
  for (const auto& f : c.frames) {
    if (auto* k1 = std::get_if<K1App>(&f)) t = imp_e(t, k1->arg);
    else if (auto* ki = std::get_if<K1Inst>(&f)) t = all_e(t, ki->at);
    else if (auto* k2 = std::get_if<K2>(&f)) t = imp_e(k2->fun, t);
    else if (auto* k3 = std::get_if<K3Imp>(&f)) t = imp_i(k3->lab, k3->hyp_type, t);
    else if (auto* ka = std::get_if<K3All>(&f)) t = all_i(ka->var, t);
    else if (auto* k4 = std::get_if<K4>(&f)) t = imp_e(k4->fun, t);
  }
  return t;
}

Context compose_contexts(const Context& outer, const Context& inner) {
  if (!alpha_eq(inner.result_type, outer.hole_type))
    throw CheckError(CheckErrorKind::TypeMismatch, {},
                     "compose_contexts: hole/result types do not align");
  Context out;
  out.frames = inner.frames;
  out.frames.insert(out.frames.end(), outer.frames.begin(), outer.frames.end());
  out.hole_type = inner.hole_type;
  out.result_type = outer.result_type;
  return out;
}

Context lift_context(const Context& c, const Formula& f, const Var& x) {
  if (!is_sp_x(f, x)) throw NotSpX("lift_context: formula is not sp-x");
  Formula from = subst_formula(f, c.hole_type, x);
  Formula to = subst_formula(f, c.result_type, x);
  if (!free_vars(f).count(x)) {
    // identity action
    return Context{{}, from, to};
  }
  if (is_atom(f)) return Context{c.frames, from, to};  // f ≡ x

  // E-half around the hole, then c's frames, then the I-half.
  NameGen vars, labels;
  vars.reserve_all(all_vars(f));
  vars.reserve_all(free_vars(c.hole_type));
  vars.reserve_all(free_vars(c.result_type));
  vars.reserve(x);
  for (const auto& fr : c.frames) {
    if (auto* k3 = std::get_if<K3Imp>(&fr)) labels.reserve(k3->lab);
    if (auto* ka = std::get_if<K3All>(&fr)) vars.reserve(ka->var);
  }

  // freshened spine of f
  SpSpine s;
  {
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
      } else {
        s.tail_quants = prefix;
        s.tail = cur->name;
        break;
      }
    }
  }

  Context out;
  out.hole_type = from;
  out.result_type = to;
  std::vector<Label> minor_labels;
  for (const auto& blk : s.blocks) {
    for (const auto& q : blk.quants) out.frames.push_back(K1Inst{atom(q)});
    Label m = labels.fresh("m");
    minor_labels.push_back(m);
    out.frames.push_back(K1App{hyp(m)});
  }
  for (const auto& q : s.tail_quants) out.frames.push_back(K1Inst{atom(q)});
  out.frames.insert(out.frames.end(), c.frames.begin(), c.frames.end());
  for (std::size_t i = s.blocks.size(); i-- > 0;) {
    // antecedents of an sp-x formula are x-free, so [α] and [β] instances agree
    out.frames.push_back(K3Imp{minor_labels[i], s.blocks[i].antecedent});
    const auto& qs = s.blocks[i].quants;
    for (auto it = qs.rbegin(); it != qs.rend(); ++it) out.frames.push_back(K3All{*it});
  }
  if (!s.tail_quants.empty()) {
    // tail under residual quantifiers means x does not occur (tail ≠ x when
    // quantified past), handled by the identity case above; defensive:
    for (auto it = s.tail_quants.rbegin(); it != s.tail_quants.rend(); ++it)
      out.frames.push_back(K3All{*it});
  }
  return out;
}

// ---- typed position map -------------------------------------------------------

namespace {

struct TypedNodes {
  std::map<Position, Formula> type_at;
};

TypedNodes collect_types(const Env& env, const Term& t) {
  TypedNodes out;
  visit_typed(env, t, Fragment::NI2or,
              [&](const Position& pos, const Term&, const Formula& ty, const Env&) {
                out.type_at[pos] = ty;
              });
  return out;
}

// abstract every occurrence of `a` in `f` by atom(v); occurrences under a
// binder that captures a free variable of `a` are not occurrences
Formula abstract_occurrences(const Formula& f, const Formula& a, const Var& v,
                             const std::set<Var>& avia) {
  if (alpha_eq(f, a)) return atom(v);
  switch (f->kind) {
    case FKind::Atom: return f;
    case FKind::Imp:
      return imp(abstract_occurrences(f->lhs, a, v, avia),
                 abstract_occurrences(f->rhs, a, v, avia));
    case FKind::Or:
      return disj(abstract_occurrences(f->lhs, a, v, avia),
                  abstract_occurrences(f->rhs, a, v, avia));
    case FKind::Forall:
      if (avia.count(f->name)) return f;  // shadowed; no genuine occurrences below
      return forall(f->name, abstract_occurrences(f->lhs, a, v, avia));
  }
  return f;
}

bool contains_var(const Formula& f, const Var& v) { return free_vars(f).count(v) != 0; }

std::vector<Formula> spine_suffixes(const Formula& f) {
  std::vector<Formula> out;
  Formula cur = f;
  while (true) {
    out.push_back(cur);
    if (is_imp(cur)) cur = cur->rhs;
    else if (is_forall(cur)) cur = cur->lhs;
    else break;
  }
  return out;
}

// K4 test for an argument-position frame with function type fun_ty: the frame
// is a discriminator when its argument side and its result side share a spine
// suffix — the slot that a partially applied encoded case still threads from
// the remaining branches to its conclusion. Slot-independent so that wrapper
// frames freeze inner permutations regardless of which spine is permuted.
bool is_discriminator_frame(const Formula& fun_ty, const Formula& /*inst*/) {
  if (!is_imp(fun_ty)) return false;
  std::vector<Formula> left = spine_suffixes(fun_ty->lhs);
  std::vector<Formula> right = spine_suffixes(fun_ty->rhs);
  for (const auto& p : left)
    for (const auto& q : right)
      if (alpha_eq(p, q)) return true;
  return false;
}

struct SpineData {
  Position head_pos;
  Position end_pos;  // spine conclusion node
  Term head_body;    // the ∀ X F premise derivation
  Formula inst;      // A
  Term spine;        // schematic over `schematic`
  Var schematic;
  std::vector<std::pair<Label, Formula>> chosen;
  std::vector<Term> minors;
};

std::optional<SpineData> read_spine(const Term& t, const TypedNodes& types, const Position& pos,
                                    NameGen& tyvars, NameGen& labels) {
  Term head = subterm_at(t, pos);
  if (head->kind != TKind::AllE) return std::nullopt;
  Position premise_pos = pos;
  premise_pos.push_back(0);
  auto it = types.type_at.find(premise_pos);
  if (it == types.type_at.end()) return std::nullopt;
  Formula premise = it->second;
  if (!is_forall(premise) || !is_quasi_sp_x(premise, premise->name)) return std::nullopt;

  SpineData sd;
  sd.head_pos = pos;
  sd.head_body = head->a;
  sd.inst = head->ann;
  sd.schematic = tyvars.fresh("V");

  Formula pat = subst_formula(premise->lhs, atom(sd.schematic), premise->name);
  Term spine = all_e(head->a, atom(sd.schematic));
  Position cur = pos;

  SpSpine blocks;
  try {
    blocks = decompose_sp(premise->lhs, premise->name);
  } catch (const NotSpX&) {
    return std::nullopt;
  }
  if (blocks.blocks.empty()) return std::nullopt;  // empty chosen set is excluded
  if (!blocks.tail_quants.empty()) return std::nullopt;

  auto ascend = [&](TKind want) -> Term {
    if (cur.empty()) return nullptr;
    std::size_t idx = cur.back();
    Position pp = cur;
    pp.pop_back();
    Term pterm = subterm_at(t, pp);
    if (idx != 0 || pterm->kind != want) return nullptr;
    cur = pp;
    return pterm;
  };

  for (const auto& blk : blocks.blocks) {
    for (std::size_t qi = 0; qi < blk.quants.size(); ++qi) {
      Term pterm = ascend(TKind::AllE);
      if (!pterm || !is_forall(pat)) return std::nullopt;
      pat = subst_formula(pat->lhs, pterm->ann, pat->name);
      spine = all_e(spine, pterm->ann);
    }
    Term pterm = ascend(TKind::ImpE);
    if (!pterm || !is_imp(pat)) return std::nullopt;
    Formula pattern = pat->lhs;
    if (!is_sp_x(pattern, sd.schematic)) return std::nullopt;
    Label h = labels.fresh("h");
    sd.chosen.emplace_back(h, pattern);
    sd.minors.push_back(pterm->b);
    spine = imp_e(spine, hyp(h));
    pat = pat->rhs;
  }
  if (!is_atom(pat) || pat->name != sd.schematic) return std::nullopt;
  sd.end_pos = cur;
  sd.spine = spine;
  return sd;
}

std::vector<EpsilonSplit> detect_impl(const Env& env, const Term& t, bool discriminator_mode,
                                      bool include_walled = false) {
  TypedNodes types = collect_types(env, t);
  NameGen tyvars, labels;
  tyvars.reserve_all(all_type_vars(t));
  labels.reserve_all(all_labels(t));
  for (const auto& kv : env.items()) {
    labels.reserve(kv.first);
    tyvars.reserve_all(all_vars(kv.second));
  }

  std::vector<EpsilonSplit> out;
  for (const auto& [pos, ty] : types.type_at) {
    (void)ty;
    auto sd = read_spine(t, types, pos, tyvars, labels);
    if (!sd) continue;

    // collect the maximal legal context below the spine end; a frame may not
    // discharge anything free in the head or in a minor (the plugged
    // derivations must stay free for the chosen assumptions)
    std::set<Label> head_free = free_labels(sd->head_body);
    std::set<Var> head_ftv = free_type_vars(sd->head_body);
    for (const auto& m : sd->minors) {
      auto fl = free_labels(m);
      head_free.insert(fl.begin(), fl.end());
      auto fv = free_type_vars(m);
      head_ftv.insert(fv.begin(), fv.end());
    }
    std::vector<Frame> frames;
    bool seen_non_k4 = false;
    bool k4_wall = false;  // stopped against a discriminator above
    Position cur = sd->end_pos;
    while (!cur.empty()) {
      std::size_t idx = cur.back();
      Position pp = cur;
      pp.pop_back();
      Term parent = subterm_at(t, pp);
      bool stop = false;
      switch (parent->kind) {
        case TKind::ImpE: {
          if (idx == 0) {
            if (discriminator_mode) stop = true;
            else { frames.push_back(K1App{parent->b}); seen_non_k4 = true; }
          } else if (parent->a->kind == TKind::ImpI) {
            // the frame is half of a β-redex; contraction comes first
            stop = true;
          } else {
            Position fun_pos = pp;
            fun_pos.push_back(0);
            Formula fun_ty = types.type_at.at(fun_pos);
            if (is_discriminator_frame(fun_ty, sd->inst)) {
              if (seen_non_k4) { stop = true; k4_wall = true; }
              else frames.push_back(K4{parent->a});
            } else {
              if (discriminator_mode) stop = true;
              else { frames.push_back(K2{parent->a}); seen_non_k4 = true; }
            }
          }
          break;
        }
        case TKind::AllE:
          if (discriminator_mode) stop = true;
          else { frames.push_back(K1Inst{parent->ann}); seen_non_k4 = true; }
          break;
        case TKind::ImpI:
          if (discriminator_mode || head_free.count(parent->lab)) stop = true;
          else { frames.push_back(K3Imp{parent->lab, parent->ann}); seen_non_k4 = true; }
          break;
        case TKind::AllI: {
          bool bad = discriminator_mode || head_ftv.count(parent->tvar) ||
                     contains_var(sd->inst, parent->tvar);
          for (const auto& ch : sd->chosen)
            if (contains_var(ch.second, parent->tvar)) bad = true;
          if (bad) stop = true;
          else { frames.push_back(K3All{parent->tvar}); seen_non_k4 = true; }
          break;
        }
        default: stop = true; break;
      }
      if (stop) break;
      cur = pp;
    }

    if (frames.empty()) continue;
    // a permutation blocked by a discriminator above would only shuffle
    // material inside a frozen minor slot; those pairs belong to ~
    if (!discriminator_mode && k4_wall && !include_walled) continue;
    if (!discriminator_mode && !seen_non_k4) continue;  // pure discriminator chain
    if (discriminator_mode) {
      // keep only the K4 prefix
      std::vector<Frame> k4s;
      for (const auto& f : frames) {
        if (std::holds_alternative<K4>(f)) k4s.push_back(f);
        else break;
      }
      if (k4s.empty()) continue;
      frames = k4s;
    }

    Position anchor = sd->end_pos;
    anchor.resize(anchor.size() - frames.size());
    Formula to_ty = types.type_at.at(anchor);

    EpsilonSplit sp;
    sp.anchor = anchor;
    sp.head = sd->head_pos;
    sp.schematic = sd->schematic;
    sp.from = sd->inst;
    sp.to = to_ty;
    sp.spine = sd->spine;
    sp.chosen = sd->chosen;
    sp.minors = sd->minors;
    sp.context = Context{frames, sd->inst, to_ty};
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace

std::vector<EpsilonSplit> epsilon_detect(const Env& env, const Term& t) {
  return detect_impl(env, t, false);
}

std::vector<EpsilonSplit> discriminator_detect(const Env& env, const Term& t) {
  return detect_impl(env, t, true);
}

std::vector<EpsilonSplit> epsilon_detect_all(const Env& env, const Term& t) {
  return detect_impl(env, t, false, true);
}

namespace {

bool match_spine(const Term& pattern, const Term& subject,
                 const std::set<Label>& chosen_labels,
                 std::map<Label, Term>& bindings) {
  if (pattern->kind == TKind::Hyp && chosen_labels.count(pattern->lab)) {
    auto it = bindings.find(pattern->lab);
    if (it != bindings.end()) return alpha_eq_term(it->second, subject);
    bindings[pattern->lab] = subject;
    return true;
  }
  if (pattern->kind != subject->kind) return false;
  switch (pattern->kind) {
    case TKind::Hyp: return pattern->lab == subject->lab;
    case TKind::ImpI:
      if (pattern->lab != subject->lab || !alpha_eq(pattern->ann, subject->ann)) return false;
      return match_spine(pattern->a, subject->a, chosen_labels, bindings);
    case TKind::ImpE:
      return match_spine(pattern->a, subject->a, chosen_labels, bindings) &&
             match_spine(pattern->b, subject->b, chosen_labels, bindings);
    case TKind::AllI:
      if (pattern->tvar != subject->tvar) return false;
      return match_spine(pattern->a, subject->a, chosen_labels, bindings);
    case TKind::AllE:
      if (!alpha_eq(pattern->ann, subject->ann)) return false;
      return match_spine(pattern->a, subject->a, chosen_labels, bindings);
    case TKind::OrI1:
    case TKind::OrI2:
      if (!alpha_eq(pattern->ann, subject->ann)) return false;
      return match_spine(pattern->a, subject->a, chosen_labels, bindings);
    case TKind::OrE:
      if (pattern->lab != subject->lab || pattern->lab2 != subject->lab2 ||
          !alpha_eq(pattern->ann, subject->ann) || !alpha_eq(pattern->ann2, subject->ann2))
        return false;
      return match_spine(pattern->a, subject->a, chosen_labels, bindings) &&
             match_spine(pattern->b, subject->b, chosen_labels, bindings) &&
             match_spine(pattern->c, subject->c, chosen_labels, bindings);
  }
  return false;
}

}  // namespace

Term epsilon_step(const Env& env, const Term& t, const EpsilonSplit& s) {
  (void)env;
  Term node = subterm_at(t, s.anchor);
  // peel context frames, outermost first
  Term core = node;
  for (std::size_t i = s.context.frames.size(); i-- > 0;) {
    const Frame& fr = s.context.frames[i];
    if (auto* k1 = std::get_if<K1App>(&fr)) {
      if (core->kind != TKind::ImpE || !alpha_eq_term(core->b, k1->arg))
        throw IllegalSplit("epsilon_step: context frame mismatch (K1App)");
      core = core->a;
    } else if (auto* ki = std::get_if<K1Inst>(&fr)) {
      if (core->kind != TKind::AllE || !alpha_eq(core->ann, ki->at))
        throw IllegalSplit("epsilon_step: context frame mismatch (K1Inst)");
      core = core->a;
    } else if (auto* k2 = std::get_if<K2>(&fr)) {
      if (core->kind != TKind::ImpE || !alpha_eq_term(core->a, k2->fun))
        throw IllegalSplit("epsilon_step: context frame mismatch (K2)");
      core = core->b;
    } else if (auto* k3 = std::get_if<K3Imp>(&fr)) {
      if (core->kind != TKind::ImpI || core->lab != k3->lab)
        throw IllegalSplit("epsilon_step: context frame mismatch (K3Imp)");
      core = core->a;
    } else if (auto* ka = std::get_if<K3All>(&fr)) {
      if (core->kind != TKind::AllI || core->tvar != ka->var)
        throw IllegalSplit("epsilon_step: context frame mismatch (K3All)");
      core = core->a;
    } else if (auto* k4 = std::get_if<K4>(&fr)) {
      if (core->kind != TKind::ImpE || !alpha_eq_term(core->a, k4->fun))
        throw IllegalSplit("epsilon_step: context frame mismatch (K4)");
      core = core->b;
    }
  }

  std::set<Label> chosen_labels;
  for (const auto& ch : s.chosen) chosen_labels.insert(ch.first);
  Term pat_from = subst_type_in_term(s.spine, s.from, s.schematic);
  std::map<Label, Term> bindings;
  if (!match_spine(pat_from, core, chosen_labels, bindings))
    throw IllegalSplit("epsilon_step: spine does not match the term");

  Term result = subst_type_in_term(s.spine, s.to, s.schematic);
  for (const auto& [h, pattern] : s.chosen) {
    auto it = bindings.find(h);
    if (it == bindings.end()) throw IllegalSplit("epsilon_step: unbound minor " + h);
    Context lifted = lift_context(s.context, pattern, s.schematic);
    Term wrapped = plug(lifted, it->second);
    result = graft(result, h, wrapped, GraftPolicy::AvoidCapture);
  }
  return replace_at(t, s.anchor, result);
}

// ---- redexes and steps ---------------------------------------------------------

namespace {

bool is_beta_imp(const Term& n) { return n->kind == TKind::ImpE && n->a->kind == TKind::ImpI; }
bool is_beta0(const Term& n) { return is_beta_imp(n) && n->b->kind == TKind::Hyp; }
bool is_beta_all(const Term& n) { return n->kind == TKind::AllE && n->a->kind == TKind::AllI; }
bool is_beta_or(const Term& n) {
  return n->kind == TKind::OrE &&
         (n->a->kind == TKind::OrI1 || n->a->kind == TKind::OrI2);
}

bool is_eta_imp(const Term& n) {
  return n->kind == TKind::ImpI && n->a->kind == TKind::ImpE &&
         n->a->b->kind == TKind::Hyp && n->a->b->lab == n->lab &&
         !free_labels(n->a->a).count(n->lab);
}

bool is_eta_all(const Term& n) {
  return n->kind == TKind::AllI && n->a->kind == TKind::AllE && is_atom(n->a->ann) &&
         n->a->ann->name == n->tvar && !free_type_vars(n->a->a).count(n->tvar);
}

bool is_eta_or(const Term& n) {
  if (n->kind != TKind::OrE) return false;
  const Term& b1 = n->b;
  const Term& b2 = n->c;
  return b1->kind == TKind::OrI1 && b1->a->kind == TKind::Hyp && b1->a->lab == n->lab &&
         alpha_eq(b1->ann, n->ann2) && b2->kind == TKind::OrI2 && b2->a->kind == TKind::Hyp &&
         b2->a->lab == n->lab2 && alpha_eq(b2->ann, n->ann);
}

// is the parent frame (with the ∨E at child `idx`) admissible for γ_g?
bool gamma_g_admissible(const Term& parent, std::size_t idx, const Term& or_node) {
  const Term& scrut = or_node->a;
  switch (parent->kind) {
    case TKind::ImpE:
    case TKind::AllE:
    case TKind::OrI1:
    case TKind::OrI2:
      return true;
    case TKind::ImpI:
      return !free_labels(scrut).count(parent->lab);
    case TKind::AllI:
      return !free_type_vars(scrut).count(parent->tvar) &&
             !contains_var(or_node->ann, parent->tvar) &&
             !contains_var(or_node->ann2, parent->tvar);
    case TKind::OrE:
      if (idx == 0) return true;
      if (idx == 1) return !free_labels(scrut).count(parent->lab);
      return !free_labels(scrut).count(parent->lab2);
    default: return false;
  }
}

bool gamma_admissible(const Term& parent, std::size_t idx) {
  // standard γ: the ∨E conclusion is the major premise of an elimination
  return idx == 0 && (parent->kind == TKind::ImpE || parent->kind == TKind::AllE ||
                      parent->kind == TKind::OrE);
}

int rule_priority(Rule r) {
  switch (r) {
    case Rule::BetaImp: return 0;
    case Rule::BetaAll: return 1;
    case Rule::BetaOr: return 2;
    case Rule::Beta0: return 3;
    case Rule::Eps: return 4;
    case Rule::EtaImpRed: return 5;
    case Rule::EtaAllRed: return 6;
    case Rule::EtaOrRed: return 7;
    case Rule::GammaOr: return 8;
    case Rule::GammaGOr: return 9;
  }
  return 99;
}

void find_structural(const Term& t, Position& pos, const RuleSet& rules,
                     std::vector<Redex>& out) {
  auto want = [&](Rule r) { return std::find(rules.begin(), rules.end(), r) != rules.end(); };
  if (want(Rule::BetaImp) && is_beta_imp(t)) out.push_back({pos, Rule::BetaImp});
  if (want(Rule::Beta0) && is_beta0(t)) out.push_back({pos, Rule::Beta0});
  if (want(Rule::BetaAll) && is_beta_all(t)) out.push_back({pos, Rule::BetaAll});
  if (want(Rule::BetaOr) && is_beta_or(t)) out.push_back({pos, Rule::BetaOr});
  if (want(Rule::EtaImpRed) && is_eta_imp(t)) out.push_back({pos, Rule::EtaImpRed});
  if (want(Rule::EtaAllRed) && is_eta_all(t)) out.push_back({pos, Rule::EtaAllRed});
  if (want(Rule::EtaOrRed) && is_eta_or(t)) out.push_back({pos, Rule::EtaOrRed});
  for (std::size_t i = 0; i < child_count(t); ++i) {
    Term ch = child(t, i);
    if (ch->kind == TKind::OrE) {
      if (want(Rule::GammaOr) && gamma_admissible(t, i)) {
        pos.push_back(i);
        out.push_back({pos, Rule::GammaOr});
        pos.pop_back();
      }
      if (want(Rule::GammaGOr) && gamma_g_admissible(t, i, ch)) {
        pos.push_back(i);
        out.push_back({pos, Rule::GammaGOr});
        pos.pop_back();
      }
    }
    pos.push_back(i);
    find_structural(ch, pos, rules, out);
    pos.pop_back();
  }
}

}  // namespace

std::vector<Redex> find_redexes(const Env& env, const Term& t, const RuleSet& rules) {
  std::vector<Redex> out;
  Position pos;
  find_structural(t, pos, rules, out);
  if (std::find(rules.begin(), rules.end(), Rule::Eps) != rules.end()) {
    for (const auto& sp : detect_impl(env, t, false)) out.push_back({sp.head, Rule::Eps});
  }
  std::sort(out.begin(), out.end(), [](const Redex& a, const Redex& b) {
    if (a.pos != b.pos) return std::lexicographical_compare(a.pos.begin(), a.pos.end(),
                                                            b.pos.begin(), b.pos.end());
    return rule_priority(a.rule) < rule_priority(b.rule);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Redex& a, const Redex& b) {
                          return a.pos == b.pos && a.rule == b.rule;
                        }),
            out.end());
  return out;
}

namespace {

Term gamma_contractum(const Term& parent, std::size_t idx) {
  Term s = child(parent, idx);
  NameGen labels, tyvars;
  labels.reserve_all(all_labels(parent));
  tyvars.reserve_all(all_type_vars(parent));
  Label l1 = labels.fresh(s->lab);
  Label l2 = labels.fresh(s->lab2);
  Term b1 = rename_free_label(s->b, s->lab, l1);
  Term b2 = rename_free_label(s->c, s->lab2, l2);
  Term copy1 = refresh_binders(with_child(parent, idx, b1), labels, tyvars);
  Term copy2 = refresh_binders(with_child(parent, idx, b2), labels, tyvars);
  return or_e(s->a, l1, s->ann, copy1, l2, s->ann2, copy2);
}

}  // namespace

Term step(const Env& env, const Term& t, const Position& pos, Rule rule) {
  if (rule == Rule::Eps) {
    for (const auto& sp : detect_impl(env, t, false))
      if (sp.head == pos) return epsilon_step(env, t, sp);
    throw NotARedex("step: no ε-split headed at " + position_str(pos));
  }
  Term n = subterm_at(t, pos);
  switch (rule) {
    case Rule::BetaImp:
    case Rule::Beta0: {
      if (!is_beta_imp(n) || (rule == Rule::Beta0 && !is_beta0(n)))
        throw NotARedex("step: not a β⊃ redex");
      Term res = graft(n->a->a, n->a->lab, n->b, GraftPolicy::AvoidCapture);
      return replace_at(t, pos, res);
    }
    case Rule::BetaAll: {
      if (!is_beta_all(n)) throw NotARedex("step: not a β∀ redex");
      Term res = subst_type_in_term(n->a->a, n->ann, n->a->tvar);
      return replace_at(t, pos, res);
    }
    case Rule::BetaOr: {
      if (!is_beta_or(n)) throw NotARedex("step: not a β∨ redex");
      Term res = n->a->kind == TKind::OrI1
                     ? graft(n->b, n->lab, n->a->a, GraftPolicy::AvoidCapture)
                     : graft(n->c, n->lab2, n->a->a, GraftPolicy::AvoidCapture);
      return replace_at(t, pos, res);
    }
    case Rule::EtaImpRed:
      if (!is_eta_imp(n)) throw NotARedex("step: not an η⊃ redex");
      return replace_at(t, pos, n->a->a);
    case Rule::EtaAllRed:
      if (!is_eta_all(n)) throw NotARedex("step: not an η∀ redex");
      return replace_at(t, pos, n->a->a);
    case Rule::EtaOrRed:
      if (!is_eta_or(n)) throw NotARedex("step: not an η∨ redex");
      return replace_at(t, pos, n->a);
    case Rule::GammaOr:
    case Rule::GammaGOr: {
      if (pos.empty() || n->kind != TKind::OrE) throw NotARedex("step: not a γ redex position");
      Position ppos = pos;
      std::size_t idx = ppos.back();
      ppos.pop_back();
      Term parent = subterm_at(t, ppos);
      bool ok = rule == Rule::GammaOr ? gamma_admissible(parent, idx)
                                      : gamma_g_admissible(parent, idx, n);
      if (!ok) throw NotARedex("step: frame is not admissible for the permutation");
      return replace_at(t, ppos, gamma_contractum(parent, idx));
    }
    default: throw NotARedex("step: unknown rule");
  }
}

// ---- normalization -------------------------------------------------------------

namespace {

bool pos_is_prefix(const Position& p, const Position& q) {
  if (p.size() > q.size()) return false;
  return std::equal(p.begin(), p.end(), q.begin());
}

}  // namespace

NormalizeResult normalize(const Env& env, const Term& t, const RuleSet& rules,
                          const Strategy& strategy, std::uint64_t fuel) {
  NormalizeResult out;
  out.term = t;
  std::mt19937_64 rng(strategy.seed);
  for (std::uint64_t i = 0; i < fuel; ++i) {
    std::vector<Redex> rs = find_redexes(env, out.term, rules);
    if (rs.empty()) {
      out.trace.terminated = Terminated::NormalForm;
      return out;
    }
    const Redex* pick = &rs.front();
    if (strategy.kind == StrategyKind::LeftmostInnermost) {
      // candidates with no redex strictly inside
      const Redex* best = nullptr;
      for (const auto& r : rs) {
        bool has_inner = false;
        for (const auto& q : rs)
          if (&q != &r && pos_is_prefix(r.pos, q.pos) && q.pos.size() > r.pos.size()) {
            has_inner = true;
            break;
          }
        if (!has_inner) { best = &r; break; }
      }
      pick = best ? best : &rs.front();
    } else if (strategy.kind == StrategyKind::RandomSeeded) {
      pick = &rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng)];
    }
    std::size_t before = node_count(out.term);
    Term next = step(env, out.term, pick->pos, pick->rule);
    out.trace.steps.push_back({pick->rule, pick->pos, before, node_count(next)});
    out.term = next;
  }
  out.trace.terminated = Terminated::FuelExhausted;
  return out;
}

std::string trace_to_json(const RewriteTrace& trace) {
  nlohmann::json j;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : trace.steps) {
    nlohmann::json step;
    step["rule"] = rule_name(s.rule);
    step["path"] = s.pos;
    step["nodesBefore"] = s.nodes_before;
    step["nodesAfter"] = s.nodes_after;
    j["steps"].push_back(step);
  }
  j["terminated"] = trace.terminated == Terminated::NormalForm ? "NormalForm" : "FuelExhausted";
  return j.dump(2);
}

namespace {

Term beta0_normal(const Env& env, const Term& t, std::uint64_t fuel) {
  // every step strips one ⊃I/⊃E pair, so this terminates on its own
  NormalizeResult r = normalize(env, t, {Rule::Beta0}, {}, fuel);
  if (r.trace.terminated == Terminated::FuelExhausted)
    throw FuelExhaustedError("tilde_canonical: fuel exhausted");
  return r.term;
}

}  // namespace

Term tilde_canonical(const Env& env, const Term& t, std::uint64_t fuel) {
  // Oriented exploration of the ~-class over β₀-normal forms: discriminator
  // chains are permuted upward as long as something new appears. Swapping
  // identical discriminator heads cycles, so progress is tracked by α-key and
  // the least key visited is the canonical representative.
  Term cur = beta0_normal(env, t, fuel);
  std::string best_key = alpha_key_term(cur);
  Term best = cur;
  std::set<std::string> seen{best_key};
  for (std::uint64_t i = 0; i < fuel; ++i) {
    bool progressed = false;
    for (const auto& sp : detect_impl(env, cur, true)) {
      Term next = beta0_normal(env, epsilon_step(env, cur, sp), fuel);
      std::string k = alpha_key_term(next);
      if (seen.insert(k).second) {
        cur = next;
        if (k < best_key) {
          best_key = k;
          best = cur;
        }
        progressed = true;
        break;
      }
    }
    if (!progressed) return best;
  }
  throw FuelExhaustedError("tilde_canonical: fuel exhausted");
}

bool tilde_equal(const Env& env, const Term& a, const Term& b, std::uint64_t fuel) {
  return alpha_eq_term(tilde_canonical(env, a, fuel), tilde_canonical(env, b, fuel));
}

Term eta_expand_at(const Env& env, const Term& t, const Position& pos) {
  SubtermInfo info = subterm_info(env, t, pos);
  Term sub = subterm_at(t, pos);
  if (!pos.empty()) {
    Position ppos = pos;
    std::size_t idx = ppos.back();
    ppos.pop_back();
    Term parent = subterm_at(t, ppos);
    if (parent->kind == TKind::ImpE && idx == 0 && is_imp(info.type))
      throw WouldLoop("eta_expand_at: expansion would create a β⊃ redex with the parent");
    if (parent->kind == TKind::AllE && idx == 0 && is_forall(info.type))
      throw WouldLoop("eta_expand_at: expansion would create a β∀ redex with the parent");
  }
  if (is_imp(info.type)) {
    NameGen labels;
    labels.reserve_all(all_labels(t));
    for (const auto& kv : info.scope.items()) labels.reserve(kv.first);
    Label m = labels.fresh("e");
    return replace_at(t, pos, imp_i(m, info.type->lhs, imp_e(sub, hyp(m))));
  }
  if (is_forall(info.type)) {
    NameGen vars;
    vars.reserve_all(all_type_vars(t));
    for (const auto& kv : info.scope.items()) vars.reserve_all(free_vars(kv.second));
    Var y = vars.fresh(info.type->name);
    return replace_at(t, pos, all_i(y, all_e(sub, atom(y))));
  }
  throw NotARedex("eta_expand_at: subterm type is neither ⊃ nor ∀");
}

}  // namespace ni2
