#include "ni2/gen.hpp"

#include <algorithm>
#include <functional>

#include "ni2/rewrite.hpp"
#include "ni2/translate.hpp"

namespace ni2 {

TermGen::TermGen(std::uint64_t seed, GenConfig cfg) : rng_(seed), cfg_(cfg) {
  pool_ = {"P", "Q", "R"};
}

Formula TermGen::random_formula(int depth, bool allow_or) {
  if (depth <= 0 || rng_.chance(0.4)) return atom(pool_[rng_.pick(pool_.size())]);
  std::size_t nkinds = 2;
  if (cfg_.allow_forall) ++nkinds;
  if (allow_or) ++nkinds;
  std::size_t kind = rng_.pick(nkinds);
  if (kind <= 1)
    return imp(random_formula(depth - 1, allow_or), random_formula(depth - 1, allow_or));
  if (cfg_.allow_forall && kind == 2) {
    Var v = rng_.chance(0.5) ? "X" : "Y";
    return forall(v, random_formula(depth - 1, allow_or));
  }
  return disj(random_formula(depth - 1, allow_or), random_formula(depth - 1, allow_or));
}

std::vector<Formula> TermGen::inst_candidates(const Formula& goal) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  auto add = [&](const Formula& f) {
    if (contains_or(f)) return;
    if (forbidden_inst_ && free_vars(f).count(*forbidden_inst_)) return;
    if (measure_size(f) > 4) return;
    if (seen.insert(alpha_key(f)).second) out.push_back(f);
  };
  for (const auto& v : pool_) add(atom(v));
  add(goal);
  if (is_imp(goal) || is_or(goal)) {
    add(goal->lhs);
    add(goal->rhs);
  }
  if (is_forall(goal)) add(goal->lhs);
  return out;
}

bool TermGen::elim_plans(const Formula& f, const Formula& goal, int budget,
                         std::vector<ElimStep>& cur, std::vector<std::vector<ElimStep>>& out) {
  if (out.size() >= 4) return true;
  if (!cur.empty() && alpha_eq(f, goal)) out.push_back(cur);
  if (budget == 0) return false;
  if (is_imp(f)) {
    cur.push_back({true, f->lhs});
    elim_plans(f->rhs, goal, budget - 1, cur, out);
    cur.pop_back();
  } else if (is_forall(f)) {
    for (const auto& cand : inst_candidates(goal)) {
      cur.push_back({false, cand});
      elim_plans(subst_formula(f->lhs, cand, f->name), goal, budget - 1, cur, out);
      cur.pop_back();
    }
  }
  return false;
}

std::optional<Term> TermGen::generate(const Env& env, const Formula& goal, int depth) {
  using MoveFn = std::function<std::optional<Term>()>;
  std::vector<MoveFn> moves;

  for (const auto& [l, f] : env.items()) {
    if (alpha_eq(f, goal)) {
      Label lab = l;
      moves.push_back([lab] { return std::optional<Term>(hyp(lab)); });
    }
  }

  if (depth > 0) {
    if (is_imp(goal)) {
      moves.push_back([this, &env, goal, depth]() -> std::optional<Term> {
        NameGen labels;
        for (const auto& kv : env.items()) labels.reserve(kv.first);
        Label l = labels.fresh("a");
        Env inner = env;
        inner.bind(l, goal->lhs);
        auto body = generate(inner, goal->rhs, depth - 1);
        if (!body) return std::nullopt;
        return imp_i(l, goal->lhs, *body);
      });
    }
    if (is_forall(goal)) {
      moves.push_back([this, &env, goal, depth]() -> std::optional<Term> {
        NameGen vars;
        for (const auto& kv : env.items()) vars.reserve_all(all_vars(kv.second));
        vars.reserve_all(all_vars(goal));
        Var y = vars.fresh(goal->name);
        auto body = generate(env, subst_formula(goal->lhs, atom(y), goal->name), depth - 1);
        if (!body) return std::nullopt;
        return all_i(y, *body);
      });
    }
    if (is_or(goal) && cfg_.allow_or) {
      moves.push_back([this, &env, goal, depth]() -> std::optional<Term> {
        auto body = generate(env, goal->lhs, depth - 1);
        if (!body) return std::nullopt;
        return or_i1(goal->rhs, *body);
      });
      moves.push_back([this, &env, goal, depth]() -> std::optional<Term> {
        auto body = generate(env, goal->rhs, depth - 1);
        if (!body) return std::nullopt;
        return or_i2(goal->lhs, *body);
      });
    }
    for (const auto& [l, f] : env.items()) {
      std::vector<std::vector<ElimStep>> plans;
      std::vector<ElimStep> cur;
      elim_plans(f, goal, 4, cur, plans);
      for (auto& plan : plans) {
        Label lab = l;
        moves.push_back([this, &env, lab, plan, depth]() -> std::optional<Term> {
          Term t = hyp(lab);
          for (const auto& st : plan) {
            if (st.is_app) {
              auto arg = generate(env, st.data, depth - 1);
              if (!arg) return std::nullopt;
              t = imp_e(t, *arg);
            } else {
              t = all_e(t, st.data);
            }
          }
          return t;
        });
      }
      if (cfg_.allow_or && is_or(f) && depth > 1) {
        Label lab = l;
        Formula fa = f->lhs, fb = f->rhs;
        moves.push_back([this, &env, lab, fa, fb, goal, depth]() -> std::optional<Term> {
          NameGen labels;
          for (const auto& kv : env.items()) labels.reserve(kv.first);
          Label l1 = labels.fresh("a");
          Label l2 = labels.fresh("a");
          Env e1 = env;
          e1.bind(l1, fa);
          auto b1 = generate(e1, goal, depth - 2);
          if (!b1) return std::nullopt;
          Env e2 = env;
          e2.bind(l2, fb);
          auto b2 = generate(e2, goal, depth - 2);
          if (!b2) return std::nullopt;
          return or_e(hyp(lab), l1, fa, *b1, l2, fb, *b2);
        });
      }
    }
  }

  // randomized order
  for (std::size_t i = moves.size(); i > 1; --i) std::swap(moves[i - 1], moves[rng_.pick(i)]);
  for (auto& m : moves) {
    auto t = m();
    if (t) return t;
  }
  return std::nullopt;
}

Env TermGen::playground(bool with_or, bool with_foralls) const {
  Formula P = atom("P"), Q = atom("Q"), R = atom("R");
  Env env;
  env.bind("p", P);
  env.bind("q", Q);
  env.bind("f", imp(P, Q));
  env.bind("g", imp(Q, R));
  if (with_foralls) {
    env.bind("w", forall("X", imp(atom("X"), atom("X"))));
    env.bind("u", forall("X", imp(imp(P, atom("X")), atom("X"))));
    env.bind("v", forall("X", imp(imp(P, atom("X")), imp(imp(Q, atom("X")), atom("X")))));
  }
  if (with_or) {
    env.bind("c", disj(P, Q));
    env.bind("d", disj(Q, R));
    env.bind("k", imp(R, disj(P, R)));
  }
  return env;
}

TermInstance TermGen::typed_term(Fragment frag) {
  bool with_or = frag == Fragment::NI2or;
  bool saved = cfg_.allow_or;
  cfg_.allow_or = with_or;
  Env env = playground(with_or, cfg_.allow_forall);
  for (int attempt = 0; attempt < 400; ++attempt) {
    Formula goal = random_formula(cfg_.formula_depth, with_or);
    auto t = generate(env, goal, cfg_.term_depth);
    if (!t) continue;
    Term out = *t;
    for (int k = 0; k < cfg_.redex_injections; ++k) {
      if (rng_.chance(0.5)) out = inject_beta(env, out);
      if (rng_.chance(0.25)) out = inject_eta_expansion(env, out);
    }
    if (node_count(out) < 3 && attempt < 350) continue;
    if (node_count(out) > cfg_.max_nodes) continue;
    cfg_.allow_or = saved;
    return {env, out};
  }
  cfg_.allow_or = saved;
  // fall back to something trivially well-typed
  return {env, imp_i("z", atom("P"), hyp("z"))};
}

namespace {

std::vector<Position> all_positions(const Term& t) {
  std::vector<Position> out;
  std::function<void(const Term&, Position&)> walk = [&](const Term& n, Position& pos) {
    out.push_back(pos);
    for (std::size_t i = 0; i < child_count(n); ++i) {
      pos.push_back(i);
      walk(child(n, i), pos);
      pos.pop_back();
    }
  };
  Position pos;
  walk(t, pos);
  return out;
}

}  // namespace

Term TermGen::inject_beta(const Env& env, const Term& t) {
  auto positions = all_positions(t);
  Position p = positions[rng_.pick(positions.size())];
  SubtermInfo info;
  try {
    info = subterm_info(env, t, p);
  } catch (const Error&) {
    return t;
  }
  Formula sigma = atom(pool_[rng_.pick(pool_.size())]);
  auto arg = generate(info.scope, sigma, 2);
  if (!arg) return t;
  NameGen labels;
  labels.reserve_all(all_labels(t));
  for (const auto& kv : info.scope.items()) labels.reserve(kv.first);
  Label l = labels.fresh("z");
  Term candidate = replace_at(t, p, imp_e(imp_i(l, sigma, subterm_at(t, p)), *arg));
  try {
    typecheck(env, candidate);
  } catch (const Error&) {
    return t;
  }
  return candidate;
}

Term TermGen::inject_eta_expansion(const Env& env, const Term& t) {
  auto positions = all_positions(t);
  for (int attempt = 0; attempt < 4; ++attempt) {
    Position p = positions[rng_.pick(positions.size())];
    try {
      Term candidate = eta_expand_at(env, t, p);
      typecheck(env, candidate);
      return candidate;
    } catch (const Error&) {
      continue;
    }
  }
  return t;
}

// ---- instance families ----------------------------------------------------------

EquationInstance gen_beta_pair(std::uint64_t seed) {
  TermGen g(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    TermInstance inst = g.typed_term(Fragment::NI2or);
    Term t = inst.term;
    RuleSet betas{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr};
    auto rs = find_redexes(inst.env, t, betas);
    if (rs.empty()) {
      t = g.inject_beta(inst.env, t);
      rs = find_redexes(inst.env, t, betas);
    }
    if (rs.empty()) continue;
    const Redex& r = rs[g.rng().pick(rs.size())];
    return {inst.env, t, step(inst.env, t, r.pos, r.rule)};
  }
  throw Error("gen_beta_pair: could not build an instance");
}

namespace {

// a closed derivation of F ⊃ F for a small random ∨-free F
Term closed_identity(TermGen& g) {
  Formula f = g.random_formula(1, false);
  return imp_i("n", f, hyp("n"));
}

// closed derivation of some A∨B, returning the disjuncts
Term closed_disjunction(TermGen& g, Formula& a_out, Formula& b_out) {
  Term idproof = closed_identity(g);
  Formula a = imp(idproof->ann, idproof->ann);
  Formula b = g.random_formula(1, false);
  if (g.rng().chance(0.5)) {
    a_out = a;
    b_out = b;
    Term scrut = or_i1(b, idproof);
    if (g.rng().chance(0.4)) {
      // hide the introduction behind a β-redex; still closed
      scrut = imp_e(imp_i("z0", imp(b, b), scrut), imp_i("n0", b, hyp("n0")));
    }
    return scrut;
  }
  a_out = b;
  b_out = a;
  Term scrut = or_i2(b, idproof);
  if (g.rng().chance(0.4))
    scrut = imp_e(imp_i("z0", imp(b, b), scrut), imp_i("n0", b, hyp("n0")));
  return scrut;
}

}  // namespace

EquationInstance gen_gamma_g_pair(std::uint64_t seed, bool m_closed) {
  TermGen g(seed);
  Env env = g.playground(true);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Formula a, b;
    Term scrut;
    if (m_closed) {
      scrut = closed_disjunction(g, a, b);
    } else {
      scrut = hyp("c");
      a = atom("P");
      b = atom("Q");
    }
    Formula c = g.random_formula(1 + static_cast<int>(g.rng().pick(2)), false);
    NameGen labels;
    for (const auto& kv : env.items()) labels.reserve(kv.first);
    Label l1 = labels.fresh("a");
    Label l2 = labels.fresh("a");
    Env e1 = env;
    e1.bind(l1, a);
    auto b1 = g.generate(e1, c, 3);
    if (!b1) continue;
    Env e2 = env;
    e2.bind(l2, b);
    auto b2 = g.generate(e2, c, 3);
    if (!b2) continue;
    Term s = or_e(scrut, l1, a, *b1, l2, b, *b2);

    // continuation frame
    Term lhs;
    switch (g.rng().pick(4)) {
      case 0: {  // apply the conclusion when it is an implication
        if (!is_imp(c)) continue;
        auto arg = g.generate(env, c->lhs, 3);
        if (!arg) continue;
        lhs = imp_e(s, *arg);
        break;
      }
      case 1: {  // feed it to a function from the environment
        Formula want = imp(c, atom("R"));
        std::optional<Term> fun;
        for (const auto& kv : env.items())
          if (alpha_eq(kv.second, want)) fun = hyp(kv.first);
        if (!fun) {
          if (!alpha_eq(c, atom("Q"))) continue;
          fun = hyp("g");
        }
        lhs = imp_e(*fun, s);
        break;
      }
      case 2:  // inject into a disjunction
        lhs = or_i1(g.random_formula(1, false), s);
        break;
      default:  // vacuous discharge
        lhs = imp_i(labels.fresh("z"), g.random_formula(1, false), s);
        break;
    }
    try {
      typecheck(env, lhs);
    } catch (const Error&) {
      continue;
    }
    // find the γ_g redex at the position of s and permute
    auto rs = find_redexes(env, lhs, {Rule::GammaGOr});
    const Redex* pick = nullptr;
    for (const auto& r : rs)
      if (alpha_eq_term(subterm_at(lhs, r.pos), s)) { pick = &r; break; }
    if (!pick) continue;
    Term rhs = step(env, lhs, pick->pos, Rule::GammaGOr);
    return {env, lhs, rhs};
  }
  throw Error("gen_gamma_g_pair: could not build an instance");
}

EquationInstance gen_eta_or_pair(std::uint64_t seed, bool m_closed) {
  TermGen g(seed);
  Env env = g.playground(true);
  Formula a, b;
  Term scrut;
  if (m_closed) {
    scrut = closed_disjunction(g, a, b);
  } else {
    if (g.rng().chance(0.5)) {
      scrut = hyp("c");
      a = atom("P");
      b = atom("Q");
    } else {
      scrut = hyp("d");
      a = atom("Q");
      b = atom("R");
    }
  }
  NameGen labels;
  for (const auto& kv : env.items()) labels.reserve(kv.first);
  Label l1 = labels.fresh("a");
  Label l2 = labels.fresh("a");
  Term lhs = or_e(scrut, l1, a, or_i1(b, hyp(l1)), l2, b, or_i2(a, hyp(l2)));
  return {env, lhs, scrut};
}

EquationInstance gen_eps_mc_pair(std::uint64_t seed) {
  TermGen g(seed);
  // closed head: ΛX. λk:(F⊃F)⊃X. k (λn:F. n), of quasi type ∀X(((F⊃F)⊃X)⊃X)
  Formula f = g.random_formula(1, false);
  Formula ff = imp(f, f);
  Term head = all_i("X", imp_i("k", imp(ff, atom("X")), imp_e(hyp("k"), imp_i("n", f, hyp("n")))));
  Formula alpha = atom("Q");
  Env env;
  env.bind("m0", imp(ff, alpha));
  env.bind("g", imp(alpha, atom("R")));
  Term spine = imp_e(all_e(head, alpha), hyp("m0"));
  Term lhs = imp_e(hyp("g"), spine);
  auto splits = epsilon_detect(env, lhs);
  if (splits.empty()) throw Error("gen_eps_mc_pair: ε-redex not detected");
  Term rhs = epsilon_step(env, lhs, splits.front());
  return {env, lhs, rhs};
}

namespace {

Formula sp_formula(TermGen& g, const Var& s) {
  std::size_t nblocks = g.rng().pick(3);
  SpSpine sp;
  for (std::size_t i = 0; i < nblocks; ++i) {
    SpSpine::Block blk;
    if (g.rng().chance(0.3)) blk.quants.push_back("Y" + std::to_string(i));
    blk.antecedent = g.random_formula(1, false);
    sp.blocks.push_back(blk);
  }
  sp.tail = g.rng().chance(0.7) ? s : Var("R");
  return reassemble_sp(sp);
}

}  // namespace

NaturalityInstance gen_naturality_instance(std::uint64_t seed) {
  TermGen g(seed);
  const Var s = "S";
  g.forbid_instantiations_with(s);
  for (int attempt = 0; attempt < 300; ++attempt) {
    Env gamma;
    std::size_t nhyps = 1 + g.rng().pick(3);
    for (std::size_t i = 0; i < nhyps; ++i) gamma.bind("g" + std::to_string(i), sp_formula(g, s));
    Formula c = sp_formula(g, s);
    auto t = g.generate(gamma, c, 4);
    if (!t) continue;
    if (!is_x_safe(*t, s)) continue;

    // d : B from a0 : A plus Δ
    Formula a = g.random_formula(1, false);
    Formula b = g.random_formula(1, false);
    Env delta;
    delta.bind("dd", imp(a, b));
    delta.bind("de", b);
    Env denv = delta;
    denv.bind("a0", a);
    auto d = g.generate(denv, b, 3);
    if (!d) continue;

    NaturalityInstance inst;
    inst.env = gamma;
    inst.term = *t;
    inst.conclusion = c;
    inst.x = s;
    inst.d = *d;
    inst.d_hyp = "a0";
    inst.from_f = a;
    inst.to_f = b;
    inst.d_env = delta;
    return inst;
  }
  throw Error("gen_naturality_instance: could not build an instance");
}

OverflowInstance gen_overflow_instance(std::uint64_t seed) {
  TermGen g(seed);
  Formula P = atom("P"), Q = atom("Q");
  Env env;
  env.bind("p", P);
  env.bind("q", Q);
  env.bind("f", imp(P, Q));
  env.bind("w1", forall("X", imp(imp(P, atom("X")), atom("X"))));
  env.bind("w2", forall("X", imp(imp(P, atom("X")), imp(imp(Q, atom("X")), atom("X")))));
  GenConfig cfg;
  cfg.allow_or = false;
  for (int attempt = 0; attempt < 300; ++attempt) {
    Formula goal = g.random_formula(2, false);
    auto t = g.generate(env, goal, 4);
    if (!t) continue;
    bool has_all_e = false;
    std::function<bool(const Term&)> has_inst = [&](const Term& n) -> bool {
      if (n->kind == TKind::AllE) return true;
      for (std::size_t i = 0; i < child_count(n); ++i)
        if (has_inst(child(n, i))) return true;
      return false;
    };
    // keep instances flat: an instantiation spine feeding the argument of
    // another one sits in a frozen minor slot and is skipped
    bool nested = false;
    std::function<void(const Term&)> scan = [&](const Term& n) {
      if (n->kind == TKind::AllE) has_all_e = true;
      if (n->kind == TKind::ImpE && has_inst(n->a) && has_inst(n->b)) nested = true;
      for (std::size_t i = 0; i < child_count(n); ++i) scan(child(n, i));
    };
    scan(*t);
    if (!has_all_e || nested) continue;
    return {env, *t, "S0"};
  }
  throw Error("gen_overflow_instance: could not build an instance");
}

TermInstance gen_ni2or_term(std::uint64_t seed, std::size_t max_nodes) {
  GenConfig cfg;
  cfg.max_nodes = max_nodes;
  TermGen g(seed, cfg);
  return g.typed_term(Fragment::NI2or);
}

TermInstance gen_prop_term(std::uint64_t seed, std::size_t max_nodes) {
  GenConfig cfg;
  cfg.max_nodes = max_nodes;
  cfg.allow_forall = false;
  TermGen g(seed, cfg);
  return g.typed_term(Fragment::NI2or);
}

TermInstance gen_ni2_term(std::uint64_t seed, std::size_t max_nodes) {
  GenConfig cfg;
  cfg.max_nodes = max_nodes;
  cfg.allow_or = false;
  TermGen g(seed, cfg);
  return g.typed_term(Fragment::NI2);
}

Term church_numeral(int n) {
  Term body = hyp("z");
  for (int i = 0; i < n; ++i) body = imp_e(hyp("s"), body);
  return all_i("X", imp_i("s", imp(atom("X"), atom("X")), imp_i("z", atom("X"), body)));
}

TermInstance gamma_loop_term() {
  Env env;
  env.bind("c", disj(atom("P"), atom("Q")));
  env.bind("r", atom("R"));
  Term inner = or_e(hyp("c"), "a2", atom("P"), hyp("r"), "b2", atom("Q"), hyp("r"));
  Term outer = or_e(hyp("c"), "a1", atom("P"), hyp("r"), "b1", atom("Q"), inner);
  return {env, outer};
}

EquationInstance epsilon_strict_pair() {
  Env env;
  env.bind("w", forall("X", imp(atom("X"), atom("X"))));
  env.bind("g", imp(atom("P"), atom("Q")));
  env.bind("a", atom("P"));
  Term lhs = imp_e(hyp("g"), imp_e(all_e(hyp("w"), atom("P")), hyp("a")));
  Term rhs = imp_e(all_e(hyp("w"), atom("Q")), imp_e(hyp("g"), hyp("a")));
  return {env, lhs, rhs};
}

// ---- theorem suite ---------------------------------------------------------------

namespace {

const RuleSet kPureBeta{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr};

Term beta_nf(const Env& env, const Term& t, std::uint64_t fuel = 200000) {
  NormalizeResult r = normalize(env, t, kPureBeta, {}, fuel);
  if (r.trace.terminated == Terminated::FuelExhausted)
    throw FuelExhaustedError("beta_nf: fuel exhausted");
  return r.term;
}

Term eta_nf(const Env& env, const Term& t, std::uint64_t fuel = 200000) {
  NormalizeResult r =
      normalize(env, t, {Rule::EtaImpRed, Rule::EtaAllRed, Rule::EtaOrRed}, {}, fuel);
  return r.term;
}

}  // namespace

bool replay_eta_or_chain(const EquationInstance& inst) {
  Env env_star = rp_env(inst.env);
  Term lhs_star = rp_derivation(inst.env, inst.lhs);
  Term rhs_star = rp_derivation(inst.env, inst.rhs);

  // three η-expansions bring the translated ∨E redex into η-long position
  Term t = eta_expand_at(env_star, lhs_star, {});
  t = eta_expand_at(env_star, t, {0});
  t = eta_expand_at(env_star, t, {0, 0});

  // t ≡ ΛZ. λh1. λh2. ((lhs* [Z]) h1) h2; the ε-redex permutes the three
  // elimination frames above the translated ∨E spine
  Term all_i_node = t;
  Term imp1 = all_i_node->a;
  Term imp2 = imp1->a;
  Term app2 = imp2->a;        // ImpE(·, h2)
  Term app1 = app2->a;        // ImpE(·, h1)
  Term inst_node = app1->a;   // AllE(lhs*, Z)
  Term core = inst_node->a;   // lhs* = ImpE(ImpE(AllE(D*, C*), e1), e2)
  if (core->kind != TKind::ImpE || core->a->kind != TKind::ImpE ||
      core->a->a->kind != TKind::AllE)
    throw Error("replay_eta_or_chain: unexpected translated shape");
  Term head = core->a->a;
  Formula cstar = head->ann;  // (A∨B)*
  Formula premise = conclusion_of(env_star, head->a);
  if (!is_forall(premise)) throw Error("replay_eta_or_chain: head premise not quantified");

  NameGen vars, labels;
  vars.reserve_all(all_type_vars(t));
  labels.reserve_all(all_labels(t));
  for (const auto& kv : env_star.items()) {
    labels.reserve(kv.first);
    vars.reserve_all(all_vars(kv.second));
  }
  Var v = vars.fresh("V");
  Formula body = subst_formula(premise->lhs, atom(v), premise->name);
  // body ≡ (A*⊃V)⊃(B*⊃V)⊃V
  Label h1 = labels.fresh("h");
  Label h2 = labels.fresh("h");

  EpsilonSplit split;
  split.anchor = {0, 0, 0};
  split.head = {0, 0, 0, 0, 0, 0, 0, 0};  // informational
  split.schematic = v;
  split.from = cstar;
  split.to = atom(all_i_node->tvar);
  split.spine = imp_e(imp_e(all_e(head->a, atom(v)), hyp(h1)), hyp(h2));
  split.chosen = {{h1, body->lhs}, {h2, body->rhs->lhs}};
  split.minors = {core->a->b, core->b};
  // frames: ∀E at Z, then the two applications to the fresh hypotheses
  split.context.frames = {K1Inst{atom(all_i_node->tvar)}, K1App{hyp(imp1->lab)},
                          K1App{hyp(imp2->lab)}};
  split.context.hole_type = cstar;
  split.context.result_type = atom(all_i_node->tvar);

  Term after_eps = epsilon_step(env_star, t, split);
  Term left = eta_nf(env_star, beta_nf(env_star, after_eps));
  Term right = eta_nf(env_star, beta_nf(env_star, rhs_star));
  return alpha_eq_term(left, right);
}

SuiteReport theorem_suite(std::uint64_t seed, int count) {
  SuiteReport report;
  auto family = [&](const std::string& name, int n, const std::function<bool(std::uint64_t)>& fn) {
    FamilyReport fr;
    fr.family = name;
    for (int i = 0; i < n; ++i) {
      std::uint64_t s = seed * 1000003 + static_cast<std::uint64_t>(i);
      ++fr.cases;
      bool ok = false;
      try {
        ok = fn(s);
      } catch (const Error&) {
        ok = false;
      }
      if (ok) ++fr.passes;
      else {
        ++fr.failures;
        fr.failing_seeds.push_back(s);
      }
    }
    report.families.push_back(std::move(fr));
  };

  family("betapres", count, [](std::uint64_t s) {
    EquationInstance e = gen_beta_pair(s);
    Env env_star = rp_env(e.env);
    Term l = beta_nf(env_star, rp_derivation(e.env, e.lhs));
    Term r = beta_nf(env_star, rp_derivation(e.env, e.rhs));
    return alpha_eq_term(l, r);
  });

  family("mc-gammapres", count, [](std::uint64_t s) {
    EquationInstance e = gen_gamma_g_pair(s, true);
    Env env_star = rp_env(e.env);
    Term l = beta_nf(env_star, rp_derivation(e.env, e.lhs));
    Term r = beta_nf(env_star, rp_derivation(e.env, e.rhs));
    return alpha_eq_term(l, r);
  });

  family("mc-etapres", count, [](std::uint64_t s) {
    EquationInstance e = gen_eta_or_pair(s, true);
    Env env_star = rp_env(e.env);
    Term l = beta_nf(env_star, rp_derivation(e.env, e.lhs));
    Term r = beta_nf(env_star, rp_derivation(e.env, e.rhs));
    return alpha_eq_term(l, r);
  });

  family("elimnat", count, [](std::uint64_t s) {
    EquationInstance e = gen_eps_mc_pair(s);
    return alpha_eq_term(beta_nf(e.env, e.lhs), beta_nf(e.env, e.rhs));
  });

  family("naturality", count, [](std::uint64_t s) {
    return check_naturality(gen_naturality_instance(s));
  });

  family("conv", count, [](std::uint64_t s) {
    EquationInstance e = gen_gamma_g_pair(s, false);
    Env env_star = rp_env(e.env);
    Verdict v = equiv(env_star, rp_derivation(e.env, e.lhs), rp_derivation(e.env, e.rhs),
                      Theory::BetaEpsTilde);
    return v.kind == VerdictKind::Equal;
  });

  family("etaa", count, [](std::uint64_t s) {
    return replay_eta_or_chain(gen_eta_or_pair(s, false));
  });

  family("ferr", std::max(1, count / 4), [](std::uint64_t s) {
    OverflowInstance inst = gen_overflow_instance(s);
    Term down = gen_overflow(inst.env, inst.term, inst.x);
    typecheck(inst.env, down, Fragment::NI2at);
    Verdict v = equiv(inst.env, inst.term, down, Theory::BetaEtaEpsTilde);
    return v.kind == VerdictKind::Equal;
  });

  return report;
}

}  // namespace ni2
