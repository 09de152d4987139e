#include "ni2/equivalence.hpp"
#include <cstdlib>

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"
#include "ni2/translate.hpp"

namespace ni2 {

Theory theory_from_name(const std::string& name) {
  if (name == "beta") return Theory::Beta;
  if (name == "betaeta") return Theory::BetaEta;
  if (name == "betaeps") return Theory::BetaEpsTilde;
  if (name == "betaetaeps") return Theory::BetaEtaEpsTilde;
  throw Error("unknown theory: " + name);
}

const char* theory_name(Theory th) {
  switch (th) {
    case Theory::Beta: return "beta";
    case Theory::BetaEta: return "betaeta";
    case Theory::BetaEpsTilde: return "betaeps";
    case Theory::BetaEtaEpsTilde: return "betaetaeps";
  }
  return "?";
}

const char* verdict_str(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Equal: return "Equal";
    case VerdictKind::Distinct: return "Distinct";
    case VerdictKind::Unknown:
      return v.reason == UnknownReason::FuelExhausted ? "Unknown(FuelExhausted)"
                                                      : "Unknown(IncompletePipeline)";
  }
  return "?";
}

namespace {

const RuleSet kBeta{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr};
const RuleSet kBetaEps{Rule::BetaImp, Rule::BetaAll, Rule::BetaOr, Rule::Eps};
const RuleSet kEta{Rule::EtaImpRed, Rule::EtaAllRed, Rule::EtaOrRed};

Term run(const Env& env, const Term& t, const RuleSet& rules, std::uint64_t fuel) {
  NormalizeResult r = normalize(env, t, rules, {}, fuel);
  if (r.trace.terminated == Terminated::FuelExhausted)
    throw FuelExhaustedError("canonicalize: fuel exhausted");
  return r.term;
}

}  // namespace

Term canonicalize(const Env& env, const Term& t, Theory th, std::uint64_t fuel) {
  switch (th) {
    case Theory::Beta: return run(env, t, kBeta, fuel);
    case Theory::BetaEta: return run(env, run(env, t, kBeta, fuel), kEta, fuel);
    case Theory::BetaEpsTilde:
      return tilde_canonical(env, run(env, t, kBetaEps, fuel), fuel);
    case Theory::BetaEtaEpsTilde: {
      Term cur = t;
      for (int i = 0; i < 64; ++i) {
        Term next = tilde_canonical(env, run(env, cur, kBetaEps, fuel), fuel);
        next = run(env, next, kEta, fuel);
        if (alpha_eq_term(next, cur)) return cur;
        cur = next;
      }
      throw FuelExhaustedError("canonicalize: βηε~ pipeline did not stabilize");
    }
  }
  throw Error("unreachable theory");
}

namespace {

std::size_t frame_child_digit(const Frame& f) {
  if (std::holds_alternative<K2>(f) || std::holds_alternative<K4>(f)) return 1;
  return 0;
}

// Sub-maximal permutations: run each detected split with a proper prefix of
// its context. Reaching atomic-instantiation forms needs the elimination-only
// prefixes the maximal orientation skips.
std::vector<Term> truncated_eps_variants(const Env& env, const Term& t) {
  std::vector<Term> out;
  for (const auto& sp : epsilon_detect_all(env, t)) {
    std::size_t n = sp.context.frames.size();
    for (std::size_t k = 1; k <= n; ++k) {
      EpsilonSplit cut = sp;
      cut.context.frames.resize(k);
      Position anchor = sp.anchor;
      for (std::size_t j = n; j-- > k;) anchor.push_back(frame_child_digit(sp.context.frames[j]));
      cut.anchor = anchor;
      try {
        Formula to = subterm_info(env, t, anchor).type;
        cut.to = to;
        cut.context.result_type = to;
        out.push_back(epsilon_step(env, t, cut));
      } catch (const Error&) {
        continue;
      }
    }
  }
  return out;
}

// Bounded search over η-expansions and sub-maximal permutations. States are
// raw terms (expansions must be allowed to stack before the canonicalizer
// folds them); two sides meet when their canonical forms coincide.
bool eta_search_meet(const Env& env, const Term& a, const Term& b, Theory th,
                     const EquivOptions& opts) {
  struct Item {
    Term term;
    int depth;
  };
  std::set<std::string> raw_a{alpha_key_term(a)}, raw_b{alpha_key_term(b)};
  std::set<std::string> canon_a{alpha_key_term(a)}, canon_b{alpha_key_term(b)};
  std::deque<Item> qa{{a, 0}}, qb{{b, 0}};

  auto expand_positions = [&](const Term& t) {
    std::vector<Position> out;
    std::vector<std::pair<Position, Term>> stack{{Position{}, t}};
    while (!stack.empty()) {
      auto [pos, node] = stack.back();
      stack.pop_back();
      out.push_back(pos);
      for (std::size_t i = 0; i < child_count(node); ++i) {
        Position p = pos;
        p.push_back(i);
        stack.emplace_back(p, child(node, i));
      }
    }
    return out;
  };

  auto step_front = [&](std::deque<Item>& q, std::set<std::string>& raw,
                        std::set<std::string>& canon,
                        const std::set<std::string>& other_canon) -> int {
    if (q.empty()) return 0;
    Item it = q.front();
    q.pop_front();
    if (it.depth >= opts.eta_search_depth) return 0;
    std::vector<Term> moves;
    for (const Position& p : expand_positions(it.term)) {
      if (moves.size() >= opts.eta_search_width) break;
      try {
        moves.push_back(eta_expand_at(env, it.term, p));
      } catch (const Error&) {
        continue;
      }
    }
    for (Term& v : truncated_eps_variants(env, it.term)) {
      if (moves.size() >= opts.eta_search_width + 16) break;
      moves.push_back(std::move(v));
    }
    for (const Term& m : moves) {
      if (!raw.insert(alpha_key_term(m)).second) continue;
      Term c;
      try {
        c = canonicalize(env, m, th, opts.fuel);
      } catch (const FuelExhaustedError&) {
        continue;
      }
      std::string key = alpha_key_term(c);
      canon.insert(key);
      if (std::getenv("NI2_DEBUG_SEARCH"))
        std::fprintf(stderr, "[search] side=%s depth=%d hit=%d canon=%s\n",
                     (&q == &qa ? "a" : "b"), it.depth + 1,
                     other_canon.count(key) ? 1 : 0, print_term(c).c_str());
      if (other_canon.count(key)) return 1;
      q.push_back({m, it.depth + 1});
    }
    return 0;
  };

  for (int round = 0; round < 4096; ++round) {
    if (qa.empty() && qb.empty()) return false;
    if (step_front(qa, raw_a, canon_a, canon_b)) return true;
    if (step_front(qb, raw_b, canon_b, canon_a)) return true;
  }
  return false;
}

}  // namespace

Verdict equiv(const Env& env, const Term& t1, const Term& t2, Theory th,
              const EquivOptions& opts) {
  Formula c1 = conclusion_of(env, t1);
  Formula c2 = conclusion_of(env, t2);
  if (!alpha_eq(c1, c2))
    throw SignatureMismatch("equiv: conclusions differ: " + print_formula(c1) + " vs " +
                            print_formula(c2));
  Term k1, k2;
  try {
    k1 = canonicalize(env, t1, th, opts.fuel);
    k2 = canonicalize(env, t2, th, opts.fuel);
  } catch (const FuelExhaustedError&) {
    return {VerdictKind::Unknown, UnknownReason::FuelExhausted};
  }
  if (alpha_eq_term(k1, k2)) return {VerdictKind::Equal, UnknownReason::None};
  if (th != Theory::BetaEtaEpsTilde) return {VerdictKind::Distinct, UnknownReason::None};
  if (eta_search_meet(env, k1, k2, th, opts)) return {VerdictKind::Equal, UnknownReason::None};
  return {VerdictKind::Unknown, UnknownReason::IncompletePipeline};
}

bool check_naturality(const NaturalityInstance& inst, std::uint64_t fuel) {
  if (!is_sp_x(inst.conclusion, inst.x))
    throw PreconditionViolation("check_naturality: conclusion is not sp-x");
  for (const auto& kv : inst.env.items())
    if (!is_sp_x(kv.second, inst.x))
      throw PreconditionViolation("check_naturality: assumption is not sp-x");
  if (!is_x_safe(inst.term, inst.x))
    throw PreconditionViolation("check_naturality: derivation is not x-safe");

  NameGen labels;
  labels.reserve_all(all_labels(inst.term));
  labels.reserve_all(all_labels(inst.d));
  labels.reserve(inst.d_hyp);
  for (const auto& kv : inst.env.items()) labels.reserve(kv.first);
  for (const auto& kv : inst.d_env.items()) labels.reserve(kv.first);

  // route 1: instantiate at A, then C-expand the conclusion
  Term t_at_a = subst_type_in_term(inst.term, inst.from_f, inst.x);
  Label src = labels.fresh("s");
  Term cexp_c = c_expand(inst.conclusion, inst.x, inst.d, inst.d_hyp, src);
  Term route1 = graft(cexp_c, src, t_at_a, GraftPolicy::AvoidCapture);

  // route 2: C-expand every assumption, then instantiate at B
  Term t_at_b = subst_type_in_term(inst.term, inst.to_f, inst.x);
  Term route2 = t_at_b;
  for (const auto& [lab, g] : inst.env.items()) {
    Term w = c_expand(g, inst.x, inst.d, inst.d_hyp, lab);
    route2 = graft(route2, lab, w, GraftPolicy::AvoidCapture);
  }

  // both prove C[B/x] from Γ[A/x] and Δ
  Env joint;
  for (const auto& kv : inst.env.items())
    joint.bind(kv.first, subst_formula(kv.second, inst.from_f, inst.x));
  for (const auto& kv : inst.d_env.items())
    if (!joint.lookup(kv.first)) joint.bind(kv.first, kv.second);

  Term n1 = run(joint, route1, kBeta, fuel);
  Term n2 = run(joint, route2, kBeta, fuel);
  return alpha_eq_term(n1, n2);
}

bool SuiteReport::all_passed() const {
  for (const auto& f : families)
    if (f.failures) return false;
  return true;
}

std::string SuiteReport::to_text() const {
  std::string out;
  for (const auto& f : families) {
    out += f.family + ": cases=" + std::to_string(f.cases) + " passes=" +
           std::to_string(f.passes) + " failures=" + std::to_string(f.failures);
    if (!f.failing_seeds.empty()) {
      out += " seeds=[";
      for (std::size_t i = 0; i < f.failing_seeds.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(f.failing_seeds[i]);
      }
      out += "]";
    }
    out += "\n";
  }
  return out;
}

std::string SuiteReport::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& f : families) {
    nlohmann::json e;
    e["family"] = f.family;
    e["cases"] = f.cases;
    e["passes"] = f.passes;
    e["failures"] = f.failures;
    e["seeds"] = f.failing_seeds;
    j.push_back(e);
  }
  return j.dump(2);
}

}  // namespace ni2
