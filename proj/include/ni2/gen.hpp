#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "ni2/equivalence.hpp"
#include "ni2/formula.hpp"
#include "ni2/term.hpp"
#include "ni2/typecheck.hpp"

namespace ni2 {

// Seeded, type-directed generation of well-typed derivations and of the
// instance families the harnesses replay.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
  }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(eng_) < p; }
  std::uint64_t u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct GenConfig {
  int formula_depth = 2;
  int term_depth = 5;
  bool allow_or = true;
  bool allow_forall = true;
  std::size_t max_nodes = 40;
  int redex_injections = 1;
};

struct TermInstance {
  Env env;
  Term term;
};

class TermGen {
 public:
  TermGen(std::uint64_t seed, GenConfig cfg = {});

  Formula random_formula(int depth, bool allow_or);
  std::optional<Term> generate(const Env& env, const Formula& goal, int depth);

  // environment of stock hypotheses (with or without ∨ / ∀-typed entries)
  Env playground(bool with_or, bool with_foralls = true) const;

  // well-typed term over the playground env; retries until non-trivial
  TermInstance typed_term(Fragment frag);

  // wrap a random subterm in a vacuous β-redex (preserves typing)
  Term inject_beta(const Env& env, const Term& t);
  // η-expand at a random legal position
  Term inject_eta_expansion(const Env& env, const Term& t);

  // never instantiate a quantifier with a formula containing this variable
  void forbid_instantiations_with(Var v) { forbidden_inst_ = std::move(v); }

  Rng& rng() { return rng_; }
  const GenConfig& config() const { return cfg_; }

 private:
  struct ElimStep {
    bool is_app;
    Formula data;  // app: argument type; inst: instantiation formula
  };
  bool elim_plans(const Formula& f, const Formula& goal, int budget,
                  std::vector<ElimStep>& cur, std::vector<std::vector<ElimStep>>& out);
  std::vector<Formula> inst_candidates(const Formula& goal);

  Rng rng_;
  GenConfig cfg_;
  std::vector<Var> pool_;
  std::optional<Var> forbidden_inst_;
};

// ---- instance families --------------------------------------------------------

struct EquationInstance {
  Env env;
  Term lhs;
  Term rhs;
};

// a β-redex pair (t, one-step reduct) in NI²∨
EquationInstance gen_beta_pair(std::uint64_t seed);

// γ_g∨ pair: ∨E followed by a continuation frame vs the permuted form
EquationInstance gen_gamma_g_pair(std::uint64_t seed, bool m_closed);

// η∨ pair
EquationInstance gen_eta_or_pair(std::uint64_t seed, bool m_closed);

// m-closed ε instance (closed head) for the §5 schema
EquationInstance gen_eps_mc_pair(std::uint64_t seed);

// sp-x, x-safe derivation plus an arbitrary d : B from A for naturality
NaturalityInstance gen_naturality_instance(std::uint64_t seed);

// NI² derivation whose non-atomic ∀E premises are quasi sp-x
struct OverflowInstance {
  Env env;
  Term term;
  Var x;
};
OverflowInstance gen_overflow_instance(std::uint64_t seed);

// NI²∨ derivation over the full playground
TermInstance gen_ni2or_term(std::uint64_t seed, std::size_t max_nodes);

// propositional NI∨ derivation (no ∀ rules), the FF-translation domain
TermInstance gen_prop_term(std::uint64_t seed, std::size_t max_nodes);

// NI² term for the SN / confluence harnesses
TermInstance gen_ni2_term(std::uint64_t seed, std::size_t max_nodes);

// Church numeral ⌜n⌝ at ∀X((X⊃X)⊃X⊃X)
Term church_numeral(int n);

// the non-terminating γ_g configuration
TermInstance gamma_loop_term();

// the Prop.-style strictness pair: one ε-step apart, distinct βη-normal forms
EquationInstance epsilon_strict_pair();

// mechanical replay of the η∨-preservation chain: η-expansions, one ε-step,
// then β- and η-normalization; true when both ends meet up to α
bool replay_eta_or_chain(const EquationInstance& inst);

}  // namespace ni2
