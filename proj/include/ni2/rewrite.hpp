#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ni2/formula.hpp"
#include "ni2/term.hpp"
#include "ni2/typecheck.hpp"

namespace ni2 {

enum class Rule {
  BetaImp,
  BetaAll,
  BetaOr,
  Beta0,
  EtaImpRed,
  EtaAllRed,
  EtaOrRed,
  GammaOr,
  GammaGOr,
  Eps,
};

const char* rule_name(Rule r);
using RuleSet = std::vector<Rule>;

struct NotARedex : Error {
  using Error::Error;
};
struct IllegalSplit : Error {
  using Error::Error;
};
struct WouldLoop : Error {
  using Error::Error;
};
struct FuelExhaustedError : Error {
  using Error::Error;
};

// ---- one-hole contexts ------------------------------------------------------

// Atomic frames; frames[0] sits right at the hole, frames.back() at the root
// of the plugged tree.
struct K1App { Term arg; };        // hole in function position
struct K1Inst { Formula at; };     // hole under ∀E
struct K2 { Term fun; };           // hole in argument position, consuming
struct K3Imp { Label lab; Formula hyp_type; };
struct K3All { Var var; };
struct K4 { Term fun; };           // hole in argument position, discriminator

using Frame = std::variant<K1App, K1Inst, K2, K3Imp, K3All, K4>;

struct Context {
  std::vector<Frame> frames;
  Formula hole_type;
  Formula result_type;

  bool empty() const { return frames.empty(); }
  bool is_discriminator() const;  // possibly empty K4-chain
};

Term plug(const Context& c, Term t);
Context compose_contexts(const Context& outer, const Context& inner);

// Functorial action: a context of type α→β lifted to f[α/x]→f[β/x]; f sp-x.
Context lift_context(const Context& c, const Formula& f, const Var& x);

// ---- ε machinery ------------------------------------------------------------

// A schematic permutation instance: the subterm at `anchor` is
// context[ spine⟨from⟩ with chosen leaves replaced by minor subtrees ], and
// the step rewrites it to spine⟨to⟩ with each minor wrapped by the lifted
// context.
struct EpsilonSplit {
  Position anchor;
  Position head;  // the ∀E at the top of the spine (identifies the split)
  Var schematic;
  Formula from;
  Formula to;
  Term spine;  // term over the schematic variable; chosen leaves are Hyp(h_i)
  std::vector<std::pair<Label, Formula>> chosen;  // h_i ↦ sp-schematic pattern
  std::vector<Term> minors;                       // subtrees currently at the h_i
  Context context;                                // type from→to
};

// Automatic detection: spines headed by ∀E on a quasi sp-X premise, fully
// eliminated, with a maximal legal (non-discriminator) enclosing context.
std::vector<EpsilonSplit> epsilon_detect(const Env& env, const Term& t);

// Splits whose context is a (nonempty) pure discriminator chain; these drive
// the oriented half of the ~-canonicalizer.
std::vector<EpsilonSplit> discriminator_detect(const Env& env, const Term& t);

// Like epsilon_detect but also keeps splits whose context collection stopped
// against a discriminator; the equivalence search may use these even though
// normalization does not.
std::vector<EpsilonSplit> epsilon_detect_all(const Env& env, const Term& t);

Term epsilon_step(const Env& env, const Term& t, const EpsilonSplit& s);

// ---- redex enumeration and stepping ------------------------------------------

struct Redex {
  Position pos;  // β/η: the redex node; γ/γ_g: the ∨E being permuted;
                 // ε: the head ∀E of the spine
  Rule rule;
};

std::vector<Redex> find_redexes(const Env& env, const Term& t, const RuleSet& rules);

Term step(const Env& env, const Term& t, const Position& pos, Rule rule);

// ---- normalization -----------------------------------------------------------

enum class StrategyKind { LeftmostOutermost, LeftmostInnermost, RandomSeeded };

struct Strategy {
  StrategyKind kind = StrategyKind::LeftmostOutermost;
  std::uint64_t seed = 0;
};

enum class Terminated { NormalForm, FuelExhausted };

struct TraceStep {
  Rule rule;
  Position pos;
  std::size_t nodes_before;
  std::size_t nodes_after;
};

struct RewriteTrace {
  std::vector<TraceStep> steps;
  Terminated terminated = Terminated::NormalForm;
};

std::string trace_to_json(const RewriteTrace& trace);

struct NormalizeResult {
  Term term;
  RewriteTrace trace;
};

NormalizeResult normalize(const Env& env, const Term& t, const RuleSet& rules,
                          const Strategy& strategy, std::uint64_t fuel);

// ~-canonical form: β₀ plus oriented discriminator-chain permutation,
// iterated to a fixpoint. Throws FuelExhaustedError when fuel runs out.
Term tilde_canonical(const Env& env, const Term& t, std::uint64_t fuel = 100000);

bool tilde_equal(const Env& env, const Term& a, const Term& b, std::uint64_t fuel = 100000);

// η-expansion at a ⊃- or ∀-typed position; refuses to create an immediate
// β-redex with the parent.
Term eta_expand_at(const Env& env, const Term& t, const Position& pos);

Term subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, const Term& repl);

}  // namespace ni2
