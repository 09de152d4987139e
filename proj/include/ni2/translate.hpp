#pragma once

#include "ni2/formula.hpp"
#include "ni2/term.hpp"
#include "ni2/typecheck.hpp"

namespace ni2 {

struct NotRpImage : Error {
  using Error::Error;
};
struct PreconditionViolation : Error {
  using Error::Error;
};

// ∨-free image: Y* = Y, (A⊃B)* = A*⊃B*, (∀Y A)* = ∀Y A*,
// (A∨B)* = ∀X((A*⊃X)⊃(B*⊃X)⊃X) with X fresh.
Formula rp_formula(const Formula& f);

// Derivation translation; env types are translated pointwise by rp_formula.
Term rp_derivation(const Env& env, const Term& t);
Term rp_derivation(const Term& t);
Env rp_env(const Env& env);

// C-expansion of d relative to x. d proves B from its designated hypothesis
// d_hyp : A (plus Δ); the result proves C[B/x] from source_hyp : C[A/x] and Δ.
Term c_expand(const Formula& c, const Var& x, const Term& d, const Label& d_hyp,
              const Label& source_hyp);

// The two halves of the η-long expansion of an assumption of C (sp-x, tail x).
struct EtaSpines {
  // elim applied to a term of type C[α/x] produces the tail instance; intro
  // closes it back. hyp_labels are the fresh minor-premise hypotheses, with
  // their (x-free) types.
  std::vector<std::pair<Label, Formula>> hyp_labels;
  // frames are realized through the rewrite module's Context; stored here as
  // the decomposition data needed to build either half.
  SpSpine spine;
  Var x;
};

EtaSpines eta_spines(const Formula& c, const Var& x);

// Apply the elimination (resp. introduction) half around a term.
Term apply_elim_half(const EtaSpines& sp, Term t);
Term apply_intro_half(const EtaSpines& sp, Term t);

// Instantiation overflow on RP-images (case-by-case on the instantiation
// formula). Every ∀E premise must be of sum-encoding shape ∀X((A⊃X)⊃(B⊃X)⊃X)
// or ∀X X.
Term ff_overflow(const Env& env, const Term& t);
Term ff_overflow(const Term& t);

// Generalized instantiation overflow: every non-atomic ∀E premise must be
// quasi sp-X; output typechecks in NI2at with the same env and conclusion.
Term gen_overflow(const Env& env, const Term& t, const Var& x);

}  // namespace ni2
