#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ni2 {

using Var = std::string;

struct FNode;
using Formula = std::shared_ptr<const FNode>;

enum class FKind { Atom, Imp, Forall, Or };

// Immutable formula tree. Shared freely; never mutated after construction.
struct FNode {
  FKind kind;
  Var name;     // Atom: variable name; Forall: binder
  Formula lhs;  // Imp/Or: left; Forall: body
  Formula rhs;  // Imp/Or: right
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotL2 : Error {
  using Error::Error;
};
struct NotSpX : Error {
  using Error::Error;
};

Formula atom(Var v);
Formula imp(Formula a, Formula b);
Formula forall(Var x, Formula body);
Formula disj(Formula a, Formula b);

inline bool is_atom(const Formula& f) { return f->kind == FKind::Atom; }
inline bool is_imp(const Formula& f) { return f->kind == FKind::Imp; }
inline bool is_forall(const Formula& f) { return f->kind == FKind::Forall; }
inline bool is_or(const Formula& f) { return f->kind == FKind::Or; }

bool contains_or(const Formula& f);

std::set<Var> free_vars(const Formula& f);
std::set<Var> all_vars(const Formula& f);  // free and bound

// Deterministic fresh-name supply: base "Y" yields "Y#1", "Y#2", ... skipping
// names in the avoid set. A trailing "#k" on the base is stripped first.
class NameGen {
 public:
  NameGen() = default;
  explicit NameGen(std::set<std::string> avoid) : used_(std::move(avoid)) {}
  void reserve(const std::string& n) { used_.insert(n); }
  void reserve_all(const std::set<std::string>& ns) { used_.insert(ns.begin(), ns.end()); }
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
};

// Capture-avoiding substitution f[a/x].
Formula subst_formula(const Formula& f, const Formula& a, const Var& x);

bool alpha_eq(const Formula& f, const Formula& g);

// Key that is identical for alpha-equal formulas (de Bruijn print).
std::string alpha_key(const Formula& f);

// Sub-formula closure; defined on the ∨-free language only.
std::vector<Formula> subformulas(const Formula& f);

bool is_sp_x(const Formula& f, const Var& x);
bool is_quasi_sp_x(const Formula& f, const Var& x);

// Spine decomposition of an sp-X formula (or of the body of a quasi sp-X
// formula): ∀Y̅1(F1 ⊃ ... ∀Y̅n(Fn ⊃ ∀Z̅ T)...).
struct SpSpine {
  struct Block {
    std::vector<Var> quants;
    Formula antecedent;
  };
  std::vector<Block> blocks;
  std::vector<Var> tail_quants;
  Var tail;
};

SpSpine decompose_sp(const Formula& f, const Var& x);
Formula reassemble_sp(const SpSpine& s);

// s(X)=0, s(a⊃b)=s(a)+s(b), s(∀X a)=s(a)+1. Rejects ∨.
std::uint64_t measure_size(const Formula& f);

std::string print_formula(const Formula& f);

}  // namespace ni2
