#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ni2/formula.hpp"
#include "ni2/term.hpp"

namespace ni2 {

enum class Fragment { NI2or, NI2, NI2at };

// Ordered open-assumption map; labels distinct.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<Label, Formula>> init);
  void bind(Label l, Formula f);          // throws on duplicate label
  const Formula* lookup(const Label& l) const;
  const std::vector<std::pair<Label, Formula>>& items() const { return items_; }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<std::pair<Label, Formula>> items_;
};

enum class CheckErrorKind {
  TypeMismatch,
  UnboundLabel,
  EigenvariableViolation,
  FragmentViolation,
};

using Position = std::vector<std::size_t>;

std::string position_str(const Position& p);

struct CheckError : Error {
  CheckError(CheckErrorKind kind, Position pos, const std::string& msg)
      : Error(msg + " [at " + position_str(pos) + "]"), kind(kind), pos(std::move(pos)) {}
  CheckErrorKind kind;
  Position pos;
};

struct Judgment {
  Env env;
  Term term;
  Formula conclusion;
};

Judgment typecheck(const Env& env, const Term& t, Fragment fragment = Fragment::NI2or);
Formula conclusion_of(const Env& env, const Term& t, Fragment fragment = Fragment::NI2or);

// Type of the subterm at `pos`, plus the hypotheses bound along the path.
struct SubtermInfo {
  Formula type;
  Env scope;  // env extended with binders passed on the way down
};
SubtermInfo subterm_info(const Env& env, const Term& t, const Position& pos,
                         Fragment fragment = Fragment::NI2or);

// Visit every subterm with its type and local scope (checking as it goes).
void visit_typed(const Env& env, const Term& t, Fragment fragment,
                 const std::function<void(const Position&, const Term&, const Formula&, const Env&)>& fn);

bool is_x_safe(const Term& t, const Var& x);

// h(assumption)=1, unary rules h+1, ⊃E: h1+h2+2^s(major)+s(major). Rejects ∨.
std::uint64_t measure_height(const Env& env, const Term& t);

}  // namespace ni2
