#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ni2/rewrite.hpp"
#include "ni2/term.hpp"
#include "ni2/typecheck.hpp"

namespace ni2 {

enum class Theory { Beta, BetaEta, BetaEpsTilde, BetaEtaEpsTilde };

Theory theory_from_name(const std::string& name);
const char* theory_name(Theory th);

struct SignatureMismatch : Error {
  using Error::Error;
};

enum class VerdictKind { Equal, Distinct, Unknown };
enum class UnknownReason { None, FuelExhausted, IncompletePipeline };

struct Verdict {
  VerdictKind kind;
  UnknownReason reason = UnknownReason::None;
};

const char* verdict_str(const Verdict& v);

// Canonical form under a theory's pipeline. May throw FuelExhaustedError.
Term canonicalize(const Env& env, const Term& t, Theory th, std::uint64_t fuel = 100000);

struct EquivOptions {
  std::uint64_t fuel = 100000;
  int eta_search_depth = 3;
  std::size_t eta_search_width = 64;
};

Verdict equiv(const Env& env, const Term& t1, const Term& t2, Theory th,
              const EquivOptions& opts = {});

// The naturality square for an sp-x, x-safe derivation t of c from env, against
// a derivation d of to_f from its designated hypothesis d_hyp : from_f (plus Δ,
// supplied in d_env).
struct NaturalityInstance {
  Env env;           // Γ, sp-x types
  Term term;         // t, conclusion c
  Formula conclusion;
  Var x;
  Term d;
  Label d_hyp;
  Formula from_f;  // A
  Formula to_f;    // B
  Env d_env;       // Δ
};

bool check_naturality(const NaturalityInstance& inst, std::uint64_t fuel = 100000);

struct FamilyReport {
  std::string family;
  int cases = 0;
  int passes = 0;
  int failures = 0;
  std::vector<std::uint64_t> failing_seeds;
};

struct SuiteReport {
  std::vector<FamilyReport> families;
  bool all_passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

SuiteReport theorem_suite(std::uint64_t seed, int count);

}  // namespace ni2
