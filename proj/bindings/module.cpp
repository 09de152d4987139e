#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ni2/equivalence.hpp"
#include "ni2/gen.hpp"
#include "ni2/parse.hpp"
#include "ni2/rewrite.hpp"
#include "ni2/translate.hpp"
#include "ni2/typecheck.hpp"

namespace py = pybind11;
using namespace ni2;

namespace {

Env env_from(const std::vector<std::pair<std::string, std::string>>& assumes) {
  Env env;
  for (const auto& [l, f] : assumes) env.bind(l, parse_formula(f));
  return env;
}

Fragment fragment_from(const std::string& s) {
  if (s == "ni2or") return Fragment::NI2or;
  if (s == "ni2") return Fragment::NI2;
  if (s == "ni2at") return Fragment::NI2at;
  throw Error("unknown fragment: " + s);
}

RuleSet rules_for(const std::string& theory) {
  if (theory == "beta") return {Rule::BetaImp, Rule::BetaAll, Rule::BetaOr};
  if (theory == "betaeta")
    return {Rule::BetaImp, Rule::BetaAll, Rule::BetaOr,
            Rule::EtaImpRed, Rule::EtaAllRed, Rule::EtaOrRed};
  if (theory == "betaeps") return {Rule::BetaImp, Rule::BetaAll, Rule::BetaOr, Rule::Eps};
  if (theory == "betaetaeps")
    return {Rule::BetaImp, Rule::BetaAll, Rule::BetaOr, Rule::Eps,
            Rule::EtaImpRed, Rule::EtaAllRed, Rule::EtaOrRed};
  throw Error("unknown theory: " + theory);
}

}  // namespace

PYBIND11_MODULE(_ni2, m) {
  m.doc() = "proof-term kernel and rewriting engine for second-order natural deduction";

  m.def("parse_formula", [](const std::string& s) { return print_formula(parse_formula(s)); },
        py::arg("text"), "parse a formula and return its canonical rendering");

  m.def("parse_term", [](const std::string& s) { return print_term(parse_term(s)); },
        py::arg("text"), "parse a term and return its canonical rendering");

  m.def(
      "check",
      [](const std::string& term, const std::vector<std::pair<std::string, std::string>>& assume,
         const std::string& fragment) {
        Judgment j = typecheck(env_from(assume), parse_term(term), fragment_from(fragment));
        return print_formula(j.conclusion);
      },
      py::arg("term"), py::arg("assume") = std::vector<std::pair<std::string, std::string>>{},
      py::arg("fragment") = "ni2or",
      "typecheck a term and return its conclusion formula");

  m.def("rp_formula",
        [](const std::string& f) { return print_formula(rp_formula(parse_formula(f))); },
        py::arg("formula"), "sum-free translation of a formula");

  m.def(
      "rp_term",
      [](const std::string& term,
         const std::vector<std::pair<std::string, std::string>>& assume) {
        return print_term(rp_derivation(env_from(assume), parse_term(term)));
      },
      py::arg("term"), py::arg("assume") = std::vector<std::pair<std::string, std::string>>{},
      "sum-free translation of a derivation");

  m.def(
      "ff_overflow",
      [](const std::string& term,
         const std::vector<std::pair<std::string, std::string>>& assume) {
        return print_term(ff_overflow(env_from(assume), parse_term(term)));
      },
      py::arg("term"), py::arg("assume") = std::vector<std::pair<std::string, std::string>>{},
      "atomic-instantiation form of a translated derivation");

  m.def(
      "normalize",
      [](const std::string& term, const std::string& theory,
         const std::vector<std::pair<std::string, std::string>>& assume, std::uint64_t fuel) {
        Env env = env_from(assume);
        Term t = parse_term(term);
        typecheck(env, t);
        NormalizeResult r = normalize(env, t, rules_for(theory), {}, fuel);
        return py::make_tuple(print_term(r.term),
                              r.trace.terminated == Terminated::NormalForm ? "NormalForm"
                                                                           : "FuelExhausted",
                              trace_to_json(r.trace));
      },
      py::arg("term"), py::arg("theory") = "beta",
      py::arg("assume") = std::vector<std::pair<std::string, std::string>>{},
      py::arg("fuel") = 100000,
      "normalize a term; returns (term, terminated, trace_json)");

  m.def(
      "equiv",
      [](const std::string& a, const std::string& b, const std::string& theory,
         const std::vector<std::pair<std::string, std::string>>& assume, std::uint64_t fuel) {
        Env env = env_from(assume);
        EquivOptions opts;
        opts.fuel = fuel;
        Verdict v = equiv(env, parse_term(a), parse_term(b), theory_from_name(theory), opts);
        return std::string(verdict_str(v));
      },
      py::arg("a"), py::arg("b"), py::arg("theory") = "betaetaeps",
      py::arg("assume") = std::vector<std::pair<std::string, std::string>>{},
      py::arg("fuel") = 100000, "decide proof identity; Equal/Distinct/Unknown(...)");

  m.def("suite",
        [](std::uint64_t seed, int count) { return theorem_suite(seed, count).to_json(); },
        py::arg("seed"), py::arg("count") = 10,
        "run the theorem-instance families; returns a JSON report");

  m.def("church_numeral", [](int n) { return print_term(church_numeral(n)); }, py::arg("n"));

  py::register_exception<ParseError>(m, "NiParseError");
  py::register_exception<CheckError>(m, "NiCheckError");
  py::register_exception<Error>(m, "NiError");
}
