#pragma once

#include <string>

#include "ni2/formula.hpp"
#include "ni2/term.hpp"

namespace ni2 {

struct ParseError : Error {
  ParseError(std::string msg, int line, int col)
      : Error(std::move(msg) + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

Formula parse_formula(const std::string& src);
Term parse_term(const std::string& src);

}  // namespace ni2
