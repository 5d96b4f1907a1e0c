#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "relhorn/ast.hpp"

namespace relhorn::lang {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, SourceLoc loc)
      : std::runtime_error(msg + " (line " + std::to_string(loc.line) + ", col " +
                           std::to_string(loc.col) + ")"),
        loc(loc),
        message(msg) {}
  SourceLoc loc;
  std::string message;
};

struct ParseOptions {
  // Accepts `bot` statements and `#` in identifiers, so that dumped bounded
  // programs can be read back for golden-file tests.
  bool allow_bounded_syntax = false;
};

struct ParseResult {
  Program program;
  std::vector<std::string> warnings;  // lint findings, e.g. unassigned outputs
};

// Parses a `.rvl` program: procedures followed by `main: stmt`. Performs name
// resolution, arity checks and type checking; throws ParseError on failure.
ParseResult parse_program(const std::string& source, ParseOptions opts = {});

// Parses a single boolean-typed expression (the `.rprop` formula syntax).
ExprPtr parse_formula(const std::string& source);

// Parses a property file: two lines `pre: <formula>` and `post: <formula>`.
struct Property {
  ExprPtr pre;
  ExprPtr post;
};
Property parse_property(const std::string& source);

}  // namespace relhorn::lang
