#pragma once

#include <string>

#include "relhorn/ast.hpp"

namespace relhorn::lang {

// Pretty-prints in concrete `.rvl` syntax. Bottom renders as `bot`; the
// output of a bounded program re-parses under ParseOptions::allow_bounded_syntax.
std::string print_command(const CommandPtr& c, int indent = 0);
std::string print_program(const Program& p);

}  // namespace relhorn::lang
