#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "relhorn/ast.hpp"

namespace relhorn::lang {

// A program state maps variables to integer values. Reads of undefined
// variables are interpreter errors, never silent zeros.
using State = std::map<std::string, std::int64_t>;

struct EvalLimits {
  long max_steps = 1000000;
  int max_depth = 128;
};

enum class RunStatus {
  Done,
  BudgetExhausted,   // step or depth budget exceeded (likely nontermination)
  BottomReached,     // execution hit a `bot` placeholder in a bounded program
  UndefinedVariable,
  Overflow,
};

struct RunResult {
  RunStatus status = RunStatus::Done;
  State state;
  std::string detail;

  bool ok() const { return status == RunStatus::Done; }
};

// Evaluates per the small-step rules: skip/assign/if/call/seq. A call binds
// parameters to argument values in a fresh frame, evaluates the body there,
// and copies outputs into the caller's result variables. Wrapped commands are
// transparent; Bottom yields BottomReached.
RunResult eval(const CommandPtr& cmd, const LookupTable& table, State sigma,
               const EvalLimits& limits = {});

struct ProductRunResult {
  RunResult left;
  RunResult right;
  bool ok() const { return left.ok() && right.ok(); }
};

// Componentwise product evaluation; the two sides share no vocabulary so the
// order of evaluation is unobservable.
ProductRunResult eval_product(const CommandPtr& c0, const CommandPtr& c1,
                              const LookupTable& t0, const LookupTable& t1, State sigma,
                              State tau, const EvalLimits& limits = {});

}  // namespace relhorn::lang
