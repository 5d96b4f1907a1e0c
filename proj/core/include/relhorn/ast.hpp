#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace relhorn::lang {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

enum class BinOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnOp { Neg, Not };

bool is_comparison(BinOp op);
bool is_arith(BinOp op);
bool is_connective(BinOp op);
const char* op_text(BinOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct IntLit {
    std::int64_t value;
  };
  struct BoolLit {
    bool value;
  };
  struct Var {
    std::string name;
  };
  struct Binary {
    BinOp op;
    ExprPtr lhs;
    ExprPtr rhs;
  };
  struct Unary {
    UnOp op;
    ExprPtr operand;
  };

  std::variant<IntLit, BoolLit, Var, Binary, Unary> node;
  SourceLoc loc;
};

ExprPtr make_int(std::int64_t v, SourceLoc loc = {});
ExprPtr make_bool(bool v, SourceLoc loc = {});
ExprPtr make_var(std::string name, SourceLoc loc = {});
ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
ExprPtr make_unary(UnOp op, ExprPtr operand, SourceLoc loc = {});

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

// Core command grammar plus the two proof-machinery constructors: Wrapped
// marks a procedure body entered by the Call rule, Bottom replaces calls cut
// off by the bounding transformation. Neither appears in user-parsed source.
struct Command {
  struct Skip {};
  struct Assign {
    std::string target;
    ExprPtr rhs;
  };
  struct If {
    ExprPtr cond;
    CommandPtr then_branch;
    CommandPtr else_branch;
  };
  struct Call {
    std::vector<std::string> results;
    std::string callee;
    std::vector<ExprPtr> args;
  };
  struct Seq {
    CommandPtr first;
    CommandPtr second;
  };
  struct Wrapped {
    CommandPtr inner;
  };
  struct Bottom {};

  std::variant<Skip, Assign, If, Call, Seq, Wrapped, Bottom> node;
  SourceLoc loc;
};

CommandPtr make_skip(SourceLoc loc = {});
CommandPtr make_assign(std::string target, ExprPtr rhs, SourceLoc loc = {});
CommandPtr make_if(ExprPtr cond, CommandPtr t, CommandPtr e, SourceLoc loc = {});
CommandPtr make_call(std::vector<std::string> results, std::string callee,
                     std::vector<ExprPtr> args, SourceLoc loc = {});
CommandPtr make_seq(CommandPtr first, CommandPtr second, SourceLoc loc = {});
CommandPtr make_wrapped(CommandPtr inner);
CommandPtr make_bottom(SourceLoc loc = {});

bool is_skip(const Command& c);
bool is_bottom(const Command& c);
bool is_wrapped(const Command& c);

// Canonical flatten view: right-associated Seq nesting unfolded into a list
// of non-Seq commands. Skips are dropped; an all-skip command yields the
// empty vector (callers substitute a singleton skip where needed).
std::vector<CommandPtr> flatten(const CommandPtr& c);

// Rebuilds a right-associated Seq from a flat list; empty list gives skip.
CommandPtr seq_of(const std::vector<CommandPtr>& cmds);

struct Procedure {
  std::string name;
  std::vector<std::string> params;
  CommandPtr body;
  std::vector<std::string> outputs;
};

class LookupTable {
 public:
  LookupTable() = default;

  void define(Procedure p);
  bool contains(const std::string& name) const;
  const Procedure& at(const std::string& name) const;
  const std::map<std::string, Procedure>& procedures() const { return procs_; }

 private:
  std::map<std::string, Procedure> procs_;
};

struct Program {
  CommandPtr main;
  LookupTable table;
};

// Structural equality and a canonical textual key (used for memoization and
// goal identity). The canonical form prints flattened sequences.
std::string canonical_text(const CommandPtr& c);
std::string canonical_text(const ExprPtr& e);
bool structurally_equal(const CommandPtr& a, const CommandPtr& b);
bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Variable sets. frame_vars is the full frame of a procedure body: params,
// outputs, and every variable read or assigned by the body.
void collect_vars(const ExprPtr& e, std::vector<std::string>& out);
void collect_vars(const CommandPtr& c, std::vector<std::string>& out);
std::vector<std::string> frame_vars(const Procedure& p);
std::vector<std::string> frame_vars(const CommandPtr& main);

// Variables read before being assigned (inputs of a command).
std::vector<std::string> inputs_of(const CommandPtr& c);

// Call targets appearing anywhere in a command.
std::vector<std::string> call_targets(const CommandPtr& c);

}  // namespace relhorn::lang
