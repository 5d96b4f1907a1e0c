#include "relhorn/ast.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace relhorn::lang {

bool is_comparison(BinOp op) {
  switch (op) {
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
      return true;
    default:
      return false;
  }
}

bool is_arith(BinOp op) {
  return op == BinOp::Add || op == BinOp::Sub || op == BinOp::Mul;
}

bool is_connective(BinOp op) { return op == BinOp::And || op == BinOp::Or; }

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

ExprPtr make_int(std::int64_t v, SourceLoc loc) {
  return std::make_shared<Expr>(Expr{Expr::IntLit{v}, loc});
}
ExprPtr make_bool(bool v, SourceLoc loc) {
  return std::make_shared<Expr>(Expr{Expr::BoolLit{v}, loc});
}
ExprPtr make_var(std::string name, SourceLoc loc) {
  return std::make_shared<Expr>(Expr{Expr::Var{std::move(name)}, loc});
}
ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs, SourceLoc loc) {
  return std::make_shared<Expr>(Expr{Expr::Binary{op, std::move(lhs), std::move(rhs)}, loc});
}
ExprPtr make_unary(UnOp op, ExprPtr operand, SourceLoc loc) {
  return std::make_shared<Expr>(Expr{Expr::Unary{op, std::move(operand)}, loc});
}

CommandPtr make_skip(SourceLoc loc) {
  return std::make_shared<Command>(Command{Command::Skip{}, loc});
}
CommandPtr make_assign(std::string target, ExprPtr rhs, SourceLoc loc) {
  return std::make_shared<Command>(Command{Command::Assign{std::move(target), std::move(rhs)}, loc});
}
CommandPtr make_if(ExprPtr cond, CommandPtr t, CommandPtr e, SourceLoc loc) {
  return std::make_shared<Command>(
      Command{Command::If{std::move(cond), std::move(t), std::move(e)}, loc});
}
CommandPtr make_call(std::vector<std::string> results, std::string callee,
                     std::vector<ExprPtr> args, SourceLoc loc) {
  return std::make_shared<Command>(
      Command{Command::Call{std::move(results), std::move(callee), std::move(args)}, loc});
}
CommandPtr make_seq(CommandPtr first, CommandPtr second, SourceLoc loc) {
  return std::make_shared<Command>(Command{Command::Seq{std::move(first), std::move(second)}, loc});
}
CommandPtr make_wrapped(CommandPtr inner) {
  return std::make_shared<Command>(Command{Command::Wrapped{std::move(inner)}, SourceLoc{}});
}
CommandPtr make_bottom(SourceLoc loc) {
  return std::make_shared<Command>(Command{Command::Bottom{}, loc});
}

bool is_skip(const Command& c) { return std::holds_alternative<Command::Skip>(c.node); }
bool is_bottom(const Command& c) { return std::holds_alternative<Command::Bottom>(c.node); }
bool is_wrapped(const Command& c) { return std::holds_alternative<Command::Wrapped>(c.node); }

namespace {

void flatten_into(const CommandPtr& c, std::vector<CommandPtr>& out) {
  if (const auto* seq = std::get_if<Command::Seq>(&c->node)) {
    flatten_into(seq->first, out);
    flatten_into(seq->second, out);
    return;
  }
  if (is_skip(*c)) return;
  out.push_back(c);
}

}  // namespace

std::vector<CommandPtr> flatten(const CommandPtr& c) {
  std::vector<CommandPtr> out;
  flatten_into(c, out);
  return out;
}

CommandPtr seq_of(const std::vector<CommandPtr>& cmds) {
  if (cmds.empty()) return make_skip();
  CommandPtr acc = cmds.back();
  for (auto it = cmds.rbegin() + 1; it != cmds.rend(); ++it) {
    acc = make_seq(*it, acc);
  }
  return acc;
}

void LookupTable::define(Procedure p) {
  auto name = p.name;
  if (procs_.count(name)) {
    throw std::runtime_error("duplicate procedure: " + name);
  }
  procs_.emplace(std::move(name), std::move(p));
}

bool LookupTable::contains(const std::string& name) const { return procs_.count(name) > 0; }

const Procedure& LookupTable::at(const std::string& name) const {
  auto it = procs_.find(name);
  if (it == procs_.end()) throw std::runtime_error("unknown procedure: " + name);
  return it->second;
}

namespace {

void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec);

int prec_of(BinOp op) {
  switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
      return 3;
    case BinOp::Add:
    case BinOp::Sub:
      return 4;
    case BinOp::Mul:
      return 5;
  }
  return 0;
}

void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec) {
  if (const auto* i = std::get_if<Expr::IntLit>(&e->node)) {
    if (i->value < 0) {
      os << "(" << i->value << ")";
    } else {
      os << i->value;
    }
  } else if (const auto* b = std::get_if<Expr::BoolLit>(&e->node)) {
    os << (b->value ? "true" : "false");
  } else if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    os << v->name;
  } else if (const auto* bin = std::get_if<Expr::Binary>(&e->node)) {
    int p = prec_of(bin->op);
    bool paren = p < parent_prec;
    if (paren) os << "(";
    print_expr(os, bin->lhs, p);
    os << " " << op_text(bin->op) << " ";
    print_expr(os, bin->rhs, p + 1);
    if (paren) os << ")";
  } else if (const auto* un = std::get_if<Expr::Unary>(&e->node)) {
    os << (un->op == UnOp::Neg ? "-" : "!");
    print_expr(os, un->operand, 100);
  }
}

void print_cmd(std::ostream& os, const CommandPtr& c) {
  if (is_skip(*c)) {
    os << "skip";
  } else if (is_bottom(*c)) {
    os << "bot";
  } else if (const auto* w = std::get_if<Command::Wrapped>(&c->node)) {
    os << "[[ " << canonical_text(w->inner) << " ]]";
  } else if (const auto* a = std::get_if<Command::Assign>(&c->node)) {
    os << a->target << " := ";
    print_expr(os, a->rhs, 0);
  } else if (const auto* i = std::get_if<Command::If>(&c->node)) {
    os << "if ";
    print_expr(os, i->cond, 0);
    os << " { " << canonical_text(i->then_branch) << " } else { "
       << canonical_text(i->else_branch) << " }";
  } else if (const auto* call = std::get_if<Command::Call>(&c->node)) {
    for (size_t k = 0; k < call->results.size(); ++k) {
      if (k) os << ", ";
      os << call->results[k];
    }
    os << " := " << call->callee << "(";
    for (size_t k = 0; k < call->args.size(); ++k) {
      if (k) os << ", ";
      print_expr(os, call->args[k], 0);
    }
    os << ")";
  } else {
    os << "skip";  // Seq handled by caller via flatten
  }
}

}  // namespace

std::string canonical_text(const ExprPtr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string canonical_text(const CommandPtr& c) {
  auto flat = flatten(c);
  if (flat.empty()) return "skip";
  std::ostringstream os;
  for (size_t k = 0; k < flat.size(); ++k) {
    if (k) os << "; ";
    print_cmd(os, flat[k]);
  }
  return os.str();
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  return canonical_text(a) == canonical_text(b);
}
bool structurally_equal(const CommandPtr& a, const CommandPtr& b) {
  return canonical_text(a) == canonical_text(b);
}

void collect_vars(const ExprPtr& e, std::vector<std::string>& out) {
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    out.push_back(v->name);
  } else if (const auto* bin = std::get_if<Expr::Binary>(&e->node)) {
    collect_vars(bin->lhs, out);
    collect_vars(bin->rhs, out);
  } else if (const auto* un = std::get_if<Expr::Unary>(&e->node)) {
    collect_vars(un->operand, out);
  }
}

void collect_vars(const CommandPtr& c, std::vector<std::string>& out) {
  if (const auto* a = std::get_if<Command::Assign>(&c->node)) {
    out.push_back(a->target);
    collect_vars(a->rhs, out);
  } else if (const auto* i = std::get_if<Command::If>(&c->node)) {
    collect_vars(i->cond, out);
    collect_vars(i->then_branch, out);
    collect_vars(i->else_branch, out);
  } else if (const auto* call = std::get_if<Command::Call>(&c->node)) {
    for (const auto& r : call->results) out.push_back(r);
    for (const auto& a : call->args) collect_vars(a, out);
  } else if (const auto* s = std::get_if<Command::Seq>(&c->node)) {
    collect_vars(s->first, out);
    collect_vars(s->second, out);
  } else if (const auto* w = std::get_if<Command::Wrapped>(&c->node)) {
    collect_vars(w->inner, out);
  }
}

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<std::string> frame_vars(const Procedure& p) {
  std::vector<std::string> v = p.params;
  v.insert(v.end(), p.outputs.begin(), p.outputs.end());
  collect_vars(p.body, v);
  return sorted_unique(std::move(v));
}

std::vector<std::string> frame_vars(const CommandPtr& main) {
  std::vector<std::string> v;
  collect_vars(main, v);
  return sorted_unique(std::move(v));
}

namespace {

void inputs_rec(const CommandPtr& c, std::set<std::string>& assigned,
                std::vector<std::string>& reads) {
  auto read_expr = [&](const ExprPtr& e) {
    std::vector<std::string> vs;
    collect_vars(e, vs);
    for (auto& v : vs) {
      if (!assigned.count(v)) reads.push_back(v);
    }
  };
  if (const auto* a = std::get_if<Command::Assign>(&c->node)) {
    read_expr(a->rhs);
    assigned.insert(a->target);
  } else if (const auto* i = std::get_if<Command::If>(&c->node)) {
    read_expr(i->cond);
    // Branches analyzed against a shared pre-state; assignments in one
    // branch do not define the variable for the other.
    auto saved = assigned;
    inputs_rec(i->then_branch, assigned, reads);
    auto after_then = assigned;
    assigned = saved;
    inputs_rec(i->else_branch, assigned, reads);
    for (const auto& v : after_then) assigned.insert(v);
  } else if (const auto* call = std::get_if<Command::Call>(&c->node)) {
    for (const auto& a : call->args) read_expr(a);
    for (const auto& r : call->results) assigned.insert(r);
  } else if (const auto* s = std::get_if<Command::Seq>(&c->node)) {
    inputs_rec(s->first, assigned, reads);
    inputs_rec(s->second, assigned, reads);
  } else if (const auto* w = std::get_if<Command::Wrapped>(&c->node)) {
    inputs_rec(w->inner, assigned, reads);
  }
}

}  // namespace

std::vector<std::string> inputs_of(const CommandPtr& c) {
  std::set<std::string> assigned;
  std::vector<std::string> reads;
  inputs_rec(c, assigned, reads);
  return sorted_unique(std::move(reads));
}

std::vector<std::string> call_targets(const CommandPtr& c) {
  std::vector<std::string> out;
  if (const auto* i = std::get_if<Command::If>(&c->node)) {
    auto t = call_targets(i->then_branch);
    auto e = call_targets(i->else_branch);
    out.insert(out.end(), t.begin(), t.end());
    out.insert(out.end(), e.begin(), e.end());
  } else if (const auto* call = std::get_if<Command::Call>(&c->node)) {
    out.push_back(call->callee);
  } else if (const auto* s = std::get_if<Command::Seq>(&c->node)) {
    auto a = call_targets(s->first);
    auto b = call_targets(s->second);
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
  } else if (const auto* w = std::get_if<Command::Wrapped>(&c->node)) {
    auto a = call_targets(w->inner);
    out.insert(out.end(), a.begin(), a.end());
  }
  return sorted_unique(std::move(out));
}

}  // namespace relhorn::lang
