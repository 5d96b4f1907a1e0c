#include "relhorn/printer.hpp"

#include <sstream>

namespace relhorn::lang {

namespace {

void indent_to(std::ostringstream& os, int n) {
  for (int i = 0; i < n; ++i) os << ' ';
}

void print_cmd_rec(std::ostringstream& os, const CommandPtr& c, int indent) {
  auto flat = flatten(c);
  if (flat.empty()) {
    indent_to(os, indent);
    os << "skip";
    return;
  }
  for (size_t k = 0; k < flat.size(); ++k) {
    if (k) os << ";\n";
    const CommandPtr& cmd = flat[k];
    if (const auto* i = std::get_if<Command::If>(&cmd->node)) {
      indent_to(os, indent);
      os << "if " << canonical_text(i->cond) << " {\n";
      print_cmd_rec(os, i->then_branch, indent + 2);
      os << "\n";
      indent_to(os, indent);
      os << "} else {\n";
      print_cmd_rec(os, i->else_branch, indent + 2);
      os << "\n";
      indent_to(os, indent);
      os << "}";
    } else {
      indent_to(os, indent);
      os << canonical_text(cmd);
    }
  }
}

}  // namespace

std::string print_command(const CommandPtr& c, int indent) {
  std::ostringstream os;
  print_cmd_rec(os, c, indent);
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& [name, proc] : p.table.procedures()) {
    os << "proc " << name << "(";
    for (size_t k = 0; k < proc.params.size(); ++k) {
      if (k) os << ", ";
      os << proc.params[k];
    }
    os << ") -> (";
    for (size_t k = 0; k < proc.outputs.size(); ++k) {
      if (k) os << ", ";
      os << proc.outputs[k];
    }
    os << ") {\n";
    os << print_command(proc.body, 2);
    os << "\n}\n\n";
  }
  os << "main:\n" << print_command(p.main, 2) << "\n";
  return os.str();
}

}  // namespace relhorn::lang
