#include "relhorn/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace relhorn::lang {

namespace {

enum class Tok {
  Ident,
  Int,
  KwProc,
  KwMain,
  KwSkip,
  KwIf,
  KwElse,
  KwTrue,
  KwFalse,
  KwBot,
  Assign,    // :=
  Colon,
  Comma,
  Semi,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Arrow,     // ->
  Plus,
  Minus,
  Star,
  Eq,        // =
  Ne,        // !=
  Lt,
  Le,
  Gt,
  Ge,
  AndAnd,
  OrOr,
  Bang,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  SourceLoc loc;
};

class Lexer {
 public:
  Lexer(const std::string& src, bool bounded) : src_(src), bounded_(bounded) { next(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  void error(const std::string& msg) { throw ParseError(msg, {line_, col_}); }

  int cur() const { return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1; }

  void bump() {
    if (pos_ < src_.size()) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_ws() {
    for (;;) {
      while (std::isspace(cur())) bump();
      if (cur() == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (cur() != -1 && cur() != '\n') bump();
        continue;
      }
      break;
    }
  }

  void next() {
    skip_ws();
    tok_.loc = {line_, col_};
    int c = cur();
    if (c == -1) {
      tok_ = {Tok::End, "", 0, tok_.loc};
      return;
    }
    if (std::isalpha(c) || c == '_') {
      std::string s;
      while (std::isalnum(cur()) || cur() == '_' || (bounded_ && cur() == '#')) {
        s.push_back(static_cast<char>(cur()));
        bump();
      }
      static const std::map<std::string, Tok> kw = {
          {"proc", Tok::KwProc}, {"main", Tok::KwMain}, {"skip", Tok::KwSkip},
          {"if", Tok::KwIf},     {"else", Tok::KwElse}, {"true", Tok::KwTrue},
          {"false", Tok::KwFalse}, {"bot", Tok::KwBot}};
      auto it = kw.find(s);
      if (it != kw.end()) {
        if (it->second == Tok::KwBot && !bounded_) {
          tok_ = {Tok::Ident, s, 0, tok_.loc};
        } else {
          tok_ = {it->second, s, 0, tok_.loc};
        }
        return;
      }
      tok_ = {Tok::Ident, s, 0, tok_.loc};
      return;
    }
    if (std::isdigit(c)) {
      std::int64_t v = 0;
      while (std::isdigit(cur())) {
        v = v * 10 + (cur() - '0');
        if (v < 0) error("integer literal overflow");
        bump();
      }
      tok_ = {Tok::Int, "", v, tok_.loc};
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (two(':', '=')) { bump(); bump(); tok_ = {Tok::Assign, ":=", 0, tok_.loc}; return; }
    if (two('-', '>')) { bump(); bump(); tok_ = {Tok::Arrow, "->", 0, tok_.loc}; return; }
    if (two('!', '=')) { bump(); bump(); tok_ = {Tok::Ne, "!=", 0, tok_.loc}; return; }
    if (two('<', '=')) { bump(); bump(); tok_ = {Tok::Le, "<=", 0, tok_.loc}; return; }
    if (two('>', '=')) { bump(); bump(); tok_ = {Tok::Ge, ">=", 0, tok_.loc}; return; }
    if (two('&', '&')) { bump(); bump(); tok_ = {Tok::AndAnd, "&&", 0, tok_.loc}; return; }
    if (two('|', '|')) { bump(); bump(); tok_ = {Tok::OrOr, "||", 0, tok_.loc}; return; }
    switch (c) {
      case ':': bump(); tok_ = {Tok::Colon, ":", 0, tok_.loc}; return;
      case ',': bump(); tok_ = {Tok::Comma, ",", 0, tok_.loc}; return;
      case ';': bump(); tok_ = {Tok::Semi, ";", 0, tok_.loc}; return;
      case '(': bump(); tok_ = {Tok::LParen, "(", 0, tok_.loc}; return;
      case ')': bump(); tok_ = {Tok::RParen, ")", 0, tok_.loc}; return;
      case '{': bump(); tok_ = {Tok::LBrace, "{", 0, tok_.loc}; return;
      case '}': bump(); tok_ = {Tok::RBrace, "}", 0, tok_.loc}; return;
      case '+': bump(); tok_ = {Tok::Plus, "+", 0, tok_.loc}; return;
      case '-': bump(); tok_ = {Tok::Minus, "-", 0, tok_.loc}; return;
      case '*': bump(); tok_ = {Tok::Star, "*", 0, tok_.loc}; return;
      case '=': bump(); tok_ = {Tok::Eq, "=", 0, tok_.loc}; return;
      case '<': bump(); tok_ = {Tok::Lt, "<", 0, tok_.loc}; return;
      case '>': bump(); tok_ = {Tok::Gt, ">", 0, tok_.loc}; return;
      case '!': bump(); tok_ = {Tok::Bang, "!", 0, tok_.loc}; return;
      default: error(std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }

  const std::string& src_;
  bool bounded_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

enum class Type { Int, Bool };

class Parser {
 public:
  Parser(const std::string& src, ParseOptions opts) : lex_(src, opts.allow_bounded_syntax) {}

  ParseResult parse() {
    ParseResult result;
    while (lex_.peek().kind == Tok::KwProc) {
      result.program.table.define(parse_proc());
    }
    expect(Tok::KwMain, "expected 'main'");
    expect(Tok::Colon, "expected ':' after 'main'");
    result.program.main = parse_stmt_seq();
    if (lex_.peek().kind != Tok::End) {
      throw ParseError("trailing input after main command", lex_.peek().loc);
    }
    check_program(result);
    return result;
  }

  ExprPtr parse_single_formula() {
    ExprPtr e = parse_expr();
    if (lex_.peek().kind != Tok::End) {
      throw ParseError("trailing input after formula", lex_.peek().loc);
    }
    Type t = type_of(e, nullptr);
    if (t != Type::Bool) throw ParseError("formula must be boolean-typed", e->loc);
    return e;
  }

 private:
  Token expect(Tok kind, const std::string& msg) {
    if (lex_.peek().kind != kind) throw ParseError(msg, lex_.peek().loc);
    return lex_.take();
  }

  Procedure parse_proc() {
    expect(Tok::KwProc, "expected 'proc'");
    Token name = expect(Tok::Ident, "expected procedure name");
    expect(Tok::LParen, "expected '('");
    std::vector<std::string> params = parse_ident_list(Tok::RParen);
    expect(Tok::RParen, "expected ')'");
    expect(Tok::Arrow, "expected '->'");
    expect(Tok::LParen, "expected '('");
    std::vector<std::string> outputs = parse_ident_list(Tok::RParen);
    expect(Tok::RParen, "expected ')'");
    expect(Tok::LBrace, "expected '{'");
    CommandPtr body = parse_stmt_seq();
    expect(Tok::RBrace, "expected '}'");
    if (outputs.empty()) throw ParseError("procedure must declare at least one output", name.loc);
    check_duplicate_free(params, "parameter", name.loc);
    check_duplicate_free(outputs, "output", name.loc);
    return Procedure{name.text, std::move(params), std::move(body), std::move(outputs)};
  }

  std::vector<std::string> parse_ident_list(Tok terminator) {
    std::vector<std::string> names;
    if (lex_.peek().kind == terminator) return names;
    for (;;) {
      names.push_back(expect(Tok::Ident, "expected identifier").text);
      if (lex_.peek().kind != Tok::Comma) break;
      lex_.take();
    }
    return names;
  }

  CommandPtr parse_stmt_seq() {
    CommandPtr first = parse_stmt();
    if (lex_.peek().kind == Tok::Semi) {
      lex_.take();
      CommandPtr rest = parse_stmt_seq();  // right-associated by construction
      return make_seq(first, rest, first->loc);
    }
    return first;
  }

  CommandPtr parse_stmt() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::KwSkip:
        return make_skip(lex_.take().loc);
      case Tok::KwBot:
        return make_bottom(lex_.take().loc);
      case Tok::KwIf: {
        SourceLoc loc = lex_.take().loc;
        ExprPtr cond = parse_expr();
        expect(Tok::LBrace, "expected '{' after if condition");
        CommandPtr then_b = parse_stmt_seq();
        expect(Tok::RBrace, "expected '}'");
        expect(Tok::KwElse, "expected 'else'");
        expect(Tok::LBrace, "expected '{' after else");
        CommandPtr else_b = parse_stmt_seq();
        expect(Tok::RBrace, "expected '}'");
        return make_if(cond, then_b, else_b, loc);
      }
      case Tok::Ident: {
        Token first = lex_.take();
        std::vector<std::string> targets{first.text};
        while (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          targets.push_back(expect(Tok::Ident, "expected identifier").text);
        }
        expect(Tok::Assign, "expected ':='");
        // `x := f(...)` is a call; `x := expr` an assignment. Expressions
        // contain no calls, so one token of lookahead disambiguates.
        if (lex_.peek().kind == Tok::Ident) {
          Token callee = lex_.take();
          if (lex_.peek().kind == Tok::LParen) {
            lex_.take();
            std::vector<ExprPtr> args;
            if (lex_.peek().kind != Tok::RParen) {
              for (;;) {
                args.push_back(parse_expr());
                if (lex_.peek().kind != Tok::Comma) break;
                lex_.take();
              }
            }
            expect(Tok::RParen, "expected ')' after call arguments");
            return make_call(std::move(targets), callee.text, std::move(args), first.loc);
          }
          // Plain variable on the right-hand side; continue as expression.
          if (targets.size() != 1) {
            throw ParseError("multiple assignment targets require a call", first.loc);
          }
          ExprPtr lhs = make_var(callee.text, callee.loc);
          ExprPtr rhs = parse_expr_continue(lhs);
          return make_assign(targets[0], rhs, first.loc);
        }
        if (targets.size() != 1) {
          throw ParseError("multiple assignment targets require a call", first.loc);
        }
        return make_assign(targets[0], parse_expr(), first.loc);
      }
      default:
        throw ParseError("expected statement", t.loc);
    }
  }

  // Expression grammar (precedence climbing): || < && < comparison < +- < *.
  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_expr_continue(ExprPtr seed) {
    // Continue parsing after an already-consumed primary expression.
    ExprPtr e = parse_mul_continue(seed);
    e = parse_add_continue(e);
    e = parse_cmp_continue(e);
    e = parse_and_continue(e);
    return parse_or_continue(e);
  }

  ExprPtr parse_or() { return parse_or_continue(parse_and()); }
  ExprPtr parse_or_continue(ExprPtr e) {
    while (lex_.peek().kind == Tok::OrOr) {
      SourceLoc loc = lex_.take().loc;
      e = make_binary(BinOp::Or, e, parse_and(), loc);
    }
    return e;
  }

  ExprPtr parse_and() { return parse_and_continue(parse_cmp()); }
  ExprPtr parse_and_continue(ExprPtr e) {
    while (lex_.peek().kind == Tok::AndAnd) {
      SourceLoc loc = lex_.take().loc;
      e = make_binary(BinOp::And, e, parse_cmp(), loc);
    }
    return e;
  }

  ExprPtr parse_cmp() { return parse_cmp_continue(parse_add()); }
  ExprPtr parse_cmp_continue(ExprPtr e) {
    auto op = cmp_op(lex_.peek().kind);
    if (op) {
      SourceLoc loc = lex_.take().loc;
      e = make_binary(*op, e, parse_add(), loc);
    }
    return e;
  }

  static std::optional<BinOp> cmp_op(Tok t) {
    switch (t) {
      case Tok::Eq: return BinOp::Eq;
      case Tok::Ne: return BinOp::Ne;
      case Tok::Lt: return BinOp::Lt;
      case Tok::Le: return BinOp::Le;
      case Tok::Gt: return BinOp::Gt;
      case Tok::Ge: return BinOp::Ge;
      default: return std::nullopt;
    }
  }

  ExprPtr parse_add() { return parse_add_continue(parse_mul()); }
  ExprPtr parse_add_continue(ExprPtr e) {
    for (;;) {
      Tok t = lex_.peek().kind;
      if (t == Tok::Plus || t == Tok::Minus) {
        SourceLoc loc = lex_.take().loc;
        e = make_binary(t == Tok::Plus ? BinOp::Add : BinOp::Sub, e, parse_mul(), loc);
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_mul() { return parse_mul_continue(parse_unary()); }
  ExprPtr parse_mul_continue(ExprPtr e) {
    while (lex_.peek().kind == Tok::Star) {
      SourceLoc loc = lex_.take().loc;
      e = make_binary(BinOp::Mul, e, parse_unary(), loc);
    }
    return e;
  }

  ExprPtr parse_unary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Minus) {
      SourceLoc loc = lex_.take().loc;
      return make_unary(UnOp::Neg, parse_unary(), loc);
    }
    if (t.kind == Tok::Bang) {
      SourceLoc loc = lex_.take().loc;
      return make_unary(UnOp::Not, parse_unary(), loc);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Int:
        return make_int(t.value, t.loc);
      case Tok::KwTrue:
        return make_bool(true, t.loc);
      case Tok::KwFalse:
        return make_bool(false, t.loc);
      case Tok::Ident:
        return make_var(t.text, t.loc);
      case Tok::LParen: {
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "expected ')'");
        return e;
      }
      default:
        throw ParseError("expected expression", t.loc);
    }
  }

  static void check_duplicate_free(const std::vector<std::string>& names, const char* what,
                                   SourceLoc loc) {
    std::set<std::string> seen;
    for (const auto& n : names) {
      if (!seen.insert(n).second) {
        throw ParseError(std::string("duplicate ") + what + " '" + n + "'", loc);
      }
    }
  }

  static bool is_const(const ExprPtr& e) {
    if (std::holds_alternative<Expr::IntLit>(e->node)) return true;
    if (const auto* un = std::get_if<Expr::Unary>(&e->node)) {
      return un->op == UnOp::Neg && is_const(un->operand);
    }
    return false;
  }

  // Type checking: all variables are integer-typed; conditions boolean.
  // Multiplication is linear only (one operand constant).
  Type type_of(const ExprPtr& e, const std::set<std::string>* scope) {
    if (std::holds_alternative<Expr::IntLit>(e->node)) return Type::Int;
    if (std::holds_alternative<Expr::BoolLit>(e->node)) return Type::Bool;
    if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
      if (scope && !scope->count(v->name)) {
        throw ParseError("variable '" + v->name + "' not in scope", e->loc);
      }
      return Type::Int;
    }
    if (const auto* un = std::get_if<Expr::Unary>(&e->node)) {
      Type t = type_of(un->operand, scope);
      if (un->op == UnOp::Neg && t != Type::Int) {
        throw ParseError("'-' expects an integer operand", e->loc);
      }
      if (un->op == UnOp::Not && t != Type::Bool) {
        throw ParseError("'!' expects a boolean operand", e->loc);
      }
      return un->op == UnOp::Neg ? Type::Int : Type::Bool;
    }
    const auto& bin = std::get<Expr::Binary>(e->node);
    Type lt = type_of(bin.lhs, scope);
    Type rt = type_of(bin.rhs, scope);
    if (is_arith(bin.op)) {
      if (lt != Type::Int || rt != Type::Int) {
        throw ParseError("arithmetic expects integer operands", e->loc);
      }
      if (bin.op == BinOp::Mul && !is_const(bin.lhs) && !is_const(bin.rhs)) {
        throw ParseError("multiplication must have a constant operand (linear arithmetic)",
                         e->loc);
      }
      return Type::Int;
    }
    if (is_comparison(bin.op)) {
      if (lt != Type::Int || rt != Type::Int) {
        throw ParseError("comparison expects integer operands", e->loc);
      }
      return Type::Bool;
    }
    if (lt != Type::Bool || rt != Type::Bool) {
      throw ParseError("boolean connective expects boolean operands", e->loc);
    }
    return Type::Bool;
  }

  void check_cmd(const CommandPtr& c, const LookupTable& table,
                 const std::set<std::string>& params, std::vector<std::string>& warnings) {
    if (const auto* a = std::get_if<Command::Assign>(&c->node)) {
      if (type_of(a->rhs, nullptr) != Type::Int) {
        throw ParseError("assignment right-hand side must be integer-typed", c->loc);
      }
      if (params.count(a->target)) {
        warnings.push_back("parameter '" + a->target + "' is reassigned");
      }
    } else if (const auto* i = std::get_if<Command::If>(&c->node)) {
      if (type_of(i->cond, nullptr) != Type::Bool) {
        throw ParseError("if condition must be boolean-typed", c->loc);
      }
      check_cmd(i->then_branch, table, params, warnings);
      check_cmd(i->else_branch, table, params, warnings);
    } else if (const auto* call = std::get_if<Command::Call>(&c->node)) {
      if (!table.contains(call->callee)) {
        throw ParseError("call to undeclared procedure '" + call->callee + "'", c->loc);
      }
      const Procedure& p = table.at(call->callee);
      if (call->args.size() != p.params.size()) {
        throw ParseError("call to '" + call->callee + "' passes " +
                             std::to_string(call->args.size()) + " arguments, expected " +
                             std::to_string(p.params.size()),
                         c->loc);
      }
      if (call->results.size() != p.outputs.size()) {
        throw ParseError("call to '" + call->callee + "' binds " +
                             std::to_string(call->results.size()) + " results, expected " +
                             std::to_string(p.outputs.size()),
                         c->loc);
      }
      for (const auto& a : call->args) {
        if (type_of(a, nullptr) != Type::Int) {
          throw ParseError("call arguments must be integer-typed", c->loc);
        }
      }
      for (const auto& r : call->results) {
        if (params.count(r)) warnings.push_back("parameter '" + r + "' is reassigned");
      }
    } else if (const auto* s = std::get_if<Command::Seq>(&c->node)) {
      check_cmd(s->first, table, params, warnings);
      check_cmd(s->second, table, params, warnings);
    }
  }

  // Conservative: true if every terminating path assigns `v`.
  static bool always_assigns(const CommandPtr& c, const std::string& v) {
    if (const auto* a = std::get_if<Command::Assign>(&c->node)) return a->target == v;
    if (const auto* i = std::get_if<Command::If>(&c->node)) {
      return always_assigns(i->then_branch, v) && always_assigns(i->else_branch, v);
    }
    if (const auto* call = std::get_if<Command::Call>(&c->node)) {
      for (const auto& r : call->results) {
        if (r == v) return true;
      }
      return false;
    }
    if (const auto* s = std::get_if<Command::Seq>(&c->node)) {
      return always_assigns(s->first, v) || always_assigns(s->second, v);
    }
    return false;
  }

  void check_program(ParseResult& result) {
    const LookupTable& table = result.program.table;
    for (const auto& [name, proc] : table.procedures()) {
      std::set<std::string> params(proc.params.begin(), proc.params.end());
      check_cmd(proc.body, table, params, result.warnings);
      for (const auto& o : proc.outputs) {
        if (!always_assigns(proc.body, o) &&
            std::find(proc.params.begin(), proc.params.end(), o) == proc.params.end()) {
          result.warnings.push_back("procedure '" + name + "': output '" + o +
                                    "' may be unassigned on some path");
        }
      }
    }
    std::set<std::string> no_params;
    check_cmd(result.program.main, table, no_params, result.warnings);
  }

  Lexer lex_;
};

}  // namespace

ParseResult parse_program(const std::string& source, ParseOptions opts) {
  Parser p(source, opts);
  return p.parse();
}

ExprPtr parse_formula(const std::string& source) {
  Parser p(source, ParseOptions{});
  return p.parse_single_formula();
}

Property parse_property(const std::string& source) {
  std::istringstream in(source);
  std::string line;
  std::optional<ExprPtr> pre, post;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find("//");
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto nonspace = line.find_first_not_of(" \t\r");
    if (nonspace == std::string::npos) continue;
    line = line.substr(nonspace);
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ParseError("expected 'pre:' or 'post:' line", {lineno, 1});
    }
    std::string key = line.substr(0, colon);
    std::string rest = line.substr(colon + 1);
    if (key == "pre") {
      if (pre) throw ParseError("duplicate 'pre:' line", {lineno, 1});
      pre = parse_formula(rest);
    } else if (key == "post") {
      if (post) throw ParseError("duplicate 'post:' line", {lineno, 1});
      post = parse_formula(rest);
    } else {
      throw ParseError("unknown property key '" + key + "'", {lineno, 1});
    }
  }
  if (!pre || !post) {
    throw ParseError("property file must contain both 'pre:' and 'post:' lines", {lineno, 1});
  }
  return Property{*pre, *post};
}

}  // namespace relhorn::lang
