#include "acmslab/expr.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <optional>

namespace acmslab::expr {

struct Node {
  Kind kind = Kind::number;
  double value = 0.0;
  int index = 0;  // variable index or exponent
  Func func = Func::sin;
  Expr a{nullptr};
  Expr b{nullptr};
  SourcePos pos;
};

namespace {

struct FunctionInfo {
  Func func;
  const char* name;
};

constexpr std::array<FunctionInfo, 4> kFunctions = {{
    {Func::sin, "sin"},
    {Func::cos, "cos"},
    {Func::sqrt, "sqrt"},
    {Func::exp, "exp"},
}};

std::optional<Func> lookup_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (name == f.name) return f.func;
  }
  return std::nullopt;
}

bool is_binary(Kind k) {
  return k == Kind::add || k == Kind::sub || k == Kind::mul || k == Kind::div;
}

double ipow(double base, int exponent) {
  const bool invert = exponent < 0;
  unsigned n = invert ? static_cast<unsigned>(-static_cast<long>(exponent))
                      : static_cast<unsigned>(exponent);
  double result = 1.0;
  double b = base;
  while (n != 0) {
    if (n & 1U) result *= b;
    b *= b;
    n >>= 1U;
  }
  return invert ? 1.0 / result : result;
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : InputError(fmt::format("syntax error at line {}, column {}: {}", line, column, message)),
      reason_(message),
      line_(line),
      column_(column) {}

const char* func_name(Func f) {
  for (const auto& info : kFunctions) {
    if (info.func == f) return info.name;
  }
  return "?";
}

// ---------------------------------------------------------------- Expr

Expr::Expr() : node_(std::make_shared<const Node>()) {}

Expr Expr::number(double value, SourcePos pos) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->value = value;
  n->pos = pos;
  return Expr(std::move(n));
}

Expr Expr::variable(int index, SourcePos pos) {
  if (index < 0) throw InputError("variable index must be non-negative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->index = index;
  n->pos = pos;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand, SourcePos pos) {
  if (operand.is_number()) return number(-operand.value(), pos);
  auto n = std::make_shared<Node>();
  n->kind = Kind::negate;
  n->a = std::move(operand);
  n->pos = pos;
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs, SourcePos pos) {
  if (!is_binary(kind)) throw InputError("Expr::binary: not a binary operator");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  n->pos = pos;
  return Expr(std::move(n));
}

Expr Expr::pow(Expr base, int exponent, SourcePos pos) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pow;
  n->a = std::move(base);
  n->index = exponent;
  n->pos = pos;
  return Expr(std::move(n));
}

Expr Expr::call(Func func, Expr arg, SourcePos pos) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::call;
  n->func = func;
  n->a = std::move(arg);
  n->pos = pos;
  return Expr(std::move(n));
}

Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
int Expr::exponent() const { return node_->index; }
Func Expr::func() const { return node_->func; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
const Expr& Expr::operand() const { return node_->a; }
SourcePos Expr::pos() const { return node_->pos; }

int Expr::arity() const {
  switch (kind()) {
    case Kind::number:
      return 0;
    case Kind::variable:
      return index() + 1;
    case Kind::negate:
    case Kind::pow:
    case Kind::call:
      return lhs().arity();
    default:
      return std::max(lhs().arity(), rhs().arity());
  }
}

std::size_t Expr::node_count() const {
  switch (kind()) {
    case Kind::number:
    case Kind::variable:
      return 1;
    case Kind::negate:
    case Kind::pow:
    case Kind::call:
      return 1 + lhs().node_count();
    default:
      return 1 + lhs().node_count() + rhs().node_count();
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::number:
      return a.value() == b.value();
    case Kind::variable:
      return a.index() == b.index();
    case Kind::negate:
      return a.operand() == b.operand();
    case Kind::pow:
      return a.exponent() == b.exponent() && a.lhs() == b.lhs();
    case Kind::call:
      return a.func() == b.func() && a.operand() == b.operand();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { number, ident, op, lparen, rparen, end };

struct Token {
  Tok type = Tok::end;
  std::string_view text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  [[nodiscard]] const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= src_.size()) {
      current_.type = Tok::end;
      current_.text = {};
      return;
    }
    const std::size_t start = pos_;
    const char c = src_[pos_];
    auto digit = [&](std::size_t i) {
      return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]));
    };
    if (digit(pos_) || (c == '.' && digit(pos_ + 1))) {
      while (digit(pos_)) bump();
      if (pos_ < src_.size() && src_[pos_] == '.') {
        bump();
        while (digit(pos_)) bump();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
        if (digit(look)) {
          while (pos_ < look) bump();
          while (digit(pos_)) bump();
        }
      }
      current_.type = Tok::number;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_')) {
        bump();
      }
      current_.type = Tok::ident;
    } else if (c == '(') {
      bump();
      current_.type = Tok::lparen;
    } else if (c == ')') {
      bump();
      current_.type = Tok::rparen;
    } else {
      bump();
      current_.type = Tok::op;
    }
    current_.text = src_.substr(start, pos_ - start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

class Parser {
 public:
  Parser(std::string_view text, int max_vars) : lex_(text), max_vars_(max_vars) {}

  Expr parse_all() {
    Expr e = parse_expr();
    const Token& t = lex_.peek();
    if (t.type != Tok::end) fail(t, fmt::format("unexpected '{}'", t.text));
    return e;
  }

 private:
  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    throw ParseError(message, t.line, t.column);
  }

  static SourcePos at(const Token& t) { return {t.line, t.column}; }

  bool peek_op(char c) const {
    const Token& t = lex_.peek();
    return t.type == Tok::op && t.text.size() == 1 && t.text[0] == c;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (peek_op('+') || peek_op('-')) {
      const Token op = lex_.take();
      Expr rhs = parse_term();
      lhs = Expr::binary(op.text[0] == '+' ? Kind::add : Kind::sub, lhs, rhs, at(op));
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (peek_op('*') || peek_op('/')) {
      const Token op = lex_.take();
      Expr rhs = parse_unary();
      lhs = Expr::binary(op.text[0] == '*' ? Kind::mul : Kind::div, lhs, rhs, at(op));
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek_op('-')) {
      const Token op = lex_.take();
      return Expr::negate(parse_unary(), at(op));
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    while (peek_op('^')) {
      const Token op = lex_.take();
      bool negative = false;
      if (peek_op('-')) {
        lex_.take();
        negative = true;
      }
      const Token t = lex_.take();
      int value = 0;
      const bool integer = t.type == Tok::number &&
                           t.text.find_first_not_of("0123456789") == std::string_view::npos;
      const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
      if (!integer || ec != std::errc() || ptr != t.text.data() + t.text.size()) {
        fail(t, "exponent must be an integer literal");
      }
      base = Expr::pow(base, negative ? -value : value, at(op));
    }
    return base;
  }

  Expr parse_primary() {
    const Token t = lex_.take();
    switch (t.type) {
      case Tok::number: {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
          fail(t, fmt::format("malformed number '{}'", t.text));
        }
        return Expr::number(v, at(t));
      }
      case Tok::ident:
        return parse_identifier(t);
      case Tok::lparen: {
        if (lex_.peek().type == Tok::end) fail(t, "unmatched '('");
        Expr inner = parse_expr();
        if (lex_.peek().type != Tok::rparen) {
          if (lex_.peek().type == Tok::end) fail(t, "unmatched '('");
          fail(lex_.peek(), fmt::format("expected ')' but found '{}'", lex_.peek().text));
        }
        lex_.take();
        return inner;
      }
      case Tok::rparen:
        fail(t, "unexpected ')'");
      case Tok::op:
        fail(t, fmt::format("unexpected '{}'", t.text));
      case Tok::end:
        fail(t, "unexpected end of input");
    }
    fail(t, "unexpected token");
  }

  Expr parse_identifier(const Token& t) {
    if (lex_.peek().type == Tok::lparen) {
      const auto f = lookup_function(t.text);
      if (!f) fail(t, fmt::format("unknown function '{}'", t.text));
      const Token open = lex_.take();
      if (lex_.peek().type == Tok::end) fail(open, "unmatched '('");
      Expr arg = parse_expr();
      if (lex_.peek().type != Tok::rparen) {
        if (lex_.peek().type == Tok::end) fail(open, "unmatched '('");
        fail(lex_.peek(), fmt::format("expected ')' but found '{}'", lex_.peek().text));
      }
      lex_.take();
      return Expr::call(*f, arg, at(t));
    }
    if (lookup_function(t.text)) fail(t, fmt::format("expected '(' after '{}'", t.text));
    if (t.text.size() >= 2 && t.text[0] == 'x' &&
        t.text.find_first_not_of("0123456789", 1) == std::string_view::npos &&
        t.text[1] != '0') {
      int k = 0;
      const auto [ptr, ec] = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), k);
      if (ec == std::errc() && k >= 1) {
        if (max_vars_ >= 0 && k > max_vars_) {
          fail(t, fmt::format("unknown variable '{}' (chart has {} coordinates)", t.text, max_vars_));
        }
        return Expr::variable(k - 1, at(t));
      }
    }
    fail(t, fmt::format("unknown variable '{}'", t.text));
  }

  Lexer lex_;
  int max_vars_;
};

// ---------------------------------------------------------------- printer

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::add:
    case Kind::sub:
      return 1;
    case Kind::mul:
    case Kind::div:
      return 2;
    case Kind::negate:
      return 3;
    case Kind::pow:
      return 4;
    case Kind::number:
      return std::signbit(e.value()) ? 3 : 5;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("format_number: conversion failed");
  return std::string(buf.data(), ptr);
}

void print_into(const Expr& e, int min_prec, std::string& out) {
  const bool paren = precedence(e) < min_prec;
  if (paren) out += '(';
  switch (e.kind()) {
    case Kind::number:
      out += format_number(e.value());
      break;
    case Kind::variable:
      out += 'x';
      out += std::to_string(e.index() + 1);
      break;
    case Kind::negate:
      out += '-';
      print_into(e.operand(), 3, out);
      break;
    case Kind::pow:
      print_into(e.lhs(), 5, out);
      out += '^';
      out += std::to_string(e.exponent());
      break;
    case Kind::call:
      out += func_name(e.func());
      out += '(';
      print_into(e.operand(), 0, out);
      out += ')';
      break;
    default: {
      const int p = precedence(e);
      print_into(e.lhs(), p, out);
      switch (e.kind()) {
        case Kind::add: out += " + "; break;
        case Kind::sub: out += " - "; break;
        case Kind::mul: out += '*'; break;
        default: out += '/'; break;
      }
      print_into(e.rhs(), p + 1, out);
    }
  }
  if (paren) out += ')';
}

[[noreturn]] void domain_error(const Expr& e, const std::string& what) {
  const auto p = e.pos();
  std::string where = p.line > 0 ? fmt::format(" at line {}, column {}", p.line, p.column) : "";
  throw EvalError(fmt::format("domain error: {} in '{}'{}", what, print(e), where));
}

bool depends_on(const Expr& e, int var) {
  switch (e.kind()) {
    case Kind::number:
      return false;
    case Kind::variable:
      return e.index() == var;
    case Kind::negate:
    case Kind::pow:
    case Kind::call:
      return depends_on(e.lhs(), var);
    default:
      return depends_on(e.lhs(), var) || depends_on(e.rhs(), var);
  }
}

}  // namespace

Expr parse(std::string_view text, int max_vars) { return Parser(text, max_vars).parse_all(); }

std::string print(const Expr& e) {
  std::string out;
  print_into(e, 0, out);
  return out;
}

double eval(const Expr& e, std::span<const double> bindings) {
  switch (e.kind()) {
    case Kind::number:
      return e.value();
    case Kind::variable:
      if (e.index() >= static_cast<int>(bindings.size())) {
        throw EvalError(fmt::format("unbound variable x{}", e.index() + 1));
      }
      return bindings[e.index()];
    case Kind::negate:
      return -eval(e.operand(), bindings);
    case Kind::add:
      return eval(e.lhs(), bindings) + eval(e.rhs(), bindings);
    case Kind::sub:
      return eval(e.lhs(), bindings) - eval(e.rhs(), bindings);
    case Kind::mul:
      return eval(e.lhs(), bindings) * eval(e.rhs(), bindings);
    case Kind::div: {
      const double num = eval(e.lhs(), bindings);
      const double den = eval(e.rhs(), bindings);
      if (den == 0.0) domain_error(e, "division by zero");
      return num / den;
    }
    case Kind::pow: {
      const double b = eval(e.lhs(), bindings);
      if (b == 0.0 && e.exponent() < 0) domain_error(e, "zero to a negative power");
      return ipow(b, e.exponent());
    }
    case Kind::call: {
      const double x = eval(e.operand(), bindings);
      switch (e.func()) {
        case Func::sin:
          return std::sin(x);
        case Func::cos:
          return std::cos(x);
        case Func::exp:
          return std::exp(x);
        case Func::sqrt:
          if (x < 0.0) domain_error(e, "sqrt of a negative number");
          return std::sqrt(x);
      }
    }
  }
  throw Error("eval: corrupt expression");
}

namespace simplify {

Expr add(Expr a, Expr b) {
  if (a.is_number() && b.is_number()) return Expr::number(a.value() + b.value());
  if (a.is_number(0.0)) return b;
  if (b.is_number(0.0)) return a;
  return Expr::binary(Kind::add, std::move(a), std::move(b));
}

Expr sub(Expr a, Expr b) {
  if (a.is_number() && b.is_number()) return Expr::number(a.value() - b.value());
  if (b.is_number(0.0)) return a;
  if (a.is_number(0.0)) return neg(std::move(b));
  return Expr::binary(Kind::sub, std::move(a), std::move(b));
}

Expr mul(Expr a, Expr b) {
  if (a.is_number() && b.is_number()) return Expr::number(a.value() * b.value());
  if (a.is_number(0.0) || b.is_number(0.0)) return Expr::number(0.0);
  if (a.is_number(1.0)) return b;
  if (b.is_number(1.0)) return a;
  return Expr::binary(Kind::mul, std::move(a), std::move(b));
}

Expr div(Expr a, Expr b) {
  if (a.is_number() && b.is_number() && b.value() != 0.0) {
    const double q = a.value() / b.value();
    if (std::isfinite(q)) return Expr::number(q);
  }
  if (a.is_number(0.0) && !b.is_number(0.0)) return Expr::number(0.0);
  if (b.is_number(1.0)) return a;
  return Expr::binary(Kind::div, std::move(a), std::move(b));
}

Expr neg(Expr a) {
  if (a.kind() == Kind::negate) return a.operand();
  return Expr::negate(std::move(a));
}

Expr pow(Expr base, int exponent) {
  if (exponent == 0) return Expr::number(1.0);
  if (exponent == 1) return base;
  if (base.is_number() && !(base.value() == 0.0 && exponent < 0)) {
    const double v = ipow(base.value(), exponent);
    if (std::isfinite(v)) return Expr::number(v);
  }
  return Expr::pow(std::move(base), exponent);
}

Expr call(Func f, Expr arg) {
  if (arg.is_number()) {
    const double x = arg.value();
    switch (f) {
      case Func::sin: return Expr::number(std::sin(x));
      case Func::cos: return Expr::number(std::cos(x));
      case Func::exp: return Expr::number(std::exp(x));
      case Func::sqrt:
        if (x >= 0.0) return Expr::number(std::sqrt(x));
        break;
    }
  }
  return Expr::call(f, std::move(arg));
}

}  // namespace simplify

Expr differentiate(const Expr& e, int var) {
  using namespace simplify;
  if (!depends_on(e, var)) return Expr::number(0.0);
  switch (e.kind()) {
    case Kind::number:
      return Expr::number(0.0);
    case Kind::variable:
      return Expr::number(e.index() == var ? 1.0 : 0.0);
    case Kind::negate:
      return neg(differentiate(e.operand(), var));
    case Kind::add:
      return add(differentiate(e.lhs(), var), differentiate(e.rhs(), var));
    case Kind::sub:
      return sub(differentiate(e.lhs(), var), differentiate(e.rhs(), var));
    case Kind::mul:
      return add(mul(differentiate(e.lhs(), var), e.rhs()),
                 mul(e.lhs(), differentiate(e.rhs(), var)));
    case Kind::div: {
      const Expr& u = e.lhs();
      const Expr& v = e.rhs();
      if (!depends_on(v, var)) return div(differentiate(u, var), v);
      return div(sub(mul(differentiate(u, var), v), mul(u, differentiate(v, var))), pow(v, 2));
    }
    case Kind::pow: {
      const int n = e.exponent();
      return mul(mul(Expr::number(n), pow(e.lhs(), n - 1)), differentiate(e.lhs(), var));
    }
    case Kind::call: {
      const Expr& u = e.operand();
      const Expr du = differentiate(u, var);
      switch (e.func()) {
        case Func::sin:
          return mul(call(Func::cos, u), du);
        case Func::cos:
          return mul(neg(call(Func::sin, u)), du);
        case Func::exp:
          return mul(call(Func::exp, u), du);
        case Func::sqrt:
          return div(du, mul(Expr::number(2.0), call(Func::sqrt, u)));
      }
    }
  }
  throw Error("differentiate: corrupt expression");
}

}  // namespace acmslab::expr
