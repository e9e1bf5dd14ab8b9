#pragma once

// Arithmetic expressions over chart coordinates x1..xk.
//
// Grammar (whitespace, including newlines, is ignored between tokens):
//
//   expr     = term { ("+" | "-") term } ;
//   term     = unary { ("*" | "/") unary } ;
//   unary    = "-" unary | power ;
//   power    = primary { "^" [ "-" ] integer } ;
//   primary  = number | variable | function "(" expr ")" | "(" expr ")" ;
//   number   = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//            | "." digits [ exponent ] ;
//   variable = "x" positive-integer ;           (* 1-based coordinate index *)
//   function = "sin" | "cos" | "sqrt" | "exp" ;
//
// "^" binds tighter than unary minus, so -x1^2 is -(x1^2). Exponents are
// integer literals; fractional powers are written with sqrt. A unary minus
// applied directly to a numeric literal yields a negative literal.

#include "acmslab/error.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace acmslab::expr {

enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };
enum class Func { sin, cos, sqrt, exp };

struct SourcePos {
  int line = 0;  ///< 1-based; 0 when the node was not produced by the parser
  int column = 0;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, int line, int column);
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  /// Message without the position prefix.
  [[nodiscard]] const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
  int line_;
  int column_;
};

/// Unbound variables and domain errors (division by zero, sqrt of a
/// negative number) during evaluation.
class EvalError : public Error {
 public:
  using Error::Error;
};

struct Node;

/// Immutable expression tree; copies share structure.
class Expr {
 public:
  Expr();  ///< the literal 0

  static Expr number(double value, SourcePos pos = {});
  static Expr variable(int index, SourcePos pos = {});
  static Expr negate(Expr operand, SourcePos pos = {});
  static Expr binary(Kind kind, Expr lhs, Expr rhs, SourcePos pos = {});
  static Expr pow(Expr base, int exponent, SourcePos pos = {});
  static Expr call(Func func, Expr arg, SourcePos pos = {});

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] double value() const;   ///< number
  [[nodiscard]] int index() const;      ///< variable, 0-based
  [[nodiscard]] int exponent() const;   ///< pow
  [[nodiscard]] Func func() const;      ///< call
  [[nodiscard]] const Expr& lhs() const;      ///< binary, pow base
  [[nodiscard]] const Expr& rhs() const;      ///< binary
  [[nodiscard]] const Expr& operand() const;  ///< negate, call
  [[nodiscard]] SourcePos pos() const;

  [[nodiscard]] bool is_number() const { return kind() == Kind::number; }
  [[nodiscard]] bool is_number(double v) const { return is_number() && value() == v; }
  /// Largest variable index used plus one.
  [[nodiscard]] int arity() const;
  [[nodiscard]] std::size_t node_count() const;

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  explicit Expr(std::nullptr_t) {}
  std::shared_ptr<const Node> node_;
};

const char* func_name(Func f);

/// Parses an expression. max_vars < 0 accepts any variable index.
/// Throws ParseError with 1-based line and column.
Expr parse(std::string_view text, int max_vars = -1);

/// Canonical text: minimal parentheses, shortest round-trip literals.
/// parse(print(e)) == e.
std::string print(const Expr& e);

/// Evaluates with bindings[k] the value of x(k+1).
double eval(const Expr& e, std::span<const double> bindings);

/// Exact partial derivative with respect to variable index var (0-based),
/// simplified by constant folding and 0/1 identities only.
Expr differentiate(const Expr& e, int var);

/// Builders that fold constants and apply the 0/1 identities.
namespace simplify {
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr neg(Expr a);
Expr pow(Expr base, int exponent);
Expr call(Func f, Expr arg);
}  // namespace simplify

}  // namespace acmslab::expr
