#include "acmslab/expr.hpp"
#include "acmslab/random.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace acmslab;
using namespace acmslab::expr;

namespace {

double at(const Expr& e, std::vector<double> xs) { return eval(e, xs); }

// Random tree over x1..x3 whose values stay in the domain of sqrt and 1/·
// on the box [0.5, 1.5]^3.
Expr random_expr(Rng& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  switch (pick(rng)) {
    case 0: return Expr::number(std::round(uniform(rng, -3, 3) * 4) / 4);
    case 1: return Expr::variable(std::uniform_int_distribution<int>(0, 2)(rng));
    case 2: return Expr::binary(Kind::add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3: return Expr::binary(Kind::sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return Expr::binary(Kind::mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: {
      const Expr den = Expr::binary(Kind::add, Expr::number(2),
                                    Expr::call(Func::sin, random_expr(rng, depth - 1)));
      return Expr::binary(Kind::div, random_expr(rng, depth - 1), den);
    }
    case 6: return Expr::pow(random_expr(rng, depth - 1), std::uniform_int_distribution<int>(2, 3)(rng));
    case 7: return Expr::negate(random_expr(rng, depth - 1));
    default: {
      const Func f = std::array{Func::sin, Func::cos, Func::exp}[std::uniform_int_distribution<int>(0, 2)(rng)];
      if (f == Func::exp) return Expr::call(f, Expr::call(Func::sin, random_expr(rng, depth - 1)));
      return Expr::call(f, random_expr(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("parse builds the expected tree") {
  const Expr e = parse("x1^2 + sin(x2)");
  const Expr expected =
      Expr::binary(Kind::add, Expr::pow(Expr::variable(0), 2), Expr::call(Func::sin, Expr::variable(1)));
  CHECK(e == expected);
  CHECK(e.arity() == 2);
}

TEST_CASE("precedence and associativity") {
  CHECK(at(parse("-x1^2"), {3}) == -9);
  CHECK(at(parse("2^3^2"), {}) == 64);
  CHECK(at(parse("8/2/2"), {}) == 2);
  CHECK(at(parse("1 - 2 - 3"), {}) == -4);
  CHECK(at(parse("2*x1 + 3*x2"), {1, 10}) == 32);
  CHECK(at(parse("x1^-2"), {2}) == 0.25);
  CHECK(at(parse("1.5e2 + .5"), {}) == 150.5);
  CHECK(at(parse("sqrt(x1)\n  * exp(0)"), {16}) == 4);
}

TEST_CASE("parse errors carry positions") {
  try {
    (void)parse("(");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 1);
  }
  try {
    (void)parse("x1 +\n  * 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse("x0"), ParseError);
  CHECK_THROWS_AS(parse("x3", 2), ParseError);
  CHECK_THROWS_AS(parse("tan(x1)"), ParseError);
  CHECK_THROWS_AS(parse("x1^1.5"), ParseError);
  CHECK_THROWS_AS(parse("1 2"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
}

TEST_CASE("eval") {
  CHECK(at(parse("x1^2"), {3}) == 9);
  CHECK(at(parse("sin(0)"), {}) == 0);
  CHECK_THROWS_AS(at(parse("1/x1"), {0}), EvalError);
  CHECK_THROWS_AS(at(parse("sqrt(x1)"), {-1}), EvalError);
  CHECK_THROWS_AS(at(parse("x2"), {1}), EvalError);
}

TEST_CASE("differentiate") {
  CHECK(differentiate(parse("x1^2"), 0) == parse("2*x1"));
  CHECK(differentiate(parse("x1"), 1) == Expr::number(0));
  const Expr d = differentiate(parse("sin(x1^2)"), 0);
  for (double x : {-1.3, 0.2, 0.9}) CHECK(at(d, {x}) == doctest::Approx(std::cos(x * x) * 2 * x));
  CHECK(differentiate(parse("3 + x2"), 0).is_number(0));
  CHECK(at(differentiate(parse("sqrt(x1)"), 0), {4}) == doctest::Approx(0.25));
  CHECK(at(differentiate(parse("exp(2*x1)"), 0), {0}) == doctest::Approx(2));
  CHECK(at(differentiate(parse("1/x1"), 0), {2}) == doctest::Approx(-0.25));
  CHECK(at(differentiate(parse("x1^-2"), 0), {2}) == doctest::Approx(-0.25));
}

TEST_CASE("simplify folds constants and identities") {
  CHECK(simplify::add(Expr::number(2), Expr::number(3)).is_number(5));
  CHECK(simplify::mul(Expr::number(0), Expr::variable(0)).is_number(0));
  CHECK(simplify::mul(Expr::number(1), Expr::variable(0)) == Expr::variable(0));
  CHECK(simplify::pow(Expr::variable(0), 1) == Expr::variable(0));
  CHECK(simplify::pow(Expr::variable(0), 0).is_number(1));
  CHECK(simplify::neg(simplify::neg(Expr::variable(1))) == Expr::variable(1));
}

TEST_CASE("print round-trips on random trees") {
  Rng rng(2024);
  for (int t = 0; t < 300; ++t) {
    const Expr e = random_expr(rng, 4);
    const std::string text = print(e);
    INFO(text);
    CHECK(parse(text) == e);
  }
  CHECK(print(parse("x1^2 + sin(x2)")) == "x1^2 + sin(x2)");
  CHECK(print(parse("(x1 - x2) - (x3 - x1)")) == "x1 - x2 - (x3 - x1)");
  CHECK(print(Expr::number(0.1)) == "0.1");
}

TEST_CASE("symbolic derivatives agree with central differences") {
  Rng rng(99);
  const double h = 1e-5;
  for (int t = 0; t < 200; ++t) {
    const Expr e = random_expr(rng, 4);
    std::vector<double> x{uniform(rng, 0.5, 1.5), uniform(rng, 0.5, 1.5), uniform(rng, 0.5, 1.5)};
    for (int v = 0; v < 3; ++v) {
      auto plus = x, minus = x;
      plus[v] += h;
      minus[v] -= h;
      double fd = 0.0, exact = 0.0;
      try {
        fd = (eval(e, plus) - eval(e, minus)) / (2 * h);
        exact = eval(differentiate(e, v), x);
      } catch (const EvalError&) {
        continue;
      }
      INFO(print(e));
      CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
    }
  }
}
