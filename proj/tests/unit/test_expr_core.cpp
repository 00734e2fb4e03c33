#include <cmath>

#include "doctest.h"
#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/equivalence.hpp"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/expr/parse.hpp"
#include "ermakov/expr/poly.hpp"
#include "ermakov/expr/print.hpp"
#include "ermakov/expr/simplify.hpp"
#include "expr_printing.hpp"
#include "random_trees.hpp"

using namespace ermakov::expr;

namespace {

bool same(const Expression& a, const Expression& b) { return structurally_equal(a, b); }

bool same(const Expression& a, const char* b) { return structurally_equal(a, parse(b)); }

// No sum or product node with two numeric children anywhere in the tree.
bool constants_folded(const Expression& e) {
  if (e.kind() == Kind::Sum || e.kind() == Kind::Product) {
    int numbers = 0;
    for (const auto& c : e.children()) numbers += c.is_number();
    if (numbers > 1) return false;
  }
  for (const auto& c : e.children())
    if (!constants_folded(c)) return false;
  return true;
}

}  // namespace

TEST_SUITE("parse") {
  TEST_CASE("sum of squares parses to a sum of powers") {
    Expression e = parse("x^2 + y^2");
    REQUIRE(e.kind() == Kind::Sum);
    REQUIRE(e.children().size() == 2);
    CHECK(e.children()[0] == Expression::power(sym("x"), Expression(2)));
    CHECK(e.children()[1] == Expression::power(sym("y"), Expression(2)));
  }

  TEST_CASE("primed opaque call") {
    Expression e = parse("f'(y/x)");
    REQUIRE(e.kind() == Kind::Opaque);
    CHECK(e.name() == "f");
    CHECK(e.orders()[0] == 1);
    CHECK(same(e.children()[0], "y/x"));
  }

  TEST_CASE("higher derivative and multi-argument orders") {
    Expression e = parse("g^(3)(u)");
    CHECK(e.orders()[0] == 3);
    Expression m = parse("xi{1,0,2}(x, y, t)");
    REQUIRE(m.children().size() == 3);
    CHECK(m.orders()[2] == 2);
    CHECK(to_string(m, PrintStyle::Subscript) == "xi_xtt");
  }

  TEST_CASE("exact and real literals") {
    CHECK(parse("3/4").kind() == Kind::Product);
    CHECK(parse("2").number().is_exact());
    CHECK_FALSE(parse("2.5").number().is_exact());
    CHECK_FALSE(parse("1e-3").number().is_exact());
  }

  TEST_CASE("unary minus binds looser than the power") {
    CHECK(evaluate(parse("-x^2"), Bindings{}.set("x", 3.0)) == doctest::Approx(-9.0));
    CHECK(evaluate(parse("2^-1"), {}) == doctest::Approx(0.5));
  }

  TEST_CASE("syntax errors carry a byte offset") {
    try {
      parse("x + * y");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse("(x + y"), ParseError);
    CHECK_THROWS_AS(parse("x y"), ParseError);
  }

  TEST_CASE("unknown elementary function names are rejected") {
    CHECK_THROWS_WITH_AS(parse("tan(x)"), doctest::Contains("unknown elementary function"), ParseError);
    CHECK_THROWS_AS(parse("sin'(x)"), ParseError);
  }

  TEST_CASE("round trip through the printer") {
    const char* samples[] = {"x^2 + y^2",
                             "-3*x/(2*y^2)",
                             "f'(y/x)/x^3 - x*(x^2 + y^2)^(-3/2)*h(x/y)",
                             "exp(-2*t)*sin(3*t) + cos(t)^2",
                             "xi{1,1,0}(x, y, t)*xdot*ydot",
                             "sqrt(x)*log(y) - 2.5*t"};
    for (const char* s : samples) {
      Expression e = parse(s);
      INFO(s);
      CHECK(simplify(parse(to_string(e))) == simplify(e));
      CHECK(simplify(parse(to_string(simplify(e)))) == simplify(e));
    }
  }
}

TEST_SUITE("differentiate") {
  TEST_CASE("product and chain rule through an opaque call") {
    Expression d = differentiate(parse("x*h(x/y)"), "x");
    CHECK(same(d, "h(x/y) + (x/y)*h'(x/y)"));
  }

  TEST_CASE("power of a radius") {
    CHECK(same(differentiate(parse("(x^2 + y^2)^(3/2)"), "x"), "3*x*(x^2 + y^2)^(1/2)"));
  }

  TEST_CASE("quotient with chain") {
    Expression d = differentiate(parse("h(x/y)/y^2"), "y");
    CHECK(same(d, "-2*h(x/y)/y^3 - (x/y^4)*h'(x/y)"));
  }

  TEST_CASE("symbol-free trees differentiate to zero") {
    CHECK(differentiate(parse("x^2*sin(y) + f(x)"), "t").is_zero());
  }

  TEST_CASE("elementary rules") {
    CHECK(same(differentiate(parse("sin(2*t)"), "t"), "2*cos(2*t)"));
    CHECK(same(differentiate(parse("cos(t)"), "t"), "-sin(t)"));
    CHECK(same(differentiate(parse("exp(t^2)"), "t"), "2*t*exp(t^2)"));
    CHECK(same(differentiate(parse("log(x)"), "x"), "1/x"));
    CHECK(same(differentiate(parse("sqrt(x)"), "x"), "1/(2*sqrt(x))"));
    CHECK(same(differentiate(parse("x^t"), "t"), "x^t*log(x)"));
  }

  TEST_CASE("multi-argument unknowns bump the matching order") {
    Expression xi = parse("xi(x, y, t)");
    Expression d = differentiate(differentiate(xi, "x"), "t");
    CHECK(d == parse("xi{1,0,1}(x, y, t)"));
  }
}

TEST_SUITE("simplify") {
  TEST_CASE("units and constant folding") {
    CHECK(simplify(parse("x + 0")) == sym("x"));
    CHECK(simplify(parse("1*(x*x)")) == parse("x^2"));
    CHECK(simplify(parse("(2/2)*f(u)")) == parse("f(u)"));
    CHECK(simplify(parse("2 + 3*4 - 14")).is_zero());
  }

  TEST_CASE("like terms and exponents merge") {
    CHECK(same(parse("x*y^2*x^-1"), "y^2"));
    CHECK(simplify(parse("(x + y)^2 - x^2 - 2*x*y - y^2")).is_zero());
    CHECK(simplify(parse("exp(t)*exp(-t)")).is_one());
    CHECK(simplify(parse("sqrt(4)")) == Expression(2));
    CHECK(simplify(parse("sin(-t) + sin(t)")).is_zero());
    CHECK(simplify(parse("cos(-t) - cos(t)")).is_zero());
  }

  TEST_CASE("radius powers recombine") {
    CHECK(simplify(parse("(x^2 + y^2)^(-3/2)*(x^2 + y^2) - (x^2 + y^2)^(-1/2)")).is_zero());
    CHECK(simplify(parse("x^2*(x^2 + y^2)^(-1) + y^2*(x^2 + y^2)^(-1)")).is_one());
    CHECK(simplify(parse("(1 + x^2/y^2)^(-1/2) - y*(x^2 + y^2)^(-1/2)")).is_zero());
  }

  TEST_CASE("real coefficients stay real") {
    Expression e = simplify(parse("0.5*x + 1/2*x"));
    CHECK(e == simplify(parse("1.0*x")));
  }

  TEST_CASE("idempotence on random trees") {
    ermakov::testing::TreeGen gen(7);
    for (int i = 0; i < 1000; ++i) {
      Expression e = gen();
      Expression s = simplify(e);
      INFO(to_string(e));
      REQUIRE(simplify(s) == s);
      CHECK(constants_folded(s));
    }
  }

  TEST_CASE("value preserved on random trees") {
    ermakov::testing::TreeGen gen(11);
    auto domain = ermakov::testing::random_domain();
    auto bindings = ermakov::testing::random_bindings();
    for (int i = 0; i < 200; ++i) {
      Expression e = gen();
      INFO(to_string(e));
      EquivalenceOptions opt;
      opt.samples = 20;
      opt.tol = 1e-9;
      opt.structural_first = false;
      auto r = check_equivalent(e, simplify(e), domain, bindings, opt);
      CHECK(r.equivalent);
    }
  }

  TEST_CASE("print/parse round trip modulo simplify on random trees") {
    ermakov::testing::TreeGen gen(13);
    for (int i = 0; i < 300; ++i) {
      Expression e = gen();
      INFO(to_string(e));
      CHECK(simplify(parse(to_string(e))) == simplify(e));
    }
  }
}

TEST_SUITE("evaluate") {
  TEST_CASE("reference values") {
    CHECK(evaluate(parse("x^2 + y^2"), Bindings{}.set("x", 3).set("y", 4)) == 25.0);
    CHECK(evaluate(parse("(x^2 + y^2)^(3/2)"), Bindings{}.set("x", 0).set("y", 2)) == doctest::Approx(8.0));
    Bindings b;
    b.set("x", 2).set("y", 4).define("f", FunctionDef::closed("u", parse("u^2")));
    CHECK(evaluate(parse("f(y/x)"), b) == doctest::Approx(4.0));
  }

  TEST_CASE("derivatives of bound functions come from the body") {
    Bindings b;
    b.set("u", 3).define("f", FunctionDef::closed("u", parse("u^3")));
    CHECK(evaluate(parse("f''(u)"), b) == doctest::Approx(18.0));
  }

  TEST_CASE("unbound symbols and functions fail loudly") {
    CHECK_THROWS_AS(evaluate(parse("x + z"), Bindings{}.set("x", 1)), UnboundSymbol);
    CHECK_THROWS_AS(evaluate(parse("g(x)"), Bindings{}.set("x", 1)), UnboundFunction);
  }

  TEST_CASE("domain errors name the offending subtree") {
    try {
      evaluate(parse("1 + log(x - 2)"), Bindings{}.set("x", 1));
      FAIL("expected DomainError");
    } catch (const DomainError& e) {
      CHECK(e.subtree == "log(x - 2)");
    }
    CHECK_THROWS_AS(evaluate(parse("1/x"), Bindings{}.set("x", 0)), DomainError);
    CHECK_THROWS_AS(evaluate(parse("sqrt(x)"), Bindings{}.set("x", -1)), DomainError);
    CHECK_THROWS_AS(evaluate(parse("exp(x)"), Bindings{}.set("x", 1000)), DomainError);
  }

  TEST_CASE("native functions") {
    Bindings b;
    b.set("u", 2).define("F", FunctionDef::with_derivative("u", parse("u"), [](double u) { return u * u / 2; }));
    CHECK(evaluate(parse("F(u)"), b) == doctest::Approx(2.0));
    CHECK(evaluate(parse("F'(u)"), b) == doctest::Approx(2.0));
  }
}

TEST_SUITE("collect_poly") {
  TEST_CASE("quadratic in one velocity") {
    auto c = collect_poly(parse("a*xdot^2 + b*xdot + c"), {"xdot"});
    REQUIRE(c.size() == 3);
    CHECK(c.at({2}) == sym("a"));
    CHECK(c.at({1}) == sym("b"));
    CHECK(c.at({0}) == sym("c"));
  }

  TEST_CASE("mixed velocity term collects under (1,1)") {
    Expression e = parse("xdot*ydot*xi{1,1,0}(x, y, t) + 2*xdot*eta1{0,1,1}(x, y, t)");
    auto c = collect_poly(e, {"xdot", "ydot"});
    CHECK(c.at({1, 1}) == parse("xi{1,1,0}(x, y, t)"));
    CHECK(c.at({1, 0}) == simplify(parse("2*eta1{0,1,1}(x, y, t)")));
  }

  TEST_CASE("zero collects to nothing") { CHECK(collect_poly(Expression(0), {"xdot"}).empty()); }

  TEST_CASE("non-polynomial dependence is rejected") {
    CHECK_THROWS_AS(collect_poly(parse("sin(xdot)"), {"xdot"}), NotPolynomial);
    CHECK_THROWS_AS(collect_poly(parse("1/xdot"), {"xdot"}), NotPolynomial);
    CHECK_THROWS_AS(collect_poly(parse("(1 + xdot^2)^(1/2)"), {"xdot"}), NotPolynomial);
  }

  TEST_CASE("reconstruction identity") {
    const char* fixtures[] = {"(xdot + ydot*x)^3*sin(t) - xdot/y", "(a + b*xdot)*(c - ydot)^2", "7"};
    std::vector<std::string> vars = {"xdot", "ydot"};
    for (const char* s : fixtures) {
      Expression e = parse(s);
      auto c = collect_poly(e, vars);
      for (const auto& [k, coeff] : c) CHECK_FALSE(contains_any_symbol(coeff, {"xdot", "ydot"}));
      CHECK(same(reassemble(c, vars), e));
    }
  }

  TEST_CASE("laurent antiderivative") {
    CHECK(same(*antiderivative(parse("u - u^-3"), "u"), "u^2/2 + u^-2/2"));
    CHECK(same(*antiderivative(parse("1/u"), "u"), "log(u)"));
    CHECK_FALSE(antiderivative(parse("sin(u)"), "u").has_value());
  }
}

TEST_SUITE("equivalent") {
  TEST_CASE("worked examples") {
    Domain d;
    d.with("x", -2, 2).with("y", -2, 2);
    CHECK(equivalent(parse("(x + y)^2"), parse("x^2 + 2*x*y + y^2"), d, 100, 1e-12));
    CHECK_FALSE(equivalent(parse("x^2"), parse("x^3"), Domain().with("x", 1, 2), 50, 1e-9));
  }

  TEST_CASE("general H family collapses to the homogeneous one at C = 0") {
    Expression h19 = parse("-h(x/y)/y^2");
    Expression h27 = parse("-h(x/y)/y^2 + (C/5)*(x^2 + y^2)^(3/2)");
    Bindings b;
    b.set("C", 0.0).define("h", FunctionDef::closed("v", parse("1/(1 + v^2)")));
    Domain d;
    d.with("x", 0.5, 2).with("y", 0.5, 2);
    CHECK(equivalent(h19, h27, d, 200, 1e-12, b));
  }

  TEST_CASE("deterministic under a fixed seed and independent of the kernel") {
    Expression a = parse("sin(x)*y"), b = parse("sin(x)*y + 1e-6*x");
    Domain d;
    d.with("x", 0, 1).with("y", 0, 1);
    EquivalenceOptions serial, parallel;
    serial.parallel = false;
    auto r1 = check_equivalent(a, b, d, {}, serial);
    auto r2 = check_equivalent(a, b, d, {}, parallel);
    CHECK(r1.max_scaled == r2.max_scaled);
    CHECK(r1.worst_point == r2.worst_point);
  }

  TEST_CASE("evaluation failures name the sample point") {
    CHECK_THROWS_WITH_AS(check_equivalent(parse("log(x)"), Expression(0), Domain().with("x", -1, -0.5)),
                         doctest::Contains("at {x="), EvalError);
  }
}

TEST_SUITE("properties") {
  TEST_CASE("linearity of differentiation") {
    ermakov::testing::TreeGen gen(17);
    for (int i = 0; i < 100; ++i) {
      Expression e1 = gen(3), e2 = gen(3);
      Expression a = rational(3, 2), b = Expression(-4);
      CHECK(same(differentiate(a * e1 + b * e2, "x"), a * differentiate(e1, "x") + b * differentiate(e2, "x")));
    }
  }

  TEST_CASE("mixed partials commute") {
    ermakov::testing::TreeGen gen(19);
    auto domain = ermakov::testing::random_domain();
    auto bindings = ermakov::testing::random_bindings();
    for (int i = 0; i < 500; ++i) {
      Expression e = gen(3);
      Expression dxy = differentiate(differentiate(e, "x"), "y");
      Expression dyx = differentiate(differentiate(e, "y"), "x");
      INFO(to_string(e));
      CHECK(equivalent(dxy, dyx, domain, 20, 1e-9, bindings));
    }
  }
}
