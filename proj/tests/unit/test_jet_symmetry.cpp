#include <set>

#include "doctest.h"
#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/expr/parse.hpp"
#include "ermakov/expr/poly.hpp"
#include "ermakov/expr/simplify.hpp"
#include "ermakov/jet/ansatz.hpp"
#include "ermakov/jet/check.hpp"
#include "ermakov/jet/noether.hpp"
#include "ermakov/jet/symmetry.hpp"
#include "ermakov/models/kepler_ermakov.hpp"
#include "expr_printing.hpp"
#include "random_trees.hpp"

using namespace ermakov;
using namespace ermakov::expr;
using jet::PointGenerator;
using models::KEParams;
using models::UnaryFunction;

namespace {

bool same(const Expression& a, const char* b) { return structurally_equal(a, parse(b)); }

PointGenerator gen(const char* xi, const char* e1, const char* e2) { return PointGenerator(parse(xi), {parse(e1), parse(e2)}); }

// sigma d/dt + sigma'/2 (x d/dx + y d/dy)
PointGenerator family(const char* sigma) {
  Expression s = parse(sigma);
  Expression half_ds = differentiate(s, "t") / Expression(2);
  return PointGenerator(s, {half_ds * sym("x"), half_ds * sym("y")});
}

KEParams ermakov_params() {
  KEParams p;
  p.w = Expression::opaque("w", sym("t"));
  return p;
}

jet::CheckOptions with_h_bound() {
  jet::CheckOptions o;
  o.bindings.define("h", FunctionDef::closed("v", parse("1 + v^2/3")));
  o.bindings.define("f", FunctionDef::closed("u", parse("u^2/2")));
  o.bindings.define("g", FunctionDef::closed("u", parse("(1 - u^4)/4")));
  o.bindings.define("w", FunctionDef::closed("t", parse("1 + t/4")));
  o.bindings.set("w0", 0.7);
  return o;
}

bool all_zero(const std::vector<Expression>& rs, const jet::SecondOrderSystem& sys, const jet::CheckOptions& o = {}) {
  for (const auto& r : rs)
    if (!jet::check_zero(r, sys, o).zero) return false;
  return true;
}

}  // namespace

TEST_SUITE("total derivative") {
  TEST_CASE("time, coordinate and velocity") {
    auto sys = models::build_system(ermakov_params());
    CHECK(jet::total_derivative(sym("t"), sys).is_one());
    CHECK(jet::total_derivative(sym("x"), sys) == sym("xdot"));
    CHECK(structurally_equal(jet::total_derivative(sym("xdot"), sys), sys.rhs[0]));
  }

  TEST_CASE("angular momentum squared is conserved without the f, g coupling") {
    KEParams p = ermakov_params();
    p.f = UnaryFunction::closed("f", "u", Expression(0));
    p.g = UnaryFunction::closed("g", "u", Expression(0));
    auto sys = models::build_system(p);
    Expression a = parse("(xdot*y - x*ydot)^2/2");
    CHECK(jet::check_zero(jet::total_derivative(a, sys), sys, with_h_bound()).zero);
  }
}

TEST_SUITE("prolong") {
  TEST_CASE("dilation") {
    auto sys = models::build_system(ermakov_params());
    auto z = jet::prolong(gen("t", "x/2", "y/2"), sys);
    CHECK(same(z[0], "-xdot/2"));
    CHECK(same(z[1], "-ydot/2"));
  }

  TEST_CASE("time translation adds nothing") {
    auto sys = models::build_system(ermakov_params());
    auto z = jet::prolong(gen("1", "0", "0"), sys);
    CHECK(z[0].is_zero());
    CHECK(z[1].is_zero());
  }

  TEST_CASE("projective generator") {
    auto sys = models::build_system(ermakov_params());
    auto z = jet::prolong(gen("t^2", "t*x", "t*y"), sys);
    CHECK(same(z[0], "x - t*xdot"));
    CHECK(same(z[1], "y - t*ydot"));
  }

  TEST_CASE("velocity symbols are rejected in a point generator") {
    CHECK_THROWS_AS(gen("xdot", "0", "0"), std::invalid_argument);
  }
}

TEST_SUITE("symmetry residual") {
  TEST_CASE("time translation of an autonomous system") {
    KEParams p;
    auto sys = models::build_system(p);
    auto r = jet::symmetry_residual(gen("1", "0", "0"), sys);
    CHECK(r[0].is_zero());
    CHECK(r[1].is_zero());
  }

  TEST_CASE("quadratic sigma family with the ratio-function H" * doctest::should_fail()) {
    auto sys = models::build_system(KEParams{});
    auto r = jet::symmetry_residual(family("t^2"), sys);
    CHECK(all_zero(r, sys, with_h_bound()));
  }

  TEST_CASE("quadratic sigma family leaves the h term of the residual") {
    auto sys = models::build_system(KEParams{});
    auto r = jet::symmetry_residual(family("t^2"), sys);
    CHECK(same(r[0], "-t*x*h(x/y)/(y^2*(x^2 + y^2)^(3/2))"));
    CHECK(same(r[1], "-t*y*h(x/y)/(y^2*(x^2 + y^2)^(3/2))"));
  }

  TEST_CASE("quadratic sigma family is a symmetry of the generalized Ermakov system") {
    KEParams p;
    p.h = UnaryFunction::closed("h", "v", Expression(0));
    auto sys = models::build_system(p);
    for (const char* s : {"1", "t", "t^2"}) {
      auto r = jet::symmetry_residual(family(s), sys);
      CHECK(r[0].is_zero());
      CHECK(r[1].is_zero());
    }
  }

  TEST_CASE("dilation fails for a non-homogeneous H") {
    KEParams p;
    p.f = UnaryFunction::closed("f", "u", Expression(0));
    p.g = UnaryFunction::closed("g", "u", Expression(0));
    p.H_override = sym("x");
    auto sys = models::build_system(p);
    auto r = jet::symmetry_residual(gen("t", "x/2", "y/2"), sys);
    double v = evaluate(r[0], Bindings{}.set("t", 1).set("x", 1).set("y", 2).set("xdot", 0).set("ydot", 0));
    CHECK(std::abs(v) > 1e-3);
  }

  TEST_CASE("explicit and operator forms agree") {
    auto sys = models::build_system(ermakov_params());
    testing::TreeGen trees(41);
    for (int i = 0; i < 12; ++i) {
      PointGenerator g(trees(2), {trees(2), trees(2)});
      auto a = jet::symmetry_residual(g, sys);
      auto b = jet::symmetry_residual_operator(g, sys);
      auto o = with_h_bound();
      o.bindings.define("f", testing::random_bindings().functions.at("f"));
      for (std::size_t k = 0; k < 2; ++k) CHECK(jet::check_zero(a[k] - b[k], sys, o).zero);
    }
  }

  TEST_CASE("residual is linear in the generator") {
    auto sys = models::build_system(ermakov_params());
    testing::TreeGen trees(7);
    for (int i = 0; i < 10; ++i) {
      PointGenerator g1(trees(2), {trees(2), trees(2)});
      PointGenerator g2(trees(2), {trees(2), trees(2)});
      Expression a = rational(3, 2), b = rational(-2, 7);
      auto lhs = jet::symmetry_residual(a * g1 + b * g2, sys);
      auto r1 = jet::symmetry_residual(g1, sys);
      auto r2 = jet::symmetry_residual(g2, sys);
      for (std::size_t k = 0; k < 2; ++k) CHECK(simplify(lhs[k] - a * r1[k] - b * r2[k]).is_zero());
    }
  }
}

TEST_SUITE("determining equations") {
  TEST_CASE("the Kepler-Ermakov system yields the second-order conditions") {
    auto eqs = jet::determining_equations(models::build_system(ermakov_params()));
    std::set<std::string> got;
    for (const auto& e : eqs) got.insert(e.coefficient.str());
    const char* expected[] = {
        "xi{2,0,0}(x, y, t)",
        "xi{0,2,0}(x, y, t)",
        "xi{1,1,0}(x, y, t)",
        "eta1{2,0,0}(x, y, t) - 2*xi{1,0,1}(x, y, t)",
        "eta1{1,1,0}(x, y, t) - xi{0,1,1}(x, y, t)",
        "eta2{1,1,0}(x, y, t) - xi{1,0,1}(x, y, t)",
        "eta2{0,2,0}(x, y, t) - 2*xi{0,1,1}(x, y, t)",
        "eta1{0,2,0}(x, y, t)",
        "eta2{2,0,0}(x, y, t)",
    };
    for (const char* s : expected) {
      INFO(s);
      CHECK(got.count(primitive_part(parse(s)).str()) == 1);
    }
  }

  TEST_CASE("cubic velocity terms carry exactly the second derivatives of xi") {
    auto eqs = jet::determining_equations(models::build_system(ermakov_params()));
    std::set<std::string> cubic;
    for (const auto& e : eqs)
      if (e.monomial[0] + e.monomial[1] == 3) cubic.insert(e.coefficient.str());
    std::set<std::string> expected;
    for (const char* s : {"xi{2,0,0}(x, y, t)", "xi{0,2,0}(x, y, t)", "xi{1,1,0}(x, y, t)"})
      expected.insert(primitive_part(parse(s)).str());
    CHECK(cubic == expected);
  }

  TEST_CASE("formatted with subscripts") {
    auto text = jet::format_equations(jet::determining_equations(models::build_system(ermakov_params())));
    CHECK(text.find("xi_xx = 0\n") != std::string::npos);
    CHECK(text.find("eta1_yy = 0\n") != std::string::npos);
  }

  TEST_CASE("velocity-linear conditions fix phi3 and phi4") {
    auto sys = models::build_system(ermakov_params());
    auto family = jet::AnsatzFamily::after_linear_conditions(Expression::opaque("sigma", sym("t")));
    std::set<std::string> left;
    for (const auto& c : family.linear_conditions(sys))
      if (!c.is_zero()) left.insert(primitive_part(c).str());
    CHECK(left == std::set<std::string>{"phi1'(t)", "phi2'(t)"});
    family.phi[0] = sym("k1");
    family.phi[1] = sym("k2");
    CHECK(all_zero(family.linear_conditions(sys), sys));
  }

  TEST_CASE("resolved ansatz with the ratio-function H" * doctest::should_fail()) {
    KEParams p;
    p.w = sym("w0");
    auto sys = models::build_system(p);
    auto g = jet::AnsatzFamily::resolved(parse("cos(2*w0*t)")).assemble();
    for (const auto& e : jet::determining_equations(sys, g)) CHECK(jet::check_zero(e.coefficient, sys, with_h_bound()).zero);
  }

  TEST_CASE("resolved ansatz solves every condition when h vanishes") {
    KEParams p;
    p.w = sym("w0");
    p.h = UnaryFunction::closed("h", "v", Expression(0));
    auto sys = models::build_system(p);
    for (const char* s : {"1", "cos(2*w0*t)", "sin(2*w0*t)"}) {
      auto g = jet::AnsatzFamily::resolved(parse(s)).assemble();
      for (const auto& e : jet::determining_equations(sys, g)) CHECK(jet::check_zero(e.coefficient, sys, with_h_bound()).zero);
    }
  }

  TEST_CASE("matches the collected residual") {
    auto sys = models::build_system(ermakov_params());
    testing::TreeGen trees(99);
    for (int i = 0; i < 8; ++i) {
      PointGenerator g(trees(2), {trees(2), trees(2)});
      std::set<std::string> a, b;
      for (const auto& e : jet::determining_equations(sys, g)) a.insert(e.coefficient.str());
      for (const auto& r : jet::symmetry_residual(g, sys))
        for (const auto& [m, c] : collect_poly(r, sys.velocities())) {
          Expression pp = primitive_part(c);
          if (!pp.is_zero()) b.insert(pp.str());
        }
      CHECK(a == b);
    }
  }
}

TEST_SUITE("noether") {
  KEParams lagrangian_params() {
    KEParams p;
    p.C = sym("C");
    p.C0 = sym("C0");
    p.with_integrable_h().with_compatible_g();
    return p;
  }

  TEST_CASE("time translation gives the energy") {
    auto m = models::build_lagrangian(lagrangian_params());
    Expression phi = jet::noether_first_integral(gen("1", "0", "0"), m.L);
    CHECK(same(phi,
               "(xdot^2 + ydot^2)/2 + C/10*(x^2 + y^2) + C0/3*(x^2 + y^2)^(-3/2) + (f(y/x)/x^2 + g(y/x)/y^2)/2"));
  }

  TEST_CASE("free particle translation gives momentum") {
    Expression phi = jet::noether_first_integral(gen("0", "1", "0"), parse("(xdot^2 + ydot^2)/2"));
    CHECK(same(phi, "-xdot"));
  }

  TEST_CASE("the energy is a first integral of the Euler-Lagrange system") {
    auto m = models::build_lagrangian(lagrangian_params());
    auto sys = jet::euler_lagrange_system(m.L, {"x", "y"}, {"C", "C0"}, m.functions);
    Expression phi = jet::noether_first_integral(gen("1", "0", "0"), m.L);
    jet::CheckOptions o;
    o.tol = 1e-9;
    CHECK(jet::check_zero(jet::total_derivative(phi, sys), sys, o).zero);
  }

  TEST_CASE("Euler-Lagrange equations reproduce the model") {
    KEParams p = lagrangian_params();
    auto m = models::build_lagrangian(p);
    auto el = jet::euler_lagrange_system(m.L, {"x", "y"}, {"C", "C0"}, m.functions);
    auto sys = models::build_system(p);
    for (std::size_t a = 0; a < 2; ++a) CHECK(jet::check_zero(el.rhs[a] - sys.rhs[a], sys).zero);
  }
}

TEST_SUITE("cartan") {
  struct Setup {
    KEParams p;
    models::LagrangianModel m;
    models::SymbolicInvariant inv;
    FunctionTable table;
  };

  Setup setup() {
    Setup s;
    s.p.C = sym("C");
    s.p.C0 = sym("C0");
    s.p.with_integrable_h().with_compatible_g();
    s.m = models::build_lagrangian(s.p);
    s.inv = models::ermakov_lewis_symbolic(s.p);
    s.table = s.inv.functions;
    return s;
  }

  TEST_CASE("generator of the Ermakov-Lewis invariant") {
    Setup s = setup();
    auto g = jet::cartan_generator(s.inv.I, s.m.L, {"x", "y"}, {"C", "C0"}, s.table);
    CHECK(g.xi.is_zero());
    CHECK(same(g.eta[0], "(x*ydot - y*xdot)*y"));
    CHECK(same(g.eta[1], "-(x*ydot - y*xdot)*x"));
    Expression d0 = expand_functions(parse("ydot*(x*ydot - y*xdot) + x/y^2*g(y/x) - y^2/x^3*f(y/x)"), s.table);
    Expression d1 = expand_functions(parse("-(xdot*(x*ydot - y*xdot) + x^2/y^3*g(y/x) - y/x^2*f(y/x))"), s.table);
    CHECK(structurally_equal(g.eta_dot[0], d0));
    CHECK(structurally_equal(g.eta_dot[1], d1));
    CHECK_FALSE(g.is_point());
  }

  TEST_CASE("free particle energy") {
    auto g = jet::cartan_generator(parse("(xdot^2 + ydot^2)/2"), parse("(xdot^2 + ydot^2)/2"), {"x", "y"});
    CHECK(same(g.eta[0], "-xdot"));
    CHECK(same(g.eta[1], "-ydot"));
  }

  TEST_CASE("non-constant Hessian is rejected") {
    CHECK_THROWS_AS(jet::cartan_generator(sym("xdot"), parse("x*xdot^2/2 + ydot^2/2"), {"x", "y"}), std::invalid_argument);
    CHECK_THROWS_AS(jet::cartan_generator(sym("xdot"), parse("xdot^2/2"), {"x", "y"}), jet::SingularHessian);
  }

  TEST_CASE("verification on the integrable model") {
    Setup s = setup();
    auto g = jet::cartan_generator(s.inv.I, s.m.L, {"x", "y"}, {"C", "C0"}, s.table);
    auto sys = models::build_system(s.p);
    sys.functions = s.table;
    auto report = jet::verify_dynamical(g, s.inv.I, sys);
    CHECK(report.pass);

    auto wrong = jet::verify_dynamical(g, sym("x"), sys);
    CHECK_FALSE(wrong.pass);
    CHECK_FALSE(wrong.first_integral);

    jet::DynamicalGenerator zero(Expression(0), {Expression(0), Expression(0)}, {Expression(0), Expression(0)});
    CHECK(jet::verify_dynamical(zero, Expression(3), sys).pass);
  }

  TEST_CASE("point symmetries map the invariant to first integrals") {
    KEParams p;
    p.h = UnaryFunction::closed("h", "v", Expression(0));
    auto inv = models::ermakov_lewis_symbolic(p);
    auto sys = models::build_system(p);
    sys.functions = inv.functions;
    for (const char* s : {"1", "t", "t^2"}) {
      PointGenerator g = family(s);
      REQUIRE(all_zero(jet::symmetry_residual(g, sys), sys));
      jet::DynamicalGenerator ext(g.xi(), g.eta(), jet::prolong(g, sys));
      Expression xi_inv = jet::reduce(ext.apply(inv.I), sys);
      CHECK(xi_inv.is_zero());
      CHECK(jet::reduce(jet::total_derivative(xi_inv, sys), sys).is_zero());
    }
  }
}
