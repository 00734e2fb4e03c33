#include <cmath>

#include "doctest.h"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/expr/parse.hpp"
#include "ermakov/expr/simplify.hpp"
#include "ermakov/jet/check.hpp"
#include "ermakov/jet/symmetry.hpp"
#include "ermakov/models/kepler_ermakov.hpp"
#include "ermakov/sigma/sigma.hpp"
#include "expr_printing.hpp"

using namespace ermakov;
using namespace ermakov::expr;
using models::KEParams;
using models::UnaryFunction;

namespace {

bool same(const Expression& a, const char* b) { return structurally_equal(a, parse(b)); }

KEParams radial(Expression w, Expression C) {
  KEParams p;
  p.w = std::move(w);
  p.C = std::move(C);
  p.h = UnaryFunction::closed("h", "v", Expression(0));
  p.f = UnaryFunction::closed("f", "u", "u^2/2");
  p.g = UnaryFunction::closed("g", "u", "(1 - u^4)/4");
  return p;
}

void check_family(const KEParams& p, const sigma::SigmaSolution& sol, const Bindings& b = {}) {
  jet::SecondOrderSystem sys = models::build_system(p);
  jet::CheckOptions o;
  o.bindings = b;
  REQUIRE_FALSE(sol.numeric);
  for (const auto& s : sol.generators()) {
    CAPTURE(s);
    for (const auto& r : jet::symmetry_residual(sigma::build_generator_family(s), sys)) {
      auto z = jet::check_zero(r, sys, o);
      CAPTURE(z.max_abs);
      CHECK(z.zero);
    }
  }
}

}  // namespace

TEST_SUITE("sigma coefficient") {
  TEST_CASE("the residual selects k = 4C/5") {
    const auto& res = sigma::resolved_sigma_coefficient();
    CHECK(res.ratio == sigma::kPrintedRatio);
    CHECK(res.residual_printed == 0.0);
    CHECK(res.residual_substituted > 1e-3);
    CHECK(res.summary.find("k = 4C/5") == 0);
  }

  TEST_CASE("the direct substitution value k = C is not a symmetry") {
    KEParams p = radial(Expression(0), rational(1, 2));
    auto sol = sigma::sigma_basis(Expression(0), p.C, sigma::kSubstitutedRatio);
    jet::SecondOrderSystem sys = models::build_system(p);
    auto r = jet::symmetry_residual(sigma::build_generator_family(sol.basis[0]), sys);
    CHECK_FALSE(jet::check_zero(r[0], sys).zero);
  }
}

TEST_SUITE("sigma basis") {
  TEST_CASE("free case") {
    auto sol = sigma::sigma_basis(Expression(0), Expression(0));
    REQUIRE(sol.basis.size() == 3);
    CHECK(same(sol.basis[0], "1"));
    CHECK(same(sol.basis[1], "t"));
    CHECK(same(sol.basis[2], "t^2"));
    CHECK_FALSE(sol.particular);
  }

  TEST_CASE("constant frequency") {
    auto sol = sigma::sigma_basis(sym("w0"), Expression(0));
    REQUIRE(sol.basis.size() == 3);
    CHECK(same(sol.basis[0], "1"));
    CHECK(same(sol.basis[1], "cos(2*w0*t)"));
    CHECK(same(sol.basis[2], "sin(2*w0*t)"));
  }

  TEST_CASE("second-order form with C > 0") {
    auto sol = sigma::sigma_basis(Expression(0), sym("C"), sigma::kSubstitutedRatio);
    REQUIRE(sol.basis.size() == 2);
    CHECK(same(sol.basis[0], "cos(sqrt(C)*t)"));
    CHECK(same(sol.basis[1], "sin(sqrt(C)*t)"));
    REQUIRE(sol.particular);
    CHECK(same(*sol.particular, "zeta/C"));
    CHECK(sol.generators().size() == 3);
  }

  TEST_CASE("resolved ratio enters the frequency") {
    auto sol = sigma::sigma_basis(Expression(0), Expression(5));
    CHECK(same(sol.basis[0], "cos(2*t)"));
    CHECK(same(*sol.particular, "zeta/4"));
  }

  TEST_CASE("negative C gives real exponentials") {
    auto sol = sigma::sigma_basis(Expression(0), Expression(-5));
    REQUIRE(sol.basis.size() == 2);
    CHECK(same(sol.basis[0], "exp(2*t)"));
    CHECK(same(sol.basis[1], "exp(-2*t)"));
  }

  TEST_CASE("time-dependent w gives a numeric handle") {
    auto sol = sigma::sigma_basis(parse("1 + t/4"), Expression(0));
    CHECK(sol.numeric);
    CHECK(sol.basis.empty());
  }

  TEST_CASE("every closed basis element generates a symmetry") {
    SUBCASE("w = 0, C = 0") { check_family(radial(0, 0), sigma::sigma_basis(0, 0)); }
    SUBCASE("w = w0, C = 0") {
      check_family(radial(sym("w0"), 0), sigma::sigma_basis(sym("w0"), 0), Bindings().set("w0", 0.7));
    }
    SUBCASE("w = 0, C = 1/2") {
      check_family(radial(0, rational(1, 2)), sigma::sigma_basis(0, rational(1, 2)));
    }
    SUBCASE("w = 0, symbolic C") {
      check_family(radial(0, sym("C")), sigma::sigma_basis(0, sym("C")), Bindings().set("C", 0.8));
    }
    SUBCASE("w = 0, C < 0") { check_family(radial(0, Expression(-3)), sigma::sigma_basis(0, Expression(-3))); }
    SUBCASE("w = w0, C = 1/2") {
      check_family(radial(sym("w0"), rational(1, 2)), sigma::sigma_basis(sym("w0"), rational(1, 2)),
                   Bindings().set("w0", 0.7));
    }
  }
}

TEST_SUITE("generator family") {
  TEST_CASE("sigma = 1 is time translation") {
    auto g = sigma::build_generator_family(Expression(1));
    CHECK(same(g.xi(), "1"));
    CHECK(g.eta(0).is_zero());
    CHECK(g.eta(1).is_zero());
  }

  TEST_CASE("sigma = t^2 is the conformal generator") {
    auto g = sigma::build_generator_family(parse("t^2"));
    CHECK(same(g.xi(), "t^2"));
    CHECK(same(g.eta(0), "t*x"));
    CHECK(same(g.eta(1), "t*y"));
  }

  TEST_CASE("sigma = exp(beta t)") {
    auto g = sigma::build_generator_family(parse("exp(beta*t)"));
    CHECK(same(g.xi(), "exp(beta*t)"));
    CHECK(same(simplify(g.eta(0) - parse("beta/2*exp(beta*t)*x")), "0"));
    CHECK(same(simplify(g.eta(1) - parse("beta/2*exp(beta*t)*y")), "0"));
  }
}

TEST_SUITE("sigma first integral") {
  TEST_CASE("t^2 with w = 0 vanishes") { CHECK(sigma::sigma_first_integral(parse("t^2"), Expression(0)).is_zero()); }

  TEST_CASE("cos(2 w0 t) gives -2 w0^2") {
    Expression I = sigma::sigma_first_integral(parse("cos(2*w0*t)"), sym("w0"));
    for (double t : {0.0, 0.3, 1.7, 4.2}) {
      Bindings b;
      b.set("t", t).set("w0", 0.9);
      CHECK(evaluate(I, b) == doctest::Approx(-2 * 0.81).epsilon(1e-13));
    }
  }

  TEST_CASE("sampled solution is constant, perturbed one is flagged") {
    auto times = dynamics::linspace(0, 5, 101);
    auto good = sigma::sample_sigma(parse("cos(2*w0*t)"), times, Bindings().set("w0", 0.9));
    auto rep = sigma::sigma_first_integral(good, [](double) { return 0.9; });
    CHECK(rep.initial == doctest::Approx(-1.62));
    CHECK(rep.max_abs < 1e-12);

    auto bad = sigma::sample_sigma(parse("t^2 + sin(t)/100"), times);
    auto flagged = sigma::sigma_first_integral(bad, [](double) { return 0.0; });
    CHECK_FALSE(flagged.within(1e-4));
  }

  TEST_CASE("time-dependent w: numeric sigma conserves the first integral") {
    dynamics::IntegrateOptions o;
    o.rtol = 1e-11;
    o.atol = 1e-13;
    auto traj = sigma::integrate_sigma(parse("1 + t/4"), {}, {1.0, 0.2, -0.5}, 0, 6, o);
    auto rep = sigma::sigma_first_integral(traj, [](double t) { return 1 + t / 4; });
    CHECK(rep.relative < 1e-8);
  }

  TEST_CASE("closed basis solves the numeric equation") {
    dynamics::IntegrateOptions o;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    Bindings b;
    b.set("w0", 0.7);
    auto traj = sigma::integrate_sigma(sym("w0"), b, {1.0, 0.0, -4 * 0.49}, 0, 3, o);
    CHECK(traj.back()[0] == doctest::Approx(std::cos(1.4 * 3)).epsilon(1e-9));
  }
}

TEST_SUITE("pinney") {
  TEST_CASE("negative c2 is rejected") {
    CHECK_THROWS_AS(sigma::PinneyParams({1.0, -0.1}).validate(), std::invalid_argument);
  }

  TEST_CASE("equilibrium") {
    sigma::PinneyParams p{1.0, 1.0};
    auto rho = sigma::integrate_pinney(p, 1.0, 0.0, 0, 10);
    auto red = sigma::pinney_reduce(rho, p);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      CHECK(rho.state(i)[0] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(red.sigma.state(i)[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(red.first_integral.initial == doctest::Approx(2.0));
  }

  TEST_CASE("rho(0) = 2 conserves the first integral") {
    sigma::PinneyParams p{1.0, 1.0};
    dynamics::IntegrateOptions o;
    o.rtol = 1e-10;
    auto red = sigma::pinney_reduce(sigma::integrate_pinney(p, 2.0, 0.0, 0, 20, o), p);
    CHECK(red.first_integral.initial == doctest::Approx(2 * p.c2).epsilon(1e-12));
    CHECK(red.first_integral.max_abs < 1e-8);
    for (double r : red.third_order_residual) CHECK(std::abs(r) < 1e-9);
  }

  TEST_CASE("free linear rho") {
    sigma::PinneyParams p{0.0, 0.0};
    auto rho = sigma::integrate_pinney(p, 1.0, 1.0, 0, 3);
    auto red = sigma::pinney_reduce(rho, p);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      double t = rho.times[i];
      CHECK(red.sigma.state(i)[0] == doctest::Approx((1 + t) * (1 + t)).epsilon(1e-12));
      CHECK(red.third_order_residual[i] == 0.0);
    }
  }

  TEST_CASE("rho crossing zero") {
    sigma::PinneyParams p{1.0, 0.0};
    CHECK_THROWS_AS(sigma::integrate_pinney(p, 1.0, 0.0, 0, 3), dynamics::SingularityError);
    dynamics::Trajectory fake;
    fake.dim = 2;
    fake.times = {0, 1};
    fake.states = {1, 0, -0.5, 0};
    CHECK_THROWS_AS(sigma::pinney_reduce(fake, p), std::domain_error);
  }

  TEST_CASE("property: sigma = rho^2 satisfies the third-order equation") {
    for (auto [w0, c2, r0, rd0] : std::vector<std::array<double, 4>>{
             {1.0, 1.0, 0.6, 0.3}, {0.4, 2.5, 1.5, -0.2}, {2.0, 0.1, 0.9, 0.0}, {0.0, 1.0, 1.0, 0.5}}) {
      sigma::PinneyParams p{w0, c2};
      dynamics::IntegrateOptions o;
      o.rtol = 1e-10;
      auto red = sigma::pinney_reduce(sigma::integrate_pinney(p, r0, rd0, 0, 8, o), p);
      for (std::size_t i = 0; i < red.sigma.size(); ++i) {
        double scale = 1 + std::abs(red.sigma.state(i)[1]);
        CHECK(std::abs(red.third_order_residual[i]) < 1e-9 * scale);
      }
      CHECK(red.first_integral.relative < 1e-8);
    }
  }
}
