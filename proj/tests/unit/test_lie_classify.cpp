#include <random>

#include "doctest.h"
#include "ermakov/expr/parse.hpp"
#include "ermakov/expr/simplify.hpp"
#include "ermakov/lie/algebra.hpp"
#include "ermakov/sigma/sigma.hpp"
#include "expr_printing.hpp"
#include "random_trees.hpp"

using namespace ermakov;
using namespace ermakov::expr;
using jet::PointGenerator;
using ermakov::testing::TreeGen;

namespace {

bool same(const Expression& a, const Expression& b) { return structurally_zero(simplify(a - b)); }
bool same(const Expression& a, const char* b) { return same(a, parse(b)); }

bool same(const PointGenerator& a, const PointGenerator& b) {
  if (!same(a.xi(), b.xi())) return false;
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!same(a.eta(k), b.eta(k))) return false;
  return true;
}

PointGenerator gen(const char* xi, const char* ex, const char* ey) { return PointGenerator(parse(xi), {parse(ex), parse(ey)}); }

// G1, G2, G3 of the free family: sigma = t^2, t, 1.
std::vector<PointGenerator> free_basis() {
  return {gen("t^2", "t*x", "t*y"), gen("t", "x/2", "y/2"), gen("1", "0", "0")};
}

// The C != 0 family with beta symbolic.
std::vector<PointGenerator> beta_basis() {
  return {sigma::build_generator_family(parse("exp(beta*t)")), sigma::build_generator_family(parse("exp(-beta*t)")),
          PointGenerator(parse("-1/beta^2"), {Expression(0), Expression(0)})};
}

lie::AlgebraTable sigma_table() {
  // [s1,s2] = 2 s1, [s1,s3] = s2, [s2,s3] = 2 s3
  return lie::AlgebraTable::from_brackets(3, {{0, 1, 0, Expression(2)}, {0, 2, 1, Expression(1)}, {1, 2, 2, Expression(2)}});
}

}  // namespace

TEST_SUITE("bracket") {
  TEST_CASE("free family") {
    auto g = free_basis();
    CHECK(same(lie::lie_bracket(g[2], g[1]), g[2]));
    CHECK(same(lie::lie_bracket(g[2], g[0]), Expression(2) * g[1]));
    CHECK(same(lie::lie_bracket(g[1], g[0]), g[0]));
  }

  TEST_CASE("coordinate translations commute") {
    auto b = lie::lie_bracket(gen("0", "1", "0"), gen("0", "0", "1"));
    CHECK(b.xi().is_zero());
    CHECK(b.eta(0).is_zero());
    CHECK(b.eta(1).is_zero());
  }

  TEST_CASE("beta family: [G1, G2] = -2 beta d/dt = 2 beta^3 G3") {
    auto g = beta_basis();
    auto b = lie::lie_bracket(g[0], g[1]);
    CHECK(same(b.xi(), "-2*beta"));
    CHECK(b.eta(0).is_zero());
    CHECK(b.eta(1).is_zero());
    CHECK(same(b, parse("2*beta^3") * g[2]));
    CHECK_FALSE(same(b, parse("5/2*beta^3") * g[2]));
  }

  TEST_CASE("beta family: the other two brackets as printed") {
    auto g = beta_basis();
    CHECK(same(lie::lie_bracket(g[0], g[2]), parse("1/beta") * g[0]));
    CHECK(same(lie::lie_bracket(g[2], g[1]), parse("1/beta") * g[1]));
  }

  TEST_CASE("different spaces are rejected") {
    PointGenerator a(Expression(1), {Expression(0)}, {"x"});
    CHECK_THROWS_AS(lie::lie_bracket(a, free_basis()[0]), std::invalid_argument);
  }

  TEST_CASE("property: antisymmetry and bilinearity") {
    TreeGen tg(77);
    for (int trial = 0; trial < 25; ++trial) {
      auto rnd = [&] { return PointGenerator(tg(3), {tg(3), tg(3)}); };
      PointGenerator a = rnd(), b = rnd(), c = rnd();
      CAPTURE(a.str());
      CAPTURE(b.str());
      auto ab = lie::lie_bracket(a, b), ba = lie::lie_bracket(b, a);
      CHECK(same(ab + ba, PointGenerator(Expression(0), {Expression(0), Expression(0)})));
      Expression k = rational(3, 7);
      CHECK(same(lie::lie_bracket(a, k * b + c), k * ab + lie::lie_bracket(a, c)));
    }
  }

  TEST_CASE("Jacobi identity for the free family") {
    auto g = free_basis();
    auto br = [](const PointGenerator& a, const PointGenerator& b) { return lie::lie_bracket(a, b); };
    auto j = br(g[0], br(g[1], g[2])) + br(g[1], br(g[2], g[0])) + br(g[2], br(g[0], g[1]));
    Domain d;
    d.with("t", 0.5, 2).with("x", 0.5, 2).with("y", 0.5, 2);
    CHECK(equivalent(j.xi(), Expression(0), d, 100, 1e-12));
    CHECK(equivalent(j.eta(0), Expression(0), d, 100, 1e-12));
    CHECK(equivalent(j.eta(1), Expression(0), d, 100, 1e-12));
  }
}

TEST_SUITE("structure constants") {
  TEST_CASE("free family reproduces the commutation table") {
    auto t = lie::structure_constants(free_basis(), {"G1", "G2", "G3"});
    CHECK(same(t(2, 1, 2), "1"));   // [G3,G2] = G3
    CHECK(same(t(2, 0, 1), "2"));   // [G3,G1] = 2 G2
    CHECK(same(t(1, 0, 0), "1"));   // [G2,G1] = G1
    CHECK(same(t(1, 2, 2), "-1"));
    for (std::size_t k = 0; k < 3; ++k) CHECK(t(0, 0, k).is_zero());
    CHECK(t.str().find("[G1, G2] = -G1") != std::string::npos);
  }

  TEST_CASE("translations are abelian") {
    auto t = lie::structure_constants({gen("1", "0", "0"), gen("0", "1", "0"), gen("0", "0", "1")});
    for (const auto& v : t.numeric()) CHECK(v == 0.0);
    CHECK(lie::classify(t) == lie::Classification::Abelian);
    CHECK(t.str() == "(abelian: all brackets vanish)\n");
  }

  TEST_CASE("two-dimensional non-abelian") {
    auto t = lie::structure_constants({gen("1", "0", "0"), gen("t", "0", "0")});
    CHECK(same(t(0, 1, 0), "1"));
    CHECK(t(0, 1, 1).is_zero());
    CHECK(lie::classify(t) == lie::Classification::Solvable);
  }

  TEST_CASE("beta family keeps beta symbolic") {
    auto t = lie::structure_constants(beta_basis());
    CHECK(same(t(0, 1, 2), "2*beta^3"));
    CHECK(same(t(0, 2, 0), "1/beta"));
    CHECK(same(t(2, 1, 1), "1/beta"));
    Bindings b;
    b.set("beta", 0.8);
    CHECK(lie::classify(t, b) == lie::Classification::Sl2R);
  }

  TEST_CASE("sums of basis elements need the numeric decomposition") {
    // f1 = G1 + G3, f2 = G2, f3 = G1 - G3
    auto g = free_basis();
    std::vector<PointGenerator> f{g[0] + g[2], g[1], g[0] + Expression(-1) * g[2]};
    auto t = lie::structure_constants(f);
    // [f1, f2] = [G1, G2] + [G3, G2] = -G1 + G3 = -f3
    CHECK(same(t(0, 1, 2), "-1"));
    CHECK(t(0, 1, 0).is_zero());
    // [f1, f3] = 2[G3, G1] = 4 G2
    CHECK(same(t(0, 2, 1), "4"));
    CHECK(lie::classify(t) == lie::Classification::Sl2R);
  }

  TEST_CASE("a non-closed basis is reported") {
    CHECK_THROWS_AS(lie::structure_constants({gen("1", "0", "0"), gen("t^2", "0", "0")}), lie::NotInSpan);
  }

  TEST_CASE("a dependent basis is reported") {
    CHECK_THROWS_AS(lie::structure_constants({gen("1", "x", "0"), gen("t", "0", "0"), gen("2", "2*x", "0")}),
                    std::invalid_argument);
  }

  TEST_CASE("closed sigma basis with C > 0 is sl2R") {
    auto sol = sigma::sigma_basis(Expression(0), rational(5, 4));
    std::vector<PointGenerator> basis;
    for (const auto& s : sol.generators()) basis.push_back(sigma::build_generator_family(s));
    auto t = lie::structure_constants(basis);
    CHECK(lie::classify(t) == lie::Classification::Sl2R);
  }

  TEST_CASE("constant frequency basis is sl2R") {
    auto sol = sigma::sigma_basis(rational(7, 10), Expression(0));
    std::vector<PointGenerator> basis;
    for (const auto& s : sol.generators()) basis.push_back(sigma::build_generator_family(s));
    CHECK(lie::classify(lie::structure_constants(basis)) == lie::Classification::Sl2R);
  }
}

TEST_SUITE("classify") {
  TEST_CASE("free family table is sl2R") {
    auto t = lie::structure_constants(free_basis());
    auto kf = lie::killing_form(t);
    CHECK(kf.positive == 2);
    CHECK(kf.negative == 1);
    CHECK(lie::classify(t) == lie::Classification::Sl2R);
  }

  TEST_CASE("sigma redefinition table is sl2R") { CHECK(lie::classify(sigma_table()) == lie::Classification::Sl2R); }

  TEST_CASE("zero table is abelian") {
    lie::AlgebraTable t(3, std::vector<Expression>(27, Expression(0)));
    CHECK(lie::classify(t) == lie::Classification::Abelian);
  }

  TEST_CASE("so(3) is su2") {
    auto t = lie::AlgebraTable::from_brackets(3, {{0, 1, 2, Expression(1)}, {1, 2, 0, Expression(1)}, {2, 0, 1, Expression(1)}});
    CHECK(lie::classify(t) == lie::Classification::Su2);
  }

  TEST_CASE("heisenberg") {
    auto t = lie::AlgebraTable::from_brackets(3, {{0, 1, 2, Expression(1)}});
    CHECK(lie::classify(t) == lie::Classification::Heisenberg);
  }

  TEST_CASE("euclidean plane algebra is solvable") {
    auto t = lie::AlgebraTable::from_brackets(3, {{2, 0, 1, Expression(1)}, {2, 1, 0, Expression(-1)}});
    CHECK(lie::classify(t) == lie::Classification::Solvable);
  }

  TEST_CASE("four dimensions are unclassified") {
    lie::AlgebraTable t(4, std::vector<Expression>(64, Expression(0)));
    CHECK(lie::classify(t) == lie::Classification::Unclassified);
  }

  TEST_CASE("Jacobi violation is rejected") {
    // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e3 fails the Jacobi identity
    CHECK_THROWS_AS(lie::AlgebraTable::from_brackets(3, {{0, 1, 2, Expression(1)}, {1, 2, 0, Expression(1)}, {2, 0, 2, Expression(1)}}),
                    std::invalid_argument);
  }

  TEST_CASE("asymmetric array is rejected") {
    std::vector<Expression> c(8, Expression(0));
    c[(0 * 2 + 1) * 2 + 0] = Expression(1);
    CHECK_THROWS_AS(lie::AlgebraTable(2, c), std::invalid_argument);
  }

  TEST_CASE("property: label is invariant under rational basis changes") {
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    const std::vector<lie::AlgebraTable> tables{
        lie::structure_constants(free_basis()), sigma_table(),
        lie::AlgebraTable::from_brackets(3, {{0, 1, 2, Expression(1)}, {1, 2, 0, Expression(1)}, {2, 0, 1, Expression(1)}}),
        lie::AlgebraTable::from_brackets(3, {{0, 1, 2, Expression(1)}}),
        lie::AlgebraTable::from_brackets(3, {{2, 0, 1, Expression(1)}, {2, 1, 0, Expression(-1)}})};
    for (const auto& t : tables) {
      auto label = lie::classify(t);
      int done = 0;
      while (done < 20) {
        std::vector<std::vector<Expression>> m(3, std::vector<Expression>(3));
        for (auto& row : m)
          for (auto& e : row) e = rational(num(rng), den(rng));
        try {
          auto changed = t.change_basis(m);
          CHECK(lie::classify(changed) == label);
          ++done;
        } catch (const std::invalid_argument&) {
          // singular draw
        }
      }
    }
  }
}
