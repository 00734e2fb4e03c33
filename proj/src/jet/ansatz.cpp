#include "ermakov/jet/ansatz.hpp"

#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/simplify.hpp"

namespace ermakov::jet {

using expr::Expression;
using expr::sym;

namespace {

Expression of_t(const std::string& name) { return Expression::opaque(name, sym("t")); }

Expression dt(const Expression& e) { return expr::differentiate(e, "t"); }

std::vector<Expression> conditions_of_degree(const AnsatzFamily& family, const SecondOrderSystem& sys, int degree) {
  auto residual = symmetry_residual(family.assemble(), sys);
  std::vector<Expression> out;
  for (const auto& r : residual)
    for (const auto& [m, c] : expr::collect_poly(r, sys.velocities())) {
      int d = 0;
      for (int k : m) d += k;
      if (d == degree) out.push_back(c);
    }
  return out;
}

}  // namespace

AnsatzFamily AnsatzFamily::generic() {
  AnsatzFamily a;
  a.kappa = of_t("kappa");
  a.delta = of_t("delta");
  a.sigma = of_t("sigma");
  for (int i = 0; i < 6; ++i) a.phi[i] = of_t("phi" + std::to_string(i + 1));
  a.c1 = sym("c1");
  a.c2 = sym("c2");
  return a;
}

AnsatzFamily AnsatzFamily::after_linear_conditions(const Expression& sigma) {
  AnsatzFamily a = generic();
  a.kappa = a.delta = Expression(0);
  a.sigma = sigma;
  a.phi[2] = (dt(sigma) - a.c1) / Expression(2);
  a.phi[3] = (dt(sigma) - a.c2) / Expression(2);
  return a;
}

AnsatzFamily AnsatzFamily::resolved(const Expression& sigma) {
  AnsatzFamily a = after_linear_conditions(sigma);
  a.c1 = a.c2 = Expression(0);
  a.phi[0] = a.phi[1] = a.phi[4] = a.phi[5] = Expression(0);
  a.phi[2] = a.phi[3] = dt(sigma) / Expression(2);
  return a;
}

PointGenerator AnsatzFamily::assemble() const {
  Expression x = sym("x"), y = sym("y");
  Expression xi = kappa * x + delta * y + sigma;
  Expression alpha1 = dt(delta) * x + phi[0];
  Expression alpha2 = dt(kappa) * y + phi[1];
  Expression beta1 = dt(kappa) * x * x + phi[2] * x + phi[4];
  Expression beta2 = dt(delta) * y * y + phi[3] * y + phi[5];
  return PointGenerator(expr::simplify(xi), {expr::simplify(alpha1 * y + beta1), expr::simplify(alpha2 * x + beta2)});
}

std::vector<Expression> AnsatzFamily::linear_conditions(const SecondOrderSystem& sys) const {
  return conditions_of_degree(*this, sys, 1);
}

std::vector<Expression> AnsatzFamily::velocity_free_conditions(const SecondOrderSystem& sys) const {
  return conditions_of_degree(*this, sys, 0);
}

}  // namespace ermakov::jet
