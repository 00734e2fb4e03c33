#include "ermakov/jet/noether.hpp"

#include <algorithm>

#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/simplify.hpp"

namespace ermakov::jet {

using expr::differentiate;
using expr::Expression;
using expr::simplify;
using expr::sym;

Expression noether_first_integral(const PointGenerator& g, const Expression& L, const Expression& gauge) {
  Expression pv(0);
  Expression eta_p(0);
  for (std::size_t k = 0; k < g.dim(); ++k) {
    const std::string v = velocity_name(g.coords()[k]);
    Expression p = differentiate(L, v);
    pv = pv + sym(v) * p;
    eta_p = eta_p + g.eta(k) * p;
  }
  return simplify(g.xi() * (pv - L) - eta_p + gauge);
}

Matrix velocity_hessian(const Expression& L, const std::vector<std::string>& coords) {
  Matrix m(coords.size(), std::vector<Expression>(coords.size()));
  for (std::size_t a = 0; a < coords.size(); ++a) {
    Expression la = differentiate(L, velocity_name(coords[a]));
    for (std::size_t b = 0; b < coords.size(); ++b) m[a][b] = simplify(differentiate(la, velocity_name(coords[b])));
  }
  return m;
}

Matrix invert(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix inv(n, std::vector<Expression>(n, Expression(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Expression(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && simplify(a[pivot][col]).is_zero()) ++pivot;
    if (pivot == n) throw SingularHessian("velocity Hessian is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Expression p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = simplify(a[col][j] / p);
      inv[col][j] = simplify(inv[col][j] / p);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Expression f = a[r][col];
      if (simplify(f).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = simplify(a[r][j] - f * a[col][j]);
        inv[r][j] = simplify(inv[r][j] - f * inv[col][j]);
      }
    }
  }
  return inv;
}

SecondOrderSystem euler_lagrange_system(const Expression& L, const std::vector<std::string>& coords,
                                        std::set<std::string> parameters, expr::FunctionTable functions,
                                        const std::string& time) {
  const std::size_t n = coords.size();
  Expression lx = functions.empty() ? L : expr::expand_functions(L, functions);
  Matrix minv = invert(velocity_hessian(lx, coords));
  std::vector<Expression> force(n);
  for (std::size_t a = 0; a < n; ++a) {
    Expression pa = differentiate(lx, velocity_name(coords[a]));
    Expression f = differentiate(lx, coords[a]) - differentiate(pa, time);
    for (std::size_t b = 0; b < n; ++b) f = f - differentiate(pa, coords[b]) * sym(velocity_name(coords[b]));
    force[a] = f;
  }
  std::vector<Expression> rhs(n, Expression(0));
  for (std::size_t a = 0; a < n; ++a) {
    Expression r(0);
    for (std::size_t b = 0; b < n; ++b) r = r + minv[a][b] * force[b];
    rhs[a] = functions.empty() ? simplify(r) : simplify(expr::expand_functions(r, functions));
  }
  SecondOrderSystem sys(coords, std::move(rhs), std::move(parameters), std::move(functions));
  sys.time = time;
  return sys;
}

DynamicalGenerator cartan_generator(const Expression& phi, const Expression& L, const std::vector<std::string>& coords,
                                    std::set<std::string> parameters, expr::FunctionTable functions) {
  Matrix m = velocity_hessian(L, coords);
  std::set<std::string> dynamic = {"t"};
  for (const auto& c : coords) {
    dynamic.insert(c);
    dynamic.insert(velocity_name(c));
  }
  for (const auto& row : m)
    for (const auto& e : row)
      if (expr::contains_any_symbol(e, dynamic))
        throw std::invalid_argument("velocity Hessian is not constant: " + e.str());
  Matrix minv = invert(m);
  SecondOrderSystem sys = euler_lagrange_system(L, coords, std::move(parameters), std::move(functions));
  std::vector<Expression> eta, eta_dot;
  for (std::size_t a = 0; a < coords.size(); ++a) {
    Expression e(0);
    for (std::size_t b = 0; b < coords.size(); ++b)
      e = e - minv[a][b] * differentiate(phi, velocity_name(coords[b]));
    eta.push_back(reduce(e, sys));
  }
  for (const auto& e : eta) eta_dot.push_back(reduce(total_derivative(e, sys), sys));
  return DynamicalGenerator(Expression(0), std::move(eta), std::move(eta_dot), coords);
}

DynamicalReport verify_dynamical(const DynamicalGenerator& g, const Expression& phi, const SecondOrderSystem& sys,
                                 const std::optional<Expression>& L, const CheckOptions& options) {
  DynamicalReport report;
  const std::size_t n = sys.dim();
  auto note = [&](const std::string& what, const ZeroCheck& z) {
    report.max_residual = std::max(report.max_residual, z.max_abs);
    if (!z.zero) report.notes.push_back(what + (z.note.empty() ? "" : ": " + z.note));
    return z.zero;
  };

  report.first_integral = note("A(phi) does not vanish", check_zero(total_derivative(phi, sys), sys, options));

  Matrix m(n, std::vector<Expression>(n, Expression(0)));
  if (L)
    m = velocity_hessian(*L, sys.coords);
  else
    for (std::size_t a = 0; a < n; ++a) m[a][a] = Expression(1);
  report.pairing = true;
  for (std::size_t b = 0; b < n; ++b) {
    Expression lhs = differentiate(phi, velocity_name(sys.coords[b]));
    for (std::size_t a = 0; a < n; ++a)
      lhs = lhs + m[a][b] * (g.eta[a] - sym(velocity_name(sys.coords[a])) * g.xi);
    report.pairing = note("pairing fails in component " + std::to_string(b + 1), check_zero(lhs, sys, options)) &&
                     report.pairing;
  }

  Expression axi = total_derivative(g.xi, sys);
  report.extension = true;
  for (std::size_t a = 0; a < n; ++a) {
    Expression expected = total_derivative(g.eta[a], sys) - sym(velocity_name(sys.coords[a])) * axi;
    report.extension = note("velocity component " + std::to_string(a + 1) + " is not the extension",
                            check_zero(g.eta_dot[a] - expected, sys, options)) &&
                       report.extension;
  }
  report.pass = report.first_integral && report.pairing && report.extension;
  return report;
}

}  // namespace ermakov::jet
