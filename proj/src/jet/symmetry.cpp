#include "ermakov/jet/symmetry.hpp"

#include <algorithm>

#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/print.hpp"
#include "ermakov/expr/simplify.hpp"

namespace ermakov::jet {

using expr::differentiate;
using expr::Expression;
using expr::sym;

namespace {

void check_space(const PointGenerator& g, const SecondOrderSystem& sys) {
  if (g.coords() != sys.coords || g.time() != sys.time)
    throw std::invalid_argument("generator and system live on different coordinate spaces");
}

}  // namespace

std::vector<Expression> prolong(const PointGenerator& g, const SecondOrderSystem& sys) {
  check_space(g, sys);
  Expression axi = total_derivative(g.xi(), sys);
  std::vector<Expression> zeta;
  for (std::size_t a = 0; a < sys.dim(); ++a)
    zeta.push_back(reduce(total_derivative(g.eta(a), sys) - sym(velocity_name(sys.coords[a])) * axi, sys));
  return zeta;
}

std::vector<Expression> symmetry_residual(const PointGenerator& g, const SecondOrderSystem& sys) {
  check_space(g, sys);
  const std::size_t n = sys.dim();
  const std::string& t = sys.time;
  const auto& q = sys.coords;
  std::vector<Expression> v;
  for (const auto& c : q) v.push_back(sym(velocity_name(c)));
  const Expression& xi = g.xi();
  Expression xi_t = differentiate(xi, t);

  std::vector<Expression> out;
  for (std::size_t a = 0; a < n; ++a) {
    const Expression& w = sys.rhs[a];
    const Expression& eta_a = g.eta(a);
    Expression r = xi * differentiate(w, t);
    for (std::size_t b = 0; b < n; ++b) {
      r = r + g.eta(b) * differentiate(w, q[b]);
      Expression dw = differentiate(w, velocity_name(q[b]));
      if (!dw.is_zero()) {
        Expression k = differentiate(g.eta(b), t) - v[b] * xi_t;
        for (std::size_t c = 0; c < n; ++c)
          k = k + v[c] * differentiate(g.eta(b), q[c]) - v[b] * v[c] * differentiate(xi, q[c]);
        r = r + k * dw;
      }
    }
    Expression axi = xi_t;
    for (std::size_t b = 0; b < n; ++b) axi = axi + v[b] * differentiate(xi, q[b]);
    r = r + Expression(2) * w * axi;
    for (std::size_t b = 0; b < n; ++b)
      r = r + sys.rhs[b] * (v[a] * differentiate(xi, q[b]) - differentiate(eta_a, q[b]));
    for (std::size_t b = 0; b < n; ++b) {
      Expression xi_b = differentiate(xi, q[b]);
      Expression eta_b = differentiate(eta_a, q[b]);
      for (std::size_t c = 0; c < n; ++c) {
        r = r + v[a] * v[b] * v[c] * differentiate(xi_b, q[c]);
        r = r - v[c] * v[b] * differentiate(eta_b, q[c]);
      }
      r = r + Expression(2) * v[a] * v[b] * differentiate(xi_t, q[b]);
      r = r - Expression(2) * v[b] * differentiate(differentiate(eta_a, t), q[b]);
    }
    r = r + v[a] * differentiate(xi_t, t) - differentiate(eta_a, t, 2);
    out.push_back(reduce(r, sys));
  }
  return out;
}

std::vector<Expression> symmetry_residual_operator(const PointGenerator& g, const SecondOrderSystem& sys) {
  auto zeta = prolong(g, sys);
  Expression axi = total_derivative(g.xi(), sys);
  std::vector<Expression> out;
  for (std::size_t a = 0; a < sys.dim(); ++a) {
    const Expression& w = sys.rhs[a];
    Expression xw = g.xi() * differentiate(w, sys.time);
    for (std::size_t b = 0; b < sys.dim(); ++b) {
      xw = xw + g.eta(b) * differentiate(w, sys.coords[b]);
      xw = xw + zeta[b] * differentiate(w, velocity_name(sys.coords[b]));
    }
    out.push_back(reduce(xw - total_derivative(zeta[a], sys) + w * axi, sys));
  }
  return out;
}

PointGenerator generic_generator(const SecondOrderSystem& sys, const std::string& xi_name,
                                 const std::string& eta_prefix) {
  std::vector<Expression> args;
  for (const auto& c : sys.coords) args.push_back(sym(c));
  args.push_back(sym(sys.time));
  std::vector<int> zero(args.size(), 0);
  Expression xi = Expression::opaque(xi_name, zero, args);
  std::vector<Expression> eta;
  for (std::size_t a = 0; a < sys.dim(); ++a)
    eta.push_back(Expression::opaque(eta_prefix + std::to_string(a + 1), zero, args));
  return PointGenerator(xi, eta, sys.coords, sys.time);
}

std::vector<DeterminingEquation> determining_equations(const SecondOrderSystem& sys, const PointGenerator& g) {
  auto residual = symmetry_residual(g, sys);
  std::vector<DeterminingEquation> out;
  for (std::size_t a = 0; a < residual.size(); ++a) {
    auto coeffs = expr::collect_poly(residual[a], sys.velocities());
    // highest-degree monomials first, as the conditions are usually read
    std::vector<std::pair<expr::ExponentVector, Expression>> ordered(coeffs.begin(), coeffs.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& l, const auto& r) {
      int dl = 0, dr = 0;
      for (int k : l.first) dl += k;
      for (int k : r.first) dr += k;
      return dl > dr;
    });
    for (const auto& [m, c] : ordered) {
      Expression norm = expr::primitive_part(c);
      if (norm.is_zero()) continue;
      bool seen = std::any_of(out.begin(), out.end(), [&](const auto& e) { return e.coefficient == norm; });
      if (!seen) out.push_back({a, m, norm});
    }
  }
  return out;
}

std::vector<DeterminingEquation> determining_equations(const SecondOrderSystem& sys) {
  return determining_equations(sys, generic_generator(sys));
}

std::string format_equations(const std::vector<DeterminingEquation>& eqs) {
  std::string out;
  for (const auto& e : eqs) out += expr::to_string(e.coefficient, expr::PrintStyle::Subscript) + " = 0\n";
  return out;
}

}  // namespace ermakov::jet
