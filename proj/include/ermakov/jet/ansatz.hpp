#pragma once

#include <array>
#include <vector>

#include "ermakov/jet/generator.hpp"
#include "ermakov/jet/symmetry.hpp"

namespace ermakov::jet {

/// The general solution of the second-order determining conditions for a
/// planar system in (x, y, t):
///   xi   = kappa x + delta y + sigma
///   eta1 = (delta' x + phi1) y + kappa' x^2 + phi3 x + phi5
///   eta2 = (kappa' y + phi2) x + delta' y^2 + phi4 y + phi6
/// Every field is an Expression in t, opaque or closed form.
struct AnsatzFamily {
  expr::Expression kappa, delta, sigma;
  std::array<expr::Expression, 6> phi;
  expr::Expression c1, c2;

  /// Opaque kappa(t), delta(t), sigma(t), phi1(t)..phi6(t); symbolic c1, c2.
  static AnsatzFamily generic();

  /// kappa = delta = 0, phi3 = (sigma' - c1)/2, phi4 = (sigma' - c2)/2, the
  /// other phi generic: what the velocity-linear conditions leave.
  static AnsatzFamily after_linear_conditions(const expr::Expression& sigma);

  /// Fully resolved: additionally c1 = c2 = 0 and phi1 = phi2 = phi5 = phi6 = 0,
  /// giving xi = sigma, eta = sigma'/2 (x, y).
  static AnsatzFamily resolved(const expr::Expression& sigma);

  PointGenerator assemble() const;

  /// Coefficients of the velocity-linear monomials of the residual of the
  /// assembled generator on `sys`.
  std::vector<expr::Expression> linear_conditions(const SecondOrderSystem& sys) const;

  /// Coefficients of the velocity-free monomial.
  std::vector<expr::Expression> velocity_free_conditions(const SecondOrderSystem& sys) const;
};

}  // namespace ermakov::jet
