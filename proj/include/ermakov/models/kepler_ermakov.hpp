#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "ermakov/expr/expression.hpp"
#include "ermakov/expr/functions.hpp"
#include "ermakov/jet/system.hpp"

namespace ermakov::models {

/// A named unary function as it appears in the model: opaque, closed form
/// in `param`, or known only through a first-derivative rule and an optional
/// native value.
struct UnaryFunction {
  std::string name;
  std::string param = "u";
  std::optional<expr::Expression> body;
  std::optional<expr::Expression> derivative_rule;
  std::function<double(double)> native;

  static UnaryFunction opaque(std::string name, std::string param = "u");
  static UnaryFunction closed(std::string name, std::string param, expr::Expression body);
  static UnaryFunction closed(std::string name, std::string param, const std::string& body);

  bool is_opaque() const { return !body && !derivative_rule && !native; }
  bool is_zero() const;

  /// name(arg) as an opaque call.
  expr::Expression operator()(const expr::Expression& arg) const;

  /// Table entry, or nullopt for a purely opaque function.
  std::optional<expr::FunctionDef> definition() const;
};

/// Kepler-Ermakov data. f and g take u = y/x, h takes v = x/y, w is a
/// function of t, C and C0 are constants (numbers or parameter symbols).
struct KEParams {
  UnaryFunction f = UnaryFunction::opaque("f", "u");
  UnaryFunction g = UnaryFunction::opaque("g", "u");
  UnaryFunction h = UnaryFunction::opaque("h", "v");
  expr::Expression w = expr::Expression(0);
  expr::Expression C = expr::Expression(0);
  expr::Expression C0 = expr::Expression(0);
  std::optional<expr::Expression> H_override;

  /// h(v) = C0/(1 + v^2), the family for which the potential exists.
  KEParams& with_integrable_h();

  /// Replaces g by the function compatible with f (see derive_g_from_f).
  KEParams& with_compatible_g();

  expr::FunctionTable functions() const;
};

/// -h(x/y)/y^2 + (C/5)(x^2 + y^2)^(3/2).
expr::Expression standard_H(const expr::Expression& C, const UnaryFunction& h);

/// H_override when set, else standard_H(C, h).
expr::Expression model_H(const KEParams& p);

/// x'' = -w^2 x - x H/r^3 + f(y/x)/x^3, y'' = -w^2 y - y H/r^3 + g(y/x)/y^3.
jet::SecondOrderSystem build_system(const KEParams& p);

/// x H_x + y H_y + 2H - C (x^2 + y^2)^(3/2), simplified.
expr::Expression radial_constraint_residual(const expr::Expression& H, const expr::Expression& C);

/// y^2 f'(y/x) + x^2 g'(y/x) with the function definitions applied, simplified.
expr::Expression lagrangian_compatibility(const UnaryFunction& f, const UnaryFunction& g);

/// The g with g'(u) = -u^2 f'(u) and g(1) = 0, named `name`. A closed f with
/// a Laurent-polynomial integrand gives a closed g; another closed f gives a
/// quadrature-backed native g with the derivative rule; an opaque f gives the
/// derivative rule alone.
UnaryFunction derive_g_from_f(const UnaryFunction& f, const std::string& name = "g");

struct NonIntegrable : std::runtime_error {
  NonIntegrable(const std::string& what, expr::Expression curl_)
      : std::runtime_error(what), curl(std::move(curl_)) {}
  expr::Expression curl;
};

/// The potential with Psi_x = -x h/(y^2 r^3), Psi_y = -y h/(y^2 r^3).
/// Curl-free fields are exactly h(v) = k/(1 + v^2), with Psi = (k/3) r^-3.
/// Throws NonIntegrable carrying the curl otherwise.
expr::Expression psi_potential(const UnaryFunction& h);

struct Incompatible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LagrangianModel {
  expr::Expression L;
  expr::Expression V;  // L = (xdot^2 + ydot^2)/2 - V
  expr::Expression psi;
  expr::FunctionTable functions;
};

/// (C/10) r^2 + [f(y/x)/x^2 + g(y/x)/y^2]/2 + Psi, without checking that f
/// and g are compatible. Throws NonIntegrable for h without a potential.
expr::Expression potential(const KEParams& p);

/// L = (xdot^2 + ydot^2)/2 - (C/10) r^2 - [f(y/x)/x^2 + g(y/x)/y^2]/2 - Psi.
/// Throws Incompatible for f, g violating the compatibility condition or an
/// H override, NonIntegrable for h without a potential.
LagrangianModel build_lagrangian(const KEParams& p);

/// The conserved energy (xdot^2 + ydot^2)/2 + V of a Lagrangian model.
expr::Expression energy(const LagrangianModel& m);

/// (xdot y - x ydot)^2/2 + F(y/x), F an opaque primitive named `primitive`
/// whose derivative rule is u f(u) - u^-3 g(u). The table holds that rule.
struct SymbolicInvariant {
  expr::Expression I;
  expr::FunctionTable functions;
};
SymbolicInvariant ermakov_lewis_symbolic(const KEParams& p, const std::string& primitive = "EL");

struct PolarModel {
  expr::Expression G;          // function of theta
  expr::Expression L;          // over r, theta, rdot, thetadot
  jet::SecondOrderSystem system;
  expr::Expression k;          // coefficient of the inverse-cube potential
};

/// Polar form of a Lagrangian model: G(theta) = f(tan)/cos^2 + g(tan)/sin^2,
/// r'' = r theta'^2 + G/r^3 - (C/5) r + k/r^4,
/// theta'' = -(G'(theta)/(2 r^2) + 2 r r' theta')/r^2,
/// both obtained as the Euler-Lagrange equations of the polar Lagrangian.
PolarModel to_polar(const KEParams& p);

struct PolarState {
  double r, theta, rdot, thetadot;
};
struct CartesianState {
  double x, y, xdot, ydot;
};

/// Throws std::domain_error on a coordinate axis, where tan or cot of theta
/// is undefined.
PolarState to_polar_state(const CartesianState& s);
CartesianState to_cartesian_state(const PolarState& s);

}  // namespace ermakov::models
