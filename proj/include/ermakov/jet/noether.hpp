#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ermakov/jet/check.hpp"
#include "ermakov/jet/generator.hpp"
#include "ermakov/jet/system.hpp"

namespace ermakov::jet {

using Matrix = std::vector<std::vector<expr::Expression>>;

struct SingularHessian : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// xi (qdot^k L_qdot^k - L) - eta^k L_qdot^k + Lambda.
expr::Expression noether_first_integral(const PointGenerator& g, const expr::Expression& L,
                                        const expr::Expression& gauge = expr::Expression(0));

/// d^2 L / dqdot^a dqdot^b, simplified.
Matrix velocity_hessian(const expr::Expression& L, const std::vector<std::string>& coords);

/// Symbolic inverse by Gauss-Jordan elimination; throws SingularHessian when
/// no structurally nonzero pivot exists.
Matrix invert(const Matrix& m);

/// Solves the Euler-Lagrange equations of L for the accelerations.
SecondOrderSystem euler_lagrange_system(const expr::Expression& L, const std::vector<std::string>& coords,
                                        std::set<std::string> parameters = {}, expr::FunctionTable functions = {},
                                        const std::string& time = "t");

/// Cartan symmetry of a first integral phi in the gauge xi = 0:
/// eta = -M^{-1} dphi/dqdot with M the velocity Hessian of L, which must be
/// constant (free of time, coordinates and velocities) and invertible;
/// etadot = A(eta) along the Euler-Lagrange system of L.
DynamicalGenerator cartan_generator(const expr::Expression& phi, const expr::Expression& L,
                                    const std::vector<std::string>& coords, std::set<std::string> parameters = {},
                                    expr::FunctionTable functions = {});

struct DynamicalReport {
  bool pass = false;
  bool first_integral = false;  // A(phi) = 0 along sys
  bool pairing = false;         // M (eta - qdot xi) = -dphi/dqdot
  bool extension = false;       // etadot = A(eta) - qdot A(xi)
  double max_residual = 0.0;
  std::vector<std::string> notes;
};

/// Checks a dynamical generator against a first integral on a system.
/// The pairing uses the velocity Hessian of `L` when given, else the identity.
DynamicalReport verify_dynamical(const DynamicalGenerator& g, const expr::Expression& phi, const SecondOrderSystem& sys,
                                 const std::optional<expr::Expression>& L = std::nullopt,
                                 const CheckOptions& options = {});

}  // namespace ermakov::jet
