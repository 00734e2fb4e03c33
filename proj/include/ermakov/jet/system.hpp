#pragma once

#include <set>
#include <string>
#include <vector>

#include "ermakov/expr/expression.hpp"
#include "ermakov/expr/functions.hpp"

namespace ermakov::jet {

/// The velocity symbol paired with a coordinate: x -> xdot.
inline std::string velocity_name(const std::string& coord) { return coord + "dot"; }

/// q''^a = w^a(t, q, qdot).
///
/// `parameters` are the constant symbols the right-hand sides may use besides
/// time, coordinates and velocities. `functions` holds closed bodies and
/// derivative rules applied before any structural comparison.
struct SecondOrderSystem {
  std::string time = "t";
  std::vector<std::string> coords;
  std::vector<expr::Expression> rhs;
  std::set<std::string> parameters;
  expr::FunctionTable functions;

  SecondOrderSystem() = default;
  SecondOrderSystem(std::vector<std::string> coords, std::vector<expr::Expression> rhs,
                    std::set<std::string> parameters = {}, expr::FunctionTable functions = {});

  std::size_t dim() const { return coords.size(); }
  std::vector<std::string> velocities() const;

  /// Throws std::invalid_argument on a size mismatch or an undeclared symbol.
  void validate() const;
};

/// A f = f_t + qdot^a f_{q^a} + w^a f_{qdot^a}, simplified.
expr::Expression total_derivative(const expr::Expression& e, const SecondOrderSystem& sys);

/// Applies the system's function table, then simplifies.
expr::Expression reduce(const expr::Expression& e, const SecondOrderSystem& sys);

}  // namespace ermakov::jet
