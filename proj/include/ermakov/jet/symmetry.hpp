#pragma once

#include <string>
#include <vector>

#include "ermakov/expr/poly.hpp"
#include "ermakov/jet/generator.hpp"
#include "ermakov/jet/system.hpp"

namespace ermakov::jet {

/// Extension coefficients zeta^a = A(eta^a) - qdot^a A(xi).
std::vector<expr::Expression> prolong(const PointGenerator& g, const SecondOrderSystem& sys);

/// The symmetry condition written out in partial derivatives of xi, eta and
/// w, one simplified expression per equation; all vanish iff g is a
/// symmetry of sys.
std::vector<expr::Expression> symmetry_residual(const PointGenerator& g, const SecondOrderSystem& sys);

/// The same condition assembled from operators: Xdot(w^a) - A(zeta^a) + w^a A(xi).
std::vector<expr::Expression> symmetry_residual_operator(const PointGenerator& g, const SecondOrderSystem& sys);

/// A generic point generator xi(q, t), eta_a(q, t) with opaque unknowns.
PointGenerator generic_generator(const SecondOrderSystem& sys, const std::string& xi_name = "xi",
                                 const std::string& eta_prefix = "eta");

struct DeterminingEquation {
  std::size_t component;           // index a of the residual it came from
  expr::ExponentVector monomial;   // velocity exponents
  expr::Expression coefficient;    // normalized: primitive, positive leading term
};

/// Coefficients of every velocity monomial of the residual of `g`, deduplicated
/// after normalization and in a stable order. Throws expr::NotPolynomial if
/// the residual is not polynomial in the velocities.
std::vector<DeterminingEquation> determining_equations(const SecondOrderSystem& sys, const PointGenerator& g);

/// determining_equations for the generic generator.
std::vector<DeterminingEquation> determining_equations(const SecondOrderSystem& sys);

/// One "<coeff> = 0" line per equation, unknowns in subscript notation.
std::string format_equations(const std::vector<DeterminingEquation>& eqs);

}  // namespace ermakov::jet
