#pragma once

#include "ermakov/expr/expression.hpp"

namespace ermakov::expr {

/// Canonical normal form: expanded sum of monomials over atoms, with merged
/// exponents and exp factors, primitive sum bases, and exact rational
/// coefficients kept exact. Idempotent: simplify(simplify(e)) == simplify(e).
/// Fractional powers assume positive bases.
Expression simplify(const Expression& e);

/// True when the normal form of `e` is the literal 0.
bool structurally_zero(const Expression& e);

/// True when simplify(a - b) is the literal 0.
bool structurally_equal(const Expression& a, const Expression& b);

}  // namespace ermakov::expr
