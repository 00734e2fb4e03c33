#pragma once

// Internal polynomial representation behind simplify() and collect_poly().
//
// An expression is held as a finite sum of terms coeff * prod(atom^exponent).
// Atoms are symbols, opaque calls, elementary calls, numeric bases with
// non-integer exponents, symbolic-exponent powers, and primitive sums raised
// to non-integer or negative powers. Rules that keep the form canonical:
//   - exp atoms in one term merge into a single exp of the summed argument;
//   - a sum-base atom never carries an exponent >= 1 (the integer part is
//     expanded);
//   - a sum-base atom is primitive: content 1, positive leading coefficient,
//     no common symbol/call factor;
//   - terms with sum-base atom K^e, e < 0, whose cofactor is an exact
//     multiple of the base are folded into K^(e+1).
// Bases of fractional powers are assumed positive (principal branch).

#include <map>
#include <vector>

#include "ermakov/expr/expression.hpp"

namespace ermakov::expr::detail {

struct Factor {
  Expression key;
  Rational exponent;
};

using Monomial = std::vector<Factor>;

/// Lexicographic order on exponent vectors, variables in ascending key order.
int compare_monomials(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) < 0; }
};

using Poly = std::map<Monomial, Number, MonomialLess>;

Poly canonical_poly(const Expression& e);
Expression from_poly(const Poly& p);

}  // namespace ermakov::expr::detail
