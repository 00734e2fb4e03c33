#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ermakov/expr/expression.hpp"

namespace ermakov::expr {

struct NotPolynomial : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using ExponentVector = std::vector<int>;

/// Coefficients of `e` as a polynomial in `vars`. Keys are exponent vectors
/// aligned with `vars`; coefficients are simplified and free of `vars`.
/// Throws NotPolynomial on any other dependence on a var.
std::map<ExponentVector, Expression> collect_poly(const Expression& e, const std::vector<std::string>& vars);

/// Rebuilds sum(coeff * prod(var^k)) from a collect_poly result.
Expression reassemble(const std::map<ExponentVector, Expression>& terms, const std::vector<std::string>& vars);

/// Coefficients of `e` as a Laurent polynomial in one variable, or nullopt
/// when `var` enters otherwise.
std::optional<std::map<int, Expression>> laurent_coefficients(const Expression& e, const std::string& var);

/// Antiderivative in `var` for Laurent integrands, with log for the
/// reciprocal term; nullopt when the integrand is not Laurent in `var`.
std::optional<Expression> antiderivative(const Expression& e, const std::string& var);

/// `e` divided by the content of its normal form, with the leading term made
/// positive. Zero stays zero.
Expression primitive_part(const Expression& e);

}  // namespace ermakov::expr
