#pragma once

#include <string_view>

#include "ermakov/expr/expression.hpp"

namespace ermakov::expr {

/// Exact partial derivative with respect to a symbol. Opaque calls chain
/// through their arguments, bumping the matching derivative order:
/// d/dx f(u(x)) = f'(u)*u_x. The result is lightly folded, not simplified.
Expression differentiate(const Expression& e, std::string_view symbol);

/// Repeated partial derivative.
Expression differentiate(const Expression& e, std::string_view symbol, int times);

}  // namespace ermakov::expr
