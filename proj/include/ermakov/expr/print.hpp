#pragma once

#include <string>

#include "ermakov/expr/expression.hpp"

namespace ermakov::expr {

enum class PrintStyle {
  /// Re-parseable text in the expression grammar.
  Grammar,
  /// Human-oriented: partial derivatives of multi-argument unknowns are
  /// written with subscripts (xi{2,0,0}(x,y,t) -> xi_xx) and the argument
  /// list is dropped. Not re-parseable.
  Subscript,
};

std::string to_string(const Expression& e, PrintStyle style = PrintStyle::Grammar);

}  // namespace ermakov::expr
