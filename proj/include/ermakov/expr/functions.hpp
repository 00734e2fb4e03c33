#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ermakov/expr/expression.hpp"

namespace ermakov::expr {

/// Definition attached to an opaque function name.
///
/// A closed body makes every derivative available. Without a body, a
/// unary function may still carry a first-derivative rule (its higher
/// derivatives follow by differentiating the rule) and a native numeric
/// value, e.g. a quadrature-backed primitive.
struct FunctionDef {
  std::vector<std::string> params;
  std::optional<Expression> body;
  std::optional<Expression> first_derivative;
  std::function<double(double)> native;

  static FunctionDef closed(std::string param, Expression body);
  static FunctionDef closed(std::vector<std::string> params, Expression body);
  static FunctionDef with_derivative(std::string param, Expression first_derivative,
                                     std::function<double(double)> native = {});

  bool has_body() const { return body.has_value(); }
};

using FunctionTable = std::map<std::string, FunctionDef>;

/// The partial derivative of a closed body by the given orders, with the
/// parameters replaced by `args`.
Expression instantiate(const FunctionDef& def, std::span<const int> orders, std::span<const Expression> args);

/// Replaces calls to functions with closed bodies and applies first-derivative
/// rules to derivative calls of body-less functions, until a fixed point.
Expression expand_functions(const Expression& e, const FunctionTable& table);

}  // namespace ermakov::expr
