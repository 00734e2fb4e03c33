#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ermakov/expr/number.hpp"

namespace ermakov::expr {

enum class Kind : std::uint8_t { Number, Symbol, Sum, Product, Power, Negate, Call, Opaque };

enum class Elementary : std::uint8_t { Sin, Cos, Exp, Log, Sqrt };

std::string_view elementary_name(Elementary fn);

/// Immutable symbolic expression tree. Copies share structure.
///
/// Opaque calls name an unknown function together with a partial
/// derivative order per argument: `f''(u)` is {name "f", orders {2}, args {u}},
/// and `xi{1,0,1}(x,y,t)` is the mixed partial xi_xt.
class Expression {
 public:
  Expression();
  Expression(Number n);
  Expression(Rational r) : Expression(Number(r)) {}
  Expression(int i) : Expression(Number(i)) {}

  static Expression real(double d) { return Expression(Number::real(d)); }
  static Expression symbol(std::string name);
  static Expression sum(std::vector<Expression> terms);
  static Expression product(std::vector<Expression> factors);
  static Expression power(Expression base, Expression exponent);
  static Expression negate(Expression operand);
  static Expression call(Elementary fn, Expression arg);
  static Expression opaque(std::string name, std::vector<int> orders, std::vector<Expression> args);
  static Expression opaque(std::string name, Expression arg, int order = 0);

  Kind kind() const;
  const Number& number() const;
  const std::string& name() const;
  std::span<const Expression> children() const;
  Elementary function() const;
  std::span<const int> orders() const;

  const Expression& base() const { return children()[0]; }
  const Expression& exponent() const { return children()[1]; }
  const Expression& operand() const { return children()[0]; }

  bool is_number() const { return kind() == Kind::Number; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_symbol(std::string_view n) const { return is_symbol() && name() == n; }
  bool is_zero() const { return is_number() && number().is_zero(); }
  bool is_one() const { return is_number() && number().is_one(); }

  std::string str() const;

 private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Structural total order (kind first, then contents).
std::strong_ordering compare(const Expression& a, const Expression& b);
inline bool operator==(const Expression& a, const Expression& b) { return compare(a, b) == 0; }

struct ExpressionLess {
  bool operator()(const Expression& a, const Expression& b) const { return compare(a, b) < 0; }
};

// Arithmetic with light local folding (zero/one units, numeric pairs,
// flattening). Full normalization is simplify().
Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);
Expression pow(const Expression& base, const Expression& exponent);

inline Expression sym(std::string name) { return Expression::symbol(std::move(name)); }
Expression sin(const Expression& a);
Expression cos(const Expression& a);
Expression exp(const Expression& a);
Expression log(const Expression& a);
Expression sqrt(const Expression& a);
inline Expression rational(std::int64_t num, std::int64_t den) { return Expression(Rational(num, den)); }

bool contains_symbol(const Expression& e, std::string_view name);
bool contains_any_symbol(const Expression& e, const std::set<std::string>& names);
std::set<std::string> free_symbols(const Expression& e);
std::set<std::string> opaque_names(const Expression& e);

/// Simultaneous replacement of symbols.
Expression substitute(const Expression& e, const std::map<std::string, Expression>& replacements);

}  // namespace ermakov::expr
