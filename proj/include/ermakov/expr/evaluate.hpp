#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ermakov/expr/expression.hpp"
#include "ermakov/expr/functions.hpp"

namespace ermakov::expr {

/// Numeric values for symbols and definitions for opaque functions.
struct Bindings {
  std::map<std::string, double> values;
  FunctionTable functions;

  Bindings& set(const std::string& name, double v) {
    values[name] = v;
    return *this;
  }
  Bindings& define(const std::string& name, FunctionDef def) {
    functions[name] = std::move(def);
    return *this;
  }
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundSymbol : EvalError {
  explicit UnboundSymbol(const std::string& name) : EvalError("unbound symbol '" + name + "'"), symbol(name) {}
  std::string symbol;
};

struct UnboundFunction : EvalError {
  explicit UnboundFunction(const std::string& name) : EvalError("unbound function '" + name + "'"), function(name) {}
  std::string function;
};

/// Raised for log of a nonpositive value, division by zero, a non-real power,
/// or any NaN/Inf intermediate. `subtree` is the printed offending node.
struct DomainError : EvalError {
  DomainError(const std::string& what, std::string subtree_)
      : EvalError(what + " in " + subtree_), subtree(std::move(subtree_)) {}
  std::string subtree;
};

/// Flat bytecode for repeated evaluation with symbols read from slots.
/// Closed-form functions are inlined at compile time; unary functions with
/// only a native implementation are called through it. Evaluation is const
/// and safe to run concurrently.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const Expression& e, std::vector<std::string> slots, const FunctionTable& functions = {});

  double operator()(std::span<const double> values) const;
  const std::vector<std::string>& slots() const { return slots_; }

 private:
  enum class Op : std::uint8_t { Const, Load, Add, Mul, Neg, PowInt, Pow, Sin, Cos, Exp, Log, Sqrt, Native };
  struct Instr {
    Op op;
    std::int32_t arg = 0;
    double value = 0.0;
    std::int32_t node = -1;
  };

  std::int32_t emit(const Expression& e);
  [[noreturn]] void fail(const std::string& what, std::int32_t node) const;

  std::vector<Instr> code_;
  std::vector<Expression> nodes_;
  std::vector<std::function<double(double)>> natives_;
  std::vector<std::string> slots_;
  FunctionTable functions_;
  std::size_t max_stack_ = 0;
};

/// Evaluates `e` once. Unbound symbols and functions throw.
double evaluate(const Expression& e, const Bindings& b);

}  // namespace ermakov::expr
