#pragma once

#include <span>
#include <string>
#include <vector>

#include "ermakov/dynamics/integrator.hpp"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/jet/system.hpp"

namespace ermakov::dynamics {

/// A second-order system compiled to a first-order rhs over the state
/// (q^1..q^N, qdot^1..qdot^N). Parameters take their values from the
/// bindings; every opaque function needs a closed body or a native value.
class NumericSystem {
 public:
  NumericSystem(const jet::SecondOrderSystem& sys, const expr::Bindings& bindings = {});

  std::size_t state_dim() const { return 2 * rhs_.size(); }
  const std::vector<std::string>& state_names() const { return names_; }

  /// Evaluation failures surface as NaN so the integrator rejects the step.
  void operator()(double t, std::span<const double> y, std::span<double> dy) const;

  Rhs rhs() const;

 private:
  std::vector<expr::CompiledExpr> rhs_;
  std::vector<double> params_;
  std::vector<std::string> names_;
};

/// A state function compiled over (t, state names..., parameters).
class StateFunction {
 public:
  StateFunction() = default;
  StateFunction(const expr::Expression& e, const std::vector<std::string>& state_names, const std::string& time,
                const expr::Bindings& bindings = {}, const expr::FunctionTable& functions = {});

  double operator()(double t, std::span<const double> state) const;

 private:
  expr::CompiledExpr f_;
  std::size_t dim_ = 0;
  std::vector<double> params_;
};

/// |x|, |y| or r below `band`, or a sign change of x or y, in the first two
/// state components.
Guard cartesian_guard(double band = 1e-8);

/// r below `band`, or theta within `band` of or across an axis (where tan
/// or cot of theta is undefined), for states (r, theta, ...).
Guard polar_guard(double band = 1e-8);

}  // namespace ermakov::dynamics
