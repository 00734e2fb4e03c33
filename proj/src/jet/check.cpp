#include "ermakov/jet/check.hpp"

#include "ermakov/expr/simplify.hpp"

namespace ermakov::jet {

expr::Domain default_domain(const SecondOrderSystem& sys) {
  expr::Domain d;
  for (const auto& c : sys.coords) {
    d.with(c, 0.5, 2.0);
    d.with(velocity_name(c), -1.0, 1.0);
  }
  d.with(sys.time, 0.0, 2.0);
  return d;
}

ZeroCheck check_zero(const expr::Expression& e, const SecondOrderSystem& sys, const CheckOptions& options) {
  ZeroCheck out;
  expr::Expression r = reduce(e, sys);
  if (r.is_zero()) {
    out.zero = out.structural = true;
    return out;
  }
  expr::EquivalenceOptions eq;
  eq.samples = options.samples;
  eq.tol = options.tol;
  eq.seed = options.seed;
  eq.structural_first = false;
  expr::FunctionTable functions = sys.functions;
  for (const auto& [name, def] : options.bindings.functions) functions[name] = def;
  expr::Bindings fixed = options.bindings;
  fixed.functions = functions;
  try {
    auto report = expr::check_equivalent(expr::Expression(0), r, options.domain.value_or(default_domain(sys)), fixed, eq);
    out.zero = report.equivalent;
    out.max_abs = report.max_abs;
  } catch (const expr::EvalError& err) {
    out.zero = false;
    out.note = err.what();
  }
  return out;
}

}  // namespace ermakov::jet
