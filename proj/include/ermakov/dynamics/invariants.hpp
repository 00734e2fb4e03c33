#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ermakov/dynamics/integrator.hpp"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/models/kepler_ermakov.hpp"

namespace ermakov::dynamics {

/// (xdot y - x ydot)^2/2 + integral from u0 to y/x of [u f(u) - u^-3 g(u)] du.
/// The integral is a compiled closed form when f and g have bodies whose
/// integrand is a Laurent polynomial, else adaptive Gauss-Kronrod quadrature.
class ErmakovLewis {
 public:
  ErmakovLewis(const models::UnaryFunction& f, const models::UnaryFunction& g, double u0 = 1.0,
               const expr::Bindings& bindings = {});

  /// Throws std::domain_error when x = 0 or y/x and u0 differ in sign, since
  /// the integrand has a pole at u = 0.
  double integral(double u) const;

  double operator()(const models::CartesianState& s) const;
  double polar(const models::PolarState& s) const;

  bool closed_form() const { return closed_; }
  double lower_limit() const { return u0_; }

 private:
  expr::CompiledExpr integrand_;
  expr::CompiledExpr primitive_;
  bool closed_ = false;
  double u0_;
};

using Evaluator = std::function<double(double t, std::span<const double> state)>;

struct NamedInvariant {
  std::string name;
  Evaluator fn;
};

/// Evaluator over Cartesian states (x, y, xdot, ydot).
NamedInvariant ermakov_lewis_invariant(const ErmakovLewis& el, const std::string& name = "ermakov_lewis");

/// Evaluator over polar states (r, theta, rdot, thetadot).
NamedInvariant ermakov_lewis_polar_invariant(const ErmakovLewis& el, const std::string& name = "ermakov_lewis");

struct DriftReport {
  std::string name;
  double initial = 0.0;
  double max_abs = 0.0;   // max |I(t) - I(t0)|
  double relative = 0.0;  // max_abs / (1 + |I(t0)|)
  std::vector<double> values;

  bool within(double tol) const { return relative < tol; }
};

/// An invariant that could not be evaluated at a sample.
struct MonitorError : std::runtime_error {
  MonitorError(std::string invariant_, std::size_t index_, const std::string& what)
      : std::runtime_error("invariant '" + invariant_ + "' failed at sample " + std::to_string(index_) + ": " + what),
        invariant(std::move(invariant_)),
        index(index_) {}
  std::string invariant;
  std::size_t index;
};

/// One report per invariant, in the given order. The parallel variant
/// spreads the samples over OpenMP threads and produces identical reports;
/// on failure the error with the lowest sample index is thrown.
std::vector<DriftReport> monitor_serial(const Trajectory& traj, const std::vector<NamedInvariant>& invariants);
std::vector<DriftReport> monitor_parallel(const Trajectory& traj, const std::vector<NamedInvariant>& invariants);

inline std::vector<DriftReport> monitor(const Trajectory& traj, const std::vector<NamedInvariant>& invariants,
                                        bool parallel = true) {
  return parallel ? monitor_parallel(traj, invariants) : monitor_serial(traj, invariants);
}

}  // namespace ermakov::dynamics
