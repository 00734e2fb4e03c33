#include "ermakov/dynamics/simulate.hpp"

#include <array>

#include "ermakov/dynamics/numeric_system.hpp"
#include "ermakov/expr/parse.hpp"
#include "ermakov/jet/generator.hpp"
#include "ermakov/jet/noether.hpp"

namespace ermakov::dynamics {

std::vector<Column> Simulation::columns() const {
  std::vector<Column> out;
  for (const auto& r : drift) out.emplace_back(r.name == "energy" ? "E" : "I", r.values);
  return out;
}

const DriftReport* Simulation::report(const std::string& name) const {
  for (const auto& r : drift)
    if (r.name == name) return &r;
  return nullptr;
}

Simulation simulate(const models::KEParams& p, const expr::Bindings& bindings, const models::CartesianState& init,
                    double t0, double t1, const SimulationOptions& options) {
  auto sys = models::build_system(p);
  NumericSystem numeric(sys, bindings);
  IntegrateOptions io = options.integrate;
  if (!io.guard) io.guard = cartesian_guard();
  std::array<double, 4> y0{init.x, init.y, init.xdot, init.ydot};

  Simulation sim;
  sim.state_names = numeric.state_names();
  sim.trajectory = integrate(numeric.rhs(), y0, t0, t1, io);

  std::vector<NamedInvariant> invariants = {ermakov_lewis_invariant(ErmakovLewis(p.f, p.g, options.u0, bindings))};
  if (options.energy && !p.H_override) {
    try {
      expr::Expression L = expr::parse("(xdot^2 + ydot^2)/2") - models::potential(p);
      expr::Expression e = jet::noether_first_integral(jet::PointGenerator(expr::Expression(1), {0, 0}), L);
      StateFunction fn(e, sim.state_names, sys.time, bindings, p.functions());
      invariants.push_back({"energy", [fn](double t, std::span<const double> y) { return fn(t, y); }});
    } catch (const models::NonIntegrable&) {
    }
  }
  sim.drift = monitor(sim.trajectory, invariants, options.parallel);
  return sim;
}

Simulation simulate_polar(const models::KEParams& p, const expr::Bindings& bindings, const models::PolarState& init,
                          double t0, double t1, const SimulationOptions& options) {
  auto pm = models::to_polar(p);
  NumericSystem numeric(pm.system, bindings);
  IntegrateOptions io = options.integrate;
  if (!io.guard) io.guard = polar_guard();
  std::array<double, 4> y0{init.r, init.theta, init.rdot, init.thetadot};

  Simulation sim;
  sim.state_names = numeric.state_names();
  sim.trajectory = integrate(numeric.rhs(), y0, t0, t1, io);
  std::vector<NamedInvariant> invariants = {
      ermakov_lewis_polar_invariant(ErmakovLewis(p.f, p.g, options.u0, bindings))};
  if (options.energy) {
    StateFunction fn(jet::noether_first_integral(jet::PointGenerator(expr::Expression(1), {0, 0}, {"r", "theta"}), pm.L),
                     sim.state_names, pm.system.time, bindings, pm.system.functions);
    invariants.push_back({"energy", [fn](double t, std::span<const double> y) { return fn(t, y); }});
  }
  sim.drift = monitor(sim.trajectory, invariants, options.parallel);
  return sim;
}

}  // namespace ermakov::dynamics
