#pragma once

#include <string>
#include <vector>

#include "ermakov/dynamics/csv.hpp"
#include "ermakov/dynamics/integrator.hpp"
#include "ermakov/dynamics/invariants.hpp"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/models/kepler_ermakov.hpp"

namespace ermakov::dynamics {

struct SimulationOptions {
  IntegrateOptions integrate;  // the singularity guard is filled in when empty
  double u0 = 1.0;
  bool energy = true;          // monitor the Noether energy when a potential exists
  bool parallel = true;
};

struct Simulation {
  Trajectory trajectory;
  std::vector<std::string> state_names;
  std::vector<DriftReport> drift;

  /// The monitored series as extra CSV columns, named I and E.
  std::vector<Column> columns() const;
  const DriftReport* report(const std::string& name) const;
};

/// Integrates the model from a Cartesian state and monitors the
/// Ermakov-Lewis invariant ("ermakov_lewis") and, when the model has a
/// potential, the energy from time translation ("energy").
Simulation simulate(const models::KEParams& p, const expr::Bindings& bindings, const models::CartesianState& init,
                    double t0, double t1, const SimulationOptions& options = {});

/// The same run in the polar form of a Lagrangian model, monitoring the
/// polar Ermakov-Lewis invariant.
Simulation simulate_polar(const models::KEParams& p, const expr::Bindings& bindings, const models::PolarState& init,
                          double t0, double t1, const SimulationOptions& options = {});

}  // namespace ermakov::dynamics
