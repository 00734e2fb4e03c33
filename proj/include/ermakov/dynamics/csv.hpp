#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ermakov/dynamics/integrator.hpp"
#include "ermakov/dynamics/invariants.hpp"

namespace ermakov::dynamics {

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

using Column = std::pair<std::string, std::vector<double>>;

/// Header "t,<state names>,<extra names>", then one row per sample.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& state_names,
                          const std::vector<Column>& extra = {});

/// Header "t,invariant,value,delta"; rows grouped by invariant.
void write_drift_csv(std::ostream& out, const Trajectory& traj, const std::vector<DriftReport>& reports);

}  // namespace ermakov::dynamics
