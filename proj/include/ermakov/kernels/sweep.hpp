#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ermakov/dynamics/simulate.hpp"

namespace ermakov::kernels {

struct SweepCase {
  std::size_t id = 0;
  expr::Bindings bindings;
  models::CartesianState init;
};

struct SweepOutcome {
  std::size_t id = 0;
  bool ok = false;
  std::string error;
  models::CartesianState final_state{};
  double el_drift = 0.0;
  std::optional<double> energy_drift;
};

/// Runs one simulation per case over [t0, t1]. A case that fails records its
/// error instead of aborting the sweep. Results come back ordered by id, and
/// the parallel variant matches the serial one bit for bit.
std::vector<SweepOutcome> sweep_serial(const models::KEParams& p, const std::vector<SweepCase>& cases, double t0,
                                       double t1, const dynamics::SimulationOptions& options = {});
std::vector<SweepOutcome> sweep_parallel(const models::KEParams& p, const std::vector<SweepCase>& cases, double t0,
                                         double t1, const dynamics::SimulationOptions& options = {});

}  // namespace ermakov::kernels
