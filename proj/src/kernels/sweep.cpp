#include "ermakov/kernels/sweep.hpp"

#include <algorithm>
#include <cstdint>

namespace ermakov::kernels {

namespace {

SweepOutcome run_case(const models::KEParams& p, const SweepCase& c, double t0, double t1,
                      dynamics::SimulationOptions options) {
  options.parallel = false;
  SweepOutcome out;
  out.id = c.id;
  try {
    auto sim = dynamics::simulate(p, c.bindings, c.init, t0, t1, options);
    auto last = sim.trajectory.back();
    out.final_state = {last[0], last[1], last[2], last[3]};
    if (const auto* el = sim.report("ermakov_lewis")) out.el_drift = el->relative;
    if (const auto* en = sim.report("energy")) out.energy_drift = en->relative;
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

void order(std::vector<SweepOutcome>& v) {
  std::stable_sort(v.begin(), v.end(), [](const SweepOutcome& a, const SweepOutcome& b) { return a.id < b.id; });
}

}  // namespace

std::vector<SweepOutcome> sweep_serial(const models::KEParams& p, const std::vector<SweepCase>& cases, double t0,
                                       double t1, const dynamics::SimulationOptions& options) {
  std::vector<SweepOutcome> out;
  out.reserve(cases.size());
  for (const auto& c : cases) out.push_back(run_case(p, c, t0, t1, options));
  order(out);
  return out;
}

std::vector<SweepOutcome> sweep_parallel(const models::KEParams& p, const std::vector<SweepCase>& cases, double t0,
                                         double t1, const dynamics::SimulationOptions& options) {
  std::vector<SweepOutcome> out(cases.size());
  const auto n = static_cast<std::int64_t>(cases.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    out[k] = run_case(p, cases[k], t0, t1, options);
  }
  order(out);
  return out;
}

}  // namespace ermakov::kernels
