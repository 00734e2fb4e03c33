#include "ermakov/dynamics/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace ermakov::dynamics {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<std::string>& state_names,
                          const std::vector<Column>& extra) {
  if (state_names.size() != traj.dim) throw std::invalid_argument("state name count does not match the trajectory");
  for (const auto& [name, values] : extra)
    if (values.size() != traj.size()) throw std::invalid_argument("column '" + name + "' has the wrong length");
  out << "t";
  for (const auto& n : state_names) out << ',' << n;
  for (const auto& c : extra) out << ',' << c.first;
  out << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_double(traj.times[i]);
    for (double v : traj.state(i)) out << ',' << format_double(v);
    for (const auto& c : extra) out << ',' << format_double(c.second[i]);
    out << '\n';
  }
}

void write_drift_csv(std::ostream& out, const Trajectory& traj, const std::vector<DriftReport>& reports) {
  out << "t,invariant,value,delta\n";
  for (const auto& r : reports)
    for (std::size_t i = 0; i < r.values.size() && i < traj.size(); ++i)
      out << format_double(traj.times[i]) << ',' << r.name << ',' << format_double(r.values[i]) << ','
          << format_double(r.values[i] - r.initial) << '\n';
}

}  // namespace ermakov::dynamics
