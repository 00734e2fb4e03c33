#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ermakov::dynamics {

/// dy/dt = F(t, y), written into `dy`.
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dy)>;

/// Inspects an accepted step from `prev` to `next` and returns a description
/// when it ends too close to, or jumps across, a singular set.
using Guard = std::function<std::optional<std::string>(std::span<const double> prev, std::span<const double> next)>;

struct IntegratorMeta {
  double rtol = 0.0;
  double atol = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::uint64_t seed = 0;
};

/// Samples of a solution at strictly monotone times; states are row-major.
struct Trajectory {
  std::size_t dim = 0;
  std::vector<double> times;
  std::vector<double> states;
  IntegratorMeta meta;

  std::size_t size() const { return times.size(); }
  std::span<const double> state(std::size_t i) const { return {states.data() + i * dim, dim}; }
  std::span<const double> back() const { return state(size() - 1); }
};

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t samples = 201;               // evenly spaced over [t0, t1]
  std::vector<double> sample_times;        // overrides `samples` when nonempty
  double initial_step = 0.0;               // 0: automatic
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 10'000'000;
  Guard guard;
};

struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, double last_good_time_)
      : std::runtime_error(what), last_good_time(last_good_time_) {}
  double last_good_time;
};

struct SingularityError : IntegrationError {
  using IntegrationError::IntegrationError;
};

/// Dormand-Prince 5(4) with PI step control and the order-4 continuous
/// extension for sample output. A step whose stages produce a non-finite
/// value is rejected and retried with a smaller step. Integrates backwards
/// when t1 < t0.
Trajectory integrate(const Rhs& rhs, std::span<const double> y0, double t0, double t1,
                     const IntegrateOptions& options = {});

/// Sample times t0 + (t1 - t0) k / (n - 1), k = 0..n-1.
std::vector<double> linspace(double t0, double t1, std::size_t n);

}  // namespace ermakov::dynamics
