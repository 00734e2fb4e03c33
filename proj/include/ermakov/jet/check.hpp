#pragma once

#include <optional>
#include <string>

#include "ermakov/expr/equivalence.hpp"
#include "ermakov/jet/system.hpp"

namespace ermakov::jet {

/// How to decide that an expression over a system's jet space vanishes:
/// structurally first, else by sampling with the given bindings.
struct CheckOptions {
  expr::Bindings bindings;
  std::optional<expr::Domain> domain;
  std::size_t samples = 200;
  double tol = 1e-10;
  std::uint64_t seed = expr::kDefaultSeed;
};

struct ZeroCheck {
  bool zero = false;
  bool structural = false;
  double max_abs = 0.0;
  std::string note;  // evaluation failure, when sampling was impossible
};

/// Coordinates in [0.5, 2], velocities in [-1, 1], time in [0, 2].
expr::Domain default_domain(const SecondOrderSystem& sys);

ZeroCheck check_zero(const expr::Expression& e, const SecondOrderSystem& sys, const CheckOptions& options = {});

}  // namespace ermakov::jet
