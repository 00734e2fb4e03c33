#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "ermakov/expr/evaluate.hpp"

namespace ermakov::expr {

/// Box of symbol ranges sampled uniformly.
struct Domain {
  std::map<std::string, std::pair<double, double>> ranges;

  Domain& with(const std::string& name, double lo, double hi) {
    ranges[name] = {lo, hi};
    return *this;
  }
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'e4a1'0f1e'7a11ULL;

struct EquivalenceOptions {
  std::size_t samples = 200;
  double tol = 1e-10;
  std::uint64_t seed = kDefaultSeed;
  bool parallel = true;
  bool structural_first = true;
};

struct EquivalenceReport {
  bool equivalent = false;
  bool structural = false;  // decided by simplify alone, no sampling
  double max_scaled = 0.0;  // max |e1-e2| / (1+|e1|)
  double max_abs = 0.0;
  std::map<std::string, double> worst_point;
  std::size_t samples = 0;
};

/// Structural comparison first, then sampling: passes iff
/// |e1-e2| <= tol*(1+|e1|) at every point. Symbols outside the domain take
/// their values from `fixed`. Evaluation failures propagate as EvalError
/// naming the sample point.
EquivalenceReport check_equivalent(const Expression& e1, const Expression& e2, const Domain& domain,
                                   const Bindings& fixed = {}, const EquivalenceOptions& options = {});

bool equivalent(const Expression& e1, const Expression& e2, const Domain& domain, std::size_t samples, double tol,
                const Bindings& fixed = {}, std::uint64_t seed = kDefaultSeed);

}  // namespace ermakov::expr
