#include "ermakov/expr/equivalence.hpp"

#include <cstdio>

#include "ermakov/expr/simplify.hpp"
#include "ermakov/kernels/sampling.hpp"

namespace ermakov::expr {

namespace {

std::string describe(const std::vector<std::string>& slots, std::span<const double> row) {
  std::string out = "at {";
  char buf[64];
  for (std::size_t i = 0; i < slots.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%s=%.17g", i ? ", " : "", slots[i].c_str(), row[i]);
    out += buf;
  }
  return out + "}";
}

}  // namespace

EquivalenceReport check_equivalent(const Expression& e1, const Expression& e2, const Domain& domain,
                                   const Bindings& fixed, const EquivalenceOptions& options) {
  EquivalenceReport report;
  if (options.structural_first && structurally_equal(e1, e2)) {
    report.equivalent = report.structural = true;
    return report;
  }
  std::vector<std::string> slots;
  std::vector<std::pair<double, double>> box;
  for (const auto& [name, range] : domain.ranges) {
    slots.push_back(name);
    box.push_back(range);
  }
  for (const auto& [name, v] : fixed.values) {
    if (domain.ranges.count(name)) continue;
    slots.push_back(name);
    box.emplace_back(v, v);
  }
  CompiledExpr f(e1, slots, fixed.functions);
  CompiledExpr g(e2, slots, fixed.functions);
  kernels::PointSet points = kernels::sample_box(box, options.samples, options.seed);
  report.samples = points.size();
  try {
    auto d = options.parallel ? kernels::compare_parallel(f, g, points) : kernels::compare_serial(f, g, points);
    report.max_scaled = d.max_scaled;
    report.max_abs = d.max_abs;
    if (points.size() > 0) {
      auto row = points.row(d.worst);
      for (std::size_t i = 0; i < slots.size(); ++i) report.worst_point[slots[i]] = row[i];
    }
  } catch (const kernels::PointError& e) {
    throw EvalError(std::string(e.what()) + " " + describe(slots, points.row(e.index)));
  }
  report.equivalent = report.max_scaled <= options.tol;
  return report;
}

bool equivalent(const Expression& e1, const Expression& e2, const Domain& domain, std::size_t samples, double tol,
                const Bindings& fixed, std::uint64_t seed) {
  EquivalenceOptions options;
  options.samples = samples;
  options.tol = tol;
  options.seed = seed;
  return check_equivalent(e1, e2, domain, fixed, options).equivalent;
}

}  // namespace ermakov::expr
