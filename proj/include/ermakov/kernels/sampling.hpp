#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ermakov/expr/evaluate.hpp"

namespace ermakov::kernels {

/// Row-major block of sample points, one row per point.
struct PointSet {
  std::size_t dim = 0;
  std::vector<double> data;

  std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
};

/// Uniform samples in a box, drawn serially from mt19937_64(seed) so the set
/// is independent of thread count.
PointSet sample_box(const std::vector<std::pair<double, double>>& box, std::size_t n, std::uint64_t seed);

/// An evaluation failure tagged with the index of the sample point.
struct PointError : expr::EvalError {
  PointError(std::size_t index_, const std::string& what) : EvalError(what), index(index_) {}
  std::size_t index;
};

std::vector<double> evaluate_serial(const expr::CompiledExpr& f, const PointSet& points);
std::vector<double> evaluate_parallel(const expr::CompiledExpr& f, const PointSet& points);

/// Largest |f - g| / (1 + |f|) over the points, with its index.
struct Deviation {
  double max_scaled = 0.0;
  double max_abs = 0.0;
  std::size_t worst = 0;
};

Deviation compare_serial(const expr::CompiledExpr& f, const expr::CompiledExpr& g, const PointSet& points);
Deviation compare_parallel(const expr::CompiledExpr& f, const expr::CompiledExpr& g, const PointSet& points);

}  // namespace ermakov::kernels
