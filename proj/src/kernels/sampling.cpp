#include "ermakov/kernels/sampling.hpp"

#include <cmath>
#include <optional>
#include <random>

namespace ermakov::kernels {

PointSet sample_box(const std::vector<std::pair<double, double>>& box, std::size_t n, std::uint64_t seed) {
  PointSet p;
  p.dim = box.size();
  p.data.reserve(n * p.dim);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [lo, hi] : box) p.data.push_back(std::uniform_real_distribution<double>(lo, hi)(rng));
  return p;
}

std::vector<double> evaluate_serial(const expr::CompiledExpr& f, const PointSet& points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    try {
      out[i] = f(points.row(i));
    } catch (const expr::EvalError& e) {
      throw PointError(i, e.what());
    }
  }
  return out;
}

std::vector<double> evaluate_parallel(const expr::CompiledExpr& f, const PointSet& points) {
  const auto n = static_cast<std::int64_t>(points.size());
  std::vector<double> out(points.size());
  // first failing index wins so the error matches the serial kernel
  std::int64_t failed = n;
  std::string message;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(points.row(static_cast<std::size_t>(i)));
    } catch (const expr::EvalError& e) {
#pragma omp critical(ermakov_eval_error)
      if (i < failed) {
        failed = i;
        message = e.what();
      }
    }
  }
  if (failed < n) throw PointError(static_cast<std::size_t>(failed), message);
  return out;
}

namespace {

Deviation fold(const std::vector<double>& a, const std::vector<double>& b) {
  Deviation d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double diff = std::abs(a[i] - b[i]);
    double scaled = diff / (1.0 + std::abs(a[i]));
    if (scaled > d.max_scaled || i == 0) {
      d.max_scaled = scaled;
      d.worst = i;
    }
    d.max_abs = std::max(d.max_abs, diff);
  }
  return d;
}

}  // namespace

Deviation compare_serial(const expr::CompiledExpr& f, const expr::CompiledExpr& g, const PointSet& points) {
  return fold(evaluate_serial(f, points), evaluate_serial(g, points));
}

Deviation compare_parallel(const expr::CompiledExpr& f, const expr::CompiledExpr& g, const PointSet& points) {
  return fold(evaluate_parallel(f, points), evaluate_parallel(g, points));
}

}  // namespace ermakov::kernels
