#include "ermakov/dynamics/invariants.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ermakov/expr/poly.hpp"
#include "ermakov/expr/simplify.hpp"

namespace ermakov::dynamics {

using expr::Expression;
using expr::sym;

ErmakovLewis::ErmakovLewis(const models::UnaryFunction& f, const models::UnaryFunction& g, double u0,
                           const expr::Bindings& bindings)
    : u0_(u0) {
  expr::FunctionTable table = bindings.functions;
  if (auto d = f.definition()) table[f.name] = *d;
  if (auto d = g.definition()) table[g.name] = *d;
  const Expression u = sym("u");
  Expression integrand = expr::simplify(expr::expand_functions(u * f(u) - g(u) / expr::pow(u, Expression(3)), table));
  integrand_ = expr::CompiledExpr(integrand, {"u"}, table);
  if (auto prim = expr::antiderivative(integrand, "u")) {
    Expression p = expr::simplify(*prim - expr::substitute(*prim, {{"u", Expression::real(u0)}}));
    primitive_ = expr::CompiledExpr(p, {"u"}, table);
    closed_ = true;
  }
}

double ErmakovLewis::integral(double u) const {
  if (!std::isfinite(u)) throw std::domain_error("ratio y/x is not finite");
  if (u * u0_ <= 0) throw std::domain_error("integration from u0 to y/x would cross the pole at u = 0");
  std::array<double, 1> at{u};
  if (closed_) return primitive_(at);
  auto fn = [&](double s) { return integrand_(std::array<double, 1>{s}); };
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, u0_, u, 20, 1e-15, &err);
  if (err > 1e-12 * std::max(1.0, std::abs(v))) throw std::domain_error("quadrature did not reach 1e-12");
  return v;
}

double ErmakovLewis::operator()(const models::CartesianState& s) const {
  if (s.x == 0) throw std::domain_error("x = 0");
  double l = s.xdot * s.y - s.x * s.ydot;
  return 0.5 * l * l + integral(s.y / s.x);
}

double ErmakovLewis::polar(const models::PolarState& s) const {
  double l = s.r * s.r * s.thetadot;
  return 0.5 * l * l + integral(std::tan(s.theta));
}

NamedInvariant ermakov_lewis_invariant(const ErmakovLewis& el, const std::string& name) {
  return {name, [el](double, std::span<const double> y) { return el({y[0], y[1], y[2], y[3]}); }};
}

NamedInvariant ermakov_lewis_polar_invariant(const ErmakovLewis& el, const std::string& name) {
  return {name, [el](double, std::span<const double> y) { return el.polar({y[0], y[1], y[2], y[3]}); }};
}

namespace {

std::vector<DriftReport> finish(const std::vector<NamedInvariant>& invariants, std::vector<std::vector<double>> values) {
  std::vector<DriftReport> out;
  for (std::size_t k = 0; k < invariants.size(); ++k) {
    DriftReport r;
    r.name = invariants[k].name;
    r.values = std::move(values[k]);
    if (!r.values.empty()) {
      r.initial = r.values.front();
      for (double v : r.values) r.max_abs = std::max(r.max_abs, std::abs(v - r.initial));
      r.relative = r.max_abs / (1.0 + std::abs(r.initial));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<DriftReport> monitor_serial(const Trajectory& traj, const std::vector<NamedInvariant>& invariants) {
  std::vector<std::vector<double>> values(invariants.size(), std::vector<double>(traj.size()));
  for (std::size_t i = 0; i < traj.size(); ++i)
    for (std::size_t k = 0; k < invariants.size(); ++k) {
      try {
        values[k][i] = invariants[k].fn(traj.times[i], traj.state(i));
      } catch (const std::exception& e) {
        throw MonitorError(invariants[k].name, i, e.what());
      }
    }
  return finish(invariants, std::move(values));
}

std::vector<DriftReport> monitor_parallel(const Trajectory& traj, const std::vector<NamedInvariant>& invariants) {
  const std::size_t n = traj.size();
  std::vector<std::vector<double>> values(invariants.size(), std::vector<double>(n));
  std::size_t first_bad = std::numeric_limits<std::size_t>::max();
  std::size_t bad_invariant = 0;
  std::string bad_what;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t k = 0; k < invariants.size(); ++k) {
      try {
        values[k][i] = invariants[k].fn(traj.times[i], traj.state(i));
      } catch (const std::exception& e) {
#pragma omp critical(ermakov_monitor_error)
        if (i < first_bad || (i == first_bad && k < bad_invariant)) {
          first_bad = i;
          bad_invariant = k;
          bad_what = e.what();
        }
        break;
      }
    }
  }
  if (first_bad != std::numeric_limits<std::size_t>::max())
    throw MonitorError(invariants[bad_invariant].name, first_bad, bad_what);
  return finish(invariants, std::move(values));
}

}  // namespace ermakov::dynamics
