#include "ermakov/sigma/sigma.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ermakov/dynamics/numeric_system.hpp"
#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/expr/print.hpp"
#include "ermakov/expr/simplify.hpp"
#include "ermakov/jet/symmetry.hpp"
#include "ermakov/models/kepler_ermakov.hpp"

namespace ermakov::sigma {

using expr::Expression;

namespace {

const Expression T = expr::sym("t");

bool simplifies_to_zero(const Expression& e) { return expr::simplify(e).is_zero(); }

// Two or three solutions of the constant-coefficient equation
// sigma'' + omega2 sigma = 0, plus the constant when `with_constant`.
std::vector<Expression> oscillator_basis(const Expression& omega2, bool with_constant, const Expression* omega_hint) {
  std::vector<Expression> out;
  if (with_constant) out.push_back(Expression(1));
  Expression o2 = expr::simplify(omega2);
  if (o2.is_zero()) {
    if (!with_constant) out.push_back(Expression(1));
    out.push_back(T);
    if (with_constant) out.push_back(T * T);
    return out;
  }
  if (o2.is_number() && o2.number().is_negative()) {
    Expression beta = expr::simplify(expr::sqrt(-o2));
    out.push_back(expr::exp(beta * T));
    out.push_back(expr::exp(-beta * T));
    return out;
  }
  Expression omega = omega_hint ? *omega_hint : expr::simplify(expr::sqrt(o2));
  out.push_back(expr::cos(expr::simplify(omega * T)));
  out.push_back(expr::sin(expr::simplify(omega * T)));
  return out;
}

double residual_with_ratio(const expr::Rational& ratio, const jet::CheckOptions& options) {
  models::KEParams p;
  p.C = expr::rational(1, 2);
  p.h = models::UnaryFunction::closed("h", "v", Expression(0));
  p.f = models::UnaryFunction::closed("f", "u", Expression(1));
  p.g = models::UnaryFunction::closed("g", "u", Expression(1));
  jet::SecondOrderSystem sys = models::build_system(p);
  Expression k = expr::simplify(Expression(ratio) * p.C);
  Expression s = expr::cos(expr::simplify(expr::sqrt(k) * T));
  double worst = 0.0;
  for (const auto& r : jet::symmetry_residual(build_generator_family(s), sys)) {
    jet::ZeroCheck z = jet::check_zero(r, sys, options);
    if (!z.note.empty()) throw std::logic_error("sigma self-test could not evaluate the residual: " + z.note);
    if (!z.zero) worst = std::max(worst, z.max_abs);
  }
  return worst;
}

}  // namespace

SigmaResolution resolve_sigma_coefficient(const jet::CheckOptions& options) {
  SigmaResolution res;
  res.residual_printed = residual_with_ratio(kPrintedRatio, options);
  res.residual_substituted = residual_with_ratio(kSubstitutedRatio, options);
  bool printed = res.residual_printed == 0.0, substituted = res.residual_substituted == 0.0;
  if (printed == substituted)
    throw std::logic_error("sigma self-test is inconclusive: residuals " + std::to_string(res.residual_printed) +
                           " (k = 4C/5) and " + std::to_string(res.residual_substituted) + " (k = C)");
  res.ratio = printed ? kPrintedRatio : kSubstitutedRatio;
  std::ostringstream os;
  os << "k = " << (printed ? "4C/5" : "C") << " (max residual " << res.residual_printed << " for k = 4C/5, "
     << res.residual_substituted << " for k = C)";
  res.summary = os.str();
  return res;
}

const SigmaResolution& resolved_sigma_coefficient() {
  static const SigmaResolution cached = resolve_sigma_coefficient();
  return cached;
}

std::vector<Expression> SigmaSolution::generators() const {
  std::vector<Expression> out = basis;
  if (particular) out.push_back(Expression(1));
  return out;
}

SigmaSolution sigma_basis(const Expression& w, const Expression& C, std::optional<expr::Rational> ratio) {
  SigmaSolution sol;
  if (expr::contains_symbol(w, "t")) {
    sol.numeric = true;
    sol.omega2 = expr::simplify(4 * w * w);
    sol.equation = "sigma''' + 4 w^2 sigma' + 4 w w' sigma = 0";
    return sol;
  }
  expr::Rational r = ratio ? *ratio : resolved_sigma_coefficient().ratio;
  Expression kC = expr::simplify(Expression(r) * C);
  bool no_c = simplifies_to_zero(C), no_w = simplifies_to_zero(w);
  sol.omega2 = expr::simplify(4 * w * w + kC);
  if (no_c) {
    Expression two_w = expr::simplify(2 * w);
    sol.basis = oscillator_basis(sol.omega2, true, no_w ? nullptr : &two_w);
    sol.equation = "sigma''' + 4 w^2 sigma' = 0";
  } else if (no_w) {
    sol.basis = oscillator_basis(kC, false, nullptr);
    sol.particular = expr::simplify(expr::sym("zeta") / kC);
    sol.equation = "sigma'' + " + expr::to_string(kC) + " sigma = zeta";
  } else {
    sol.basis = oscillator_basis(sol.omega2, true, nullptr);
    sol.equation = "sigma''' + (" + expr::to_string(sol.omega2) + ") sigma' = 0";
  }
  return sol;
}

jet::PointGenerator build_generator_family(const Expression& sigma) {
  Expression half_dot = expr::simplify(expr::differentiate(sigma, "t") / 2);
  return jet::PointGenerator(sigma, {expr::simplify(half_dot * expr::sym("x")), expr::simplify(half_dot * expr::sym("y"))});
}

Expression sigma_first_integral(const Expression& sigma, const Expression& w) {
  Expression s1 = expr::differentiate(sigma, "t");
  Expression s2 = expr::differentiate(s1, "t");
  return expr::simplify(sigma * s2 - s1 * s1 / 2 + 2 * sigma * sigma * w * w);
}

dynamics::DriftReport sigma_first_integral(const dynamics::Trajectory& sigma, const std::function<double(double)>& w) {
  if (sigma.dim < 3) throw std::invalid_argument("sigma samples need (sigma, sigma', sigma'')");
  dynamics::NamedInvariant inv{"sigma_first_integral", [w](double t, std::span<const double> s) {
                                 double wt = w(t);
                                 return s[0] * s[2] - 0.5 * s[1] * s[1] + 2 * s[0] * s[0] * wt * wt;
                               }};
  return dynamics::monitor_serial(sigma, {inv}).front();
}

dynamics::Trajectory sample_sigma(const Expression& sigma, const std::vector<double>& times,
                                  const expr::Bindings& bindings) {
  Expression s1 = expr::simplify(expr::differentiate(sigma, "t"));
  Expression s2 = expr::simplify(expr::differentiate(s1, "t"));
  std::vector<dynamics::StateFunction> fs;
  for (const auto& e : {sigma, s1, s2}) fs.emplace_back(e, std::vector<std::string>{}, "t", bindings);
  dynamics::Trajectory traj;
  traj.dim = 3;
  for (double t : times) {
    traj.times.push_back(t);
    for (const auto& f : fs) traj.states.push_back(f(t, {}));
  }
  return traj;
}

dynamics::Trajectory integrate_sigma(const Expression& w, const expr::Bindings& bindings, std::array<double, 3> init,
                                     double t0, double t1, const dynamics::IntegrateOptions& options) {
  dynamics::StateFunction wf(w, {}, "t", bindings);
  dynamics::StateFunction wdf(expr::simplify(expr::differentiate(w, "t")), {}, "t", bindings);
  auto rhs = [wf, wdf](double t, std::span<const double> y, std::span<double> dy) {
    double wt = wf(t, {}), wd = wdf(t, {});
    dy[0] = y[1];
    dy[1] = y[2];
    dy[2] = -4 * wd * wt * y[0] - 4 * wt * wt * y[1];
  };
  return dynamics::integrate(rhs, init, t0, t1, options);
}

void PinneyParams::validate() const {
  if (!(c2 >= 0)) throw std::invalid_argument("Pinney constant c2 must be nonnegative");
  if (!std::isfinite(w0)) throw std::invalid_argument("Pinney frequency must be finite");
}

dynamics::Trajectory integrate_pinney(const PinneyParams& p, double rho0, double rhodot0, double t0, double t1,
                                      const dynamics::IntegrateOptions& options) {
  p.validate();
  dynamics::IntegrateOptions o = options;
  if (!o.guard)
    o.guard = [](std::span<const double> prev, std::span<const double> y) -> std::optional<std::string> {
      if (std::abs(y[0]) < 1e-8 || std::signbit(prev[0]) != std::signbit(y[0])) return "rho reaches 0";
      return std::nullopt;
    };
  auto rhs = [p](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -p.w0 * p.w0 * y[0] + p.c2 / (y[0] * y[0] * y[0]);
  };
  std::array<double, 2> y0{rho0, rhodot0};
  return dynamics::integrate(rhs, y0, t0, t1, o);
}

PinneyReduction pinney_reduce(const dynamics::Trajectory& rho, const PinneyParams& p) {
  p.validate();
  if (rho.dim < 2) throw std::invalid_argument("Pinney samples need (rho, rho')");
  PinneyReduction out;
  out.sigma.dim = 3;
  out.sigma.meta = rho.meta;
  const double w2 = p.w0 * p.w0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    auto s = rho.state(i);
    double r = s[0], rd = s[1];
    if (!(r > 0)) throw std::domain_error("rho is not positive at t = " + std::to_string(rho.times[i]));
    double r3 = r * r * r;
    double rdd = -w2 * r + p.c2 / r3;
    double rddd = -w2 * rd - 3 * p.c2 * rd / (r3 * r);
    double sig = r * r, sd = 2 * r * rd, sdd = 2 * rd * rd + 2 * r * rdd, sddd = 6 * rd * rdd + 2 * r * rddd;
    out.sigma.times.push_back(rho.times[i]);
    out.sigma.states.insert(out.sigma.states.end(), {sig, sd, sdd});
    out.third_order_residual.push_back(sddd + 4 * w2 * sd);
  }
  const double w0 = p.w0;
  out.first_integral = sigma_first_integral(out.sigma, [w0](double) { return w0; });
  return out;
}

}  // namespace ermakov::sigma
