#include "ermakov/models/kepler_ermakov.hpp"

#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/equivalence.hpp"
#include "ermakov/expr/evaluate.hpp"
#include "ermakov/expr/parse.hpp"
#include "ermakov/expr/poly.hpp"
#include "ermakov/expr/simplify.hpp"
#include "ermakov/jet/noether.hpp"

namespace ermakov::models {

using expr::differentiate;
using expr::Expression;
using expr::simplify;
using expr::sym;

namespace {

const Expression X = sym("x");
const Expression Y = sym("y");
const Expression XD = sym("xdot");
const Expression YD = sym("ydot");

Expression r_squared() { return X * X + Y * Y; }
Expression r_cubed() { return expr::pow(r_squared(), expr::rational(3, 2)); }

Expression half(const Expression& e) { return e / Expression(2); }

void add_definition(expr::FunctionTable& table, const UnaryFunction& fn) {
  if (auto def = fn.definition()) table[fn.name] = std::move(*def);
}

// Structural zero, else a sampled check over x, y in [0.5, 2] when the
// expression has no other free symbols.
bool vanishes_in_plane(const Expression& e, const expr::FunctionTable& table) {
  Expression r = simplify(expr::expand_functions(e, table));
  if (r.is_zero()) return true;
  for (const auto& s : expr::free_symbols(r))
    if (s != "x" && s != "y") return false;
  for (const auto& name : expr::opaque_names(r))
    if (!table.count(name)) return false;
  expr::Domain d;
  d.with("x", 0.5, 2.0).with("y", 0.5, 2.0);
  expr::Bindings b;
  b.functions = table;
  expr::EquivalenceOptions opts;
  opts.structural_first = false;
  try {
    return expr::check_equivalent(Expression(0), r, d, b, opts).equivalent;
  } catch (const expr::EvalError&) {
    return false;
  }
}

// Free symbols besides `dynamic`, including those inside function bodies.
std::set<std::string> parameters_of(const std::vector<Expression>& exprs, const std::set<std::string>& dynamic,
                                    const expr::FunctionTable& table) {
  std::set<std::string> out;
  for (const auto& e : exprs)
    for (const auto& s : expr::free_symbols(expr::expand_functions(e, table)))
      if (!dynamic.count(s)) out.insert(s);
  return out;
}

Expression value_at_one(const UnaryFunction& fn) {
  if (fn.body) return simplify(expr::substitute(*fn.body, {{fn.param, Expression(1)}}));
  if (fn.native) return Expression::real(fn.native(1.0));
  return fn(Expression(1));
}

}  // namespace

UnaryFunction UnaryFunction::opaque(std::string name, std::string param) {
  UnaryFunction f;
  f.name = std::move(name);
  f.param = std::move(param);
  return f;
}

UnaryFunction UnaryFunction::closed(std::string name, std::string param, Expression body) {
  UnaryFunction f = opaque(std::move(name), std::move(param));
  f.body = simplify(body);
  return f;
}

UnaryFunction UnaryFunction::closed(std::string name, std::string param, const std::string& body) {
  return closed(std::move(name), std::move(param), expr::parse(body));
}

bool UnaryFunction::is_zero() const { return body && simplify(*body).is_zero(); }

Expression UnaryFunction::operator()(const Expression& arg) const { return Expression::opaque(name, arg); }

std::optional<expr::FunctionDef> UnaryFunction::definition() const {
  if (body) {
    auto def = expr::FunctionDef::closed(param, *body);
    def.native = native;
    return def;
  }
  if (derivative_rule) return expr::FunctionDef::with_derivative(param, *derivative_rule, native);
  if (native) {
    expr::FunctionDef def;
    def.params = {param};
    def.native = native;
    return def;
  }
  return std::nullopt;
}

KEParams& KEParams::with_integrable_h() {
  h = UnaryFunction::closed(h.name, h.param, C0 / (Expression(1) + sym(h.param) * sym(h.param)));
  return *this;
}

KEParams& KEParams::with_compatible_g() {
  g = derive_g_from_f(f, g.name);
  return *this;
}

expr::FunctionTable KEParams::functions() const {
  expr::FunctionTable table;
  add_definition(table, f);
  add_definition(table, g);
  add_definition(table, h);
  return table;
}

Expression standard_H(const Expression& C, const UnaryFunction& h) {
  Expression hv = h.is_zero() ? Expression(0) : h(X / Y);
  return simplify(-hv / (Y * Y) + C / Expression(5) * r_cubed());
}

Expression model_H(const KEParams& p) { return p.H_override ? *p.H_override : standard_H(p.C, p.h); }

jet::SecondOrderSystem build_system(const KEParams& p) {
  Expression H = model_H(p);
  Expression w2 = p.w * p.w;
  Expression u = Y / X;
  Expression fx = p.f.is_zero() ? Expression(0) : p.f(u) / expr::pow(X, Expression(3));
  Expression gy = p.g.is_zero() ? Expression(0) : p.g(u) / expr::pow(Y, Expression(3));
  std::vector<Expression> rhs = {simplify(-w2 * X - X * H / r_cubed() + fx), simplify(-w2 * Y - Y * H / r_cubed() + gy)};
  auto params = parameters_of(rhs, {"t", "x", "y", "xdot", "ydot"}, p.functions());
  return jet::SecondOrderSystem({"x", "y"}, std::move(rhs), std::move(params), p.functions());
}

Expression radial_constraint_residual(const Expression& H, const Expression& C) {
  return simplify(X * differentiate(H, "x") + Y * differentiate(H, "y") + Expression(2) * H - C * r_cubed());
}

Expression lagrangian_compatibility(const UnaryFunction& f, const UnaryFunction& g) {
  expr::FunctionTable table;
  add_definition(table, f);
  add_definition(table, g);
  Expression u = Y / X;
  Expression e = Y * Y * Expression::opaque(f.name, u, 1) + X * X * Expression::opaque(g.name, u, 1);
  return simplify(expr::expand_functions(e, table));
}

UnaryFunction derive_g_from_f(const UnaryFunction& f, const std::string& name) {
  const Expression u = sym(f.param);
  UnaryFunction g = UnaryFunction::opaque(name, f.param);
  if (!f.body) {
    g.derivative_rule = -u * u * Expression::opaque(f.name, u, 1);
    return g;
  }
  Expression integrand = simplify(-u * u * differentiate(*f.body, f.param));
  g.derivative_rule = integrand;
  if (auto G = expr::antiderivative(integrand, f.param)) {
    g.body = simplify(*G - expr::substitute(*G, {{f.param, Expression(1)}}));
    g.derivative_rule.reset();
    return g;
  }
  auto compiled = std::make_shared<expr::CompiledExpr>(integrand, std::vector<std::string>{f.param});
  g.native = [compiled](double at) {
    auto fn = [&](double s) { return (*compiled)(std::array<double, 1>{s}); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, 1.0, at, 10, 1e-13);
  };
  return g;
}

Expression psi_potential(const UnaryFunction& h) {
  if (h.is_zero()) return Expression(0);
  expr::FunctionTable table;
  add_definition(table, h);
  Expression hv = h(X / Y);
  Expression px = -X * hv / (Y * Y * r_cubed());
  Expression py = -Y * hv / (Y * Y * r_cubed());
  Expression curl = simplify(expr::expand_functions(differentiate(px, "y") - differentiate(py, "x"), table));
  if (!vanishes_in_plane(curl, table)) throw NonIntegrable("h admits no potential; curl = " + curl.str(), curl);

  Expression k = simplify(Expression(2) * value_at_one(h));
  Expression psi = simplify(k / Expression(3) * expr::pow(r_squared(), expr::rational(-3, 2)));
  if (!vanishes_in_plane(differentiate(psi, "x") - px, table) || !vanishes_in_plane(differentiate(psi, "y") - py, table))
    throw NonIntegrable("potential does not reproduce the field", curl);
  return psi;
}

Expression potential(const KEParams& p) {
  Expression u = Y / X;
  Expression fg = (p.f.is_zero() ? Expression(0) : p.f(u) / (X * X)) + (p.g.is_zero() ? Expression(0) : p.g(u) / (Y * Y));
  return simplify(p.C / Expression(10) * r_squared() + half(fg) + psi_potential(p.h));
}

LagrangianModel build_lagrangian(const KEParams& p) {
  if (p.H_override) throw Incompatible("an H override has no Lagrangian form");
  expr::FunctionTable table = p.functions();
  Expression compat = lagrangian_compatibility(p.f, p.g);
  if (!vanishes_in_plane(compat, table))
    throw Incompatible("f and g violate y^2 f'(y/x) + x^2 g'(y/x) = 0; residual " + compat.str());

  LagrangianModel m;
  m.psi = psi_potential(p.h);
  m.V = potential(p);
  m.L = simplify(half(XD * XD + YD * YD) - m.V);
  m.functions = std::move(table);
  return m;
}

Expression energy(const LagrangianModel& m) { return simplify(half(XD * XD + YD * YD) + m.V); }

SymbolicInvariant ermakov_lewis_symbolic(const KEParams& p, const std::string& primitive) {
  const Expression u = sym("u");
  Expression rule = u * p.f(u) - p.g(u) / expr::pow(u, Expression(3));
  SymbolicInvariant out;
  out.functions = p.functions();
  out.functions[primitive] = expr::FunctionDef::with_derivative("u", rule);
  Expression ang = XD * Y - X * YD;
  out.I = simplify(half(ang * ang) + Expression::opaque(primitive, Y / X));
  return out;
}

PolarModel to_polar(const KEParams& p) {
  LagrangianModel lm = build_lagrangian(p);
  PolarModel out;
  const Expression r = sym("r"), th = sym("theta"), rd = sym("rdot"), thd = sym("thetadot");
  Expression tan = expr::sin(th) / expr::cos(th);
  Expression G(0);
  if (!p.f.is_zero()) G = G + p.f(tan) / expr::pow(expr::cos(th), Expression(2));
  if (!p.g.is_zero()) G = G + p.g(tan) / expr::pow(expr::sin(th), Expression(2));
  out.G = simplify(G);
  out.k = p.h.is_zero() ? Expression(0) : simplify(Expression(2) * value_at_one(p.h));
  out.L = simplify(half(rd * rd + r * r * thd * thd) - p.C / Expression(10) * r * r -
                   out.k / (Expression(3) * expr::pow(r, Expression(3))) - out.G / (Expression(2) * r * r));
  out.system = jet::euler_lagrange_system(out.L, {"r", "theta"}, parameters_of({out.L}, {"t", "r", "theta", "rdot", "thetadot"}, lm.functions),
                                         lm.functions);
  return out;
}

PolarState to_polar_state(const CartesianState& s) {
  if (std::abs(s.x) < 1e-8 || std::abs(s.y) < 1e-8)
    throw std::domain_error("state lies on a coordinate axis, where the polar form is singular");
  PolarState p;
  p.r = std::hypot(s.x, s.y);
  p.theta = std::atan2(s.y, s.x);
  p.rdot = (s.x * s.xdot + s.y * s.ydot) / p.r;
  p.thetadot = (s.x * s.ydot - s.y * s.xdot) / (p.r * p.r);
  return p;
}

CartesianState to_cartesian_state(const PolarState& s) {
  const double c = std::cos(s.theta), sn = std::sin(s.theta);
  return {s.r * c, s.r * sn, s.rdot * c - s.r * s.thetadot * sn, s.rdot * sn + s.r * s.thetadot * c};
}

}  // namespace ermakov::models
