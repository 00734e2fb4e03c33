#include "ermakov/jet/generator.hpp"

#include <stdexcept>

#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/simplify.hpp"
#include "ermakov/jet/system.hpp"

namespace ermakov::jet {

using expr::Expression;

PointGenerator::PointGenerator(Expression xi, std::vector<Expression> eta, std::vector<std::string> coords,
                               std::string time)
    : xi_(std::move(xi)), eta_(std::move(eta)), coords_(std::move(coords)), time_(std::move(time)) {
  if (eta_.size() != coords_.size())
    throw std::invalid_argument("generator has " + std::to_string(eta_.size()) + " eta components for " +
                                std::to_string(coords_.size()) + " coordinates");
  std::set<std::string> velocities;
  for (const auto& c : coords_) velocities.insert(velocity_name(c));
  auto reject = [&](const Expression& e, const std::string& which) {
    if (expr::contains_any_symbol(e, velocities))
      throw std::invalid_argument("point generator " + which + " depends on a velocity: " + e.str());
  };
  reject(xi_, "xi");
  for (std::size_t a = 0; a < eta_.size(); ++a) reject(eta_[a], "eta" + std::to_string(a + 1));
}

Expression PointGenerator::apply(const Expression& f) const {
  Expression out = xi_ * expr::differentiate(f, time_);
  for (std::size_t a = 0; a < eta_.size(); ++a) out = out + eta_[a] * expr::differentiate(f, coords_[a]);
  return expr::simplify(out);
}

PointGenerator PointGenerator::simplified() const {
  std::vector<Expression> eta;
  for (const auto& e : eta_) eta.push_back(expr::simplify(e));
  return PointGenerator(expr::simplify(xi_), std::move(eta), coords_, time_);
}

PointGenerator operator+(const PointGenerator& a, const PointGenerator& b) {
  if (a.coords_ != b.coords_ || a.time_ != b.time_) throw std::invalid_argument("generators on different spaces");
  std::vector<Expression> eta;
  for (std::size_t i = 0; i < a.dim(); ++i) eta.push_back(a.eta_[i] + b.eta_[i]);
  return PointGenerator(a.xi_ + b.xi_, std::move(eta), a.coords_, a.time_);
}

PointGenerator operator*(const Expression& k, const PointGenerator& g) {
  std::vector<Expression> eta;
  for (const auto& e : g.eta_) eta.push_back(k * e);
  return PointGenerator(k * g.xi_, std::move(eta), g.coords_, g.time_);
}

namespace {

std::string field(const Expression& xi, const std::vector<Expression>& eta, const std::vector<Expression>* eta_dot,
                  const std::vector<std::string>& coords, const std::string& time) {
  std::string out;
  auto term = [&](const Expression& c, const std::string& d) {
    Expression s = expr::simplify(c);
    if (s.is_zero()) return;
    if (!out.empty()) out += " + ";
    out += "(" + s.str() + ")*" + d;
  };
  term(xi, "d/d" + time);
  for (std::size_t a = 0; a < eta.size(); ++a) term(eta[a], "d/d" + coords[a]);
  if (eta_dot)
    for (std::size_t a = 0; a < eta_dot->size(); ++a) term((*eta_dot)[a], "d/d" + velocity_name(coords[a]));
  return out.empty() ? "0" : out;
}

}  // namespace

std::string PointGenerator::str() const { return field(xi_, eta_, nullptr, coords_, time_); }

DynamicalGenerator::DynamicalGenerator(Expression xi_, std::vector<Expression> eta_, std::vector<Expression> eta_dot_,
                                       std::vector<std::string> coords_, std::string time_)
    : xi(std::move(xi_)),
      eta(std::move(eta_)),
      eta_dot(std::move(eta_dot_)),
      coords(std::move(coords_)),
      time(std::move(time_)) {
  if (eta.size() != coords.size() || eta_dot.size() != coords.size())
    throw std::invalid_argument("dynamical generator component count does not match the coordinates");
}

Expression DynamicalGenerator::apply(const Expression& f) const {
  Expression out = xi * expr::differentiate(f, time);
  for (std::size_t a = 0; a < eta.size(); ++a) {
    out = out + eta[a] * expr::differentiate(f, coords[a]);
    out = out + eta_dot[a] * expr::differentiate(f, velocity_name(coords[a]));
  }
  return expr::simplify(out);
}

bool DynamicalGenerator::is_point() const {
  std::set<std::string> velocities;
  for (const auto& c : coords) velocities.insert(velocity_name(c));
  if (expr::contains_any_symbol(xi, velocities)) return false;
  for (const auto& e : eta)
    if (expr::contains_any_symbol(e, velocities)) return false;
  return true;
}

std::string DynamicalGenerator::str() const { return field(xi, eta, &eta_dot, coords, time); }

}  // namespace ermakov::jet
