#include "ermakov/dynamics/numeric_system.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace ermakov::dynamics {

namespace {

constexpr std::size_t kInline = 32;

template <class F>
double with_slots(std::span<const double> head, double t, std::span<const double> params, F&& f) {
  const std::size_t need = 1 + head.size() + params.size();
  std::array<double, kInline> local;
  std::vector<double> heap;
  double* slots = local.data();
  if (need > kInline) {
    heap.resize(need);
    slots = heap.data();
  }
  slots[0] = t;
  std::copy(head.begin(), head.end(), slots + 1);
  std::copy(params.begin(), params.end(), slots + 1 + head.size());
  return f(std::span<const double>(slots, need));
}

std::vector<double> parameter_values(const std::vector<std::string>& names, const expr::Bindings& b) {
  std::vector<double> out;
  for (const auto& n : names) {
    auto it = b.values.find(n);
    if (it == b.values.end()) throw expr::UnboundSymbol(n);
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

NumericSystem::NumericSystem(const jet::SecondOrderSystem& sys, const expr::Bindings& bindings) {
  expr::FunctionTable functions = sys.functions;
  for (const auto& [name, def] : bindings.functions) functions[name] = def;
  std::vector<std::string> slots = {sys.time};
  for (const auto& c : sys.coords) names_.push_back(c);
  for (const auto& c : sys.coords) names_.push_back(jet::velocity_name(c));
  slots.insert(slots.end(), names_.begin(), names_.end());
  std::vector<std::string> pnames(sys.parameters.begin(), sys.parameters.end());
  slots.insert(slots.end(), pnames.begin(), pnames.end());
  params_ = parameter_values(pnames, bindings);
  for (const auto& r : sys.rhs) rhs_.emplace_back(r, slots, functions);
}

void NumericSystem::operator()(double t, std::span<const double> y, std::span<double> dy) const {
  const std::size_t n = rhs_.size();
  for (std::size_t a = 0; a < n; ++a) dy[a] = y[n + a];
  for (std::size_t a = 0; a < n; ++a) {
    try {
      dy[n + a] = with_slots(y, t, params_, [&](std::span<const double> s) { return rhs_[a](s); });
    } catch (const expr::EvalError&) {
      dy[n + a] = std::numeric_limits<double>::quiet_NaN();
    }
  }
}

Rhs NumericSystem::rhs() const {
  return [self = *this](double t, std::span<const double> y, std::span<double> dy) { self(t, y, dy); };
}

StateFunction::StateFunction(const expr::Expression& e, const std::vector<std::string>& state_names,
                             const std::string& time, const expr::Bindings& bindings,
                             const expr::FunctionTable& functions)
    : dim_(state_names.size()) {
  expr::FunctionTable table = functions;
  for (const auto& [name, def] : bindings.functions) table[name] = def;
  std::vector<std::string> slots = {time};
  slots.insert(slots.end(), state_names.begin(), state_names.end());
  std::vector<std::string> pnames;
  for (const auto& s : expr::free_symbols(e))
    if (s != time && std::find(state_names.begin(), state_names.end(), s) == state_names.end()) pnames.push_back(s);
  slots.insert(slots.end(), pnames.begin(), pnames.end());
  params_ = parameter_values(pnames, bindings);
  f_ = expr::CompiledExpr(e, slots, table);
}

double StateFunction::operator()(double t, std::span<const double> state) const {
  return with_slots(state.first(dim_), t, params_, [&](std::span<const double> s) { return f_(s); });
}

Guard cartesian_guard(double band) {
  return [band](std::span<const double> prev, std::span<const double> y) -> std::optional<std::string> {
    if (std::abs(y[0]) < band || std::signbit(prev[0]) != std::signbit(y[0])) return "x reaches 0";
    if (std::abs(y[1]) < band || std::signbit(prev[1]) != std::signbit(y[1])) return "y reaches 0";
    if (std::hypot(y[0], y[1]) < band) return "r reaches 0";
    return std::nullopt;
  };
}

Guard polar_guard(double band) {
  return [band](std::span<const double> prev, std::span<const double> y) -> std::optional<std::string> {
    if (y[0] < band) return "r reaches 0";
    double s0 = std::sin(prev[1]), c0 = std::cos(prev[1]), s1 = std::sin(y[1]), c1 = std::cos(y[1]);
    if (std::abs(s1) < band || std::abs(c1) < band || std::signbit(s0) != std::signbit(s1) ||
        std::signbit(c0) != std::signbit(c1))
      return "theta reaches a coordinate axis";
    return std::nullopt;
  };
}

}  // namespace ermakov::dynamics
