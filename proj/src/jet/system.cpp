#include "ermakov/jet/system.hpp"

#include <stdexcept>

#include "ermakov/expr/differentiate.hpp"
#include "ermakov/expr/simplify.hpp"

namespace ermakov::jet {

using expr::Expression;

SecondOrderSystem::SecondOrderSystem(std::vector<std::string> coords_, std::vector<Expression> rhs_,
                                     std::set<std::string> parameters_, expr::FunctionTable functions_)
    : coords(std::move(coords_)),
      rhs(std::move(rhs_)),
      parameters(std::move(parameters_)),
      functions(std::move(functions_)) {
  validate();
}

std::vector<std::string> SecondOrderSystem::velocities() const {
  std::vector<std::string> v;
  for (const auto& c : coords) v.push_back(velocity_name(c));
  return v;
}

void SecondOrderSystem::validate() const {
  if (rhs.size() != coords.size())
    throw std::invalid_argument("system has " + std::to_string(coords.size()) + " coordinates but " +
                                std::to_string(rhs.size()) + " right-hand sides");
  std::set<std::string> allowed = parameters;
  allowed.insert(time);
  for (const auto& c : coords) {
    allowed.insert(c);
    allowed.insert(velocity_name(c));
  }
  for (std::size_t a = 0; a < rhs.size(); ++a)
    for (const auto& s : expr::free_symbols(rhs[a]))
      if (!allowed.count(s))
        throw std::invalid_argument("right-hand side " + std::to_string(a + 1) + " uses undeclared symbol '" + s + "'");
}

Expression total_derivative(const Expression& e, const SecondOrderSystem& sys) {
  Expression out = expr::differentiate(e, sys.time);
  for (std::size_t a = 0; a < sys.dim(); ++a) {
    const std::string v = velocity_name(sys.coords[a]);
    out = out + expr::sym(v) * expr::differentiate(e, sys.coords[a]);
    out = out + sys.rhs[a] * expr::differentiate(e, v);
  }
  return reduce(out, sys);
}

Expression reduce(const Expression& e, const SecondOrderSystem& sys) {
  if (sys.functions.empty()) return expr::simplify(e);
  return expr::simplify(expr::expand_functions(e, sys.functions));
}

}  // namespace ermakov::jet
