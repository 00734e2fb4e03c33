#include "ermakov/expr/functions.hpp"

#include <stdexcept>

#include "ermakov/expr/differentiate.hpp"

namespace ermakov::expr {

FunctionDef FunctionDef::closed(std::string param, Expression body) {
  FunctionDef def;
  def.params = {std::move(param)};
  def.body = std::move(body);
  return def;
}

FunctionDef FunctionDef::closed(std::vector<std::string> params, Expression body) {
  FunctionDef def;
  def.params = std::move(params);
  def.body = std::move(body);
  return def;
}

FunctionDef FunctionDef::with_derivative(std::string param, Expression first_derivative,
                                         std::function<double(double)> native) {
  FunctionDef def;
  def.params = {std::move(param)};
  def.first_derivative = std::move(first_derivative);
  def.native = std::move(native);
  return def;
}

Expression instantiate(const FunctionDef& def, std::span<const int> orders, std::span<const Expression> args) {
  if (!def.body) throw std::logic_error("instantiate: function has no closed body");
  if (def.params.size() != args.size()) throw std::invalid_argument("instantiate: argument count mismatch");
  Expression d = *def.body;
  for (std::size_t i = 0; i < orders.size(); ++i) d = differentiate(d, def.params[i], orders[i]);
  std::map<std::string, Expression> subst;
  for (std::size_t i = 0; i < args.size(); ++i) subst.emplace(def.params[i], args[i]);
  return substitute(d, subst);
}

namespace {

bool expand_once(const Expression& e, const FunctionTable& table, Expression& out) {
  std::vector<Expression> children(e.children().begin(), e.children().end());
  bool changed = false;
  for (auto& c : children) {
    Expression r;
    if (expand_once(c, table, r)) {
      c = std::move(r);
      changed = true;
    }
  }
  if (e.kind() == Kind::Opaque) {
    auto it = table.find(e.name());
    if (it != table.end()) {
      const FunctionDef& def = it->second;
      if (def.body) {
        out = instantiate(def, e.orders(), children);
        return true;
      }
      if (def.first_derivative && children.size() == 1 && e.orders()[0] >= 1) {
        Expression d = differentiate(*def.first_derivative, def.params[0], e.orders()[0] - 1);
        out = substitute(d, {{def.params[0], children[0]}});
        return true;
      }
    }
    if (changed)
      out = Expression::opaque(e.name(), std::vector<int>(e.orders().begin(), e.orders().end()), std::move(children));
    return changed;
  }
  if (!changed) return false;
  switch (e.kind()) {
    case Kind::Sum: out = Expression::sum(std::move(children)); break;
    case Kind::Product: out = Expression::product(std::move(children)); break;
    case Kind::Power: out = Expression::power(children[0], children[1]); break;
    case Kind::Negate: out = Expression::negate(children[0]); break;
    case Kind::Call: out = Expression::call(e.function(), children[0]); break;
    default: out = e; break;
  }
  return true;
}

}  // namespace

Expression expand_functions(const Expression& e, const FunctionTable& table) {
  Expression current = e;
  for (int depth = 0; depth < 32; ++depth) {
    Expression next;
    if (!expand_once(current, table, next)) return current;
    current = std::move(next);
  }
  throw std::runtime_error("expand_functions: recursive function definitions");
}

}  // namespace ermakov::expr
