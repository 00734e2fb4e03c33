#include "ermakov/expr/expression.hpp"

#include <algorithm>
#include <stdexcept>

namespace ermakov::expr {

struct Expression::Node {
  Kind kind = Kind::Number;
  Number number;
  std::string name;
  std::vector<Expression> children;
  Elementary fn = Elementary::Sin;
  std::vector<int> orders;
};

std::string_view elementary_name(Elementary fn) {
  switch (fn) {
    case Elementary::Sin: return "sin";
    case Elementary::Cos: return "cos";
    case Elementary::Exp: return "exp";
    case Elementary::Log: return "log";
    case Elementary::Sqrt: return "sqrt";
  }
  return "?";
}

Expression::Expression() : Expression(Number(0)) {}

Expression::Expression(Number n) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Number;
  node->number = n;
  node_ = std::move(node);
}

Expression Expression::symbol(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Symbol;
  node->name = std::move(name);
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::sum(std::vector<Expression> terms) {
  if (terms.empty()) return Expression(0);
  if (terms.size() == 1) return terms.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sum;
  node->children = std::move(terms);
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::product(std::vector<Expression> factors) {
  if (factors.empty()) return Expression(1);
  if (factors.size() == 1) return factors.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->children = std::move(factors);
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::power(Expression base, Expression exponent) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Power;
  node->children = {std::move(base), std::move(exponent)};
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::negate(Expression operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Negate;
  node->children = {std::move(operand)};
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::call(Elementary fn, Expression arg) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Call;
  node->fn = fn;
  node->children = {std::move(arg)};
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::opaque(std::string name, std::vector<int> orders, std::vector<Expression> args) {
  if (args.empty()) throw std::invalid_argument("opaque call needs at least one argument");
  if (orders.size() != args.size()) throw std::invalid_argument("opaque call: one derivative order per argument");
  for (int k : orders)
    if (k < 0) throw std::invalid_argument("opaque call: negative derivative order");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Opaque;
  node->name = std::move(name);
  node->orders = std::move(orders);
  node->children = std::move(args);
  return Expression(std::shared_ptr<const Node>(std::move(node)));
}

Expression Expression::opaque(std::string name, Expression arg, int order) {
  return opaque(std::move(name), std::vector<int>{order}, std::vector<Expression>{std::move(arg)});
}

Kind Expression::kind() const { return node_->kind; }

const Number& Expression::number() const {
  if (node_->kind != Kind::Number) throw std::logic_error("not a number node");
  return node_->number;
}

const std::string& Expression::name() const { return node_->name; }

std::span<const Expression> Expression::children() const { return node_->children; }

Elementary Expression::function() const { return node_->fn; }

std::span<const int> Expression::orders() const { return node_->orders; }

std::strong_ordering compare(const Expression& a, const Expression& b) {
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Kind::Number:
      return compare(a.number(), b.number());
    case Kind::Symbol:
      return a.name() <=> b.name();
    case Kind::Opaque: {
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      auto oa = a.orders();
      auto ob = b.orders();
      if (auto c = std::lexicographical_compare_three_way(oa.begin(), oa.end(), ob.begin(), ob.end()); c != 0) return c;
      break;
    }
    case Kind::Call:
      if (a.function() != b.function()) return a.function() <=> b.function();
      break;
    default:
      break;
  }
  auto ca = a.children();
  auto cb = b.children();
  const std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = compare(ca[i], cb[i]); c != 0) return c;
  return ca.size() <=> cb.size();
}

Expression operator+(const Expression& a, const Expression& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_number() && b.is_number()) return Expression(a.number() + b.number());
  std::vector<Expression> terms;
  for (const auto* e : {&a, &b}) {
    if (e->kind() == Kind::Sum)
      terms.insert(terms.end(), e->children().begin(), e->children().end());
    else
      terms.push_back(*e);
  }
  return Expression::sum(std::move(terms));
}

Expression operator*(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return Expression(0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_number() && b.is_number()) return Expression(a.number() * b.number());
  std::vector<Expression> factors;
  for (const auto* e : {&a, &b}) {
    if (e->kind() == Kind::Product)
      factors.insert(factors.end(), e->children().begin(), e->children().end());
    else
      factors.push_back(*e);
  }
  // Keep a single leading numeric coefficient.
  if (factors.size() >= 2 && factors[0].is_number()) {
    for (std::size_t i = 1; i < factors.size(); ++i) {
      if (factors[i].is_number()) {
        factors[0] = Expression(factors[0].number() * factors[i].number());
        factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    }
    if (factors[0].is_zero()) return Expression(0);
    if (factors[0].is_one()) factors.erase(factors.begin());
  } else if (factors.size() >= 2 && factors.back().is_number()) {
    std::rotate(factors.rbegin(), factors.rbegin() + 1, factors.rend());
  }
  return Expression::product(std::move(factors));
}

Expression operator-(const Expression& a) {
  if (a.is_number()) return Expression(-a.number());
  return Expression(-1) * a;
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression pow(const Expression& base, const Expression& exponent) {
  if (exponent.is_zero()) return Expression(1);
  if (exponent.is_one()) return base;
  if (base.is_number() && exponent.is_number() && base.number().is_exact() && exponent.number().is_exact()) {
    if (auto r = base.number().rational().exact_pow(exponent.number().rational())) return Expression(*r);
  }
  return Expression::power(base, exponent);
}

Expression operator/(const Expression& a, const Expression& b) {
  if (b.is_number() && b.number().is_exact() && !b.is_zero()) return a * Expression(Rational(1) / b.number().rational());
  return a * pow(b, Expression(-1));
}

Expression sin(const Expression& a) { return Expression::call(Elementary::Sin, a); }
Expression cos(const Expression& a) { return Expression::call(Elementary::Cos, a); }
Expression exp(const Expression& a) { return Expression::call(Elementary::Exp, a); }
Expression log(const Expression& a) { return Expression::call(Elementary::Log, a); }
Expression sqrt(const Expression& a) { return Expression::call(Elementary::Sqrt, a); }

bool contains_symbol(const Expression& e, std::string_view name) {
  if (e.is_symbol()) return e.name() == name;
  for (const auto& c : e.children())
    if (contains_symbol(c, name)) return true;
  return false;
}

bool contains_any_symbol(const Expression& e, const std::set<std::string>& names) {
  if (e.is_symbol()) return names.contains(e.name());
  for (const auto& c : e.children())
    if (contains_any_symbol(c, names)) return true;
  return false;
}

namespace {
void collect_symbols(const Expression& e, std::set<std::string>& out) {
  if (e.is_symbol()) out.insert(e.name());
  for (const auto& c : e.children()) collect_symbols(c, out);
}
void collect_opaque(const Expression& e, std::set<std::string>& out) {
  if (e.kind() == Kind::Opaque) out.insert(e.name());
  for (const auto& c : e.children()) collect_opaque(c, out);
}
}  // namespace

std::set<std::string> free_symbols(const Expression& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

std::set<std::string> opaque_names(const Expression& e) {
  std::set<std::string> out;
  collect_opaque(e, out);
  return out;
}

namespace {
Expression rebuild(const Expression& e, std::vector<Expression> children) {
  switch (e.kind()) {
    case Kind::Sum: return Expression::sum(std::move(children));
    case Kind::Product: return Expression::product(std::move(children));
    case Kind::Power: return Expression::power(std::move(children[0]), std::move(children[1]));
    case Kind::Negate: return Expression::negate(std::move(children[0]));
    case Kind::Call: return Expression::call(e.function(), std::move(children[0]));
    case Kind::Opaque:
      return Expression::opaque(e.name(), std::vector<int>(e.orders().begin(), e.orders().end()), std::move(children));
    default: return e;
  }
}
}  // namespace

namespace {
bool substitute_into(const Expression& e, const std::map<std::string, Expression>& replacements, Expression& out) {
  if (e.is_symbol()) {
    auto it = replacements.find(e.name());
    if (it == replacements.end()) return false;
    out = it->second;
    return true;
  }
  if (e.children().empty()) return false;
  std::vector<Expression> children(e.children().begin(), e.children().end());
  bool changed = false;
  for (auto& c : children) {
    Expression replaced;
    if (substitute_into(c, replacements, replaced)) {
      c = std::move(replaced);
      changed = true;
    }
  }
  if (changed) out = rebuild(e, std::move(children));
  return changed;
}
}  // namespace

Expression substitute(const Expression& e, const std::map<std::string, Expression>& replacements) {
  Expression out;
  return substitute_into(e, replacements, out) ? out : e;
}

}  // namespace ermakov::expr
