#include "ermakov/expr/differentiate.hpp"

namespace ermakov::expr {

Expression differentiate(const Expression& e, std::string_view s) {
  if (!contains_symbol(e, s)) return Expression(0);
  switch (e.kind()) {
    case Kind::Number:
      return Expression(0);
    case Kind::Symbol:
      return Expression(e.name() == s ? 1 : 0);
    case Kind::Sum: {
      Expression out(0);
      for (const auto& t : e.children()) out = out + differentiate(t, s);
      return out;
    }
    case Kind::Product: {
      auto f = e.children();
      Expression out(0);
      for (std::size_t i = 0; i < f.size(); ++i) {
        Expression d = differentiate(f[i], s);
        if (d.is_zero()) continue;
        Expression term = d;
        for (std::size_t j = 0; j < f.size(); ++j)
          if (j != i) term = term * f[j];
        out = out + term;
      }
      return out;
    }
    case Kind::Power: {
      const auto& b = e.base();
      const auto& x = e.exponent();
      if (!contains_symbol(x, s)) {
        Expression reduced = x.is_number() ? Expression(x.number() - Number(1)) : x - Expression(1);
        return x * pow(b, reduced) * differentiate(b, s);
      }
      // b^x = exp(x log b)
      return e * (differentiate(x, s) * log(b) + x * differentiate(b, s) / b);
    }
    case Kind::Negate:
      return -differentiate(e.operand(), s);
    case Kind::Call: {
      const auto& a = e.operand();
      Expression da = differentiate(a, s);
      switch (e.function()) {
        case Elementary::Sin: return cos(a) * da;
        case Elementary::Cos: return -(sin(a) * da);
        case Elementary::Exp: return e * da;
        case Elementary::Log: return da / a;
        case Elementary::Sqrt: return da / (Expression(2) * e);
      }
      return Expression(0);
    }
    case Kind::Opaque: {
      auto args = e.children();
      Expression out(0);
      for (std::size_t i = 0; i < args.size(); ++i) {
        Expression da = differentiate(args[i], s);
        if (da.is_zero()) continue;
        std::vector<int> orders(e.orders().begin(), e.orders().end());
        ++orders[i];
        out = out + Expression::opaque(e.name(), std::move(orders), {args.begin(), args.end()}) * da;
      }
      return out;
    }
  }
  return Expression(0);
}

Expression differentiate(const Expression& e, std::string_view s, int times) {
  Expression out = e;
  for (int i = 0; i < times; ++i) out = differentiate(out, s);
  return out;
}

}  // namespace ermakov::expr
