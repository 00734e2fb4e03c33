#include "ermakov/expr/poly.hpp"

#include <algorithm>
#include <numeric>

#include "ermakov/expr/simplify.hpp"
#include "normal_form.hpp"

namespace ermakov::expr {

using detail::Factor;
using detail::Monomial;
using detail::Poly;

namespace {

std::map<ExponentVector, Poly> split(const Poly& p, const std::vector<std::string>& vars, bool allow_negative) {
  std::set<std::string> names(vars.begin(), vars.end());
  std::map<ExponentVector, Poly> parts;
  for (const auto& [m, c] : p) {
    ExponentVector k(vars.size(), 0);
    Monomial rest;
    for (const auto& f : m) {
      if (f.key.is_symbol() && names.count(f.key.name())) {
        if (!f.exponent.is_integer() || (!allow_negative && f.exponent.is_negative()))
          throw NotPolynomial("non-polynomial power of " + f.key.name());
        auto idx = std::find(vars.begin(), vars.end(), f.key.name()) - vars.begin();
        k[idx] = static_cast<int>(f.exponent.num());
      } else if (contains_any_symbol(f.key, names)) {
        throw NotPolynomial("non-polynomial dependence in " + f.key.str());
      } else {
        rest.push_back(f);
      }
    }
    parts[k].emplace(std::move(rest), c);
  }
  return parts;
}

}  // namespace

std::map<ExponentVector, Expression> collect_poly(const Expression& e, const std::vector<std::string>& vars) {
  std::map<ExponentVector, Expression> out;
  for (const auto& [k, part] : split(detail::canonical_poly(e), vars, false)) out.emplace(k, detail::from_poly(part));
  return out;
}

Expression reassemble(const std::map<ExponentVector, Expression>& terms, const std::vector<std::string>& vars) {
  Expression out(0);
  for (const auto& [k, c] : terms) {
    Expression m = c;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (k[i] != 0) m = m * pow(sym(vars[i]), Expression(k[i]));
    out = out + m;
  }
  return out;
}

std::optional<std::map<int, Expression>> laurent_coefficients(const Expression& e, const std::string& var) {
  try {
    std::map<int, Expression> out;
    for (const auto& [k, part] : split(detail::canonical_poly(e), {var}, true))
      out.emplace(k[0], detail::from_poly(part));
    return out;
  } catch (const NotPolynomial&) {
    return std::nullopt;
  }
}

std::optional<Expression> antiderivative(const Expression& e, const std::string& var) {
  auto coeffs = laurent_coefficients(e, var);
  if (!coeffs) return std::nullopt;
  Expression u = sym(var);
  Expression out(0);
  for (const auto& [n, c] : *coeffs) {
    if (n == -1)
      out = out + c * log(u);
    else
      out = out + c * pow(u, Expression(n + 1)) / Expression(n + 1);
  }
  return simplify(out);
}

Expression primitive_part(const Expression& e) {
  Poly p = detail::canonical_poly(e);
  if (p.empty()) return Expression(0);
  const Number& lead = p.rbegin()->second;
  Number content = lead;
  bool exact = std::all_of(p.begin(), p.end(), [](const auto& t) { return t.second.is_exact(); });
  if (exact) {
    std::int64_t g = 0, l = 1;
    try {
      for (const auto& [m, c] : p) {
        g = std::gcd(g, std::abs(c.rational().num()));
        l = std::lcm(l, c.rational().den());
      }
      Rational r(g, l);
      content = lead.is_negative() ? Number(-r) : Number(r);
    } catch (const std::exception&) {
      content = lead;
    }
  }
  for (auto& [m, c] : p) c = c / content;
  return detail::from_poly(p);
}

}  // namespace ermakov::expr
