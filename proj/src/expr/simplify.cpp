#include "ermakov/expr/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "normal_form.hpp"

namespace ermakov::expr {
namespace detail {

int compare_monomials(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int side;
    if (i == a.size())
      side = 1;
    else if (j == b.size())
      side = -1;
    else {
      auto c = compare(a[i].key, b[j].key);
      side = c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    if (side == 0) {
      if (a[i].exponent != b[j].exponent) return a[i].exponent < b[j].exponent ? -1 : 1;
      ++i, ++j;
    } else if (side < 0) {
      return a[i].exponent.is_negative() ? -1 : 1;
    } else {
      return b[j].exponent.is_negative() ? 1 : -1;
    }
  }
  return 0;
}

namespace {

bool is_exp_key(const Expression& k) { return k.kind() == Kind::Call && k.function() == Elementary::Exp; }

Monomial mono_mul(const Monomial& a, const Monomial& b, const Rational& sb = Rational(1)) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int side;
    if (i == a.size())
      side = 1;
    else if (j == b.size())
      side = -1;
    else {
      auto c = compare(a[i].key, b[j].key);
      side = c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    if (side < 0) {
      out.push_back(a[i++]);
    } else if (side > 0) {
      out.push_back({b[j].key, b[j].exponent * sb});
      ++j;
    } else {
      Rational e = a[i].exponent + b[j].exponent * sb;
      if (!e.is_zero()) out.push_back({a[i].key, e});
      ++i, ++j;
    }
  }
  return out;
}

void add_term(Poly& p, const Monomial& m, const Number& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) p.erase(it);
  }
}

void add_into(Poly& p, const Poly& q) {
  for (const auto& [m, c] : q) add_term(p, m, c);
}

Poly constant(const Number& c) {
  Poly p;
  if (!c.is_zero()) p.emplace(Monomial{}, c);
  return p;
}

Poly atom(const Expression& key) { return Poly{{Monomial{{key, Rational(1)}}, Number(1)}}; }

Poly scale(const Poly& p, const Number& c) {
  Poly out;
  for (const auto& [m, k] : p) add_term(out, m, k * c);
  return out;
}

std::optional<Number> as_constant(const Poly& p) {
  if (p.empty()) return Number(0);
  if (p.size() == 1 && p.begin()->first.empty()) return p.begin()->second;
  return std::nullopt;
}

Poly to_poly(const Expression& e);
Poly recombine(Poly p);
Poly term_poly(Number coef, Monomial factors);
Poly mul(const Poly& a, const Poly& b);

Poly canonical(const Expression& e) { return recombine(to_poly(e)); }

Expression canonical_expr(const Expression& e) { return from_poly(canonical(e)); }

Number real_pow(double b, double e) { return Number::real(std::pow(b, e)); }

// c^r split into a folded coefficient and, when irrational, a numeric-base
// atom. Positive bases below one are stored inverted.
void coefficient_power(const Number& c, const Rational& r, Number& coef, Monomial& extra) {
  if (c.is_one()) return;
  if (!c.is_exact()) {
    if (!c.is_negative() || r.is_integer())
      coef = coef * real_pow(c.to_double(), r.to_double());
    else
      extra.push_back({Expression(c), r});
    return;
  }
  const Rational& q = c.rational();
  if (r.is_integer()) {
    try {
      coef = coef * Number(q.pow(r.num()));
    } catch (const RationalOverflow&) {
      coef = coef * real_pow(q.to_double(), r.to_double());
    }
    return;
  }
  if (auto root = q.exact_pow(r)) {
    coef = coef * Number(*root);
    return;
  }
  if (!q.is_negative() && q < Rational(1) && !q.is_zero())
    extra.push_back({Expression(Rational(1) / q), -r});
  else
    extra.push_back({Expression(c), r});
}

Poly pow_int(const Poly& b, std::int64_t n) {
  Poly out = constant(Number(1));
  for (std::int64_t i = 0; i < n; ++i) out = mul(out, b);
  return out;
}

Monomial normalized(Monomial f) {
  std::stable_sort(f.begin(), f.end(), [](const Factor& a, const Factor& b) { return compare(a.key, b.key) < 0; });
  Monomial out;
  for (auto& x : f) {
    if (!out.empty() && out.back().key == x.key)
      out.back().exponent = out.back().exponent + x.exponent;
    else
      out.push_back(std::move(x));
  }
  std::erase_if(out, [](const Factor& x) { return x.exponent.is_zero(); });
  return out;
}

bool needs_work(const Monomial& m) {
  int exps = 0;
  for (const auto& f : m) {
    if (is_exp_key(f.key)) {
      ++exps;
      if (!f.exponent.is_one()) return true;
    } else if (f.key.is_number()) {
      if (f.key.number().is_zero()) continue;
      if (f.exponent.is_integer() || f.exponent.floor() != 0) return true;
      if (f.key.number().is_exact() && f.key.number().rational().exact_pow(f.exponent)) return true;
    } else if (f.key.kind() == Kind::Sum && !(f.exponent < Rational(1))) {
      return true;
    }
  }
  return exps > 1;
}

Poly term_poly(Number coef, Monomial factors) {
  if (coef.is_zero()) return {};
  Monomial m = normalized(std::move(factors));
  if (!needs_work(m)) return Poly{{std::move(m), coef}};

  // merge exp factors
  Poly exp_arg;
  bool any_exp = false;
  Monomial rest;
  for (auto& f : m) {
    if (is_exp_key(f.key)) {
      any_exp = true;
      add_into(exp_arg, scale(canonical(f.key.operand()), Number(f.exponent)));
    } else {
      rest.push_back(std::move(f));
    }
  }
  if (any_exp) {
    exp_arg = recombine(std::move(exp_arg));
    if (auto c = as_constant(exp_arg)) {
      if (!c->is_exact())
        coef = coef * Number::real(std::exp(c->to_double()));
      else if (!c->is_zero())
        rest.push_back({Expression::call(Elementary::Exp, Expression(*c)), Rational(1)});
    } else {
      rest.push_back({Expression::call(Elementary::Exp, from_poly(exp_arg)), Rational(1)});
    }
  }

  // fold numeric bases, split sum bases with exponent >= 1
  Monomial kept;
  std::vector<std::pair<Expression, std::int64_t>> expand;
  for (auto& f : rest) {
    if (f.key.is_number() && !f.key.number().is_zero()) {
      Rational r = f.exponent;
      std::int64_t n = r.floor();
      Rational frac = r - Rational(n);
      coefficient_power(f.key.number(), Rational(n), coef, kept);
      if (!frac.is_zero()) coefficient_power(f.key.number(), frac, coef, kept);
    } else if (f.key.kind() == Kind::Sum && !(f.exponent < Rational(1))) {
      std::int64_t n = f.exponent.floor();
      Rational frac = f.exponent - Rational(n);
      if (!frac.is_zero()) kept.push_back({f.key, frac});
      expand.emplace_back(f.key, n);
    } else {
      kept.push_back(std::move(f));
    }
  }
  kept = normalized(std::move(kept));
  // numeric atoms produced above may themselves need another pass
  Poly out = needs_work(kept) ? term_poly(coef, kept) : Poly{{kept, coef}};
  if (coef.is_zero()) return {};
  for (const auto& [key, n] : expand) out = mul(out, pow_int(to_poly(key), n));
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_into(out, term_poly(ca * cb, mono_mul(ma, mb)));
  return out;
}

// Content of a multi-term poly: gcd of exact coefficients, signed like the
// leading term.
Number content(const Poly& p) {
  const Number& lead = p.rbegin()->second;
  bool exact = std::all_of(p.begin(), p.end(), [](const auto& t) { return t.second.is_exact(); });
  if (!exact) return lead;
  try {
    __int128 g = 0, l = 1;
    for (const auto& [m, c] : p) {
      g = std::gcd(static_cast<std::int64_t>(g), std::abs(c.rational().num()));
      l = std::lcm(static_cast<std::int64_t>(l), c.rational().den());
    }
    Rational r = make_rational(g, l);
    return lead.is_negative() ? Number(-r) : Number(r);
  } catch (const std::exception&) {
    return lead;
  }
}

Poly power_rational(const Poly& b, const Rational& r) {
  if (r.is_zero()) return constant(Number(1));
  if (r.is_integer() && !r.is_negative()) return pow_int(b, r.num());
  if (b.empty()) {
    if (!r.is_negative()) return {};
    return Poly{{Monomial{{Expression(0), r}}, Number(1)}};
  }
  if (b.size() == 1) {
    const auto& [m, c] = *b.begin();
    Number coef(1);
    Monomial f;
    coefficient_power(c, r, coef, f);
    for (const auto& x : m) f.push_back({x.key, x.exponent * r});
    return term_poly(coef, std::move(f));
  }
  // pull out the common monomial, then the content
  std::map<Expression, Rational, ExpressionLess> low;
  for (const auto& [m, c] : b)
    for (const auto& x : m) low.try_emplace(x.key, Rational(0));
  for (auto& [k, lo] : low) {
    bool first = true;
    for (const auto& [m, c] : b) {
      auto it = std::find_if(m.begin(), m.end(), [&](const Factor& x) { return x.key == k; });
      Rational e = it == m.end() ? Rational(0) : it->exponent;
      if (first || e < lo) lo = e;
      first = false;
    }
  }
  Monomial g;
  for (const auto& [k, lo] : low)
    if (!lo.is_zero()) g.push_back({k, lo});
  if (!g.empty()) {
    Poly s;
    for (const auto& [m, k] : b) add_into(s, term_poly(k, mono_mul(m, g, Rational(-1))));
    Monomial f;
    for (const auto& x : g) f.push_back({x.key, x.exponent * r});
    return mul(term_poly(Number(1), std::move(f)), power_rational(s, r));
  }
  Number c = content(b);
  Poly s;
  for (const auto& [m, k] : b) s.emplace(m, k / c);
  Number coef(1);
  Monomial f;
  coefficient_power(c, r, coef, f);
  f.push_back({from_poly(s), r});
  return term_poly(coef, std::move(f));
}

Poly power_poly(const Expression& base, const Expression& exponent) {
  Poly e = canonical(exponent);
  if (e.empty()) return constant(Number(1));
  Poly b = canonical(base);
  if (auto c = as_constant(e)) {
    if (c->is_exact()) return power_rational(b, c->rational());
    auto bc = as_constant(b);
    if (bc && !bc->is_negative() && !bc->is_zero()) return constant(real_pow(bc->to_double(), c->to_double()));
    return atom(Expression::power(from_poly(b), Expression(*c)));
  }
  if (auto bc = as_constant(b); bc && bc->is_one()) return constant(Number(1));
  return atom(Expression::power(from_poly(b), from_poly(e)));
}

Poly call_poly(Elementary fn, const Expression& arg) {
  Poly a = canonical(arg);
  auto c = as_constant(a);
  auto real_value = [&](double v) { return constant(Number::real(v)); };
  bool leading_negative = !a.empty() && a.rbegin()->second.is_negative();
  switch (fn) {
    case Elementary::Sqrt:
      return power_rational(a, Rational(1, 2));
    case Elementary::Exp:
      if (a.empty()) return constant(Number(1));
      if (c && !c->is_exact()) return real_value(std::exp(c->to_double()));
      return atom(Expression::call(fn, from_poly(a)));
    case Elementary::Log:
      if (c && c->is_one()) return {};
      if (c && !c->is_exact() && !c->is_negative() && !c->is_zero()) return real_value(std::log(c->to_double()));
      return atom(Expression::call(fn, from_poly(a)));
    case Elementary::Sin:
      if (a.empty()) return {};
      if (c && !c->is_exact()) return real_value(std::sin(c->to_double()));
      if (leading_negative) return scale(atom(Expression::call(fn, from_poly(scale(a, Number(-1))))), Number(-1));
      return atom(Expression::call(fn, from_poly(a)));
    case Elementary::Cos:
      if (a.empty()) return constant(Number(1));
      if (c && !c->is_exact()) return real_value(std::cos(c->to_double()));
      if (leading_negative) return atom(Expression::call(fn, from_poly(scale(a, Number(-1)))));
      return atom(Expression::call(fn, from_poly(a)));
  }
  return {};
}

Poly to_poly(const Expression& e) {
  switch (e.kind()) {
    case Kind::Number:
      return constant(e.number());
    case Kind::Symbol:
      return atom(e);
    case Kind::Sum: {
      Poly out;
      for (const auto& t : e.children()) add_into(out, to_poly(t));
      return out;
    }
    case Kind::Product: {
      Poly out = constant(Number(1));
      for (const auto& f : e.children()) {
        out = mul(out, to_poly(f));
        if (out.empty()) break;
      }
      return out;
    }
    case Kind::Power:
      return power_poly(e.base(), e.exponent());
    case Kind::Negate:
      return scale(to_poly(e.operand()), Number(-1));
    case Kind::Call:
      return call_poly(e.function(), e.operand());
    case Kind::Opaque: {
      std::vector<Expression> args;
      for (const auto& a : e.children()) args.push_back(canonical_expr(a));
      return atom(Expression::opaque(e.name(), std::vector<int>(e.orders().begin(), e.orders().end()), std::move(args)));
    }
  }
  return {};
}

// Exact division in the Laurent ring under the lex order; nullopt when the
// remainder does not vanish.
std::optional<Poly> divide(Poly q, const Poly& s) {
  if (s.empty()) return std::nullopt;
  const auto& [ls, lc] = *s.rbegin();
  Poly z;
  std::size_t limit = 64 + 8 * q.size();
  for (std::size_t it = 0; !q.empty(); ++it) {
    if (it > limit) return std::nullopt;
    const auto [lq, qc] = *q.rbegin();
    Monomial m = mono_mul(lq, ls, Rational(-1));
    Number k = qc / lc;
    add_term(z, m, k);
    for (const auto& [sm, sc] : s) add_term(q, mono_mul(sm, m), -(sc * k));
    if (q.count(lq)) return std::nullopt;
  }
  return z;
}

Poly recombine(Poly p) {
  for (int round = 0; round < 256; ++round) {
    std::vector<std::pair<Expression, Rational>> candidates;
    for (const auto& [m, c] : p)
      for (const auto& f : m)
        if (f.key.kind() == Kind::Sum && f.exponent.is_negative()) candidates.emplace_back(f.key, f.exponent);
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
      auto c = compare(a.first, b.first);
      return c != 0 ? c < 0 : a.second < b.second;
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const auto& a, const auto& b) { return a.first == b.first && a.second == b.second; }),
                     candidates.end());
    bool progressed = false;
    for (const auto& [key, e] : candidates) {
      Poly group;
      std::vector<Monomial> members;
      for (const auto& [m, c] : p) {
        auto it = std::find_if(m.begin(), m.end(), [&](const Factor& f) { return f.key == key; });
        if (it == m.end() || it->exponent != e) continue;
        Monomial cof = m;
        cof.erase(cof.begin() + (it - m.begin()));
        add_term(group, cof, c);
        members.push_back(m);
      }
      auto quotient = divide(group, to_poly(key));
      if (!quotient) continue;
      for (const auto& m : members) p.erase(m);
      Rational raised = e + Rational(1);
      for (const auto& [m, c] : *quotient) {
        Monomial f = m;
        if (!raised.is_zero()) f.push_back({key, raised});
        add_into(p, term_poly(c, std::move(f)));
      }
      progressed = true;
      break;
    }
    if (!progressed) return p;
  }
  return p;
}

}  // namespace

Poly canonical_poly(const Expression& e) { return canonical(e); }

Expression from_poly(const Poly& p) {
  std::vector<Expression> terms;
  terms.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<Expression> factors;
    if (!c.is_one() || m.empty()) factors.emplace_back(c);
    for (const auto& f : m)
      factors.push_back(f.exponent.is_one() ? f.key : Expression::power(f.key, Expression(f.exponent)));
    terms.push_back(Expression::product(std::move(factors)));
  }
  return Expression::sum(std::move(terms));
}

}  // namespace detail

Expression simplify(const Expression& e) { return detail::from_poly(detail::canonical_poly(e)); }

bool structurally_zero(const Expression& e) { return detail::canonical_poly(e).empty(); }

bool structurally_equal(const Expression& a, const Expression& b) { return structurally_zero(a - b); }

}  // namespace ermakov::expr
