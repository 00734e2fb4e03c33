#include "ermakov/expr/number.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace ermakov::expr {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw RationalOverflow("rational overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational make_rational(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(Rational::Raw{}, narrow(num), narrow(den));
}

namespace {

// Exact integer k-th root of n >= 0, if it exists.
std::optional<std::int64_t> iroot(std::int64_t n, std::int64_t k) {
  if (n < 0) return std::nullopt;
  if (n < 2 || k == 1) return n;
  auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k))));
  for (std::int64_t c = std::max<std::int64_t>(0, guess - 1); c <= guess + 1; ++c) {
    i128 p = 1;
    bool over = false;
    for (std::int64_t i = 0; i < k; ++i) {
      p *= c;
      if (p > n) {
        over = true;
        break;
      }
    }
    if (!over && p == n) return c;
  }
  return std::nullopt;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = make_rational(num, den);
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational Rational::operator-() const { return make_rational(-static_cast<i128>(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return make_rational(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return make_rational(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return make_rational(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

Rational Rational::pow(std::int64_t e) const {
  if (e < 0) {
    if (num_ == 0) throw std::domain_error("zero to a negative power");
    return Rational(den_, num_).pow(-e);
  }
  Rational result(1);
  Rational base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<Rational> Rational::exact_pow(const Rational& e) const {
  if (e.is_integer()) {
    if (num_ == 0 && e.num() < 0) return std::nullopt;
    return pow(e.num());
  }
  if (num_ == 0) return e.num() > 0 ? std::optional<Rational>(Rational(0)) : std::nullopt;
  const std::int64_t k = e.den();
  const bool negative = num_ < 0;
  if (negative && k % 2 == 0) return std::nullopt;
  auto rn = iroot(negative ? -num_ : num_, k);
  auto rd = iroot(den_, k);
  if (!rn || !rd) return std::nullopt;
  Rational root(negative ? -*rn : *rn, *rd);
  return root.pow(e.num());
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 l = static_cast<i128>(a.num_) * b.den_;
  i128 r = static_cast<i128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Number::to_double() const {
  if (is_exact()) return rational().to_double();
  return std::get<double>(value_);
}

bool Number::is_zero() const { return is_exact() ? rational().is_zero() : std::get<double>(value_) == 0.0; }
bool Number::is_one() const { return is_exact() ? rational().is_one() : std::get<double>(value_) == 1.0; }
bool Number::is_negative() const { return to_double() < 0.0; }
bool Number::is_integer() const { return is_exact() && rational().is_integer(); }

Number Number::operator-() const {
  if (is_exact()) return Number(-rational());
  return real(-std::get<double>(value_));
}

namespace {
template <typename ExactOp, typename RealOp>
Number combine(const Number& a, const Number& b, ExactOp exact, RealOp inexact) {
  if (a.is_exact() && b.is_exact()) {
    try {
      return Number(exact(a.rational(), b.rational()));
    } catch (const RationalOverflow&) {
    }
  }
  return Number::real(inexact(a.to_double(), b.to_double()));
}
}  // namespace

Number operator+(const Number& a, const Number& b) {
  return combine(a, b, [](auto x, auto y) { return x + y; }, [](double x, double y) { return x + y; });
}
Number operator-(const Number& a, const Number& b) {
  return combine(a, b, [](auto x, auto y) { return x - y; }, [](double x, double y) { return x - y; });
}
Number operator*(const Number& a, const Number& b) {
  return combine(a, b, [](auto x, auto y) { return x * y; }, [](double x, double y) { return x * y; });
}
Number operator/(const Number& a, const Number& b) {
  return combine(a, b, [](auto x, auto y) { return x / y; }, [](double x, double y) { return x / y; });
}

std::strong_ordering compare(const Number& a, const Number& b) {
  if (a.is_exact() != b.is_exact()) return a.is_exact() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_exact()) return a.rational() <=> b.rational();
  double x = a.to_double();
  double y = b.to_double();
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Number::str() const {
  if (is_exact()) return rational().str();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace ermakov::expr
