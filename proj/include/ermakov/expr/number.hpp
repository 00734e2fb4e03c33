#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace ermakov::expr {

struct RationalOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

/// Exact fraction num/den with den > 0 and gcd(num, den) == 1.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Largest integer not greater than this value.
  std::int64_t floor() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  /// Integer power; negative exponents invert. Throws on 0^negative.
  Rational pow(std::int64_t e) const;

  /// Exact rational root if this value is a perfect power, e.g. (9/4)^(1/2) = 3/2.
  std::optional<Rational> exact_pow(const Rational& e) const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;

 private:
  struct Raw {};
  Rational(Raw, std::int64_t num, std::int64_t den) : num_(num), den_(den) {}
  friend Rational make_rational(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational make_rational(__int128 num, __int128 den);

/// A numeric constant: exact rational or IEEE double. Mixed arithmetic
/// yields double; rational overflow degrades to double.
class Number {
 public:
  Number() : value_(Rational{}) {}
  Number(Rational r) : value_(r) {}
  Number(std::int64_t i) : value_(Rational(i)) {}
  Number(int i) : value_(Rational(i)) {}
  static Number real(double d) { Number n; n.value_ = d; return n; }

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  double to_double() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_negative() const;
  bool is_integer() const;

  Number operator-() const;
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);

  Number abs() const { return is_negative() ? -*this : *this; }

  /// Total order: exact numbers before reals, then by value.
  friend std::strong_ordering compare(const Number& a, const Number& b);
  friend bool operator==(const Number& a, const Number& b) { return compare(a, b) == 0; }

  std::string str() const;

 private:
  std::variant<Rational, double> value_;
};

}  // namespace ermakov::expr
