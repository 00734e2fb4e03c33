#include "ermakov/expr/parse.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

namespace ermakov::expr {

namespace {

constexpr std::array<std::string_view, 14> kUnsupported = {
    "tan", "cot", "sec", "csc", "sinh", "cosh", "tanh", "asin", "acos", "atan", "abs", "ln", "pow", "exp2"};

std::optional<Elementary> elementary(std::string_view name) {
  if (name == "sin") return Elementary::Sin;
  if (name == "cos") return Elementary::Cos;
  if (name == "exp") return Elementary::Exp;
  if (name == "log") return Elementary::Log;
  if (name == "sqrt") return Elementary::Sqrt;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression run() {
    Expression e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expression expr() {
    std::vector<Expression> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(Expression::negate(term()));
      else
        break;
    }
    return Expression::sum(std::move(terms));
  }

  Expression term() {
    std::vector<Expression> factors{unary()};
    for (;;) {
      if (accept('*'))
        factors.push_back(unary());
      else if (accept('/'))
        factors.push_back(Expression::power(unary(), Expression(-1)));
      else
        break;
    }
    return Expression::product(std::move(factors));
  }

  Expression unary() {
    if (accept('-')) return Expression::negate(unary());
    return power();
  }

  Expression power() {
    Expression base = atom();
    if (accept('^')) return Expression::power(std::move(base), unary());
    return base;
  }

  Expression atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expression number() {
    const std::size_t start = pos_;
    bool real = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      real = true;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        real = true;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    std::string_view lexeme = text_.substr(start, pos_ - start);
    if (lexeme == ".") {
      pos_ = start;
      fail("malformed number");
    }
    if (real) return Expression::real(std::strtod(std::string(lexeme).c_str(), nullptr));
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
    if (ec != std::errc()) {
      pos_ = start;
      fail("integer literal out of range");
    }
    return Expression(Number(value));
  }

  int small_int() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected derivative order");
    int v = 0;
    std::from_chars(text_.data() + start, text_.data() + pos_, v);
    return v;
  }

  Expression identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    std::string name(text_.substr(start, pos_ - start));

    // Derivative markers: primes, or ^(k) immediately followed by '('.
    std::optional<int> order;
    std::size_t primes = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      ++primes;
    }
    if (primes > 0) order = static_cast<int>(primes);
    if (!order && looks_like_order_power()) {
      pos_ += 2;  // "^("
      order = small_int();
      expect(')');
    }
    std::vector<int> orders;
    if (pos_ < text_.size() && text_[pos_] == '{') {
      ++pos_;
      orders.push_back(small_int());
      while (accept(',')) orders.push_back(small_int());
      expect('}');
    }
    const bool called = peek('(');
    if (!called) {
      if (order || !orders.empty()) fail("derivative marker without call");
      if (elementary(name)) {
        pos_ = start;
        fail("elementary function '" + name + "' needs an argument");
      }
      return Expression::symbol(std::move(name));
    }
    for (auto bad : kUnsupported) {
      if (name == bad) {
        pos_ = start;
        fail("unknown elementary function '" + name + "'");
      }
    }
    expect('(');
    std::vector<Expression> args{expr()};
    while (accept(',')) args.push_back(expr());
    expect(')');

    if (auto fn = elementary(name)) {
      if (order || !orders.empty() || args.size() != 1) {
        pos_ = start;
        fail("elementary function '" + name + "' takes one argument and no derivative marker");
      }
      return Expression::call(*fn, std::move(args[0]));
    }
    if (!orders.empty()) {
      if (order) fail("both prime and brace derivative markers");
      if (orders.size() != args.size()) fail("derivative order count does not match argument count");
      return Expression::opaque(std::move(name), std::move(orders), std::move(args));
    }
    if (order && args.size() != 1) fail("primes apply to single-argument functions only");
    std::vector<int> zeros(args.size(), 0);
    if (order) zeros[0] = *order;
    return Expression::opaque(std::move(name), std::move(zeros), std::move(args));
  }

  // True for "^(<digits>)(" at the cursor.
  bool looks_like_order_power() const {
    std::size_t p = pos_;
    if (p + 1 >= text_.size() || text_[p] != '^' || text_[p + 1] != '(') return false;
    p += 2;
    const std::size_t digits = p;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    if (p == digits || p >= text_.size() || text_[p] != ')') return false;
    ++p;
    return p < text_.size() && text_[p] == '(';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text) { return Parser(text).run(); }

}  // namespace ermakov::expr
