#include "ermakov/expr/print.hpp"

namespace ermakov::expr {

namespace {

enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

bool is_negative_term(const Expression& e) {
  switch (e.kind()) {
    case Kind::Number: return e.number().is_negative();
    case Kind::Negate: return true;
    case Kind::Product: return e.children()[0].is_number() && e.children()[0].number().is_negative();
    default: return false;
  }
}

Expression negated(const Expression& e) {
  switch (e.kind()) {
    case Kind::Number: return Expression(-e.number());
    case Kind::Negate: return e.operand();
    case Kind::Product: {
      std::vector<Expression> f(e.children().begin(), e.children().end());
      f[0] = Expression(-f[0].number());
      if (f[0].is_one()) f.erase(f.begin());
      return Expression::product(std::move(f));
    }
    default: return e;
  }
}

class Printer {
 public:
  explicit Printer(PrintStyle style) : style_(style) {}

  std::string print(const Expression& e, int context) {
    int p = 0;
    std::string s = render(e, p);
    return p < context ? "(" + s + ")" : s;
  }

 private:
  std::string render(const Expression& e, int& prec) {
    switch (e.kind()) {
      case Kind::Number: return number(e.number(), prec);
      case Kind::Symbol: prec = kAtom; return e.name();
      case Kind::Sum: prec = kSum; return sum(e);
      case Kind::Product: return product(e, prec);
      case Kind::Power: prec = kPower; return power(e);
      case Kind::Negate: prec = kUnary; return "-" + print(e.operand(), kUnary);
      case Kind::Call:
        prec = kAtom;
        return std::string(elementary_name(e.function())) + "(" + print(e.operand(), 0) + ")";
      case Kind::Opaque: prec = kAtom; return opaque(e);
    }
    return "?";
  }

  std::string number(const Number& n, int& prec) {
    if (n.is_negative()) {
      prec = kUnary;
      int inner = 0;
      std::string s = number(-n, inner);
      return "-" + (inner < kUnary ? "(" + s + ")" : s);
    }
    if (n.is_exact() && !n.rational().is_integer()) {
      prec = kProduct;
      return n.rational().str();
    }
    prec = kAtom;
    return n.str();
  }

  std::string sum(const Expression& e) {
    std::string out;
    bool first = true;
    for (const auto& term : e.children()) {
      if (first) {
        out = print(term, kSum + 1);
        first = false;
        continue;
      }
      if (is_negative_term(term)) {
        out += " - " + print(negated(term), kProduct);
      } else {
        out += " + " + print(term, kSum + 1);
      }
    }
    return out;
  }

  std::string product(const Expression& e, int& prec) {
    std::vector<std::string> numer;
    std::vector<std::string> denom;
    std::string sign;
    auto factors = e.children();
    std::size_t start = 0;
    if (factors[0].is_number() && factors[0].number().is_exact()) {
      Rational c = factors[0].number().rational();
      if (c.is_negative()) {
        sign = "-";
        c = -c;
      }
      if (c.num() != 1) numer.push_back(std::to_string(c.num()));
      if (c.den() != 1) denom.push_back(std::to_string(c.den()));
      start = 1;
    }
    for (std::size_t i = start; i < factors.size(); ++i) {
      const auto& f = factors[i];
      if (f.kind() == Kind::Power && f.exponent().is_number() && f.exponent().number().is_negative()) {
        Number inv = -f.exponent().number();
        if (inv.is_one())
          denom.push_back(print(f.base(), kPower));
        else
          denom.push_back(print(Expression::power(f.base(), Expression(inv)), kPower));
      } else {
        numer.push_back(print(f, kPower));
      }
    }
    std::string out = sign;
    if (numer.empty()) {
      out += "1";
    } else {
      for (std::size_t i = 0; i < numer.size(); ++i) out += (i ? "*" : "") + numer[i];
    }
    if (!denom.empty()) {
      std::string d;
      for (std::size_t i = 0; i < denom.size(); ++i) d += (i ? "*" : "") + denom[i];
      out += "/" + (denom.size() > 1 ? "(" + d + ")" : d);
    }
    prec = sign.empty() ? kProduct : kUnary;
    return out;
  }

  std::string power(const Expression& e) {
    std::string base = print(e.base(), kAtom);
    const auto& x = e.exponent();
    std::string exponent;
    bool simple = (x.is_number() && x.number().is_integer() && !x.number().is_negative()) || x.is_symbol() ||
                  x.kind() == Kind::Call || x.kind() == Kind::Opaque;
    exponent = simple ? print(x, kAtom) : "(" + print(x, 0) + ")";
    return base + "^" + exponent;
  }

  std::string opaque(const Expression& e) {
    auto orders = e.orders();
    auto args = e.children();
    if (args.size() == 1) {
      std::string head = e.name();
      if (orders[0] >= 3)
        head += "^(" + std::to_string(orders[0]) + ")";
      else
        head += std::string(static_cast<std::size_t>(orders[0]), '\'');
      return head + "(" + print(args[0], 0) + ")";
    }
    bool any = false;
    for (int k : orders) any = any || k > 0;
    if (style_ == PrintStyle::Subscript) {
      bool plain_args = true;
      for (const auto& a : args) plain_args = plain_args && a.is_symbol();
      if (plain_args) {
        if (!any) return e.name();
        std::string sub;
        for (std::size_t i = 0; i < args.size(); ++i)
          for (int k = 0; k < orders[i]; ++k) sub += args[i].name();
        return e.name() + "_" + sub;
      }
    }
    std::string out = e.name();
    if (any) {
      out += "{";
      for (std::size_t i = 0; i < orders.size(); ++i) out += (i ? "," : "") + std::to_string(orders[i]);
      out += "}";
    }
    out += "(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + print(args[i], 0);
    return out + ")";
  }

  PrintStyle style_;
};

}  // namespace

std::string to_string(const Expression& e, PrintStyle style) { return Printer(style).print(e, 0); }

std::string Expression::str() const { return to_string(*this); }

}  // namespace ermakov::expr
