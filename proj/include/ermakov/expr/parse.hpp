#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ermakov/expr/expression.hpp"

namespace ermakov::expr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the expression grammar:
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' unary)?
///   atom   := number | ident | call | '(' expr ')'
///   call   := ident ("'"* | '^(' int ')') ('{' int (',' int)* '}')? '(' expr (',' expr)* ')'
///
/// sin, cos, exp, log and sqrt are elementary; any other called identifier
/// is an opaque function. Integers and fractions are exact; a literal with a
/// decimal point or exponent is a double. The result is not simplified.
Expression parse(std::string_view text);

}  // namespace ermakov::expr
