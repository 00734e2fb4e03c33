#pragma once

#include "doctest.h"
#include "ermakov/expr/print.hpp"

namespace doctest {
template <>
struct StringMaker<ermakov::expr::Expression> {
  static String convert(const ermakov::expr::Expression& e) { return ermakov::expr::to_string(e).c_str(); }
};
}  // namespace doctest
