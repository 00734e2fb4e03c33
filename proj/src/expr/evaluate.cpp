#include "ermakov/expr/evaluate.hpp"

#include <algorithm>
#include <cmath>

namespace ermakov::expr {

CompiledExpr::CompiledExpr(const Expression& e, std::vector<std::string> slots, const FunctionTable& functions)
    : slots_(std::move(slots)), functions_(functions) {
  std::int32_t depth = emit(expand_functions(e, functions_));
  max_stack_ = static_cast<std::size_t>(std::max(depth, 1));
}

// Emits code for `e` and returns the stack depth it needs.
std::int32_t CompiledExpr::emit(const Expression& e) {
  auto node = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(e);
  auto children_then = [&](Op op, std::int32_t arg = 0) {
    std::int32_t need = 0;
    std::int32_t i = 0;
    for (const auto& c : e.children()) need = std::max(need, i++ + emit(c));
    code_.push_back({op, arg, 0.0, node});
    return need;
  };
  switch (e.kind()) {
    case Kind::Number:
      code_.push_back({Op::Const, 0, e.number().to_double(), node});
      return 1;
    case Kind::Symbol: {
      auto it = std::find(slots_.begin(), slots_.end(), e.name());
      if (it == slots_.end()) throw UnboundSymbol(e.name());
      code_.push_back({Op::Load, static_cast<std::int32_t>(it - slots_.begin()), 0.0, node});
      return 1;
    }
    case Kind::Sum:
      return children_then(Op::Add, static_cast<std::int32_t>(e.children().size()));
    case Kind::Product:
      return children_then(Op::Mul, static_cast<std::int32_t>(e.children().size()));
    case Kind::Power: {
      const Expression& x = e.exponent();
      if (x.is_number() && x.number().is_exact() && x.number().is_integer() &&
          std::abs(x.number().rational().num()) < (1 << 20)) {
        std::int32_t need = emit(e.base());
        code_.push_back({Op::PowInt, static_cast<std::int32_t>(x.number().rational().num()), 0.0, node});
        return need;
      }
      return children_then(Op::Pow);
    }
    case Kind::Negate:
      return children_then(Op::Neg);
    case Kind::Call: {
      static constexpr Op ops[] = {Op::Sin, Op::Cos, Op::Exp, Op::Log, Op::Sqrt};
      return children_then(ops[static_cast<int>(e.function())]);
    }
    case Kind::Opaque: {
      auto it = functions_.find(e.name());
      bool plain = e.children().size() == 1 && e.orders()[0] == 0;
      if (it == functions_.end() || !it->second.native || !plain) {
        std::string label = e.name();
        if (!plain) label = e.str();
        throw UnboundFunction(label);
      }
      natives_.push_back(it->second.native);
      return children_then(Op::Native, static_cast<std::int32_t>(natives_.size() - 1));
    }
  }
  return 1;
}

void CompiledExpr::fail(const std::string& what, std::int32_t node) const { throw DomainError(what, nodes_[node].str()); }

double CompiledExpr::operator()(std::span<const double> values) const {
  double local[64];
  std::vector<double> heap;
  double* stack = local;
  if (max_stack_ > 64) {
    heap.resize(max_stack_);
    stack = heap.data();
  }
  std::size_t sp = 0;
  for (const Instr& in : code_) {
    double r = 0.0;
    switch (in.op) {
      case Op::Const:
        stack[sp++] = in.value;
        continue;
      case Op::Load:
        stack[sp++] = values[static_cast<std::size_t>(in.arg)];
        continue;
      case Op::Add: {
        sp -= static_cast<std::size_t>(in.arg);
        for (std::int32_t i = 0; i < in.arg; ++i) r += stack[sp + static_cast<std::size_t>(i)];
        break;
      }
      case Op::Mul: {
        sp -= static_cast<std::size_t>(in.arg);
        r = 1.0;
        for (std::int32_t i = 0; i < in.arg; ++i) r *= stack[sp + static_cast<std::size_t>(i)];
        break;
      }
      case Op::Neg:
        r = -stack[--sp];
        break;
      case Op::PowInt: {
        double b = stack[--sp];
        if (b == 0.0 && in.arg < 0) fail("division by zero", in.node);
        r = std::pow(b, in.arg);
        break;
      }
      case Op::Pow: {
        double x = stack[--sp];
        double b = stack[--sp];
        if (b == 0.0 && x < 0.0) fail("division by zero", in.node);
        if (b < 0.0 && x != std::floor(x)) fail("non-real power of negative base", in.node);
        r = std::pow(b, x);
        break;
      }
      case Op::Sin:
        r = std::sin(stack[--sp]);
        break;
      case Op::Cos:
        r = std::cos(stack[--sp]);
        break;
      case Op::Exp:
        r = std::exp(stack[--sp]);
        break;
      case Op::Log: {
        double a = stack[--sp];
        if (!(a > 0.0)) fail("log of nonpositive value", in.node);
        r = std::log(a);
        break;
      }
      case Op::Sqrt: {
        double a = stack[--sp];
        if (a < 0.0) fail("sqrt of negative value", in.node);
        r = std::sqrt(a);
        break;
      }
      case Op::Native:
        r = natives_[static_cast<std::size_t>(in.arg)](stack[--sp]);
        break;
    }
    if (!std::isfinite(r)) fail("non-finite value", in.node);
    stack[sp++] = r;
  }
  return stack[0];
}

double evaluate(const Expression& e, const Bindings& b) {
  std::vector<std::string> slots;
  std::vector<double> values;
  for (const auto& [name, v] : b.values) {
    slots.push_back(name);
    values.push_back(v);
  }
  return CompiledExpr(e, std::move(slots), b.functions)(values);
}

}  // namespace ermakov::expr
