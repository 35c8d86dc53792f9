#include "lla/compiled.hpp"

#include <algorithm>

namespace lla {

CompiledExpr::CompiledExpr(const Expr& e, std::vector<std::string> vars) : vars_(std::move(vars)) {
  emit(desugar(e));
  std::size_t depth = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::Zero:
      case Op::Load:
        ++depth;
        break;
      case Op::Scale:
        break;
      default:
        --depth;
        break;
    }
    max_stack_ = std::max(max_stack_, depth);
  }
  stack_.resize(max_stack_);
}

CompiledExpr::CompiledExpr(const Expr& e) : CompiledExpr(e, variables(e)) {}

void CompiledExpr::emit(const Expr& e) {
  switch (e.kind()) {
    case Kind::Zero:
      code_.push_back({Op::Zero});
      return;
    case Kind::Var: {
      auto it = std::find(vars_.begin(), vars_.end(), e.name());
      if (it == vars_.end()) throw MissingVariable(e.name());
      code_.push_back({Op::Load, static_cast<std::size_t>(it - vars_.begin())});
      return;
    }
    case Kind::Scale:
      emit(e.child());
      code_.push_back({Op::Scale, 0, e.coeff()});
      return;
    case Kind::Add:
    case Kind::Join:
    case Kind::Mul:
      emit(e.lhs());
      emit(e.rhs());
      code_.push_back({e.kind() == Kind::Add ? Op::Add : e.kind() == Kind::Join ? Op::Join : Op::Mul});
      return;
    default:
      throw Error("compile expects a desugared expression");
  }
}

double CompiledExpr::operator()(std::span<const double> args) const {
  double* sp = stack_.data();
  std::size_t top = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::Zero:
        sp[top++] = 0.0;
        break;
      case Op::Load:
        sp[top++] = args[in.index];
        break;
      case Op::Scale:
        sp[top - 1] = in.coeff * sp[top - 1];
        break;
      case Op::Add:
        --top;
        sp[top - 1] = sp[top - 1] + sp[top];
        break;
      case Op::Join:
        --top;
        sp[top - 1] = std::max(sp[top - 1], sp[top]);
        break;
      case Op::Mul:
        --top;
        sp[top - 1] = sp[top - 1] * sp[top];
        break;
    }
  }
  return sp[0];
}

}  // namespace lla
