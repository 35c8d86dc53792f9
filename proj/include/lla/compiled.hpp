#pragma once

#include <span>
#include <string>
#include <vector>

#include "lla/expr.hpp"

namespace lla {

// Postfix program for fast repeated real evaluation. Performs the same
// floating-point operations in the same order as eval_real on desugar(e), so
// results are bit-identical. Holds a scratch stack, so share copies rather
// than one instance across threads.
class CompiledExpr {
 public:
  // `vars` fixes the argument order; every free variable of e must appear.
  CompiledExpr(const Expr& e, std::vector<std::string> vars);
  explicit CompiledExpr(const Expr& e);

  const std::vector<std::string>& vars() const { return vars_; }
  double operator()(std::span<const double> args) const;

 private:
  enum class Op : unsigned char { Zero, Load, Scale, Add, Join, Mul };
  struct Instr {
    Op op;
    std::size_t index = 0;
    double coeff = 0.0;
  };
  void emit(const Expr& e);

  std::vector<std::string> vars_;
  std::vector<Instr> code_;
  std::size_t max_stack_ = 0;
  mutable std::vector<double> stack_;
};

}  // namespace lla
