#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "padicstab/expr.hpp"
#include "padicstab/magnitude.hpp"
#include "padicstab/vector.hpp"

namespace padicstab {

namespace detail {

struct NormEnv {
  const LogMagnitude* u = nullptr;
  const LogMagnitude* v = nullptr;
  std::span<const LogMagnitude> slots;
};

inline Magnitude evaluate(const Expr& e, const NormEnv& env, std::uint64_t p) {
  switch (e.op) {
    case Expr::Op::number: return Magnitude::exact(e.value);
    case Expr::Op::norm_u: return Magnitude::from_log(*env.u, p);
    case Expr::Op::norm_v: return Magnitude::from_log(*env.v, p);
    case Expr::Op::norm_w:
      if (e.index > env.slots.size()) {
        throw UsageError("norm(w" + std::to_string(e.index) + ") refers to a missing slot vector");
      }
      return Magnitude::from_log(env.slots[e.index - 1], p);
    case Expr::Op::add: return evaluate(*e.args[0], env, p) + evaluate(*e.args[1], env, p);
    case Expr::Op::mul: return evaluate(*e.args[0], env, p) * evaluate(*e.args[1], env, p);
    case Expr::Op::pow: return evaluate(*e.args[0], env, p).pow(e.value);
    case Expr::Op::max:
    case Expr::Op::min: {
      Magnitude acc = evaluate(*e.args[0], env, p);
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        const Magnitude next = evaluate(*e.args[i], env, p);
        acc = e.op == Expr::Op::max ? max(acc, next) : min(acc, next);
      }
      return acc;
    }
    default: throw DomainError("operator not available in a control function");
  }
}

}  // namespace detail

/// Control function sigma: S x S -> [0, inf), depending on u, v through their norms.
class SigmaFunction {
 public:
  explicit SigmaFunction(ExprPtr ast) : ast_(std::move(ast)) {}

  static SigmaFunction parse(std::string_view text, const std::map<std::string, BigRational>& params = {}) {
    return SigmaFunction(parse_expression(text, ExprKind::sigma, params));
  }

  static SigmaFunction constant(const BigRational& eps) { return parse("eps", {{"eps", eps}}); }

  /// rho * (norm(u)^(x+y) + norm(v)^(x+y) + norm(u)^x * norm(v)^y)
  static SigmaFunction power_family(const BigRational& rho, const BigRational& x, const BigRational& y) {
    const std::map<std::string, BigRational> params{{"rho", rho}, {"x", x}, {"y", y}};
    const std::string s = to_string(x + y);
    const std::string text = "rho*(norm(u)^" + s + " + norm(v)^" + s + " + norm(u)^" + to_string(x) + "*norm(v)^" +
                             to_string(y) + ")";
    return parse(text, params);
  }

  Magnitude operator()(const BigRational& u, const BigRational& v, const PrimeContext& ctx) const {
    const LogMagnitude nu = padic_abs(u, ctx);
    const LogMagnitude nv = padic_abs(v, ctx);
    return detail::evaluate(*ast_, detail::NormEnv{&nu, &nv, {}}, ctx.p());
  }

  const Expr& ast() const noexcept { return *ast_; }
  std::string str() const { return pretty_print(*ast_); }

 private:
  ExprPtr ast_;
};

/// Weight function psi: T^(n-1) -> [0, inf) of the slot vectors' sup norms.
/// Defaults to the constant 1.
class PsiFunction {
 public:
  PsiFunction() : ast_(parse_expression("1", ExprKind::psi)) {}
  explicit PsiFunction(ExprPtr ast) : ast_(std::move(ast)) {}

  static PsiFunction parse(std::string_view text, const std::map<std::string, BigRational>& params = {}) {
    return PsiFunction(parse_expression(text, ExprKind::psi, params));
  }

  Magnitude operator()(std::span<const TargetVector> slots, const PrimeContext& ctx) const {
    std::vector<LogMagnitude> norms;
    for (const auto& w : slots) norms.push_back(sup_norm(w, ctx));
    return detail::evaluate(*ast_, detail::NormEnv{nullptr, nullptr, norms}, ctx.p());
  }

  const Expr& ast() const noexcept { return *ast_; }
  std::string str() const { return pretty_print(*ast_); }

 private:
  ExprPtr ast_;
};

inline Magnitude eval_sigma(const SigmaFunction& sigma, const BigRational& u, const BigRational& v,
                            const PrimeContext& ctx) {
  return sigma(u, v, ctx);
}

}  // namespace padicstab
