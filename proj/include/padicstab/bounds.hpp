#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padicstab/control.hpp"
#include "padicstab/hypotheses.hpp"
#include "padicstab/iteration.hpp"
#include "padicstab/nbeta_norm.hpp"

namespace padicstab {

enum class BoundVerdict { holds, fails, incomparable };

inline const char* to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::holds: return "holds";
    case BoundVerdict::fails: return "fails";
    case BoundVerdict::incomparable: return "incomparable-at-precision";
  }
  return "?";
}

/// One inequality  left <= right  with an exact left side.
struct BoundCheck {
  std::string label;
  LogMagnitude left = LogMagnitude::zero();
  Magnitude right = Magnitude::exact(BigRational(0));
  double left_upper = 0.0;   // round-up(left)
  double right_lower = 0.0;  // round-down(right)
  std::string regime;        // how the right side was represented
  BoundVerdict verdict = BoundVerdict::incomparable;
  std::size_t horizon = 0;
};

/// holds only when round-up(left) <= round-down(right). fails when the exact
/// comparison (or the opposite directed comparison) shows left > right.
inline BoundCheck compare_bound(std::string label, const LogMagnitude& left, const Magnitude& right,
                                const PrimeContext& ctx, std::size_t horizon) {
  BoundCheck check;
  check.label = std::move(label);
  check.left = left;
  check.right = right;
  check.regime = right.regime();
  check.horizon = horizon;
  try {
    check.left_upper = logmag_to_real(left, ctx, Rounding::up);
  } catch (const RangeError&) {
    check.left_upper = std::numeric_limits<double>::infinity();
  }
  check.right_lower = right.lower();

  if (check.left_upper <= check.right_lower) {
    check.verdict = BoundVerdict::holds;
    return check;
  }
  const Ordering exact = compare(Magnitude::from_log(left, ctx.p()), right);
  if (exact == Ordering::greater) {
    check.verdict = BoundVerdict::fails;
  } else {
    check.verdict = BoundVerdict::incomparable;
  }
  return check;
}

/// ||D_AC(u,v), w_1..w_{n-1}||_beta <= sigma(u,v) psi(w_1..w_{n-1}) on each pair.
template <TargetMap F>
std::vector<BoundCheck> verify_residual_hypothesis(const F& f, const SigmaFunction& sigma, const PsiFunction& psi,
                                                   std::span<const std::pair<BigRational, BigRational>> pairs,
                                                   std::span<const TargetVector> slots, const NBetaContext& ctx) {
  if (slots.size() + 1 != ctx.n()) {
    throw UsageError("residual check expects n - 1 = " + std::to_string(ctx.n() - 1) + " slot vectors");
  }
  const PrimeContext& prime = ctx.prime();
  const Magnitude weight = psi(slots, prime);
  std::vector<BoundCheck> out;
  for (const auto& [u, v] : pairs) {
    const LogMagnitude left = n_beta_norm(d_ac(f, u, v), slots, ctx);
    out.push_back(compare_bound("residual at (u, v) = (" + to_string(u) + ", " + to_string(v) + ")", left,
                                sigma(u, v, prime) * weight, prime, 0));
  }
  return out;
}

namespace detail {

/// ||G(u) - limit||, widened by the last observed difference when the limit
/// was extrapolated rather than reached exactly.
inline LogMagnitude distance_to_limit(const TargetVector& value, const SequenceTrace& trace,
                                      std::span<const TargetVector> slots, const NBetaContext& ctx) {
  LogMagnitude left = n_beta_norm(value - *trace.limit, slots, ctx);
  if (!trace.limit_exact && trace.terms.size() >= 2) {
    const auto& t = trace.terms;
    left = logmag_max(left, n_beta_norm(t[t.size() - 1] - t[t.size() - 2], slots, ctx));
  }
  return left;
}

inline void require_converged(const SequenceTrace& trace, const char* who) {
  if (trace.verdict != TraceVerdict::converged || !trace.limit) {
    throw UsageError(std::string(who) + ": the approximating trace is " + to_string(trace.verdict) +
                     ", no limit to compare against");
  }
}

}  // namespace detail

/// ||F(2u) - 8F(u) - A(u), w..||_beta <= |2|^-beta sigma_hat_A(u) psi(w..).
template <TargetMap F>
BoundCheck verify_bound_additive(const F& f, const SequenceTrace& additive_trace, const BigRational& u,
                                 std::span<const TargetVector> slots, const Magnitude& sigma_hat_a,
                                 const PsiFunction& psi, const NBetaContext& ctx) {
  detail::require_converged(additive_trace, "verify_bound_additive");
  const PrimeContext& prime = ctx.prime();
  const LogMagnitude left = detail::distance_to_limit(k_transform(f)(u), additive_trace, slots, ctx);
  const Magnitude right = scaled_base_power(2, BigRational(-1), prime) * sigma_hat_a * psi(slots, prime);
  return compare_bound("additive bound at u = " + to_string(u), left, right, prime, additive_trace.terms.size() - 1);
}

/// ||F(2u) - 2F(u) - C(u), w..||_beta <= |8|^-beta sigma_hat_C(u) psi(w..).
template <TargetMap F>
BoundCheck verify_bound_cubic(const F& f, const SequenceTrace& cubic_trace, const BigRational& u,
                              std::span<const TargetVector> slots, const Magnitude& sigma_hat_c, const PsiFunction& psi,
                              const NBetaContext& ctx) {
  detail::require_converged(cubic_trace, "verify_bound_cubic");
  const PrimeContext& prime = ctx.prime();
  const LogMagnitude left = detail::distance_to_limit(n_transform(f)(u), cubic_trace, slots, ctx);
  const Magnitude right = scaled_base_power(8, BigRational(-1), prime) * sigma_hat_c * psi(slots, prime);
  return compare_bound("cubic bound at u = " + to_string(u), left, right, prime, cubic_trace.terms.size() - 1);
}

}  // namespace padicstab
