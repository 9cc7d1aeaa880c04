#pragma once

#include <cstddef>
#include <span>

#include "padicstab/bounds.hpp"

namespace padicstab {

struct DecompositionResult {
  TargetVector additive;  // A(u) = -A_hat(u) / 6
  TargetVector cubic;     // C(u) =  C_hat(u) / 6
  SequenceTrace additive_trace;
  SequenceTrace cubic_trace;
  TargetVector residual;  // F(u) - A(u) - C(u)
  BoundCheck joint_bound;
  SigmaHat sigma_hat_additive;
  SigmaHat sigma_hat_cubic;
};

struct DecomposeOptions {
  std::size_t horizon = 30;
  CauchyPolicy cauchy;
  DecayPolicy decay;
  SigmaBarOptions sigma_bar;
};

/// Splits F(u) into an additive and a cubic part from the two dyadic limits.
///
/// Since N - K = 6F, the pair A = -A_hat/6, C = C_hat/6 satisfies
/// F - A - C = ((N - C_hat) - (K - A_hat)) / 6, which gives the joint bound
/// ||F(u) - A(u) - C(u), w..||_beta <= |12|^-beta max{sigma_hat_A, |4|^-beta sigma_hat_C} psi(w..).
/// Throws DivergenceError carrying the offending trace when either limit is
/// not certified.
template <TargetMap F>
DecompositionResult decompose(const F& f, const BigRational& u, const SigmaFunction& sigma, const PsiFunction& psi,
                              std::span<const TargetVector> slots, const NBetaContext& ctx,
                              const DecomposeOptions& options = {}) {
  const PrimeContext& prime = ctx.prime();
  SequenceTrace a_trace = approximate_additive(f, u, prime, options.horizon, options.cauchy);
  if (a_trace.verdict != TraceVerdict::converged) {
    throw DivergenceError("additive trace " + std::string(to_string(a_trace.verdict)) + " at u = " + to_string(u),
                          std::move(a_trace));
  }
  SequenceTrace c_trace = approximate_cubic(f, u, prime, options.horizon, options.cauchy);
  if (c_trace.verdict != TraceVerdict::converged) {
    throw DivergenceError("cubic trace " + std::string(to_string(c_trace.verdict)) + " at u = " + to_string(u),
                          std::move(c_trace));
  }

  const BigRational sixth(1, 6);
  TargetVector additive = BigRational(-1, 6) * *a_trace.limit;
  TargetVector cubic = sixth * *c_trace.limit;
  TargetVector residual = f(u) - additive - cubic;

  LogMagnitude left = n_beta_norm(residual, slots, ctx);
  for (const SequenceTrace* t : {&a_trace, &c_trace}) {
    if (!t->limit_exact) {
      const auto& terms = t->terms;
      left = logmag_max(left, n_beta_norm(sixth * (terms.back() - terms[terms.size() - 2]), slots, ctx));
    }
  }

  SigmaHat hat_a = sigma_hat(sigma, u, Scaling::additive, prime, options.horizon, options.decay, options.sigma_bar);
  SigmaHat hat_c = sigma_hat(sigma, u, Scaling::cubic, prime, options.horizon, options.decay, options.sigma_bar);
  const Magnitude inner = max(hat_a.value, scaled_base_power(4, BigRational(-1), prime) * hat_c.value);
  const Magnitude right = scaled_base_power(12, BigRational(-1), prime) * inner * psi(slots, prime);
  BoundCheck joint = compare_bound("joint bound at u = " + to_string(u), left, right, prime, options.horizon);

  return DecompositionResult{std::move(additive), std::move(cubic), std::move(a_trace), std::move(c_trace),
                             std::move(residual), std::move(joint), std::move(hat_a), std::move(hat_c)};
}

}  // namespace padicstab
