#pragma once

#include <cstddef>
#include <string>

#include "padicstab/iteration.hpp"
#include "padicstab/hypotheses.hpp"

namespace padicstab {

struct CounterexampleReport {
  Scaling kind = Scaling::additive;
  BigRational u;
  SequenceTrace trace;
  bool constant_difference = false;  // every difference norm equals the first
  LogMagnitude constant_norm = LogMagnitude::zero();
  TargetVector residual_on_diagonal;  // D_AC(u, u) for F(u) = u^2
  LogMagnitude residual_norm = LogMagnitude::zero();
};

/// Runs F(u) = u^2 through the additive or cubic dyadic iteration for an odd
/// prime p (where |2|_p = 1) and records the difference-norm trace, which
/// stays constant and nonzero: the sequence is not Cauchy.
inline CounterexampleReport reproduce_counterexample(Scaling kind, const PrimeContext& ctx, const BigRational& u,
                                                     std::size_t horizon, const CauchyPolicy& policy = {}) {
  if (ctx.p() == 2) throw UsageError("counterexample requires an odd prime");
  if (u == 0) throw UsageError("counterexample requires u != 0");

  const PolyMap square = PolyMap::scalar({BigRational(0), BigRational(0), BigRational(1)});
  CounterexampleReport report;
  report.kind = kind;
  report.u = u;
  report.trace = kind == Scaling::additive ? approximate_additive(square, u, ctx, horizon, policy)
                                           : approximate_cubic(square, u, ctx, horizon, policy);
  const auto& diffs = report.trace.diff_norms;
  report.constant_norm = diffs.front();
  report.constant_difference = !diffs.front().is_zero();
  for (const auto& d : diffs) {
    if (d != diffs.front()) report.constant_difference = false;
  }
  report.residual_on_diagonal = d_ac(square, u, u);
  report.residual_norm = sup_norm(report.residual_on_diagonal, ctx);
  return report;
}

}  // namespace padicstab
