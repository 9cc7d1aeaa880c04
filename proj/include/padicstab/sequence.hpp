#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "padicstab/vector.hpp"

namespace padicstab {

/// Finite-horizon certificate policy for ultrametric Cauchy verdicts.
struct CauchyPolicy {
  std::size_t window = 5;
  // converged requires the last difference norm <= p^-threshold_exponent
  std::int64_t threshold_exponent = 40;
};

enum class TraceVerdict { converged, diverged, undecided };

inline const char* to_string(TraceVerdict v) {
  switch (v) {
    case TraceVerdict::converged: return "converged";
    case TraceVerdict::diverged: return "diverged";
    case TraceVerdict::undecided: return "undecided";
  }
  return "?";
}

struct SequenceTrace {
  std::vector<TargetVector> terms;
  std::vector<LogMagnitude> diff_norms;  // diff_norms[i] = |terms[i+1] - terms[i]|
  TraceVerdict verdict = TraceVerdict::undecided;
  std::optional<TargetVector> limit;
  bool limit_exact = false;
  std::string note;
  CauchyPolicy policy;
};

/// Raised when an operation needs a limit but the trace did not converge.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, SequenceTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const SequenceTrace& trace() const noexcept { return trace_; }

 private:
  SequenceTrace trace_;
};

/// Classifies a finite sequence prefix by its consecutive-difference norms.
///
/// Over the last `window` differences:
///  - converged: strictly decreasing (ZERO counts as smaller than any norm and
///    may only be followed by ZERO) and the last one is ZERO or has exponent
///    >= threshold_exponent;
///  - diverged: all nonzero and non-decreasing;
///  - undecided otherwise.
/// A trailing ZERO difference means the sequence has stabilized; the limit is
/// then the last term exactly. Otherwise the last term stands in for the limit.
inline SequenceTrace is_cauchy(std::vector<TargetVector> terms, const PrimeContext& ctx, const CauchyPolicy& policy = {}) {
  if (policy.window < 1) throw UsageError("is_cauchy: window must be at least 1");
  if (terms.size() < policy.window + 1) {
    throw UsageError("is_cauchy: need at least " + std::to_string(policy.window + 1) + " terms, got " +
                     std::to_string(terms.size()));
  }
  SequenceTrace trace;
  trace.policy = policy;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) trace.diff_norms.push_back(sup_norm(terms[i + 1] - terms[i], ctx));
  trace.terms = std::move(terms);

  const std::span<const LogMagnitude> tail(trace.diff_norms.data() + trace.diff_norms.size() - policy.window,
                                           policy.window);
  bool decreasing = true;
  bool nondecreasing = !tail.front().is_zero();
  for (std::size_t i = 1; i < tail.size(); ++i) {
    const auto& a = tail[i - 1];
    const auto& b = tail[i];
    if (!(b < a || (a.is_zero() && b.is_zero()))) decreasing = false;
    if (b.is_zero() || b < a) nondecreasing = false;
  }
  const LogMagnitude& last = tail.back();
  const bool small = last.is_zero() || last.exponent() >= BigRational(policy.threshold_exponent);

  if (decreasing && small) {
    trace.verdict = TraceVerdict::converged;
    trace.limit = trace.terms.back();
    trace.limit_exact = last.is_zero();
    trace.note = trace.limit_exact ? "stabilized exactly" : "limit extrapolated from the last term";
  } else if (nondecreasing) {
    trace.verdict = TraceVerdict::diverged;
    trace.note = "difference norms bounded below over the decision window";
  } else {
    trace.verdict = TraceVerdict::undecided;
    trace.note = decreasing ? "decreasing but above the threshold" : "no certificate at this horizon";
  }
  return trace;
}

}  // namespace padicstab
