#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "padicstab/control.hpp"

namespace padicstab {

/// Which dyadic scaling a construction uses: |2| for the additive part,
/// |8| for the cubic part.
enum class Scaling { additive, cubic };

inline const char* to_string(Scaling s) { return s == Scaling::additive ? "additive" : "cubic"; }
inline std::int64_t scale_base(Scaling s) { return s == Scaling::additive ? 2 : 8; }

struct SigmaBarOptions {
  // Read the multipliers 8 and 2 as p-adic norms |8|_p, |2|_p instead of reals.
  bool padic_multipliers = false;
};

/// max{8 sigma(u, 2u), 2 sigma(2u, 2u)}.
inline Magnitude sigma_bar(const SigmaFunction& sigma, const BigRational& u, const PrimeContext& ctx,
                           const SigmaBarOptions& options = {}) {
  auto multiplier = [&](std::int64_t m) {
    if (options.padic_multipliers) return Magnitude::from_log(padic_abs(BigRational(m), ctx), ctx.p());
    return Magnitude::exact(BigRational(m));
  };
  const BigRational two_u = 2 * u;
  return max(multiplier(8) * sigma(u, two_u, ctx), multiplier(2) * sigma(two_u, two_u, ctx));
}

/// Finite-horizon decision policy for "term sequence tends to zero".
struct DecayPolicy {
  std::size_t window = 5;
  // satisfied requires last term <= p^-relative_threshold_exponent * (largest term)
  std::int64_t relative_threshold_exponent = 20;
};

enum class HypothesisStatus { satisfied, violated, undecided };

inline const char* to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::satisfied: return "satisfied-at-horizon";
    case HypothesisStatus::violated: return "violated-at-horizon";
    case HypothesisStatus::undecided: return "undecided";
  }
  return "?";
}

struct HypothesisVerdict {
  std::string hypothesis;
  std::size_t horizon = 0;
  std::vector<Magnitude> terms;
  HypothesisStatus status = HypothesisStatus::undecided;
  std::vector<Magnitude> witness_tail;  // populated when violated
};

/// |base|_p^(k beta) as an exact magnitude.
inline Magnitude scaled_base_power(std::int64_t base, const BigRational& k, const PrimeContext& ctx) {
  const LogMagnitude b = padic_abs(BigRational(base), ctx);
  return Magnitude::from_log(b.pow(k * ctx.beta()), ctx.p());
}

/// Decides whether a term sequence tends to zero at this horizon.
///
/// satisfied: the last `window` terms are strictly decreasing (exact zeros may
/// only be followed by zeros) and the last term is at most p^-T times the
/// largest term seen. violated: the tail is certified positive and
/// non-decreasing. Anything else, including comparisons the enclosures cannot
/// settle, is undecided.
inline HypothesisVerdict classify_decay(std::string name, std::vector<Magnitude> terms, const DecayPolicy& policy,
                                        const PrimeContext& ctx) {
  if (policy.window < 1 || terms.size() < policy.window) {
    throw UsageError("decay check needs a horizon of at least the decision window (" + std::to_string(policy.window) +
                     ")");
  }
  HypothesisVerdict verdict;
  verdict.hypothesis = std::move(name);
  verdict.horizon = terms.size();

  const std::size_t first = terms.size() - policy.window;
  bool all_zero = true;
  bool decreasing = true;
  bool nondecreasing = true;
  for (std::size_t i = first; i < terms.size(); ++i) {
    const Magnitude& b = terms[i];
    if (!b.is_zero()) all_zero = false;
    if (b.is_zero() || !(b.lower() > 0.0 || b.is_exact())) nondecreasing = false;
    if (i == first) continue;
    const Magnitude& a = terms[i - 1];
    const Ordering o = compare(b, a);
    if (!(o == Ordering::less || (a.is_zero() && b.is_zero()))) decreasing = false;
    if (!(o == Ordering::greater || o == Ordering::equal)) nondecreasing = false;
  }

  if (all_zero) {
    verdict.status = HypothesisStatus::satisfied;
  } else if (decreasing) {
    Magnitude peak = terms.front();
    for (const auto& t : terms) peak = max(peak, t);
    const Magnitude cutoff = peak * Magnitude::power(BigRational(1), BigRational(policy.relative_threshold_exponent), ctx.p());
    const Ordering o = compare(terms.back(), cutoff);
    const bool small = terms.back().is_zero() || o == Ordering::less || o == Ordering::equal;
    verdict.status = small ? HypothesisStatus::satisfied : HypothesisStatus::undecided;
  } else if (nondecreasing) {
    verdict.status = HypothesisStatus::violated;
    verdict.witness_tail.assign(terms.begin() + static_cast<std::ptrdiff_t>(first), terms.end());
  }
  verdict.terms = std::move(terms);
  return verdict;
}

struct SigmaHat {
  Magnitude value;  // running maximum over the horizon
  HypothesisVerdict verdict;
};

/// Running max of |2|^(l beta) sigma_bar(u / 2^(l+1)) (additive) or
/// |8|^(l beta) sigma_bar(u / 2^(l+1)) (cubic) over 0 <= l < horizon.
///
/// The verdict concerns the terms themselves: the running max only settles
/// when they tend to zero.
inline SigmaHat sigma_hat(const SigmaFunction& sigma, const BigRational& u, Scaling kind, const PrimeContext& ctx,
                          std::size_t horizon, const DecayPolicy& policy = {}, const SigmaBarOptions& options = {}) {
  if (horizon < policy.window) throw UsageError("sigma_hat: horizon shorter than the decision window");
  std::vector<Magnitude> terms;
  BigRational x = u / 2;
  for (std::size_t l = 0; l < horizon; ++l, x /= 2) {
    terms.push_back(scaled_base_power(scale_base(kind), BigRational(l), ctx) * sigma_bar(sigma, x, ctx, options));
  }
  Magnitude running = terms.front();
  for (const auto& t : terms) running = max(running, t);
  const std::string name = std::string("sigma-bar decay (") + to_string(kind) + ")";
  return SigmaHat{running, classify_decay(name, std::move(terms), policy, ctx)};
}

/// Terms |base|^(j beta) sigma(u / 2^j, v / 2^j) for 0 <= j < horizon.
inline HypothesisVerdict check_sigma_decay(const SigmaFunction& sigma, const BigRational& u, const BigRational& v,
                                           Scaling kind, const PrimeContext& ctx, std::size_t horizon,
                                           const DecayPolicy& policy = {}) {
  std::vector<Magnitude> terms;
  BigRational x = u;
  BigRational y = v;
  for (std::size_t j = 0; j < horizon; ++j, x /= 2, y /= 2) {
    terms.push_back(scaled_base_power(scale_base(kind), BigRational(j), ctx) * sigma(x, y, ctx));
  }
  const std::string name = std::string("sigma decay (") + to_string(kind) + ", v = " + to_string(v) + ")";
  return classify_decay(name, std::move(terms), policy, ctx);
}

/// Window maxima max{|base|^((l+1) beta) sigma_bar(u / 2^(l+1)) : m <= l < m + inner}
/// for 0 <= m < outer, judged by the decay policy.
///
/// `base` is normally 2 for the additive part and 8 for the cubic part; it is
/// a parameter so both scalings can be evaluated for the cubic condition.
inline HypothesisVerdict check_uniqueness_condition(const SigmaFunction& sigma, const BigRational& u, std::int64_t base,
                                                    const PrimeContext& ctx, std::size_t outer, std::size_t inner,
                                                    const DecayPolicy& policy = {},
                                                    const SigmaBarOptions& options = {}) {
  if (outer < policy.window || inner < policy.window) {
    throw UsageError("uniqueness check: horizons shorter than the decision window");
  }
  std::vector<Magnitude> scaled;
  BigRational x = u / 2;
  for (std::size_t l = 0; l + 1 < outer + inner; ++l, x /= 2) {
    scaled.push_back(scaled_base_power(base, BigRational(l + 1), ctx) * sigma_bar(sigma, x, ctx, options));
  }
  std::vector<Magnitude> maxima;
  for (std::size_t m = 0; m < outer; ++m) {
    Magnitude w = scaled[m];
    for (std::size_t l = m + 1; l < m + inner; ++l) w = max(w, scaled[l]);
    maxima.push_back(w);
  }
  const std::string name = "uniqueness window maxima (|" + std::to_string(base) + "| scaling)";
  return classify_decay(name, std::move(maxima), policy, ctx);
}

}  // namespace padicstab
