#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>

#include "padicstab/directed.hpp"
#include "padicstab/prime.hpp"
#include "padicstab/valuation.hpp"

namespace padicstab {

/// A p-adic norm value p^(-exponent) held exactly by its rational exponent,
/// or the distinguished ZERO (exponent +infinity).
///
/// Comparison operators follow the norm order: a larger exponent is a smaller
/// norm and ZERO is below everything.
class LogMagnitude {
 public:
  static LogMagnitude zero() { return LogMagnitude(); }
  static LogMagnitude from_exponent(BigRational exponent) { return LogMagnitude(std::move(exponent)); }
  static LogMagnitude one() { return from_exponent(BigRational(0)); }

  bool is_zero() const noexcept { return !exponent_.has_value(); }

  const BigRational& exponent() const {
    if (!exponent_) throw UsageError("exponent of ZERO magnitude");
    return *exponent_;
  }

  friend bool operator==(const LogMagnitude&, const LogMagnitude&) = default;

  friend std::strong_ordering operator<=>(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.is_zero() || b.is_zero()) {
      if (a.is_zero() && b.is_zero()) return std::strong_ordering::equal;
      return a.is_zero() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (*a.exponent_ == *b.exponent_) return std::strong_ordering::equal;
    return *a.exponent_ > *b.exponent_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  /// Product of norms; ZERO absorbs.
  friend LogMagnitude operator*(const LogMagnitude& a, const LogMagnitude& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_exponent(*a.exponent_ + *b.exponent_);
  }

  /// Norm raised to a rational power r > 0.
  LogMagnitude pow(const BigRational& r) const {
    if (is_zero()) return zero();
    return from_exponent(*exponent_ * r);
  }

  std::string str() const { return exponent_ ? "p^-(" + to_string(*exponent_) + ")" : std::string("ZERO"); }

 private:
  LogMagnitude() = default;
  explicit LogMagnitude(BigRational e) : exponent_(std::move(e)) {}
  std::optional<BigRational> exponent_;
};

inline LogMagnitude padic_abs(const BigRational& q, const PrimeContext& ctx) {
  const Valuation v = valuation(q, ctx);
  if (v.is_infinite()) return LogMagnitude::zero();
  return LogMagnitude::from_exponent(BigRational(v.value()));
}

/// (p^-e)^beta = p^-(e*beta).
inline LogMagnitude logmag_scale_beta(const LogMagnitude& m, const PrimeContext& ctx) { return m.pow(ctx.beta()); }

inline LogMagnitude logmag_max(std::span<const LogMagnitude> ms) {
  if (ms.empty()) throw UsageError("logmag_max of an empty list");
  LogMagnitude best = ms.front();
  for (const auto& m : ms.subspan(1)) {
    if (m > best) best = m;
  }
  return best;
}

inline LogMagnitude logmag_max(const LogMagnitude& a, const LogMagnitude& b) { return a < b ? b : a; }

/// Directed double approximation of p^(-exponent); ZERO maps to 0.0.
inline double logmag_to_real(const LogMagnitude& m, const PrimeContext& ctx, Rounding dir) {
  if (m.is_zero()) return 0.0;
  return directed_power(BigRational(1), m.exponent(), ctx.p(), dir);
}

}  // namespace padicstab
