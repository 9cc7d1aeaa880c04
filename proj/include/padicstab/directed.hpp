#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "padicstab/rational.hpp"

namespace padicstab {

enum class Rounding { up, down };

/// Directed conversion overflowed the double range; carries the exact exponent
/// of the p-power that was being converted.
class RangeError : public std::range_error {
 public:
  RangeError(const std::string& what, BigRational exponent)
      : std::range_error(what), exponent_(std::move(exponent)) {}
  const BigRational& exponent() const noexcept { return exponent_; }

 private:
  BigRational exponent_;
};

namespace detail {

/// Exact rational value of a finite double.
inline BigRational rational_of_double(double d) {
  if (d == 0.0) return BigRational(0);
  int exp = 0;
  const double mant = std::frexp(d, &exp);  // d = mant * 2^exp, 0.5 <= |mant| < 1
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  BigRational r(scaled);
  const int shift = exp - 53;
  if (shift >= 0) {
    r *= BigRational(BigInt(1) << shift);
  } else {
    r /= BigRational(BigInt(1) << (-shift));
  }
  return r;
}

inline long double log_big(const BigInt& x) {
  const auto bits = static_cast<long>(boost::multiprecision::msb(x));
  if (bits < 62) return std::log(x.convert_to<long double>());
  const long shift = bits - 62;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<long double>()) + static_cast<long double>(shift) * std::log(2.0L);
}

// Largest exponent denominator handled by exact refinement; above it the
// estimate is widened by a fixed number of ulps instead.
inline constexpr std::int64_t kExactRootLimit = 512;

}  // namespace detail

/// Tight directed double bound for coeff * p^(-exponent), coeff >= 0.
///
/// The result is the nearest double on the requested side of the exact value:
/// candidates are refined by exact rational comparison of d^t * p^s against
/// coeff^t, where exponent = s/t. Throws RangeError when the value exceeds the
/// largest finite double.
inline double directed_power(const BigRational& coeff, const BigRational& exponent, std::uint64_t p, Rounding dir) {
  if (coeff < 0) throw UsageError("directed_power: negative coefficient");
  if (coeff == 0) return 0.0;

  const BigInt s = numerator(exponent);
  const BigInt t = denominator(exponent);
  const long double ln_p = std::log(static_cast<long double>(p));
  const long double ln_value = detail::log_big(numerator(coeff)) - detail::log_big(denominator(coeff)) -
                               exponent.convert_to<long double>() * ln_p;
  const long double ln_max = std::log(static_cast<long double>(std::numeric_limits<double>::max()));
  auto overflow = [&]() -> double {
    throw RangeError("value exceeds double range (p-adic exponent " + to_string(exponent) + ")", exponent);
  };
  if (ln_value > ln_max + 1e-6L) return overflow();

  double d = static_cast<double>(std::exp(ln_value));
  if (std::isinf(d)) d = std::numeric_limits<double>::max();
  if (ln_value < -800.0L) d = 0.0;

  if (t > detail::kExactRootLimit) {
    double widened = d;
    for (int i = 0; i < 8; ++i) {
      widened = std::nextafter(widened, dir == Rounding::up ? std::numeric_limits<double>::infinity() : 0.0);
    }
    if (std::isinf(widened)) return overflow();
    return widened;
  }

  const auto tt = t.convert_to<std::uint64_t>();
  const BigRational coeff_pow = pow(coeff, static_cast<std::int64_t>(tt));
  const BigRational p_pow = pow(BigRational(p), s.convert_to<std::int64_t>());
  // sign of d - value, evaluated as d^t * p^s - coeff^t
  auto cmp = [&](double candidate) {
    const BigRational lhs = pow(detail::rational_of_double(candidate), static_cast<std::int64_t>(tt)) * p_pow;
    if (lhs < coeff_pow) return -1;
    if (lhs > coeff_pow) return 1;
    return 0;
  };

  constexpr double inf = std::numeric_limits<double>::infinity();
  if (dir == Rounding::down) {
    while (d > 0.0 && cmp(d) > 0) d = std::nextafter(d, 0.0);
    for (;;) {
      const double next = std::nextafter(d, inf);
      if (std::isinf(next) || cmp(next) > 0) break;
      d = next;
    }
    return d;
  }
  while (cmp(d) < 0) {
    d = std::nextafter(d, inf);
    if (std::isinf(d)) return overflow();
  }
  while (d > 0.0) {
    const double prev = std::nextafter(d, 0.0);
    if (cmp(prev) < 0) break;
    d = prev;
  }
  return d;
}

/// Directed double bound for a nonnegative rational.
inline double directed_rational(const BigRational& q, Rounding dir) { return directed_power(q, BigRational(0), 2, dir); }

}  // namespace padicstab
