#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>

#include "padicstab/directed.hpp"
#include "padicstab/log_magnitude.hpp"

namespace padicstab {

enum class Ordering { less, equal, greater, unknown };

/// Nonnegative real magnitude used for control-function values and bound
/// right-hand sides.
///
/// Two regimes:
///  - exact: coeff * p^(-frac) with rational coeff >= 0 and frac in [0, 1).
///    frac == 0 is a plain rational. Products and p-power scalings stay exact,
///    as do sums of terms sharing the same fractional exponent.
///  - bounds: a certified enclosure [lo, hi] of doubles, produced once exact
///    form is lost. Every operation on bounds rounds outward.
class Magnitude {
 public:
  static Magnitude exact(const BigRational& r) {
    if (r < 0) throw DomainError("negative magnitude " + to_string(r));
    return Magnitude(Exact{r, BigRational(0), 0});
  }

  /// coeff * p^(-exponent).
  static Magnitude power(const BigRational& coeff, const BigRational& exponent, std::uint64_t p) {
    if (coeff < 0) throw DomainError("negative magnitude coefficient " + to_string(coeff));
    if (coeff == 0) return exact(BigRational(0));
    const BigInt whole = floor(exponent);
    const BigRational frac = exponent - BigRational(whole);
    BigRational c = coeff * padicstab::pow(BigRational(p), -whole.convert_to<std::int64_t>());
    return Magnitude(Exact{std::move(c), frac, frac == 0 ? 0 : p});
  }

  static Magnitude from_log(const LogMagnitude& m, std::uint64_t p) {
    if (m.is_zero()) return exact(BigRational(0));
    return power(BigRational(1), m.exponent(), p);
  }

  static Magnitude bounds(double lo, double hi) {
    if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("invalid magnitude enclosure");
    return Magnitude(Bounds{lo, hi});
  }

  bool is_exact() const noexcept { return std::holds_alternative<Exact>(value_); }
  bool is_rational() const noexcept { return is_exact() && std::get<Exact>(value_).frac == 0; }
  bool is_zero() const noexcept { return is_exact() && std::get<Exact>(value_).coeff == 0; }

  /// The rational value; only valid when is_rational().
  const BigRational& rational() const {
    if (!is_rational()) throw UsageError("magnitude is not a plain rational");
    return std::get<Exact>(value_).coeff;
  }

  /// Exact parts; only valid when is_exact().
  const BigRational& coefficient() const { return std::get<Exact>(value_).coeff; }
  const BigRational& fractional_exponent() const { return std::get<Exact>(value_).frac; }
  std::uint64_t prime() const { return std::get<Exact>(value_).p; }

  double lower() const { return directed(Rounding::down); }
  double upper() const { return directed(Rounding::up); }

  const char* regime() const noexcept { return is_exact() ? "exact" : "directed-rounding"; }

  friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero() || b.is_zero()) return exact(BigRational(0));
    if (a.is_exact() && b.is_exact()) {
      const auto& x = std::get<Exact>(a.value_);
      const auto& y = std::get<Exact>(b.value_);
      if (x.frac == 0) return scaled(y, x.coeff);
      if (y.frac == 0) return scaled(x, y.coeff);
      if (x.p == y.p) return power(x.coeff * y.coeff, x.frac + y.frac, x.p);
    }
    return bounds(mul_down(a.lower(), b.lower()), mul_up(a.upper(), b.upper()));
  }

  friend Magnitude operator+(const Magnitude& a, const Magnitude& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_exact() && b.is_exact()) {
      const auto& x = std::get<Exact>(a.value_);
      const auto& y = std::get<Exact>(b.value_);
      if (x.frac == y.frac && x.p == y.p) return Magnitude(Exact{x.coeff + y.coeff, x.frac, x.p});
    }
    return bounds(add_down(a.lower(), b.lower()), add_up(a.upper(), b.upper()));
  }

  /// Magnitude raised to a rational power r >= 0.
  Magnitude pow(const BigRational& r) const {
    if (r < 0) throw DomainError("negative exponent on a magnitude");
    if (r == 0) return exact(BigRational(1));
    if (is_zero()) return *this;
    if (is_exact()) {
      const auto& x = std::get<Exact>(value_);
      if (x.coeff == 1 && x.frac == 0) return *this;
      if (is_integer(r)) {
        const auto k = to_int64(r);
        return power(padicstab::pow(x.coeff, k), x.frac * r, x.p == 0 ? 2 : x.p);
      }
      // coeff must itself be a power of p for the result to stay in exact form
      const std::uint64_t p = x.p != 0 ? x.p : single_prime_base(x.coeff);
      if (p != 0) {
        const PrimeContext ctx(p);
        const auto v = valuation(x.coeff, ctx).value();
        if (x.coeff == padicstab::pow(BigRational(p), v)) {
          return power(BigRational(1), (x.frac - BigRational(v)) * r, p);
        }
      }
    }
    const double e = r.convert_to<double>();
    return bounds(pow_down(lower(), e), pow_up(upper(), e));
  }

  /// Three-way comparison; `unknown` when enclosures overlap.
  friend Ordering compare(const Magnitude& a, const Magnitude& b) {
    if (a.is_exact() && b.is_exact()) {
      const auto& x = std::get<Exact>(a.value_);
      const auto& y = std::get<Exact>(b.value_);
      if (x.coeff == 0 || y.coeff == 0) {
        if (x.coeff == y.coeff) return Ordering::equal;
        return x.coeff == 0 ? Ordering::less : Ordering::greater;
      }
      if (x.frac == 0 && y.frac == 0) return from_cmp(x.coeff, y.coeff);
      const std::uint64_t p = x.p != 0 ? x.p : y.p;
      if ((x.p == 0 || x.p == p) && (y.p == 0 || y.p == p)) {
        // x.coeff p^-fx  vs  y.coeff p^-fy   <=>   (x.coeff/y.coeff)^t  vs  p^s,  s/t = fx - fy
        const BigRational g = x.frac - y.frac;
        const BigInt t = denominator(g);
        if (t <= detail::kExactRootLimit) {
          const auto tt = t.convert_to<std::int64_t>();
          const BigRational lhs = padicstab::pow(x.coeff / y.coeff, tt);
          const BigRational rhs = padicstab::pow(BigRational(p), numerator(g).convert_to<std::int64_t>());
          return from_cmp(lhs, rhs);
        }
      }
    }
    if (a.upper() < b.lower()) return Ordering::less;
    if (a.lower() > b.upper()) return Ordering::greater;
    return Ordering::unknown;
  }

  friend Magnitude max(const Magnitude& a, const Magnitude& b) {
    switch (compare(a, b)) {
      case Ordering::less: return b;
      case Ordering::equal:
      case Ordering::greater: return a;
      case Ordering::unknown: break;
    }
    return bounds(std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
  }

  friend Magnitude min(const Magnitude& a, const Magnitude& b) {
    switch (compare(a, b)) {
      case Ordering::less: return a;
      case Ordering::equal:
      case Ordering::greater: return b;
      case Ordering::unknown: break;
    }
    return bounds(std::min(a.lower(), b.lower()), std::min(a.upper(), b.upper()));
  }

  std::string str() const {
    if (!is_exact()) {
      const auto& b = std::get<Bounds>(value_);
      return "[" + std::to_string(b.lo) + ", " + std::to_string(b.hi) + "]";
    }
    const auto& x = std::get<Exact>(value_);
    if (x.frac == 0) return to_string(x.coeff);
    return to_string(x.coeff) + "*" + std::to_string(x.p) + "^-(" + to_string(x.frac) + ")";
  }

 private:
  struct Exact {
    BigRational coeff;
    BigRational frac;
    std::uint64_t p;  // 0 when frac == 0
  };
  struct Bounds {
    double lo;
    double hi;
  };

  explicit Magnitude(Exact e) : value_(std::move(e)) {}
  explicit Magnitude(Bounds b) : value_(b) {}

  static Magnitude scaled(const Exact& x, const BigRational& c) {
    return Magnitude(Exact{x.coeff * c, x.frac, x.coeff * c == 0 ? 0 : x.p});
  }

  static Ordering from_cmp(const BigRational& a, const BigRational& b) {
    if (a < b) return Ordering::less;
    if (a > b) return Ordering::greater;
    return Ordering::equal;
  }

  /// p when q = p^k for a prime p and integer k != 0, else 0.
  static std::uint64_t single_prime_base(const BigRational& q) {
    const BigInt n = numerator(q) == 1 ? denominator(q) : numerator(q);
    if ((numerator(q) != 1 && denominator(q) != 1) || n < 2 || n > BigInt(UINT64_MAX)) return 0;
    auto m = n.convert_to<std::uint64_t>();
    for (std::uint64_t f = 2; f * f <= m && f < 1000000; ++f) {
      if (m % f == 0) {
        while (m % f == 0) m /= f;
        return m == 1 ? f : 0;
      }
    }
    return is_prime(m) ? m : 0;
  }

  double directed(Rounding dir) const {
    if (const auto* b = std::get_if<Bounds>(&value_)) return dir == Rounding::up ? b->hi : b->lo;
    const auto& x = std::get<Exact>(value_);
    try {
      return directed_power(x.coeff, x.frac, x.p == 0 ? 2 : x.p, dir);
    } catch (const RangeError&) {
      return dir == Rounding::up ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::max();
    }
  }

  static constexpr double kInf = std::numeric_limits<double>::infinity();
  static double down(double x) { return x <= 0.0 ? 0.0 : std::nextafter(x, 0.0); }
  static double up(double x) { return std::isinf(x) ? x : std::nextafter(x, kInf); }
  static double add_down(double a, double b) { return down(a + b); }
  static double add_up(double a, double b) { return up(a + b); }
  static double mul_down(double a, double b) { return down(a * b); }
  static double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return up(a * b);
  }
  static double pow_down(double a, double e) { return down(down(std::pow(a, e))); }
  static double pow_up(double a, double e) { return up(up(std::pow(a, e))); }

  std::variant<Exact, Bounds> value_;
};

}  // namespace padicstab
