#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "padicstab/prime.hpp"
#include "padicstab/rational.hpp"

namespace padicstab {

/// p-adic valuation of a rational: an integer, or +infinity for zero.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  static Valuation finite(std::int64_t v) { return Valuation(v); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  std::int64_t value() const {
    if (!value_) throw UsageError("valuation of zero is +infinity");
    return *value_;
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;

  std::string str() const { return value_ ? std::to_string(*value_) : std::string("+inf"); }

 private:
  Valuation() = default;
  explicit Valuation(std::int64_t v) : value_(v) {}
  std::optional<std::int64_t> value_;
};

/// Multiplicity of p in the nonzero integer n.
inline std::int64_t multiplicity(const BigInt& n, std::uint64_t p) {
  if (n == 0) throw UsageError("multiplicity of p in zero");
  BigInt rest = abs(n);
  const BigInt prime(p);
  std::int64_t k = 0;
  BigInt q;
  BigInt r;
  for (;;) {
    divide_qr(rest, prime, q, r);
    if (r != 0) break;
    rest.swap(q);
    ++k;
  }
  return k;
}

/// gamma with q = p^gamma * (e/f), p dividing neither e nor f.
inline Valuation valuation(const BigRational& q, const PrimeContext& ctx) {
  if (q == 0) return Valuation::infinite();
  // Reduced form: p divides at most one of numerator and denominator.
  return Valuation::finite(multiplicity(numerator(q), ctx.p()) - multiplicity(denominator(q), ctx.p()));
}

}  // namespace padicstab
