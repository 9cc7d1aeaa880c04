#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "padicstab/errors.hpp"

namespace padicstab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational, always stored reduced with a positive denominator.
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const BigRational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const BigRational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const BigRational& q) { return denominator(q) == 1; }

/// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const BigRational& q) { return q.str(); }

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  // cpp_rational rejects a negative denominator instead of normalizing it
  if (den < 0) return BigRational(BigInt(-num), BigInt(-den));
  return BigRational(num, den);
}

/// Largest integer not exceeding q.
inline BigInt floor(const BigRational& q) {
  BigInt n = numerator(q);
  BigInt d = denominator(q);
  BigInt quot = n / d;  // truncates toward zero
  if (n < 0 && quot * d != n) quot -= 1;
  return quot;
}

inline BigInt ipow(const BigInt& base, std::uint64_t k) {
  BigInt result = 1;
  BigInt b = base;
  while (k > 0) {
    if (k & 1u) result *= b;
    k >>= 1u;
    if (k > 0) b *= b;
  }
  return result;
}

inline BigRational pow(const BigRational& q, std::int64_t k) {
  if (k >= 0) {
    return make_rational(ipow(numerator(q), static_cast<std::uint64_t>(k)),
                         ipow(denominator(q), static_cast<std::uint64_t>(k)));
  }
  if (q == 0) throw UsageError("zero raised to a negative power");
  auto mk = static_cast<std::uint64_t>(-(k + 1)) + 1u;
  return make_rational(ipow(denominator(q), mk), ipow(numerator(q), mk));
}

/// Converts an integral rational to int64, throwing when it does not fit.
inline std::int64_t to_int64(const BigRational& q) {
  if (!is_integer(q)) throw UsageError("expected an integer, got " + to_string(q));
  const BigInt n = numerator(q);
  if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN)) throw UsageError("integer out of range: " + to_string(q));
  return n.convert_to<std::int64_t>();
}

/// Parses `[-]digits[/digits]`. Surrounding whitespace is not accepted.
inline BigRational parse_rational(std::string_view text) {
  auto fail = [&]() -> BigRational { throw UsageError("malformed rational '" + std::string(text) + "'"); };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto digits = [&](BigInt& out) {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) return false;
    out = BigInt(std::string(text.substr(start, pos - start)));
    return true;
  };
  BigInt num;
  BigInt den = 1;
  if (!digits(num)) return fail();
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (!digits(den) || den == 0) return fail();
  }
  if (pos != text.size()) return fail();
  return make_rational(negative ? BigInt(-num) : num, den);
}

}  // namespace padicstab
