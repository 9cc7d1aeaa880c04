#pragma once

#include <array>
#include <cstdint>

#include "padicstab/rational.hpp"

namespace padicstab {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1u) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1u;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the fixed witness set is exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto w : witnesses) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  for (auto a : witnesses) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The prime p of the valuation together with the homogeneity exponent beta, 0 < beta <= 1.
class PrimeContext {
 public:
  PrimeContext(std::uint64_t p, BigRational beta) : p_(p), beta_(std::move(beta)) {
    if (!is_prime(p_)) throw UsageError("p = " + std::to_string(p_) + " is not prime");
    if (beta_ <= 0 || beta_ > 1) throw UsageError("beta must satisfy 0 < beta <= 1, got " + to_string(beta_));
  }

  explicit PrimeContext(std::uint64_t p) : PrimeContext(p, BigRational(1)) {}

  std::uint64_t p() const noexcept { return p_; }
  const BigRational& beta() const noexcept { return beta_; }

 private:
  std::uint64_t p_;
  BigRational beta_;
};

}  // namespace padicstab
