#pragma once

#include <cstddef>
#include <vector>

#include "padicstab/sequence.hpp"
#include "padicstab/transforms.hpp"

namespace padicstab {

namespace detail {

/// Terms scale^j * G(u / 2^j) for 0 <= j <= horizon.
template <TargetMap G>
std::vector<TargetVector> dyadic_terms(const G& g, const BigRational& u, std::int64_t scale, std::size_t horizon) {
  std::vector<TargetVector> terms;
  terms.reserve(horizon + 1);
  BigRational factor(1);
  BigRational x = u;
  for (std::size_t j = 0; j <= horizon; ++j) {
    terms.push_back(factor * g(x));
    factor *= scale;
    x /= 2;
  }
  return terms;
}

}  // namespace detail

/// Trace of A_j(u) = 2^j K(u / 2^j), j = 0..horizon, with its Cauchy verdict.
template <TargetMap F>
SequenceTrace approximate_additive(const F& f, const BigRational& u, const PrimeContext& ctx, std::size_t horizon,
                                   const CauchyPolicy& policy = {}) {
  return is_cauchy(detail::dyadic_terms(k_transform(f), u, 2, horizon), ctx, policy);
}

/// Trace of C_j(u) = 8^j N(u / 2^j), j = 0..horizon, with its Cauchy verdict.
template <TargetMap F>
SequenceTrace approximate_cubic(const F& f, const BigRational& u, const PrimeContext& ctx, std::size_t horizon,
                                const CauchyPolicy& policy = {}) {
  return is_cauchy(detail::dyadic_terms(n_transform(f), u, 8, horizon), ctx, policy);
}

}  // namespace padicstab
