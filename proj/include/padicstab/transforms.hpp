#pragma once

#include <cstddef>

#include "padicstab/poly_map.hpp"

namespace padicstab {

/// D_AC(u,v) = 2F((2u+v)/2) + 2F((2u-v)/2) - (1/4)[F(u+v) + F(u-v)] - 3F(u).
template <TargetMap F>
TargetVector d_ac(const F& f, const BigRational& u, const BigRational& v) {
  const BigRational half(1, 2);
  const BigRational quarter(1, 4);
  TargetVector r = BigRational(2) * f((2 * u + v) * half);
  r += BigRational(2) * f((2 * u - v) * half);
  r -= quarter * (f(u + v) + f(u - v));
  r -= BigRational(3) * f(u);
  return r;
}

/// F(4u) - 10F(2u) + 16F(u); vanishes identically on maps c1 u + c3 u^3.
template <TargetMap F>
TargetVector q_relation(const F& f, const BigRational& u) {
  TargetVector r = f(4 * u);
  r -= BigRational(10) * f(2 * u);
  r += BigRational(16) * f(u);
  return r;
}

/// u -> F(2u) - m F(u). m = 8 isolates the additive part, m = 2 the cubic part.
template <TargetMap F>
class DoublingTransform {
 public:
  DoublingTransform(F f, std::int64_t multiplier) : f_(std::move(f)), multiplier_(multiplier) {}

  std::size_t dimension() const { return f_.dimension(); }

  TargetVector operator()(const BigRational& u) const {
    TargetVector r = f_(2 * u);
    r -= BigRational(multiplier_) * f_(u);
    return r;
  }

  const F& source() const noexcept { return f_; }

 private:
  F f_;
  std::int64_t multiplier_;
};

/// K(u) = F(2u) - 8F(u). K(2u) - 2K(u) equals q_relation(F, u).
template <TargetMap F>
DoublingTransform<F> k_transform(F f) {
  return DoublingTransform<F>(std::move(f), 8);
}

/// N(u) = F(2u) - 2F(u). N(2u) - 8N(u) equals q_relation(F, u), and N - K = 6F.
template <TargetMap F>
DoublingTransform<F> n_transform(F f) {
  return DoublingTransform<F>(std::move(f), 2);
}

}  // namespace padicstab
