#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "padicstab/expr.hpp"
#include "padicstab/vector.hpp"

namespace padicstab {

/// A map S = Q -> T = Q^d that can be evaluated exactly.
template <class F>
concept TargetMap = requires(const F& f, const BigRational& u) {
  { f(u) } -> std::convertible_to<TargetVector>;
  { f.dimension() } -> std::convertible_to<std::size_t>;
};

/// Univariate polynomial with rational coefficients c_0 .. c_K.
using Polynomial = std::vector<BigRational>;

namespace detail {

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b, const BigRational& sign) {
  Polynomial r(std::max(a.size(), b.size()), BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  return r;
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial r(a.size() + b.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline Polynomial expand(const Expr& e) {
  switch (e.op) {
    case Expr::Op::number: return {e.value};
    case Expr::Op::var_u: return {BigRational(0), BigRational(1)};
    case Expr::Op::add: return poly_add(expand(*e.args[0]), expand(*e.args[1]), BigRational(1));
    case Expr::Op::sub: return poly_add(expand(*e.args[0]), expand(*e.args[1]), BigRational(-1));
    case Expr::Op::mul: return poly_mul(expand(*e.args[0]), expand(*e.args[1]));
    case Expr::Op::pow: {
      const Polynomial base = expand(*e.args[0]);
      Polynomial r{BigRational(1)};
      for (std::int64_t k = to_int64(e.value); k > 0; --k) r = poly_mul(r, base);
      return r;
    }
    default:
      throw ParseError("operator not available in a map expression", e.span.line, e.span.column);
  }
}

inline void trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace detail

/// F: S -> T with one polynomial per coordinate; F(0) = 0 is enforced.
class PolyMap {
 public:
  explicit PolyMap(std::vector<Polynomial> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw UsageError("PolyMap needs at least one coordinate");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      detail::trim(coords_[i]);
      if (!coords_[i].empty() && coords_[i][0] != 0) {
        throw DomainError("F(0)=0 violated: coordinate " + std::to_string(i) + " has constant term " +
                          to_string(coords_[i][0]));
      }
    }
  }

  /// A one-dimensional map.
  static PolyMap scalar(Polynomial p) { return PolyMap(std::vector<Polynomial>{std::move(p)}); }

  /// The scalar map c_1 u + c_3 u^3.
  static PolyMap additive_cubic(const BigRational& c1, const BigRational& c3) {
    return scalar({BigRational(0), c1, BigRational(0), c3});
  }

  std::size_t dimension() const noexcept { return coords_.size(); }
  const std::vector<Polynomial>& coordinates() const noexcept { return coords_; }

  BigRational coefficient(std::size_t coord, std::size_t k) const {
    const auto& c = coords_.at(coord);
    return k < c.size() ? c[k] : BigRational(0);
  }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& c : coords_) d = std::max(d, c.empty() ? std::size_t{0} : c.size() - 1);
    return d;
  }

  TargetVector operator()(const BigRational& u) const {
    TargetVector out(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      BigRational acc(0);
      for (auto it = coords_[i].rbegin(); it != coords_[i].rend(); ++it) acc = acc * u + *it;
      out[i] = acc;
    }
    return out;
  }

  friend PolyMap operator+(const PolyMap& a, const PolyMap& b) {
    if (a.dimension() != b.dimension()) throw UsageError("PolyMap dimension mismatch");
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      out.push_back(detail::poly_add(a.coords_[i], b.coords_[i], BigRational(1)));
    }
    return PolyMap(std::move(out));
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += "; ";
      std::string poly;
      for (std::size_t k = 1; k < coords_[i].size(); ++k) {
        if (coords_[i][k] == 0) continue;
        if (!poly.empty()) poly += " + ";
        poly += "(" + to_string(coords_[i][k]) + ")*u^" + std::to_string(k);
      }
      out += poly.empty() ? "0" : poly;
    }
    return out;
  }

 private:
  std::vector<Polynomial> coords_;
};

/// Builds a PolyMap from one map-kind DSL text per coordinate.
inline PolyMap parse_map(const std::vector<std::string>& texts, const std::map<std::string, BigRational>& params = {}) {
  std::vector<Polynomial> coords;
  for (const auto& text : texts) coords.push_back(detail::expand(*parse_expression(text, ExprKind::map, params)));
  return PolyMap(std::move(coords));
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// base(u) + e(u), with e a deterministic seeded perturbation.
///
/// Each coordinate of e(u), u != 0, is p^M * (a/b) with a, b nonzero integers
/// coprime to p, so |e_i(u)|_p = p^-M exactly. e(0) = 0.
class PerturbedMap {
 public:
  PerturbedMap(PolyMap base, std::uint64_t seed, std::int64_t cap_exponent, std::uint64_t p)
      : base_(std::move(base)), seed_(seed), cap_exponent_(cap_exponent), prime_(p) {
    if (cap_exponent_ < 0) throw UsageError("perturbation cap exponent must be >= 0");
  }

  std::size_t dimension() const noexcept { return base_.dimension(); }
  const PolyMap& base() const noexcept { return base_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::int64_t cap_exponent() const noexcept { return cap_exponent_; }

  TargetVector perturbation(const BigRational& u) const {
    TargetVector e(base_.dimension());
    if (u == 0) return e;
    const std::uint64_t p = prime_.p();
    const std::uint64_t key = detail::fnv1a(to_string(u), detail::splitmix64(seed_));
    for (std::size_t i = 0; i < e.dimension(); ++i) {
      const std::uint64_t h = detail::splitmix64(key + i);
      std::int64_t a = static_cast<std::int64_t>(h % 97) + 1;
      std::int64_t b = static_cast<std::int64_t>((h >> 16) % 89) + 1;
      if (a % static_cast<std::int64_t>(p) == 0) ++a;
      if (b % static_cast<std::int64_t>(p) == 0) ++b;
      if ((h >> 63) != 0) a = -a;
      e[i] = pow(BigRational(p), cap_exponent_) * BigRational(a, b);
    }
    const LogMagnitude size = sup_norm(e, prime_);
    if (!size.is_zero() && size.exponent() < cap_exponent_) {
      throw ConsistencyError("perturbation at u = " + to_string(u) + " exceeds its cap");
    }
    return e;
  }

  TargetVector operator()(const BigRational& u) const { return base_(u) + perturbation(u); }

 private:
  PolyMap base_;
  std::uint64_t seed_;
  std::int64_t cap_exponent_;
  PrimeContext prime_;
};

inline PerturbedMap perturb(const PolyMap& base, std::uint64_t seed, std::int64_t cap_exponent, const PrimeContext& ctx) {
  return PerturbedMap(base, seed, cap_exponent, ctx.p());
}

template <TargetMap F>
TargetVector eval_map(const F& f, const BigRational& u) {
  return f(u);
}

}  // namespace padicstab
