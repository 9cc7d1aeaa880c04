#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "padicstab/log_magnitude.hpp"

namespace padicstab {

/// An element of the target space T = Q^d.
class TargetVector {
 public:
  TargetVector() = default;
  explicit TargetVector(std::size_t d) : coords_(d, BigRational(0)) {}
  explicit TargetVector(std::vector<BigRational> coords) : coords_(std::move(coords)) {}
  TargetVector(std::initializer_list<BigRational> coords) : coords_(coords) {}

  static TargetVector scalar(BigRational x) { return TargetVector(std::vector<BigRational>{std::move(x)}); }

  std::size_t dimension() const noexcept { return coords_.size(); }
  const BigRational& operator[](std::size_t i) const { return coords_.at(i); }
  BigRational& operator[](std::size_t i) { return coords_.at(i); }
  const std::vector<BigRational>& coords() const noexcept { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_) {
      if (c != 0) return false;
    }
    return true;
  }

  TargetVector& operator+=(const TargetVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  TargetVector& operator-=(const TargetVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  TargetVector& operator*=(const BigRational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend TargetVector operator+(TargetVector a, const TargetVector& b) { return a += b; }
  friend TargetVector operator-(TargetVector a, const TargetVector& b) { return a -= b; }
  friend TargetVector operator*(const BigRational& s, TargetVector a) { return a *= s; }
  friend TargetVector operator*(TargetVector a, const BigRational& s) { return a *= s; }
  friend bool operator==(const TargetVector&, const TargetVector&) = default;

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += ", ";
      out += to_string(coords_[i]);
    }
    return out + ")";
  }

 private:
  void check_same(const TargetVector& o) const {
    if (o.dimension() != dimension()) throw UsageError("vector dimension mismatch");
  }
  std::vector<BigRational> coords_;
};

/// max_i |x_i|_p, a non-Archimedean norm on Q^d.
inline LogMagnitude sup_norm(const TargetVector& w, const PrimeContext& ctx) {
  LogMagnitude best = LogMagnitude::zero();
  for (const auto& c : w.coords()) best = logmag_max(best, padic_abs(c, ctx));
  return best;
}

}  // namespace padicstab
