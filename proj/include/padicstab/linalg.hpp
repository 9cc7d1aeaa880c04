#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "padicstab/rational.hpp"

namespace padicstab {

using RationalMatrix = std::vector<std::vector<BigRational>>;

/// Determinant of a square rational matrix.
///
/// Rows are first scaled to integers (by the lcm of their denominators), then
/// Bareiss fraction-free elimination runs on BigInt entries.
inline BigRational determinant(const RationalMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return BigRational(1);
  for (const auto& row : m) {
    if (row.size() != n) throw UsageError("determinant of a non-square matrix");
  }
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  BigInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (const auto& x : m[i]) l = boost::multiprecision::lcm(l, denominator(x));
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = numerator(m[i][j]) * (l / denominator(m[i][j]));
  }

  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return BigRational(0);
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return make_rational(sign * a[n - 1][n - 1], scale);
}

/// Rank over Q by Gaussian elimination on rational entries.
inline std::size_t rank(RationalMatrix m) {
  std::size_t r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      const BigRational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace padicstab
