#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "padicstab/linalg.hpp"
#include "padicstab/vector.hpp"

namespace padicstab {

/// Parameters of the (n, beta)-normed target space T = Q^d, d >= n.
class NBetaContext {
 public:
  NBetaContext(PrimeContext prime, std::size_t n, std::size_t d) : prime_(std::move(prime)), n_(n), d_(d) {
    if (n_ < 1) throw UsageError("n must be a positive integer");
    if (d_ < n_) throw UsageError("dimension d = " + std::to_string(d_) + " is smaller than n = " + std::to_string(n_));
  }

  const PrimeContext& prime() const noexcept { return prime_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }

 private:
  PrimeContext prime_;
  std::size_t n_;
  std::size_t d_;
};

/// ||a_1, ..., a_n||_beta = (max over n x n minors M of the n x d coordinate
/// matrix of |det M|_p)^beta.
///
/// Vanishes exactly on linearly dependent tuples, is symmetric (|det| ignores
/// row order), beta-homogeneous in each slot and ultrametric in each slot by
/// multilinearity of the determinant.
inline LogMagnitude n_beta_norm(std::span<const TargetVector> ws, const NBetaContext& ctx) {
  const std::size_t n = ctx.n();
  const std::size_t d = ctx.d();
  if (ws.size() != n) {
    throw UsageError("n_beta_norm expects " + std::to_string(n) + " vectors, got " + std::to_string(ws.size()));
  }
  for (const auto& w : ws) {
    if (w.dimension() != d) throw UsageError("n_beta_norm: vector dimension differs from d = " + std::to_string(d));
  }

  LogMagnitude best = LogMagnitude::zero();
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  RationalMatrix minor(n, std::vector<BigRational>(n));
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) minor[i][j] = ws[i][cols[j]];
    }
    best = logmag_max(best, padic_abs(determinant(minor), ctx.prime()));

    // next column combination in lexicographic order
    std::size_t k = n;
    while (k > 0 && cols[k - 1] == d - n + (k - 1)) --k;
    if (k == 0) break;
    ++cols[k - 1];
    for (std::size_t j = k; j < n; ++j) cols[j] = cols[j - 1] + 1;
  }
  return logmag_scale_beta(best, ctx.prime());
}

/// ||x, w_1, ..., w_{n-1}||_beta for a value x and fixed slot vectors.
inline LogMagnitude n_beta_norm(const TargetVector& x, std::span<const TargetVector> slots, const NBetaContext& ctx) {
  std::vector<TargetVector> all;
  all.reserve(slots.size() + 1);
  all.push_back(x);
  all.insert(all.end(), slots.begin(), slots.end());
  return n_beta_norm(all, ctx);
}

struct AxiomResult {
  std::string axiom;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;  // first few counterexamples, if any
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;

  bool all_pass() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.failures == 0; });
  }
};

namespace detail {

inline BigRational random_rational(std::mt19937_64& rng, std::uint64_t p, bool allow_zero) {
  std::uniform_int_distribution<int> num_dist(-12, 12);
  std::uniform_int_distribution<int> den_dist(1, 12);
  std::uniform_int_distribution<int> pow_dist(-2, 2);
  int num = num_dist(rng);
  while (!allow_zero && num == 0) num = num_dist(rng);
  return BigRational(num, den_dist(rng)) * pow(BigRational(p), pow_dist(rng));
}

inline TargetVector random_vector(std::mt19937_64& rng, std::size_t d, std::uint64_t p) {
  TargetVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = random_rational(rng, p, true);
  return v;
}

/// n random vectors; roughly a quarter of the tuples are made linearly dependent.
inline std::vector<TargetVector> random_tuple(std::mt19937_64& rng, const NBetaContext& ctx) {
  std::vector<TargetVector> ws;
  for (std::size_t i = 0; i < ctx.n(); ++i) ws.push_back(random_vector(rng, ctx.d(), ctx.prime().p()));
  std::uniform_int_distribution<int> coin(0, 3);
  if (coin(rng) == 0) {
    TargetVector combo(ctx.d());
    for (std::size_t i = 0; i + 1 < ctx.n(); ++i) combo += random_rational(rng, ctx.prime().p(), true) * ws[i];
    ws.back() = combo;
  }
  return ws;
}

inline std::string describe(std::span<const TargetVector> ws) {
  std::string out = "[";
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += ", ";
    out += ws[i].str();
  }
  return out + "]";
}

inline void record(AxiomResult& r, bool ok, const std::string& what) {
  ++r.checked;
  if (ok) return;
  ++r.failures;
  if (r.examples.size() < 5) r.examples.push_back(what);
}

}  // namespace detail

/// Randomized check of the four (n, beta)-norm axioms.
///
/// Linear dependence is decided independently by Gaussian-elimination rank.
/// Permutation invariance is exhaustive for n <= 3 and a random shuffle above.
inline AxiomReport check_norm_axioms(const NBetaContext& ctx, std::uint64_t seed, std::size_t trials) {
  if (trials < 1) throw UsageError("check_norm_axioms: trials must be at least 1");
  std::mt19937_64 rng(seed);
  const auto& prime = ctx.prime();

  AxiomResult dependence{"zero iff linearly dependent", 0, 0, {}};
  AxiomResult symmetry{"permutation invariance", 0, 0, {}};
  AxiomResult homogeneity{"beta-homogeneity", 0, 0, {}};
  AxiomResult ultrametric{"ultrametric slot inequality", 0, 0, {}};

  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto ws = detail::random_tuple(rng, ctx);
    const LogMagnitude base = n_beta_norm(ws, ctx);

    RationalMatrix rows;
    for (const auto& w : ws) rows.push_back(w.coords());
    const bool dependent = rank(rows) < ctx.n();
    detail::record(dependence, base.is_zero() == dependent, detail::describe(ws));

    std::vector<std::size_t> perm(ctx.n());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto check_perm = [&]() {
      std::vector<TargetVector> permuted;
      for (auto i : perm) permuted.push_back(ws[i]);
      detail::record(symmetry, n_beta_norm(permuted, ctx) == base, detail::describe(permuted));
    };
    if (ctx.n() <= 3) {
      while (std::next_permutation(perm.begin(), perm.end())) check_perm();
    } else {
      std::shuffle(perm.begin(), perm.end(), rng);
      check_perm();
    }

    const BigRational gamma = detail::random_rational(rng, prime.p(), false);
    auto scaled = ws;
    scaled.front() *= gamma;
    const LogMagnitude scaled_norm = n_beta_norm(scaled, ctx);
    const LogMagnitude expected =
        base.is_zero() ? LogMagnitude::zero()
                       : LogMagnitude::from_exponent(base.exponent() +
                                                     prime.beta() * BigRational(valuation(gamma, prime).value()));
    detail::record(homogeneity, scaled_norm == expected, "gamma = " + to_string(gamma) + " on " + detail::describe(ws));

    auto other = ws;
    other.front() = detail::random_vector(rng, ctx.d(), prime.p());
    auto summed = ws;
    summed.front() += other.front();
    const LogMagnitude lhs = n_beta_norm(summed, ctx);
    const LogMagnitude rhs = logmag_max(base, n_beta_norm(other, ctx));
    detail::record(ultrametric, lhs <= rhs, "a0 = " + other.front().str() + " on " + detail::describe(ws));
  }
  return AxiomReport{{dependence, symmetry, homogeneity, ultrametric}};
}

}  // namespace padicstab
