#include <gtest/gtest.h>

#include <random>
#include <utility>
#include <vector>

#include "padicstab/padicstab.hpp"

using namespace padicstab;

namespace {

const std::vector<TargetVector> no_slots;

PolyMap monomial(std::size_t k, const BigRational& c = BigRational(1)) {
  Polynomial coeffs(k + 1, BigRational(0));
  coeffs[k] = c;
  return PolyMap::scalar(coeffs);
}

PolyMap random_map(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Polynomial> coords;
  for (std::size_t i = 0; i < dim; ++i) {
    Polynomial c(2 + rng() % 6, BigRational(0));
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = BigRational(num(rng), den(rng));
    coords.push_back(std::move(c));
  }
  return PolyMap(std::move(coords));
}

BigRational random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 24);
  return BigRational(num(rng), den(rng));
}

BigRational as_rational(const LogMagnitude& m, std::uint64_t p) { return Magnitude::from_log(m, p).rational(); }

}  // namespace

TEST(TransformTest, ResidualExamples) {
  EXPECT_EQ(d_ac(monomial(1), BigRational(2), BigRational(2)), TargetVector::scalar(BigRational(1)));
  EXPECT_EQ(d_ac(monomial(3), BigRational(1), BigRational(1)), TargetVector::scalar(BigRational(2)));
  EXPECT_EQ(d_ac(monomial(2), BigRational(3), BigRational(3)), TargetVector::scalar(BigRational(9)));
  const PolyMap zero = parse_map({"0", "0"});
  EXPECT_TRUE(d_ac(zero, BigRational(7, 3), BigRational(-1, 2)).is_zero());
}

TEST(TransformTest, ResidualMatchesDirectFormula) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const PolyMap f = random_map(rng, 2);
    const BigRational u = random_point(rng);
    const BigRational v = random_point(rng);
    const TargetVector expected = BigRational(2) * f(u + v / 2) + BigRational(2) * f(u - v / 2) -
                                  BigRational(1, 4) * f(u + v) - BigRational(1, 4) * f(u - v) -
                                  BigRational(3) * f(u);
    ASSERT_EQ(d_ac(f, u, v), expected);
  }
}

TEST(TransformTest, DoublingExamples) {
  const PolyMap square = monomial(2);
  EXPECT_EQ(q_relation(square, BigRational(1)), TargetVector::scalar(BigRational(-8)));
  EXPECT_EQ(k_transform(square)(BigRational(3)), TargetVector::scalar(BigRational(-36)));
  EXPECT_EQ(n_transform(square)(BigRational(3)), TargetVector::scalar(BigRational(18)));
  const PolyMap mixed = parse_map({"3*u + 5*u^3"});
  EXPECT_EQ(k_transform(mixed)(BigRational(1)), TargetVector::scalar(BigRational(-18)));
  EXPECT_EQ(n_transform(mixed)(BigRational(1)), TargetVector::scalar(BigRational(30)));
}

TEST(TransformTest, DoublingIdentitiesOnRandomMaps) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const PolyMap f = random_map(rng, 1 + rng() % 3);
    const BigRational u = random_point(rng);
    const auto k = k_transform(f);
    const auto n = n_transform(f);
    const TargetVector q = q_relation(f, u);
    ASSERT_EQ(k(2 * u) - BigRational(2) * k(u), q);
    ASSERT_EQ(n(2 * u) - BigRational(8) * n(u), q);
    ASSERT_EQ(n(u) - k(u), BigRational(6) * f(u));
  }
}

TEST(TransformTest, RelationVanishesExactlyOnDegreesOneAndThree) {
  std::mt19937_64 rng(13);
  for (std::size_t k = 1; k <= 6; ++k) {
    const PolyMap f = monomial(k, BigRational(7, 3));
    bool all_zero = true;
    for (int i = 0; i < 20; ++i) all_zero = all_zero && q_relation(f, random_point(rng)).is_zero();
    // coefficient of u^k in the relation is (4^k - 10 * 2^k + 16) c_k
    const bool oracle = (std::int64_t{1} << (2 * k)) - 10 * (std::int64_t{1} << k) + 16 == 0;
    EXPECT_EQ(all_zero, oracle) << "degree " << k;
    EXPECT_EQ(oracle, k == 1 || k == 3);
  }
  for (int i = 0; i < 200; ++i) {
    const PolyMap f = PolyMap::scalar({BigRational(0), random_point(rng), BigRational(0), random_point(rng)});
    ASSERT_TRUE(q_relation(f, random_point(rng)).is_zero());
  }
}

TEST(HypothesisTest, SigmaBarExamples) {
  const PrimeContext two(2);
  EXPECT_EQ(sigma_bar(SigmaFunction::parse("norm(u)"), BigRational(1), two).rational(), 8);
  EXPECT_EQ(sigma_bar(SigmaFunction::constant(BigRational(1, 4)), BigRational(5), two).rational(), 2);
  // p-adic multipliers: |8|_2 = 1/8, |2|_2 = 1/2
  EXPECT_EQ(sigma_bar(SigmaFunction::parse("norm(u)"), BigRational(1), two, {true}).rational(), BigRational(1, 4));
}

TEST(HypothesisTest, ConstantSigmaHatIsEightEpsilon) {
  const PrimeContext two(2);
  for (const BigRational& eps : {BigRational(1, 4), BigRational(3), BigRational(1, 1000)}) {
    const SigmaHat hat = sigma_hat(SigmaFunction::constant(eps), BigRational(3), Scaling::additive, two, 30);
    EXPECT_EQ(hat.value.rational(), 8 * eps);
    EXPECT_EQ(hat.verdict.status, HypothesisStatus::satisfied);
    ASSERT_EQ(hat.verdict.terms.size(), 30u);
    for (std::size_t l = 0; l < 30; ++l) {
      EXPECT_EQ(hat.verdict.terms[l].rational(), 8 * eps / pow(BigRational(2), static_cast<std::int64_t>(l)));
    }
  }
}

TEST(HypothesisTest, ZeroSigmaIsSatisfied) {
  const PrimeContext three(3);
  const SigmaHat hat = sigma_hat(SigmaFunction::constant(BigRational(0)), BigRational(1), Scaling::cubic, three, 10);
  EXPECT_TRUE(hat.value.is_zero());
  EXPECT_EQ(hat.verdict.status, HypothesisStatus::satisfied);
}

TEST(HypothesisTest, PowerFamilyAtOddPrimeIsViolated) {
  const PrimeContext five(5);
  const SigmaFunction s = SigmaFunction::power_family(BigRational(1), BigRational(1), BigRational(1));
  for (const Scaling kind : {Scaling::additive, Scaling::cubic}) {
    const HypothesisVerdict v = check_sigma_decay(s, BigRational(1), BigRational(3), kind, five, 30);
    EXPECT_EQ(v.status, HypothesisStatus::violated);
    EXPECT_FALSE(v.witness_tail.empty());
    for (const auto& t : v.terms) EXPECT_EQ(t.rational(), 3);
    EXPECT_EQ(sigma_hat(s, BigRational(1), kind, five, 30).verdict.status, HypothesisStatus::violated);
  }
}

TEST(HypothesisTest, TooShortHorizonIsAUsageError) {
  const PrimeContext two(2);
  EXPECT_THROW(sigma_hat(SigmaFunction::constant(BigRational(1)), BigRational(1), Scaling::additive, two, 3),
               UsageError);
}

TEST(IterationTest, ExactLimitsForMixedMap) {
  const PrimeContext two(2);
  const PolyMap f = parse_map({"3*u + 5*u^3"});
  const SequenceTrace a = approximate_additive(f, BigRational(1), two, 30);
  const SequenceTrace c = approximate_cubic(f, BigRational(1), two, 30);
  ASSERT_EQ(a.verdict, TraceVerdict::converged);
  ASSERT_EQ(c.verdict, TraceVerdict::converged);
  EXPECT_TRUE(a.limit_exact);
  EXPECT_TRUE(c.limit_exact);
  EXPECT_EQ(*a.limit, TargetVector::scalar(BigRational(-18)));
  EXPECT_EQ(*c.limit, TargetVector::scalar(BigRational(30)));
}

TEST(IterationTest, SquareAtOddPrimeDiverges) {
  const PrimeContext five(5);
  const SequenceTrace a = approximate_additive(monomial(2), BigRational(1), five, 30);
  EXPECT_EQ(a.verdict, TraceVerdict::diverged);
  EXPECT_FALSE(a.limit.has_value());
}

TEST(IterationTest, SquareAtTwoIsNotCertified) {
  const PrimeContext two(2);
  // A_j(u) = -4u^2 / 2^j and |2^-j|_2 grows
  const SequenceTrace a = approximate_additive(monomial(2), BigRational(1), two, 30);
  EXPECT_NE(a.verdict, TraceVerdict::converged);
}

TEST(IterationTest, TermsMatchDefinitionAndScalingConsistency) {
  std::mt19937_64 rng(14);
  const PrimeContext three(3);
  for (int i = 0; i < 40; ++i) {
    const PolyMap f = random_map(rng, 2);
    BigRational u = random_point(rng);
    if (u == 0) u = 1;
    const auto k = k_transform(f);
    const auto n = n_transform(f);
    const SequenceTrace a = approximate_additive(f, u, three, 12);
    const SequenceTrace c = approximate_cubic(f, u, three, 12);
    ASSERT_EQ(a.terms.size(), 13u);
    for (std::size_t j = 0; j + 1 < a.terms.size(); ++j) {
      const BigRational two_j = pow(BigRational(2), static_cast<std::int64_t>(j));
      const BigRational eight_j = pow(BigRational(8), static_cast<std::int64_t>(j));
      ASSERT_EQ(a.terms[j], two_j * k(u / two_j));
      ASSERT_EQ(c.terms[j], eight_j * n(u / two_j));
      ASSERT_EQ(a.terms[j + 1] - a.terms[j], two_j * (BigRational(2) * k(u / (2 * two_j)) - k(u / two_j)));
      ASSERT_EQ(a.diff_norms[j], sup_norm(a.terms[j + 1] - a.terms[j], three));
    }
  }
}

TEST(BoundTest, ResidualHypothesisExamples) {
  const NBetaContext ctx(PrimeContext(2), 1, 1);
  const PolyMap f = monomial(1);
  const std::vector<std::pair<BigRational, BigRational>> pairs{{BigRational(2), BigRational(2)}};
  // D_AC(u)(2, 2) = 1, so the bound is tight at sigma = 1
  const auto tight = verify_residual_hypothesis(f, SigmaFunction::constant(BigRational(1)), PsiFunction(), pairs,
                                                no_slots, ctx);
  ASSERT_EQ(tight.size(), 1u);
  EXPECT_EQ(tight[0].verdict, BoundVerdict::holds);
  EXPECT_EQ(tight[0].left, LogMagnitude::one());
  const auto loose = verify_residual_hypothesis(f, SigmaFunction::constant(BigRational(1, 2)), PsiFunction(), pairs,
                                                no_slots, ctx);
  EXPECT_EQ(loose[0].verdict, BoundVerdict::fails);

  const std::vector<TargetVector> one_slot{TargetVector::scalar(BigRational(1))};
  EXPECT_THROW(verify_residual_hypothesis(f, SigmaFunction::constant(BigRational(1)), PsiFunction(), pairs, one_slot,
                                          ctx),
               UsageError);
}

TEST(BoundTest, ResidualLeftSideMatchesNormOfResidual) {
  std::mt19937_64 rng(15);
  const NBetaContext ctx(PrimeContext(3), 1, 1);
  for (int i = 0; i < 100; ++i) {
    const PolyMap f = random_map(rng, 1);
    const std::vector<std::pair<BigRational, BigRational>> pairs{{random_point(rng), random_point(rng)}};
    const auto checks = verify_residual_hypothesis(f, SigmaFunction::constant(BigRational(1)), PsiFunction(), pairs,
                                                   no_slots, ctx);
    ASSERT_EQ(checks[0].left, sup_norm(d_ac(f, pairs[0].first, pairs[0].second), ctx.prime()));
  }
}

TEST(BoundTest, AdditiveBoundOnExactTrace) {
  const NBetaContext ctx(PrimeContext(2), 1, 1);
  const PolyMap f = parse_map({"3*u + 5*u^3"});
  const SequenceTrace a = approximate_additive(f, BigRational(1), ctx.prime(), 30);
  const SigmaHat hat = sigma_hat(SigmaFunction::constant(BigRational(1, 4)), BigRational(1), Scaling::additive,
                                 ctx.prime(), 30);
  const BoundCheck b = verify_bound_additive(f, a, BigRational(1), no_slots, hat.value, PsiFunction(), ctx);
  EXPECT_EQ(b.verdict, BoundVerdict::holds);
  EXPECT_TRUE(b.left.is_zero());
  // |2|^-1 * 8 * 1/4 = 4
  EXPECT_EQ(b.right.rational(), 4);
}

TEST(BoundTest, DivergedTraceIsAUsageError) {
  const NBetaContext ctx(PrimeContext(5), 1, 1);
  const PolyMap f = monomial(2);
  const SequenceTrace a = approximate_additive(f, BigRational(1), ctx.prime(), 30);
  ASSERT_EQ(a.verdict, TraceVerdict::diverged);
  EXPECT_THROW(verify_bound_additive(f, a, BigRational(1), no_slots, Magnitude::exact(BigRational(1)), PsiFunction(),
                                     ctx),
               UsageError);
  const SequenceTrace c = approximate_cubic(f, BigRational(1), ctx.prime(), 30);
  EXPECT_THROW(verify_bound_cubic(f, c, BigRational(1), no_slots, Magnitude::exact(BigRational(1)), PsiFunction(),
                                  ctx),
               UsageError);
}

TEST(BoundTest, VerdictsAreConservative) {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> expo(-12, 12);
  std::uniform_int_distribution<int> num(0, 400);
  std::uniform_int_distribution<int> den(1, 400);
  int holds = 0;
  int fails = 0;
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const PrimeContext ctx(p);
    for (int i = 0; i < 2000; ++i) {
      const LogMagnitude left = rng() % 10 == 0 ? LogMagnitude::zero() : LogMagnitude::from_exponent(expo(rng));
      const BigRational right_value(num(rng), den(rng));
      const BoundCheck b = compare_bound("x", left, Magnitude::exact(right_value), ctx, 0);
      const BigRational left_value = left.is_zero() ? BigRational(0) : as_rational(left, p);
      if (b.verdict == BoundVerdict::holds) {
        ++holds;
        ASSERT_LE(b.left_upper, b.right_lower);
        ASSERT_LE(left_value, right_value);
      } else if (b.verdict == BoundVerdict::fails) {
        ++fails;
        ASSERT_GT(left_value, right_value);
      }
    }
  }
  EXPECT_GT(holds, 0);
  EXPECT_GT(fails, 0);
}

TEST(DecomposeTest, RecoversParts) {
  std::mt19937_64 rng(17);
  const NBetaContext ctx(PrimeContext(2), 1, 1);
  for (int i = 0; i < 20; ++i) {
    const BigRational c1 = random_point(rng);
    const BigRational c3 = random_point(rng);
    const PolyMap f = PolyMap::scalar({BigRational(0), c1, BigRational(0), c3});
    for (const BigRational& u : {BigRational(1), BigRational(2), BigRational(1, 2), BigRational(5, 3)}) {
      const DecompositionResult r =
          decompose(f, u, SigmaFunction::constant(BigRational(1)), PsiFunction(), no_slots, ctx);
      ASSERT_EQ(r.additive, TargetVector::scalar(c1 * u));
      ASSERT_EQ(r.cubic, TargetVector::scalar(c3 * u * u * u));
      ASSERT_TRUE(r.residual.is_zero());
      ASSERT_EQ(r.joint_bound.verdict, BoundVerdict::holds);
    }
  }
}

TEST(DecomposeTest, SquareThrowsDivergence) {
  const NBetaContext ctx(PrimeContext(5), 1, 1);
  try {
    (void)decompose(monomial(2), BigRational(1), SigmaFunction::constant(BigRational(1)), PsiFunction(), no_slots, ctx);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.trace().verdict, TraceVerdict::diverged);
  }
}

TEST(CounterexampleTest, ConstantDifferenceNorms) {
  for (std::uint64_t p : {3, 5, 7, 11}) {
    const PrimeContext ctx(p);
    for (const BigRational& u : {BigRational(1), BigRational(5), BigRational(7, 5), BigRational(-3, 49)}) {
      for (const Scaling kind : {Scaling::additive, Scaling::cubic}) {
        const CounterexampleReport r = reproduce_counterexample(kind, ctx, u, 30);
        EXPECT_EQ(r.trace.verdict, TraceVerdict::diverged);
        EXPECT_TRUE(r.constant_difference);
        ASSERT_EQ(r.trace.diff_norms.size(), 30u);
        // differences are 2u^2 / 2^j (additive) and 2u^2 * 2^j (cubic); |2|_p = 1
        EXPECT_EQ(r.constant_norm, padic_abs(2 * u * u, ctx));
        EXPECT_EQ(r.residual_on_diagonal, TargetVector::scalar(u * u));
        EXPECT_EQ(r.residual_norm, padic_abs(u * u, ctx));
      }
    }
  }
}

TEST(CounterexampleTest, RejectsTwoAndZero) {
  EXPECT_THROW(reproduce_counterexample(Scaling::additive, PrimeContext(2), BigRational(1), 30), UsageError);
  EXPECT_THROW(reproduce_counterexample(Scaling::cubic, PrimeContext(5), BigRational(0), 30), UsageError);
}

TEST(UniquenessTest, ConstantSigmaWindowMaxima) {
  const PrimeContext two(2);
  const BigRational eps(1, 4);
  const HypothesisVerdict v =
      check_uniqueness_condition(SigmaFunction::constant(eps), BigRational(1), 2, two, 30, 30);
  EXPECT_EQ(v.status, HypothesisStatus::satisfied);
  ASSERT_EQ(v.terms.size(), 30u);
  for (std::size_t m = 0; m < 30; ++m) {
    EXPECT_EQ(v.terms[m].rational(), 8 * eps / pow(BigRational(2), static_cast<std::int64_t>(m + 1)));
  }
}

TEST(UniquenessTest, PowerFamilyAtOddPrimeIsViolated) {
  const PrimeContext five(5);
  const SigmaFunction s = SigmaFunction::power_family(BigRational(1), BigRational(1), BigRational(1));
  EXPECT_EQ(check_uniqueness_condition(s, BigRational(1), 2, five, 30, 30).status, HypothesisStatus::violated);
  EXPECT_EQ(check_uniqueness_condition(s, BigRational(1), 8, five, 30, 30).status, HypothesisStatus::violated);
}
