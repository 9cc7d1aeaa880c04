#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "padicstab/padicstab.hpp"

using namespace padicstab;

namespace {

Polynomial random_poly(std::mt19937_64& rng, std::size_t max_degree) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 6);
  Polynomial p(max_degree + 1, BigRational(0));
  for (std::size_t k = 1; k <= max_degree; ++k) p[k] = BigRational(num(rng), den(rng));
  return p;
}

BigRational random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 30);
  return BigRational(num(rng), den(rng));
}

}  // namespace

TEST(PolyMapTest, ParseExamples) {
  const PolyMap f = parse_map({"3*u + 5*u^3"});
  EXPECT_EQ(f.dimension(), 1u);
  EXPECT_EQ(f.coefficient(0, 1), 3);
  EXPECT_EQ(f.coefficient(0, 3), 5);
  EXPECT_EQ(f.coefficient(0, 2), 0);
  EXPECT_EQ(f.degree(), 3u);

  const PolyMap g = parse_map({"(u + 1)^2 - 1", "-u^3"});
  EXPECT_EQ(g.dimension(), 2u);
  EXPECT_EQ(g(BigRational(2)), (TargetVector{8, -8}));
}

TEST(PolyMapTest, RejectsNonzeroConstantTerm) {
  try {
    (void)parse_map({"u^2 + 1"});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("F(0)=0 violated"), std::string::npos);
  }
  EXPECT_THROW(PolyMap::scalar({BigRational(1, 2), BigRational(1)}), DomainError);
  EXPECT_THROW(PolyMap(std::vector<Polynomial>{}), UsageError);
}

TEST(PolyMapTest, EvaluationExamples) {
  const PolyMap square = parse_map({"u^2"});
  EXPECT_EQ(eval_map(square, BigRational(3, 2)), TargetVector::scalar(BigRational(9, 4)));
  EXPECT_EQ(eval_map(parse_map({"3*u + 5*u^3"}), BigRational(1)), TargetVector::scalar(BigRational(8)));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const PolyMap f(std::vector<Polynomial>{random_poly(rng, 6), random_poly(rng, 3)});
    EXPECT_TRUE(f(BigRational(0)).is_zero());
  }
}

TEST(PolyMapTest, EvaluationIsAdditiveInCoefficients) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const PolyMap p(std::vector<Polynomial>{random_poly(rng, 1 + rng() % 6), random_poly(rng, 1 + rng() % 6)});
    const PolyMap q(std::vector<Polynomial>{random_poly(rng, 1 + rng() % 6), random_poly(rng, 1 + rng() % 6)});
    const BigRational u = random_point(rng);
    ASSERT_EQ((p + q)(u), p(u) + q(u));
  }
}

TEST(PolyMapTest, EvaluationMatchesPowerSumOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Polynomial c = random_poly(rng, 6);
    const BigRational u = random_point(rng);
    BigRational expected(0);
    for (std::size_t k = 0; k < c.size(); ++k) expected += c[k] * pow(u, static_cast<std::int64_t>(k));
    ASSERT_EQ(PolyMap::scalar(c)(u)[0], expected);
  }
}

TEST(PerturbedMapTest, CapHoldsOnSampledInputs) {
  std::mt19937_64 rng(4);
  for (std::uint64_t p : {2, 3, 5}) {
    const PrimeContext ctx(p);
    for (std::int64_t cap : {0, 4, 10}) {
      const PerturbedMap f = perturb(parse_map({"8*u", "u^2"}), 99, cap, ctx);
      for (int i = 0; i < 1000; ++i) {
        const BigRational u = random_point(rng);
        const TargetVector e = f.perturbation(u);
        const LogMagnitude size = sup_norm(e, ctx);
        if (u == 0) {
          ASSERT_TRUE(e.is_zero());
        } else {
          ASSERT_FALSE(size.is_zero());
          ASSERT_GE(size.exponent(), cap);
        }
        ASSERT_EQ(f(u), f.base()(u) + e);
      }
    }
  }
}

TEST(PerturbedMapTest, DeterministicPerSeedAndInput) {
  const PrimeContext ctx(2);
  const PerturbedMap a = perturb(parse_map({"u"}), 7, 4, ctx);
  const PerturbedMap b = perturb(parse_map({"u"}), 7, 4, ctx);
  const PerturbedMap c = perturb(parse_map({"u"}), 8, 4, ctx);
  bool differs = false;
  for (int k = 1; k <= 50; ++k) {
    const BigRational u(k, 3);
    EXPECT_EQ(a(u), b(u));
    EXPECT_EQ(a(u), a(u));
    differs = differs || a(u) != c(u);
  }
  EXPECT_TRUE(differs);
  EXPECT_TRUE(a.perturbation(BigRational(0)).is_zero());
  EXPECT_EQ(a(BigRational(0)), TargetVector::scalar(BigRational(0)));
}

TEST(PerturbedMapTest, RejectsNegativeCap) {
  EXPECT_THROW(perturb(parse_map({"u"}), 1, -1, PrimeContext(3)), UsageError);
}

TEST(SigmaTest, Examples) {
  const PrimeContext five(5);
  const SigmaFunction eps = SigmaFunction::constant(BigRational(3, 7));
  EXPECT_EQ(eval_sigma(eps, BigRational(11), BigRational(-2, 9), five).rational(), BigRational(3, 7));

  const SigmaFunction squares = SigmaFunction::parse("norm(u)^2 + norm(v)^2");
  EXPECT_EQ(eval_sigma(squares, BigRational(1450, 7), BigRational(1), five).rational(), BigRational(626, 625));

  const SigmaFunction product = SigmaFunction::parse("norm(u)*norm(v)");
  EXPECT_TRUE(eval_sigma(product, BigRational(0), BigRational(5), five).is_zero());
}

TEST(SigmaTest, MaxMinAndRationalPowers) {
  const PrimeContext two(2);
  const SigmaFunction s = SigmaFunction::parse("max(norm(u), norm(v)) + min(norm(u), norm(v))^1/2");
  // |4|_2 = 1/4, |1/2|_2 = 2: max 2, sqrt(1/4) = 1/2
  const Magnitude m = s(BigRational(4), BigRational(1, 2), two);
  ASSERT_TRUE(m.is_rational());
  EXPECT_EQ(m.rational(), BigRational(5, 2));

  const Magnitude root = SigmaFunction::parse("norm(u)^1/2")(BigRational(2), BigRational(1), two);
  EXPECT_TRUE(root.is_exact());
  EXPECT_FALSE(root.is_rational());
  EXPECT_EQ(compare(root.pow(BigRational(2)), Magnitude::exact(BigRational(1, 2))), Ordering::equal);
}

TEST(SigmaTest, PowerFamilySymmetricWhenExponentsAgree) {
  std::mt19937_64 rng(6);
  for (std::uint64_t p : {2, 3, 5}) {
    const PrimeContext ctx(p);
    for (const auto& xy : {BigRational(1), BigRational(1, 2), BigRational(3, 2)}) {
      const SigmaFunction s = SigmaFunction::power_family(BigRational(1, 4), xy, xy);
      for (int i = 0; i < 200; ++i) {
        const BigRational u = random_point(rng);
        const BigRational v = random_point(rng);
        const Magnitude a = s(u, v, ctx);
        const Magnitude b = s(v, u, ctx);
        // irrational sums become enclosures; the two orders must produce the same one
        if (a.is_exact() && b.is_exact()) {
          ASSERT_EQ(compare(a, b), Ordering::equal) << u << " " << v;
        } else {
          ASSERT_EQ(a.lower(), b.lower()) << u << " " << v;
          ASSERT_EQ(a.upper(), b.upper()) << u << " " << v;
        }
      }
    }
  }
}

TEST(SigmaTest, PowerFamilyMatchesDirectFormula) {
  const PrimeContext five(5);
  const SigmaFunction s = SigmaFunction::power_family(BigRational(1, 4), BigRational(1), BigRational(1));
  // |5|_5 = 1/5, |3|_5 = 1: (1/25 + 1 + 1/5) / 4
  EXPECT_EQ(s(BigRational(5), BigRational(3), five).rational(), (BigRational(1, 25) + 1 + BigRational(1, 5)) / 4);
}

TEST(PsiTest, DefaultsToOneAndReadsSlotNorms) {
  const PrimeContext three(3);
  const std::vector<TargetVector> slots{{9, 3}, {1, BigRational(1, 3)}};
  EXPECT_EQ(PsiFunction()(slots, three).rational(), 1);
  EXPECT_EQ(PsiFunction::parse("norm(w1)*norm(w2)")(slots, three).rational(), BigRational(1, 3) * 3);
  EXPECT_EQ(PsiFunction::parse("max(norm(w1), norm(w2)) + 1")(slots, three).rational(), 4);
  EXPECT_THROW(PsiFunction::parse("norm(w3)")(slots, three), UsageError);
}
