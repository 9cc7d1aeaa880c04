#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "padicstab/padicstab.hpp"

using namespace padicstab;

namespace {

struct Case {
  std::string text;
  ExprKind kind;
};

// Hand-written corpus covering every production of the grammar.
std::vector<Case> corpus() {
  std::vector<Case> out;
  for (const char* t : {"u", "3*u + 5*u^3", "u^2", "1/2*u", "u*u*u", "(u + 1)^2 - 1", "u - u^2 + u^3", "-u",
                        "-3*u + 7/4*u^5", "2*(u + u^2)*(3 - 3)", "((u))", "u^0*u", "(2/3)^2*u", "0",
                        "u + (u - u^2)", "u - (u - u^2)", "(u^2)^3", "u*(u*u)", "12345678901234567890*u",
                        "u^6 - 6*u^5 + 15*u^4"}) {
    out.push_back({t, ExprKind::map});
  }
  for (const char* t : {"1", "1/4", "norm(u)", "norm(v)^2", "norm(u)^2 + norm(v)^2",
                        "1/4*(norm(u)^2 + norm(v)^2 + norm(u)*norm(v))", "max(norm(u), norm(v))",
                        "min(norm(u), norm(v), 1)", "max(1, min(norm(u)^1/2, 3))", "norm(u)^3/2*norm(v)^1/3",
                        "(norm(u) + 1)^2", "norm(u)*(norm(v) + 2)", "max(norm(u)*norm(v), norm(u) + norm(v))",
                        "(1/2)^3", "0", "norm(u)^0", "2*max(norm(u)^2, norm(v)^2)", "((norm(u)))",
                        "norm(u)^2*norm(u)^3", "norm(u) + norm(v) + norm(u)*norm(v)"}) {
    out.push_back({t, ExprKind::sigma});
  }
  for (const char* t : {"1", "norm(w1)", "norm(w1)*norm(w2)", "max(norm(w1), norm(w2))^1/2", "3*norm(w2) + 1",
                        "min(norm(w1), 1)", "norm(w12)", "(norm(w1) + norm(w2))^2", "5/7", "norm(w1)^2 + norm(w3)"}) {
    out.push_back({t, ExprKind::psi});
  }
  return out;
}

// Random map expressions built from the grammar.
std::string random_map_text(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  switch (pick(rng)) {
    case 0: return "u";
    case 1: return std::to_string(rng() % 9) + (rng() % 2 ? "/" + std::to_string(1 + rng() % 7) : "");
    case 2: return random_map_text(rng, depth - 1) + " + " + random_map_text(rng, depth - 1);
    case 3: return random_map_text(rng, depth - 1) + " - " + random_map_text(rng, depth - 1);
    case 4: return "(" + random_map_text(rng, depth - 1) + ")*" + random_map_text(rng, depth - 1);
    default: return "(" + random_map_text(rng, depth - 1) + ")^" + std::to_string(rng() % 3);
  }
}

}  // namespace

TEST(ParserTest, CorpusIsLargeEnough) { EXPECT_GE(corpus().size(), 50u); }

TEST(ParserTest, PrettyPrintRoundTripOnCorpus) {
  for (const auto& c : corpus()) {
    SCOPED_TRACE(c.text);
    const ExprPtr first = parse_expression(c.text, c.kind);
    const std::string printed = pretty_print(*first);
    const ExprPtr second = parse_expression(printed, c.kind);
    EXPECT_TRUE(same_structure(*first, *second)) << printed;
    EXPECT_EQ(pretty_print(*second), printed);
  }
}

TEST(ParserTest, PrettyPrintRoundTripOnGeneratedMaps) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const std::string text = random_map_text(rng, 4);
    SCOPED_TRACE(text);
    const ExprPtr first = parse_expression(text, ExprKind::map);
    const ExprPtr second = parse_expression(pretty_print(*first), ExprKind::map);
    EXPECT_TRUE(same_structure(*first, *second)) << pretty_print(*first);
    EXPECT_EQ(detail::expand(*first), detail::expand(*second));
  }
}

TEST(ParserTest, WhitespaceIsInsignificant) {
  const ExprPtr a = parse_expression("3*u+5*u^3", ExprKind::map);
  const ExprPtr b = parse_expression("  3 * u\n +\t5 * u ^ 3 ", ExprKind::map);
  EXPECT_TRUE(same_structure(*a, *b));
}

TEST(ParserTest, PrecedenceAndAssociativity) {
  EXPECT_EQ(detail::expand(*parse_expression("u - u - u", ExprKind::map)),
            (Polynomial{BigRational(0), BigRational(-1)}));
  EXPECT_EQ(detail::expand(*parse_expression("2*u^2", ExprKind::map)),
            (Polynomial{BigRational(0), BigRational(0), BigRational(2)}));
  EXPECT_EQ(detail::expand(*parse_expression("(2*u)^2", ExprKind::map)),
            (Polynomial{BigRational(0), BigRational(0), BigRational(4)}));
  EXPECT_EQ(detail::expand(*parse_expression("1/2*u", ExprKind::map)), (Polynomial{BigRational(0), BigRational(1, 2)}));
}

TEST(ParserTest, SyntaxErrorsCarryLineAndColumn) {
  try {
    (void)parse_expression("3*u +\n  * u", ExprKind::map);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  try {
    (void)parse_expression("norm(u) + qq", ExprKind::sigma);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 11u);
    EXPECT_NE(std::string(e.what()).find("unknown identifier"), std::string::npos);
  }
  for (const char* bad : {"", "u +", "(u", "u)", "3u", "u^", "u^1/0", "1/0*u", "u ^ -1", "max(u, u)"}) {
    EXPECT_THROW(parse_expression(bad, ExprKind::map), ParseError) << bad;
  }
  for (const char* bad : {"norm(x)", "norm(w0)", "max(norm(u))", "norm(w1)", "norm u"}) {
    EXPECT_THROW(parse_expression(bad, ExprKind::sigma), ParseError) << bad;
  }
  for (const char* bad : {"norm(u)", "u", "norm(w)"}) {
    EXPECT_THROW(parse_expression(bad, ExprKind::psi), ParseError) << bad;
  }
}

TEST(ParserTest, MapRejectsRationalExponentsAndNorms) {
  EXPECT_THROW(parse_expression("u^1/2", ExprKind::map), ParseError);
  EXPECT_THROW(parse_expression("norm(u)", ExprKind::map), ParseError);
  EXPECT_THROW(parse_expression("v", ExprKind::map), ParseError);
}

TEST(ParserTest, SigmaDomainRules) {
  EXPECT_THROW(parse_expression("norm(u) - 1", ExprKind::sigma), DomainError);
  EXPECT_THROW(parse_expression("u*norm(v)", ExprKind::sigma), DomainError);
  EXPECT_THROW(parse_expression("rho*norm(u)", ExprKind::sigma, {{"rho", BigRational(-1)}}), DomainError);
  EXPECT_THROW(parse_expression("norm(w1) - 1", ExprKind::psi), DomainError);
}

TEST(ParserTest, ParametersResolveToConstants) {
  const ExprPtr e = parse_expression("rho*(norm(u)^2 + norm(v)^2 + norm(u)*norm(v))", ExprKind::sigma,
                                     {{"rho", BigRational(1, 4)}});
  EXPECT_EQ(pretty_print(*e), "1/4*(norm(u)^2 + norm(v)^2 + norm(u)*norm(v))");
  const SigmaFunction family = SigmaFunction::power_family(BigRational(1, 4), BigRational(1), BigRational(1));
  // the family constructor spells norm(u)*norm(v) with explicit unit powers
  EXPECT_EQ(family.str(), "1/4*(norm(u)^2 + norm(v)^2 + norm(u)^1*norm(v)^1)");
}

TEST(ParserTest, SpansPointIntoTheSource) {
  const std::string text = "3*u + 5*u^3";
  const ExprPtr e = parse_expression(text, ExprKind::map);
  ASSERT_EQ(e->op, Expr::Op::add);
  const Expr& right = *e->args[1];
  EXPECT_EQ(text.substr(right.span.offset, right.span.length), "5*u^3");
  EXPECT_EQ(right.span.column, 7u);
}
