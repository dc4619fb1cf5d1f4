#include <gtest/gtest.h>

#include "mzd/univariate.hpp"
#include "support.hpp"

using namespace mzd;
using mzd::test::P;

namespace {

UPoly U(const std::string& s) { return UPoly::from(P(test::xyz(), s), 0); }

TEST(CoprimeSplit, InitialsOfCyclicCubics) {
  auto o = test::xyz();
  const auto parts = coprime_split(test::Ps(o, {"x^4 - x^8", "-x^5 + x^9"}));
  EXPECT_EQ(parts, test::Ps(o, {"x", "x + 1", "x - 1", "x^2 + 1"}));
}

TEST(CoprimeSplit, AlreadyIrreducible) {
  auto o = test::xyz();
  EXPECT_EQ(coprime_split(test::Ps(o, {"x"})), test::Ps(o, {"x"}));
}

TEST(CoprimeSplit, LinearFactorsExtracted) {
  auto o = test::xyz();
  EXPECT_EQ(coprime_split(test::Ps(o, {"x^2 - 1"})), test::Ps(o, {"x + 1", "x - 1"}));
}

TEST(CoprimeSplit, MultivariateUnsupported) {
  auto o = test::xyz();
  EXPECT_THROW(coprime_split(test::Ps(o, {"x*y + 1"})), UnsupportedInputError);
}

TEST(CoprimeSplit, ConstantsIgnored) {
  auto o = test::xyz();
  EXPECT_EQ(coprime_split(test::Ps(o, {"3", "2*x - 4"})), test::Ps(o, {"x - 2"}));
}

TEST(Squarefree, YunDecomposition) {
  const auto d = squarefree_decomposition(U("(x - 1)^2*(x + 2)^3*x"));
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].first, U("x"));
  EXPECT_EQ(d[0].second, 1u);
  EXPECT_EQ(d[1].first, U("x - 1"));
  EXPECT_EQ(d[1].second, 2u);
  EXPECT_EQ(d[2].first, U("x + 2"));
  EXPECT_EQ(d[2].second, 3u);
}

TEST(RationalRoots, MixedFactors) {
  const auto r = rational_roots(U("(2*x - 3)*(x + 5)^2*(x^2 + 1)*x"));
  EXPECT_EQ(r, (std::vector<Rational>{-5, 0, Rational(3, 2)}));
}

TEST(RationalRoots, NoneForIrreducibleQuadratic) { EXPECT_TRUE(rational_roots(U("x^2 + 2*x - 1")).empty()); }

TEST(RationalRoots, LargeCoefficients) {
  const auto r = rational_roots(U("(1009*x - 1013)*(x - 1000003)"));
  EXPECT_EQ(r, (std::vector<Rational>{Rational(1013, 1009), 1000003}));
}

TEST(Gcd, Monic) {
  EXPECT_EQ(gcd(U("2*x^2 - 2"), U("3*x^2 + 3*x")), U("x + 1"));
  EXPECT_EQ(gcd(U("x^2 + 1"), U("x - 1")), U("1"));
}

TEST(FactorWithMultiplicity, KeepsExponents) {
  auto o = test::xyz();
  const auto f = factor_with_multiplicity(P(o, "x^2*(x^2 + 2*x - 1)*(x - 1)^2"));
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].first, P(o, "x"));
  EXPECT_EQ(f[0].second, 2u);
  EXPECT_EQ(f[1].first, P(o, "x - 1"));
  EXPECT_EQ(f[1].second, 2u);
  EXPECT_EQ(f[2].first, P(o, "x^2 + 2*x - 1"));
  EXPECT_EQ(f[2].second, 1u);
}

TEST(ShareRoot, Basic) {
  auto o = test::xyz();
  EXPECT_TRUE(share_root(P(o, "x^2 - 1"), P(o, "x + 1")));
  EXPECT_FALSE(share_root(P(o, "x^2 + 1"), P(o, "x - 1")));
}

}  // namespace
