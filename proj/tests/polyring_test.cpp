#include <gtest/gtest.h>

#include "mzd/polyring.hpp"
#include "support.hpp"

using namespace mzd;
using mzd::test::P;

namespace {

TEST(Arith, AdditiveInverse) {
  auto o = test::xyz();
  EXPECT_TRUE((P(o, "x + 1") - P(o, "x + 1")).is_zero());
}

TEST(Arith, BinomialCoefficientSpot) {
  auto o = test::xyz();
  const Polynomial f = P(o, "x - x^2").pow(12);
  EXPECT_EQ(f.coefficient_in(0, 13).constant_value(), -12);
  EXPECT_EQ(f.coefficient_in(0, 12).constant_value(), 1);
  EXPECT_EQ(f.coefficient_in(0, 24).constant_value(), 1);
  EXPECT_EQ(f.nterms(), 13u);
}

TEST(Arith, MultiplicativeIdentity) {
  auto o = test::xyz();
  const Polynomial f = P(o, "3*x*y^2 - z + 1/2");
  EXPECT_EQ(f * Polynomial::constant(o, 1), f);
}

TEST(Arith, MismatchedOrderIsUsageError) {
  auto a = P(test::xyz(), "x");
  auto b = P(VarOrder::make({"x", "y"}), "x");
  EXPECT_THROW(a + b, UsageError);
}

TEST(Printing, Canonical) {
  auto o = test::xyz();
  EXPECT_EQ(P(o, "-1/3 + x^2 + 2*y").to_string(), "2*y + x^2 - 1/3");
  EXPECT_EQ(P(o, "-x").to_string(), "-x");
  EXPECT_EQ(P(o, "0").to_string(), "0");
}

TEST(MainVarView, MixedThird) {
  auto o = test::xyz();
  const auto v = main_var_view(P(o, "(x + y)*z^2 + z + 1"));
  EXPECT_EQ(v.cls, 2);
  EXPECT_EQ(v.ldeg, 2u);
  EXPECT_EQ(v.initial, P(o, "x + y"));
  EXPECT_EQ(v.reductum, P(o, "z + 1"));
}

TEST(MainVarView, UnivariateHighDegree) {
  auto o = test::xyz();
  const auto v = main_var_view(P(o, "x^7 - x^11"));
  EXPECT_EQ(v.cls, 0);
  EXPECT_EQ(v.ldeg, 11u);
  EXPECT_EQ(v.initial, P(o, "-1"));
}

TEST(MainVarView, ConstantIsDegenerate) {
  auto o = test::xyz();
  EXPECT_THROW(main_var_view(P(o, "5")), DegenerateInputError);
  EXPECT_THROW(main_var_view(P(o, "0")), DegenerateInputError);
}

TEST(Prem, MixedValue) {
  auto o = test::xyz();
  const auto c = prem(P(o, "x - x^2").pow(12), P(o, "x^4 - 2*x^3"), 0);
  EXPECT_EQ(c.remainder, P(o, "512*x^3"));
}

TEST(Prem, AlreadyReduced) {
  auto o = test::xyz();
  const auto c = prem(P(o, "y + 1"), P(o, "x^2"), 0);
  EXPECT_EQ(c.remainder, P(o, "y + 1"));
  EXPECT_EQ(c.exponent, 0u);
  EXPECT_TRUE(c.quotient.is_zero());
}

TEST(Prem, MonicDivisor) {
  auto o = test::xyz();
  EXPECT_EQ(prem(P(o, "x^2"), P(o, "x - 1"), 0).remainder, P(o, "1"));
}

TEST(Prem, ConstantDivisorIsUsageError) {
  auto o = test::xyz();
  EXPECT_THROW(prem(P(o, "x"), P(o, "y + 1"), 0), UsageError);
}

TEST(Prem, CertificateIdentity) {
  auto o = test::xyz();
  const Polynomial f = P(o, "x^3*y^2 + y*z - 7");
  const Polynomial g = P(o, "x*y^2 + x^2*y + 1");
  const auto c = prem(f, g, 1);
  EXPECT_TRUE((c.multiplier * f - c.quotient * g - c.remainder).is_zero());
  EXPECT_LT(c.remainder.degree_in(1), 2u);
  EXPECT_TRUE(divides(c.multiplier, initial_of(g).pow(c.exponent)));
}

TEST(PremSeq, EmptyChain) {
  auto o = test::xyz();
  EXPECT_EQ(prem_seq_remainder(P(o, "x*y + z"), {}), P(o, "x*y + z"));
}

TEST(PremSeq, CubicsPower) {
  auto o = test::xyz();
  const auto c = test::Ps(o, {"x^7 - x^11", "x^4*y - x^8*y", "x^9*z - x^5*z"});
  EXPECT_TRUE(prem_seq_remainder(P(o, "x^4 - x^8").pow(27), c).is_zero());
}

TEST(PremSeq, MixedPower) {
  auto o = test::xyz();
  const auto c = test::Ps(o, {"x^4 - 2*x^3", "x^2 + y", "(x - x^2)*z^2 + z + 1"});
  EXPECT_EQ(prem_seq_remainder(P(o, "x - x^2").pow(12), c), P(o, "512*x^3"));
}

TEST(TotalDegree, Values) {
  auto o = test::xyz();
  EXPECT_EQ(P(o, "x^2 + y + z - 1").total_degree(), 2u);
  EXPECT_EQ(P(o, "(x + y)*z^2 + z + 1").total_degree(), 3u);
  EXPECT_EQ(P(o, "4").total_degree(), 0u);
  EXPECT_THROW(P(o, "0").total_degree(), DegenerateInputError);
}

TEST(Evaluate, TaylorShiftAgreesWithEvaluation) {
  auto o = test::xyz();
  const Polynomial f = P(o, "x^3*y - 2*z^2 + x*y*z + 5");
  const std::vector<Rational> xi{Rational(1, 2), -3, 2};
  const Polynomial shifted = f.taylor_shift(xi);
  EXPECT_EQ(shifted.evaluate(std::vector<Rational>{0, 0, 0}), f.evaluate(xi));
}

TEST(ExactQuotient, DividesAndNot) {
  auto o = test::xyz();
  EXPECT_EQ(exact_quotient(P(o, "x^2*y - y"), P(o, "x - 1")), P(o, "x*y + y"));
  EXPECT_FALSE(exact_quotient(P(o, "x^2 + 1"), P(o, "x - 1")).has_value());
}

}  // namespace
