#include <gtest/gtest.h>

#include <vector>

#include "cantordim/log_real.hpp"
#include "cantordim/numeric.hpp"
#include "oracles.hpp"

using namespace cantordim;

TEST(Numeric, ParsesRationalLiterals) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational("17"), Rational(17));
}

TEST(Numeric, RejectsMalformedLiterals) {
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "1e", "3/", "--1"}) {
    EXPECT_THROW(parse_rational(bad), ConfigError) << bad;
  }
  EXPECT_THROW(parse_bigint("12x"), ConfigError);
}

TEST(Numeric, PrecisionFloorAndScope) {
  const unsigned before = working_precision();
  EXPECT_THROW(set_working_precision(kMinPrecision - 1), ConfigError);
  {
    ScopedPrecision p(80);
    EXPECT_EQ(working_precision(), 80u);
    EXPECT_EQ(format(Real(1) / 3).size(), 82u);  // "0." plus 80 digits
  }
  EXPECT_EQ(working_precision(), before);
}

TEST(Numeric, LogOfHugeIntegerMatchesDigitCount) {
  // ln(10^400 + 1) differs from 400 ln 10 by about 1e-400.
  const BigInt n = pow10(400) + 1;
  EXPECT_TRUE(near(log_of(n), Real(400) * ln10(), precision_epsilon()));
  EXPECT_TRUE(near(log_of(Rational(1, 7)), -boost::multiprecision::log(Real(7)), precision_epsilon()));
  EXPECT_THROW(log_of(BigInt(0)), DomainError);
}

TEST(LogReal, ArithmeticAgreesWithLinear) {
  const std::vector<Real> xs = {Real("0.3"), Real("-2.5"), Real("1e-20"), Real(7), Real("-1e-5")};
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      const LogReal la = LogReal::from_real(a);
      const LogReal lb = LogReal::from_real(b);
      const Real tol = precision_epsilon() * 100;
      EXPECT_TRUE(near((la + lb).to_real(), a + b, tol));
      EXPECT_TRUE(near((la - lb).to_real(), a - b, tol));
      EXPECT_TRUE(near((la * lb).to_real(), a * b, tol));
      EXPECT_TRUE(near((la / lb).to_real(), a / b, tol));
      EXPECT_EQ(la < lb, a < b);
    }
  }
}

TEST(LogReal, CancellationGivesExactZero) {
  const LogReal a = LogReal::from_rational(Rational(2, 3));
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a + LogReal::zero(), a);
  EXPECT_TRUE((a * LogReal::zero()).is_zero());
}

TEST(LogReal, HoldsMagnitudesBeyondAnyFloat) {
  // 10^(-10^10): far below the smallest double, ordinary in log form.
  const LogReal tiny = LogReal::from_log(-Real("1e10") * ln10());
  const LogReal sum = tiny + LogReal::one();
  EXPECT_EQ(sum.log_magnitude(), Real(0));
  EXPECT_LT(tiny, LogReal::one());
  EXPECT_TRUE(near(tiny.pow(Real("0.5")).log_magnitude(), -Real("5e9") * ln10(), precision_epsilon()));
}

TEST(LogReal, SumOfManyEqualsCount) {
  std::vector<LogReal> terms(1000, LogReal::from_rational(Rational(1, 1000)));
  EXPECT_TRUE(near(LogReal::sum(terms).to_real(), Real(1), precision_epsilon()));
}
