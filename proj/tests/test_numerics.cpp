#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "relsched/algebraic.hpp"
#include "relsched/params.hpp"
#include "relsched/rational.hpp"

using namespace relsched;

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

// Independent high-precision evaluation of sum c_j * 2^{j/t}.
BigFloat float_eval(const AlgebraicValue& a) {
  BigFloat acc = 0;
  for (int j = 0; j < a.degree(); ++j) {
    if (a.coeff(j) == 0) continue;
    BigFloat c = BigFloat(numerator(a.coeff(j)).str()) / BigFloat(denominator(a.coeff(j)).str());
    acc += c * pow(BigFloat(2), BigFloat(j) / a.degree());
  }
  return acc;
}

Rational random_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 2001) - 1000;
  long den = static_cast<long>(rng() % 50) + 1;
  return Rational(num, den);
}

AlgebraicValue random_value(std::mt19937_64& rng, int t) {
  AlgebraicValue a(t);
  for (int j = 0; j < t; ++j) {
    a += AlgebraicValue::from_power(j, t) * random_rational(rng);
  }
  return a;
}

TEST(Rational, ParseFormatRoundTrip) {
  EXPECT_EQ(format_rational(parse_rational("3/6")), "1/2");
  EXPECT_EQ(format_rational(parse_rational("-8/4")), "-2");
  EXPECT_EQ(format_rational(parse_rational("7")), "7");
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational("x"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
}

TEST(Rational, FloorLog2AndMagnitude) {
  EXPECT_EQ(floor_log2(Rational(1)), 0);
  EXPECT_EQ(floor_log2(Rational(3)), 1);
  EXPECT_EQ(floor_log2(Rational(1, 3)), -2);
  EXPECT_EQ(magnitude_exp(Rational(3)), 2);   // 2 < 3 <= 4
  EXPECT_EQ(magnitude_exp(Rational(4)), 2);   // exact power stays
  EXPECT_EQ(magnitude_exp(Rational(5)), 3);   // 4 < 5 <= 8
  EXPECT_EQ(magnitude_exp(Rational(1, 3)), -1);
  EXPECT_EQ(magnitude_exp(Rational(1)), 0);
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(floor_rational(Rational(7, 2)), 3);
  EXPECT_EQ(floor_rational(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil_rational(Rational(7, 2)), 4);
  EXPECT_EQ(ceil_rational(Rational(-7, 2)), -3);
  EXPECT_EQ(ceil_rational(Rational(0)), 0);
}

TEST(Rational, ExtRationalOrdersInfinityLast) {
  ExtRational a{Rational(5)};
  ExtRational b = ExtRational::inf();
  EXPECT_TRUE(a < b);
  EXPECT_FALSE(b < a);
  EXPECT_TRUE(b == ExtRational::inf());
  EXPECT_EQ(max(a, b), b);
}

TEST(Algebraic, FromPowerExamples) {
  // 2^{0/4} = 1
  auto a = AlgebraicValue::from_power(0, 4);
  EXPECT_EQ(a.coeff(0), Rational(1));
  // 2^{4/4} = 2
  auto b = AlgebraicValue::from_power(4, 4);
  EXPECT_EQ(b.coeff(0), Rational(2));
  EXPECT_EQ(b.coeff(1), Rational(0));
  // 2^{-1/4} = 2^{3/4} / 2
  auto c = AlgebraicValue::from_power(-1, 4);
  EXPECT_EQ(c.coeff(3), Rational(1, 2));
}

TEST(Algebraic, ArithmeticExamples) {
  // 2^{1/4} * 2^{3/4} = 2
  auto p = AlgebraicValue::from_power(1, 4) * AlgebraicValue::from_power(3, 4);
  EXPECT_EQ(p, AlgebraicValue::from_rational(4, 2));
  // x + (-x) = 0
  std::mt19937_64 rng(7);
  auto x = random_value(rng, 4);
  EXPECT_TRUE((x + (-x)).is_zero());
  // (sqrt2 - 1)(sqrt2 + 1) = 1 for t = 2
  auto s = AlgebraicValue::from_power(1, 2);
  auto one = AlgebraicValue::from_rational(2, 1);
  EXPECT_EQ((s - one) * (s + one), one);
}

TEST(Algebraic, SignExamples) {
  EXPECT_EQ(AlgebraicValue(3).sign(), 0);
  // 2^{1/2} - 3/2 < 0 since 2 < 9/4
  auto v = AlgebraicValue::from_power(1, 2) - AlgebraicValue::from_rational(2, Rational(3, 2));
  EXPECT_EQ(v.sign(), -1);
  // delta = 2^{1/22} - 1 > 0
  auto d = AlgebraicValue::from_power(1, 22) - AlgebraicValue::from_rational(22, 1);
  EXPECT_EQ(d.sign(), 1);
}

TEST(Algebraic, SignMatchesHighPrecisionFloat) {
  std::mt19937_64 rng(12345);
  for (int t : {1, 2, 4, 7, 22}) {
    for (int i = 0; i < 400; ++i) {
      auto a = random_value(rng, t);
      auto b = random_value(rng, t);
      auto diff = a - b;
      BigFloat f = float_eval(diff);
      // Trust the float only when it is clearly away from zero.
      if (abs(f) > BigFloat("1e-60")) {
        EXPECT_EQ(diff.sign(), f > 0 ? 1 : -1) << "t=" << t << " i=" << i;
      } else {
        EXPECT_EQ(diff.sign(), 0);
      }
    }
  }
}

TEST(Algebraic, FromPowerIsMultiplicative) {
  std::mt19937_64 rng(99);
  for (int t : {1, 3, 5, 22}) {
    for (int i = 0; i < 200; ++i) {
      long l = static_cast<long>(rng() % 2001) - 1000;
      long lp = static_cast<long>(rng() % 2001) - 1000;
      auto prod = AlgebraicValue::from_power(l, t) * AlgebraicValue::from_power(lp, t);
      EXPECT_EQ(prod, AlgebraicValue::from_power(l + lp, t));
    }
  }
}

TEST(Algebraic, ZeroTestIsExact) {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 10000; ++i) {
    int t = 1 + static_cast<int>(rng() % 8);
    auto a = random_value(rng, t);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((a - a).sign(), 0);
  }
}

TEST(Params, RhoLandsInTheWindow) {
  // t=1 (delta=1): [1/6, 1/3] contains 1/4.
  EXPECT_EQ(Params::make(Rational(1), 1).rho, Rational(1, 4));
  // Derived via the sign oracle: t=4 -> 1/16, t=22 -> 1/128.
  EXPECT_EQ(Params::make(Rational(1), 4).rho, Rational(1, 16));
  EXPECT_EQ(Params::make(Rational(1), 22).rho, Rational(1, 128));
  // Window membership double-checked for a spread of t.
  for (int t = 1; t <= 24; ++t) {
    Params p = Params::make(Rational(1), t);
    auto lhs = AlgebraicValue::from_rational(t, 6 * p.rho) - p.delta();
    auto rhs = AlgebraicValue::from_rational(t, 3 * p.rho) - p.delta();
    EXPECT_GE(lhs.sign(), 0) << t;  // 6 rho >= delta
    EXPECT_LE(rhs.sign(), 0) << t;  // 3 rho <= delta
  }
}

TEST(Params, MarginAdvisory) {
  EXPECT_FALSE(Params::make(Rational(1), 1).margin_ok());   // 30 > 1
  EXPECT_TRUE(Params::make(Rational(1), 22).margin_ok());   // 30*(2^{1/22}-1) < 1
  EXPECT_THROW(Params::make(Rational(0), 1), InputError);
  EXPECT_THROW(Params::make(Rational(2), 1), InputError);
  EXPECT_THROW(Params::make(Rational(1), 0), InputError);
}

}  // namespace
