#include <gtest/gtest.h>

#include <random>

#include "quadcohom/exactalg.hpp"

using namespace quadcohom;

namespace {

TruncSeries random_series(std::mt19937_64& rng, std::size_t order) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 6);
  std::vector<Rational> c;
  for (std::size_t k = 0; k < order; ++k) {
    c.push_back(make_rational(num(rng), den(rng)));
  }
  return TruncSeries(order, c);
}

}  // namespace

TEST(Rational, NormalizesSignAndLowestTerms) {
  const Rational q = make_rational(6, -4);
  EXPECT_EQ(q, Rational(-3, 2));
  EXPECT_EQ(to_string(q), "-3/2");
  EXPECT_EQ(to_string(make_rational(10, 5)), "2");
  EXPECT_TRUE(is_integral(make_rational(10, 5)));
  EXPECT_EQ(to_integer(make_rational(-12, 4)), -3);
}

TEST(Rational, RejectsZeroDenominatorAndNonIntegers) {
  EXPECT_THROW(make_rational(1, 0), std::invalid_argument);
  EXPECT_THROW(to_integer(Rational(1, 3)), std::domain_error);
}

TEST(Combinatorics, BinomialAndFactorial) {
  EXPECT_EQ(binomial(9, 3), 84);
  EXPECT_EQ(binomial(28, 14), 40116600);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(20), Integer("2432902008176640000"));
}

TEST(TruncSeries, RingAxiomsOnRandomSeries) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_series(rng, 8);
    const auto b = random_series(rng, 8);
    const auto c = random_series(rng, 8);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + (b - a), b);
    EXPECT_EQ(a * TruncSeries::constant(8, 1), a);
  }
}

TEST(TruncSeries, ProductTruncates) {
  // (1 + h)^2 = 1 + 2h mod h^2
  const TruncSeries one_plus_h(2, {1, 1});
  EXPECT_EQ(one_plus_h * one_plus_h, TruncSeries(2, {1, 2}));
  EXPECT_EQ(series_pow(TruncSeries(4, {1, 1}), 3), TruncSeries(4, {1, 3, 3, 1}));
}

TEST(TruncSeries, MixedOrdersRejected) {
  EXPECT_THROW(TruncSeries(3) + TruncSeries(4), std::invalid_argument);
  EXPECT_THROW(TruncSeries(0), std::invalid_argument);
}

TEST(TruncSeries, ExpLogInverse) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_series(rng, 7);
    auto shifted = a - TruncSeries::constant(7, a[0]);
    EXPECT_EQ(series_log(series_exp(shifted)), shifted);
    auto unit = shifted + TruncSeries::constant(7, 1);
    EXPECT_EQ(series_exp(series_log(unit)), unit);
    if (a[0] != 0) {
      EXPECT_EQ(a * series_invert(a), TruncSeries::constant(7, 1));
    }
  }
  EXPECT_THROW(series_invert(TruncSeries(3, {0, 1, 0})), std::invalid_argument);
  EXPECT_THROW(series_log(TruncSeries(3, {2, 1, 0})), std::invalid_argument);
}

TEST(TruncSeries, ExpLinearCoefficients) {
  const auto e = exp_linear(6, -2);
  for (std::size_t k = 0; k < 6; ++k) {
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), Integer(2).get_mpz_t(), k);
    const Rational expected = make_rational(k % 2 == 0 ? pw : Integer(-pw), factorial(k));
    EXPECT_EQ(e[k], expected) << "k=" << k;
  }
}

TEST(TruncSeries, ToddQuotientMatchesBernoulliNumbers) {
  // x/(1-e^{-x}) = sum B_k^+ x^k / k!: 1, 1/2, 1/12, 0, -1/720, 0, 1/30240
  const auto td = todd_quotient(7, 1);
  const std::vector<Rational> expected{1, Rational(1, 2), Rational(1, 12), 0, Rational(-1, 720), 0,
                                       Rational(1, 30240)};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_EQ(td[k], expected[k]) << "k=" << k;
  }
  // scaling: (c x)/(1 - e^{-c x}) has coefficients c^k b_k
  const auto td3 = todd_quotient(5, 3);
  EXPECT_EQ(td3[2], make_rational(9, 12));
  EXPECT_EQ(td3[4], make_rational(-81, 720));
  EXPECT_THROW(todd_quotient(4, 0), std::invalid_argument);
}

TEST(SeriesPolyT, GeometricInverse) {
  const auto c = TruncSeries(3, {2, 1, 0});
  const auto inv = t_invert(SeriesPolyT::one_plus(4, c));
  // 1/(1 + c t) = sum (-c)^k t^k
  for (unsigned k = 0; k < 4; ++k) {
    auto expected = series_pow(c, k);
    if (k % 2 == 1) {
      expected = -expected;
    }
    EXPECT_EQ(inv[k], expected) << "k=" << k;
  }
}

TEST(SeriesPolyT, PowerMatchesRepeatedProduct) {
  const auto x = SeriesPolyT::one_plus(5, exp_linear(4, -1));
  const auto cube = t_pow(x, 3);
  const auto manual = x * x * x;
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(cube[k], manual[k]);
  }
  EXPECT_EQ(cube[4], TruncSeries(4));
}
