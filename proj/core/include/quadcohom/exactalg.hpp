#pragma once

// Exact rational arithmetic and truncated power series in one variable h
// (h^order = 0), plus polynomials in an auxiliary variable t with truncated
// series coefficients. No floating point anywhere.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace quadcohom {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws std::invalid_argument if den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_integral(const Rational& q);

/// Numerator of an integral rational; throws std::domain_error otherwise.
Integer to_integer(const Rational& q);

Integer binomial(long n, long k);
Integer factorial(unsigned long n);

/// Power series in h with rational coefficients, taken modulo h^order.
class TruncSeries {
 public:
  explicit TruncSeries(std::size_t order);
  TruncSeries(std::size_t order, std::vector<Rational> coeffs);

  static TruncSeries constant(std::size_t order, const Rational& c);
  static TruncSeries monomial(std::size_t order, const Rational& c, std::size_t degree);

  std::size_t order() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  std::span<const Rational> coefficients() const { return coeffs_; }

  bool is_zero() const;

  TruncSeries& operator+=(const TruncSeries& rhs);
  TruncSeries& operator-=(const TruncSeries& rhs);
  TruncSeries& operator*=(const TruncSeries& rhs);
  TruncSeries& operator*=(const Rational& c);

  friend TruncSeries operator+(TruncSeries lhs, const TruncSeries& rhs) { return lhs += rhs; }
  friend TruncSeries operator-(TruncSeries lhs, const TruncSeries& rhs) { return lhs -= rhs; }
  friend TruncSeries operator*(const TruncSeries& lhs, const TruncSeries& rhs);
  friend TruncSeries operator*(TruncSeries lhs, const Rational& c) { return lhs *= c; }
  friend TruncSeries operator*(const Rational& c, TruncSeries rhs) { return rhs *= c; }
  friend TruncSeries operator-(TruncSeries s);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// exp(a) for a with zero constant term.
TruncSeries series_exp(const TruncSeries& a);

/// log(a) for a with constant term 1.
TruncSeries series_log(const TruncSeries& a);

/// Multiplicative inverse; the constant term must be nonzero.
TruncSeries series_invert(const TruncSeries& a);

TruncSeries series_pow(const TruncSeries& a, unsigned long e);

/// e^{c h} modulo h^order.
TruncSeries exp_linear(std::size_t order, const Rational& c);

/// The Todd quotient (c h) / (1 - e^{-c h}) modulo h^order, for c != 0.
/// The common factor h is cancelled by an index shift before inverting.
TruncSeries todd_quotient(std::size_t order, const Rational& c);

/// Polynomial in t whose coefficients are TruncSeries of one fixed order,
/// truncated at t^t_order.
class SeriesPolyT {
 public:
  SeriesPolyT(std::size_t t_order, std::size_t h_order);

  /// 1 + c t where c is a series.
  static SeriesPolyT one_plus(std::size_t t_order, const TruncSeries& c);

  std::size_t t_order() const { return coeffs_.size(); }
  std::size_t h_order() const { return h_order_; }

  const TruncSeries& operator[](std::size_t k) const { return coeffs_[k]; }
  TruncSeries& operator[](std::size_t k) { return coeffs_[k]; }

  friend SeriesPolyT operator*(const SeriesPolyT& lhs, const SeriesPolyT& rhs);

 private:
  std::size_t h_order_;
  std::vector<TruncSeries> coeffs_;
};

/// Inverse in t; the t^0 coefficient must be an invertible series.
SeriesPolyT t_invert(const SeriesPolyT& a);

SeriesPolyT t_pow(const SeriesPolyT& a, unsigned long e);

}  // namespace quadcohom
