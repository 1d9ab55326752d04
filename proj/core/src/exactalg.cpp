#include "quadcohom/exactalg.hpp"

#include <stdexcept>
#include <utility>

namespace quadcohom {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Integer to_integer(const Rational& q) {
  if (!is_integral(q)) {
    throw std::domain_error("expected an integer, got " + to_string(q));
  }
  return q.get_num();
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

// ---------------------------------------------------------------------------
// TruncSeries

namespace {

void require_order(std::size_t order) {
  if (order == 0) {
    throw std::invalid_argument("truncation order must be at least 1");
  }
}

void require_same_order(const TruncSeries& a, const TruncSeries& b) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("mixing series of truncation orders " + std::to_string(a.order()) +
                                " and " + std::to_string(b.order()));
  }
}

}  // namespace

TruncSeries::TruncSeries(std::size_t order) : coeffs_(order) { require_order(order); }

TruncSeries::TruncSeries(std::size_t order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  require_order(order);
  coeffs_.resize(order);
}

TruncSeries TruncSeries::constant(std::size_t order, const Rational& c) {
  TruncSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

TruncSeries TruncSeries::monomial(std::size_t order, const Rational& c, std::size_t degree) {
  TruncSeries s(order);
  if (degree < order) {
    s.coeffs_[degree] = c;
  }
  return s;
}

bool TruncSeries::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) {
      return false;
    }
  }
  return true;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    coeffs_[k] += rhs.coeffs_[k];
  }
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    coeffs_[k] -= rhs.coeffs_[k];
  }
  return *this;
}

TruncSeries& TruncSeries::operator*=(const TruncSeries& rhs) {
  *this = *this * rhs;
  return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) {
    x *= c;
  }
  return *this;
}

TruncSeries operator*(const TruncSeries& lhs, const TruncSeries& rhs) {
  require_same_order(lhs, rhs);
  const std::size_t n = lhs.order();
  TruncSeries out(n);
  Rational tmp;
  for (std::size_t i = 0; i < n; ++i) {
    if (lhs.coeffs_[i] == 0) {
      continue;
    }
    for (std::size_t j = 0; i + j < n; ++j) {
      if (rhs.coeffs_[j] == 0) {
        continue;
      }
      tmp = lhs.coeffs_[i] * rhs.coeffs_[j];
      out.coeffs_[i + j] += tmp;
    }
  }
  return out;
}

TruncSeries operator-(TruncSeries s) {
  for (auto& x : s.coeffs_) {
    x = -x;
  }
  return s;
}

TruncSeries series_exp(const TruncSeries& a) {
  if (a[0] != 0) {
    throw std::invalid_argument("series_exp needs a zero constant term");
  }
  // f' = a' f, solved coefficientwise: k f_k = sum_{j=1..k} j a_j f_{k-j}.
  const std::size_t n = a.order();
  std::vector<Rational> f(n);
  f[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (a[j] != 0) {
        acc += Rational(static_cast<long>(j)) * a[j] * f[k - j];
      }
    }
    f[k] = acc / Rational(static_cast<long>(k));
  }
  return TruncSeries(n, std::move(f));
}

TruncSeries series_log(const TruncSeries& a) {
  if (a[0] != 1) {
    throw std::invalid_argument("series_log needs constant term 1");
  }
  // g' = a'/a: k g_k = k a_k - sum_{j=1..k-1} j g_j a_{k-j}.
  const std::size_t n = a.order();
  std::vector<Rational> g(n);
  for (std::size_t k = 1; k < n; ++k) {
    Rational acc = Rational(static_cast<long>(k)) * a[k];
    for (std::size_t j = 1; j < k; ++j) {
      if (g[j] != 0 && a[k - j] != 0) {
        acc -= Rational(static_cast<long>(j)) * g[j] * a[k - j];
      }
    }
    g[k] = acc / Rational(static_cast<long>(k));
  }
  return TruncSeries(n, std::move(g));
}

TruncSeries series_invert(const TruncSeries& a) {
  if (a[0] == 0) {
    throw std::invalid_argument("series_invert needs a nonzero constant term");
  }
  const std::size_t n = a.order();
  std::vector<Rational> b(n);
  const Rational inv0 = 1 / a[0];
  b[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (a[j] != 0) {
        acc += a[j] * b[k - j];
      }
    }
    b[k] = -acc * inv0;
  }
  return TruncSeries(n, std::move(b));
}

TruncSeries series_pow(const TruncSeries& a, unsigned long e) {
  TruncSeries result = TruncSeries::constant(a.order(), 1);
  TruncSeries base = a;
  while (e > 0) {
    if (e & 1UL) {
      result *= base;
    }
    e >>= 1;
    if (e > 0) {
      base *= base;
    }
  }
  return result;
}

TruncSeries exp_linear(std::size_t order, const Rational& c) {
  require_order(order);
  std::vector<Rational> f(order);
  f[0] = 1;
  for (std::size_t k = 1; k < order; ++k) {
    f[k] = f[k - 1] * c / Rational(static_cast<long>(k));
  }
  return TruncSeries(order, std::move(f));
}

TruncSeries todd_quotient(std::size_t order, const Rational& c) {
  if (c == 0) {
    throw std::invalid_argument("todd_quotient needs a nonzero scale");
  }
  // (1 - e^{-ch}) / (ch) = sum_k (-c)^k h^k / (k+1)!, a unit; invert it.
  require_order(order);
  std::vector<Rational> q(order);
  Rational power = 1;
  for (std::size_t k = 0; k < order; ++k) {
    q[k] = power / Rational(factorial(k + 1));
    power *= -c;
  }
  return series_invert(TruncSeries(order, std::move(q)));
}

// ---------------------------------------------------------------------------
// SeriesPolyT

SeriesPolyT::SeriesPolyT(std::size_t t_order, std::size_t h_order)
    : h_order_(h_order), coeffs_(t_order, TruncSeries(h_order)) {
  if (t_order == 0) {
    throw std::invalid_argument("t truncation order must be at least 1");
  }
}

SeriesPolyT SeriesPolyT::one_plus(std::size_t t_order, const TruncSeries& c) {
  SeriesPolyT p(t_order, c.order());
  p.coeffs_[0] = TruncSeries::constant(c.order(), 1);
  if (t_order > 1) {
    p.coeffs_[1] = c;
  }
  return p;
}

SeriesPolyT operator*(const SeriesPolyT& lhs, const SeriesPolyT& rhs) {
  if (lhs.t_order() != rhs.t_order() || lhs.h_order() != rhs.h_order()) {
    throw std::invalid_argument("SeriesPolyT orders differ");
  }
  const std::size_t n = lhs.t_order();
  SeriesPolyT out(n, lhs.h_order());
  for (std::size_t i = 0; i < n; ++i) {
    if (lhs.coeffs_[i].is_zero()) {
      continue;
    }
    for (std::size_t j = 0; i + j < n; ++j) {
      if (rhs.coeffs_[j].is_zero()) {
        continue;
      }
      out.coeffs_[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return out;
}

SeriesPolyT t_invert(const SeriesPolyT& a) {
  const std::size_t n = a.t_order();
  SeriesPolyT b(n, a.h_order());
  const TruncSeries inv0 = series_invert(a[0]);
  b[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    TruncSeries acc(a.h_order());
    for (std::size_t j = 1; j <= k; ++j) {
      if (!a[j].is_zero()) {
        acc += a[j] * b[k - j];
      }
    }
    b[k] = -(acc * inv0);
  }
  return b;
}

SeriesPolyT t_pow(const SeriesPolyT& a, unsigned long e) {
  SeriesPolyT result(a.t_order(), a.h_order());
  result[0] = TruncSeries::constant(a.h_order(), 1);
  SeriesPolyT base = a;
  while (e > 0) {
    if (e & 1UL) {
      result = result * base;
    }
    e >>= 1;
    if (e > 0) {
      base = base * base;
    }
  }
  return result;
}

}  // namespace quadcohom
