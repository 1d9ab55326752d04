#include "quadcohom/ci_hodge.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "quadcohom/errors.hpp"

namespace quadcohom {

CISpace::CISpace(int ambient_dim, std::vector<int> degrees)
    : ambient_dim_(ambient_dim), degrees_(std::move(degrees)) {
  if (degrees_.empty()) {
    throw std::invalid_argument("complete intersection needs at least one degree");
  }
  if (ambient_dim_ < 1) {
    throw std::invalid_argument("ambient dimension must be at least 1");
  }
  for (int d : degrees_) {
    if (d < 1) {
      throw std::invalid_argument("degrees must be >= 1, got " + std::to_string(d));
    }
  }
  if (dim() < 0) {
    throw std::invalid_argument(std::to_string(codim()) + " equations in P^" + std::to_string(ambient_dim_) +
                                " leave nothing");
  }
}

bool CISpace::all_quadrics() const {
  return std::all_of(degrees_.begin(), degrees_.end(), [](int d) { return d == 2; });
}

Integer CISpace::degree() const {
  Integer deg = 1;
  for (int d : degrees_) {
    deg *= d;
  }
  return deg;
}

// ---------------------------------------------------------------------------

HodgeDiamond::HodgeDiamond(int dim) : dim_(dim) {
  if (dim < 0) {
    throw std::invalid_argument("negative dimension");
  }
  entries_.resize(static_cast<std::size_t>((dim + 1) * (dim + 1)));
}

std::size_t HodgeDiamond::index(int p, int q) const {
  if (p < 0 || q < 0 || p > dim_ || q > dim_) {
    throw std::out_of_range("Hodge index (" + std::to_string(p) + "," + std::to_string(q) + ") out of range");
  }
  return static_cast<std::size_t>(p * (dim_ + 1) + q);
}

std::vector<Integer> HodgeDiamond::middle_row() const {
  std::vector<Integer> row;
  row.reserve(static_cast<std::size_t>(dim_ + 1));
  for (int p = 0; p <= dim_; ++p) {
    row.push_back(at(p, dim_ - p));
  }
  return row;
}

Integer HodgeDiamond::euler() const {
  Integer e = 0;
  for (int p = 0; p <= dim_; ++p) {
    for (int q = 0; q <= dim_; ++q) {
      if ((p + q) % 2 == 0) {
        e += at(p, q);
      } else {
        e -= at(p, q);
      }
    }
  }
  return e;
}

bool HodgeDiamond::serre_symmetric() const {
  for (int p = 0; p <= dim_; ++p) {
    for (int q = 0; q < p; ++q) {
      if (at(p, q) != at(q, p)) {
        return false;
      }
    }
  }
  return true;
}

bool HodgeDiamond::duality_symmetric() const {
  for (int p = 0; p <= dim_; ++p) {
    for (int q = 0; q <= dim_; ++q) {
      if (at(p, q) != at(dim_ - p, dim_ - q)) {
        return false;
      }
    }
  }
  return true;
}

Integer HodgeRow::total() const {
  Integer t = 0;
  for (const auto& h : entries) {
    t += h;
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

// sum_k c_k t^k e^{-k d h}: the expansion of (1 + s t e^{-d h})^e or its inverse
// when the coefficients c_k are binomials. Built term by term, no products.
SeriesPolyT exp_weighted_poly(std::size_t t_order, std::size_t h_order, int d,
                              const std::vector<Integer>& coeffs) {
  SeriesPolyT out(t_order, h_order);
  for (std::size_t k = 0; k < t_order && k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) {
      continue;
    }
    TruncSeries term = exp_linear(h_order, Rational(-static_cast<long>(k) * d));
    term *= Rational(coeffs[k]);
    out[k] = std::move(term);
  }
  return out;
}

}  // namespace

Integer euler_char_ci(const CISpace& space) {
  const int N = space.ambient_dim();
  const auto order = static_cast<std::size_t>(N + 1);
  // c(T_X) = (1+h)^{N+1} / prod (1 + d h), integrated against [X] = prod(d) h^c.
  std::vector<Rational> one_plus_h(order);
  one_plus_h[0] = 1;
  if (order > 1) {
    one_plus_h[1] = 1;
  }
  TruncSeries chern = series_pow(TruncSeries(order, one_plus_h), static_cast<unsigned long>(N + 1));
  for (int d : space.degrees()) {
    std::vector<Rational> lin(order);
    lin[0] = 1;
    if (order > 1) {
      lin[1] = d;
    }
    chern *= series_invert(TruncSeries(order, lin));
  }
  const Rational top = chern[static_cast<std::size_t>(space.dim())] * Rational(space.degree());
  if (!is_integral(top)) {
    throw ConsistencyError("non-integral Euler characteristic " + to_string(top));
  }
  return top.get_num();
}

std::vector<Integer> chi_all_ci(const CISpace& space) {
  const int N = space.ambient_dim();
  const int D = space.dim();
  const auto h_order = static_cast<std::size_t>(N + 1);
  const auto t_order = static_cast<std::size_t>(D + 1);

  // lambda_t(Omega_X) = (1 + t e^{-h})^{N+1} / ((1 + t) prod_i (1 + t e^{-d_i h})).
  std::vector<Integer> binom(t_order);
  for (std::size_t k = 0; k < t_order; ++k) {
    binom[k] = binomial(N + 1, static_cast<long>(k));
  }
  SeriesPolyT lambda = exp_weighted_poly(t_order, h_order, 1, binom);

  std::vector<Integer> alternating(t_order);
  for (std::size_t k = 0; k < t_order; ++k) {
    alternating[k] = (k % 2 == 0) ? 1 : -1;
  }
  lambda = lambda * exp_weighted_poly(t_order, h_order, 0, alternating);
  for (int d : space.degrees()) {
    lambda = lambda * exp_weighted_poly(t_order, h_order, d, alternating);
  }

  // td(T_{P^N}) * ch(O_X), with ch(O_X) = prod_i (1 - e^{-d_i h}) from the Koszul resolution.
  TruncSeries weight = series_pow(todd_quotient(h_order, 1), static_cast<unsigned long>(N + 1));
  for (int d : space.degrees()) {
    weight *= TruncSeries::constant(h_order, 1) - exp_linear(h_order, Rational(-d));
  }

  std::vector<Integer> chis;
  chis.reserve(t_order);
  for (std::size_t p = 0; p < t_order; ++p) {
    // only the h^N coefficient of the product is needed
    Rational top = 0;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(N); ++i) {
      if (lambda[p][i] != 0 && weight[static_cast<std::size_t>(N) - i] != 0) {
        top += lambda[p][i] * weight[static_cast<std::size_t>(N) - i];
      }
    }
    if (!is_integral(top)) {
      throw ConsistencyError("non-integral chi_" + std::to_string(p) + " = " + to_string(top));
    }
    chis.push_back(top.get_num());
  }
  return chis;
}

Integer chi_p_ci(const CISpace& space, int p) {
  if (p < 0 || p > space.dim()) {
    throw std::out_of_range("chi_p needs 0 <= p <= dim X");
  }
  return chi_all_ci(space)[static_cast<std::size_t>(p)];
}

HodgeDiamond hodge_diamond_ci(const CISpace& space) {
  const int D = space.dim();
  const std::vector<Integer> chis = chi_all_ci(space);
  HodgeDiamond diamond(D);
  for (int p = 0; p <= D; ++p) {
    for (int q = 0; q <= D; ++q) {
      if (p + q != D) {
        diamond.at(p, q) = (p == q) ? 1 : 0;
      }
    }
  }
  // chi_p = sum_q (-1)^q h^{p,q}; solve for the single middle entry of row p.
  for (int p = 0; p <= D; ++p) {
    const int q = D - p;
    Integer rest = 0;
    if (p != q) {
      rest = (p % 2 == 0) ? 1 : -1;
    }
    Integer h = chis[static_cast<std::size_t>(p)] - rest;
    if (q % 2 != 0) {
      h = -h;
    }
    if (h < 0) {
      throw ConsistencyError("negative h^{" + std::to_string(p) + "," + std::to_string(q) + "} = " + to_string(h));
    }
    diamond.at(p, q) = h;
  }
  return diamond;
}

HodgeRow variable_middle(const CISpace& space) {
  const HodgeDiamond diamond = hodge_diamond_ci(space);
  HodgeRow row{diamond.dim(), diamond.middle_row()};
  if (diamond.dim() % 2 == 0) {
    Integer& ambient = row.entries[static_cast<std::size_t>(diamond.dim() / 2)];
    ambient -= 1;
    if (ambient < 0) {
      throw ConsistencyError("middle (p,p) entry smaller than the ambient class");
    }
  }
  return row;
}

LevelReport level_of(const CISpace& space) {
  const HodgeRow var = variable_middle(space);
  LevelReport report;
  for (int p = 0; p <= var.weight; ++p) {
    if (var.entries[static_cast<std::size_t>(p)] != 0) {
      const int gap = std::abs(2 * p - var.weight);
      report.level = std::max(report.level.value_or(0), gap);
    }
  }
  if (space.all_quadrics()) {
    const int prediction = (space.n() % 2 == 0) ? space.r() : space.r() - 1;
    report.parity_prediction = prediction;
    report.matches = (prediction < 0) ? !report.level.has_value() : report.level == prediction;
  }
  return report;
}

Rational four_quadrics_h_mid_closed_form(int m) {
  const Rational k = m - 2;
  return Rational(5, 2) * k * k * k + Rational(31, 2) * k * k + Rational(30 * m - 43);
}

Rational four_quadrics_h_edge_closed_form(int m) {
  const Rational k = m - 2;
  return (k * k * k + 3 * k * k + Rational(2 * m - 4)) / 6;
}

}  // namespace quadcohom
