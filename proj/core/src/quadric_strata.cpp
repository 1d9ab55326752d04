#include "quadcohom/quadric_strata.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "quadcohom/errors.hpp"

namespace quadcohom {

BundleShape::BundleShape(int n, int r) : n_(n), r_(r) {
  if (n < 1) {
    throw std::invalid_argument("fiber dimension n must be >= 1");
  }
  if (r < 0) {
    throw std::invalid_argument("base dimension r must be >= 0");
  }
}

namespace {

void validate(const QuadricFiberClass& q) {
  if (q.dim < 0 || q.corank < 0) {
    throw std::invalid_argument("quadric dimension and corank must be nonnegative");
  }
  if (q.corank > q.dim + 2) {
    throw std::invalid_argument("corank " + std::to_string(q.corank) + " exceeds matrix size " +
                                std::to_string(q.dim + 2));
  }
}

// Betti numbers of a smooth quadric of dimension k (empty for k < 0), padded to `len`.
std::vector<Integer> smooth_quadric_betti(int k, std::size_t len) {
  std::vector<Integer> b(len);
  for (int j = 0; j <= k; ++j) {
    b[static_cast<std::size_t>(2 * j)] += 1;
  }
  if (k >= 0 && k % 2 == 0) {
    b[static_cast<std::size_t>(k)] += 1;
  }
  return b;
}

}  // namespace

Integer fiber_euler(const QuadricFiberClass& q) {
  validate(q);
  const int base = q.dim - q.corank;
  Integer e = q.corank;
  if (base >= 0) {
    e += (base % 2 == 0) ? base + 2 : base + 1;
  }
  return e;
}

BettiTable fiber_betti(const QuadricFiberClass& q) {
  validate(q);
  // cone minus vertex is a rank-c affine bundle over the base quadric, so
  // b_k = b_k(P^{c-1}) + b_{k-2c}(base), all classes even.
  const int top = std::max(q.dim, q.corank - 1);
  const auto len = static_cast<std::size_t>(2 * top + 1);
  const int base = q.dim - q.corank;
  std::vector<Integer> base_betti = smooth_quadric_betti(base, len);
  BettiTable out{std::vector<Integer>(len)};
  for (int j = 0; j < q.corank; ++j) {
    out.values[static_cast<std::size_t>(2 * j)] += 1;
  }
  for (std::size_t k = 0; k + 2 * static_cast<std::size_t>(q.corank) < len; ++k) {
    out.values[k + 2 * static_cast<std::size_t>(q.corank)] += base_betti[k];
  }
  return out;
}

StrataReport strata_table(const BundleShape& shape) {
  StrataReport report;
  for (int i = 1;; ++i) {
    const int codim = i * (i + 1) / 2;
    const int expected = shape.r() - codim;
    report.strata.push_back({i, codim, expected, expected >= 0});
    if (expected < 0) {
      break;
    }
  }
  return report;
}

Integer symmetric_corank_degree(int matrix_size, int corank) {
  if (corank < 1 || corank > matrix_size) {
    throw std::invalid_argument("corank must lie in 1..matrix_size");
  }
  Rational deg = 1;
  for (int a = 0; a < corank; ++a) {
    deg *= Rational(binomial(matrix_size + a, corank - a));
    deg /= Rational(binomial(2 * a + 1, a));
  }
  if (!is_integral(deg)) {
    throw ConsistencyError("non-integral determinantal degree " + to_string(deg));
  }
  return deg.get_num();
}

DiscriminantInvariants discriminant_invariants(const BundleShape& shape) {
  DiscriminantInvariants out;
  out.degree = shape.matrix_size();
  if (shape.even() && shape.r() == 3) {
    out.node_count = web_node_count(shape);
  }
  return out;
}

Integer web_node_count(const BundleShape& shape) {
  if (!shape.even() || shape.r() != 3) {
    throw Unsupported("node count is only available for even n over P^3 (got n=" + std::to_string(shape.n()) +
                      ", r=" + std::to_string(shape.r()) + ")");
  }
  return binomial(2 * shape.m() + 3, 3);
}

namespace {

Integer det3(const std::vector<std::vector<long>>& a, std::size_t i, std::size_t j, std::size_t k) {
  const auto col = [&](std::size_t row, std::size_t c) { return Integer(a[row][c]); };
  return col(0, i) * (col(1, j) * col(2, k) - col(1, k) * col(2, j)) -
         col(0, j) * (col(1, i) * col(2, k) - col(1, k) * col(2, i)) +
         col(0, k) * (col(1, i) * col(2, j) - col(1, j) * col(2, i));
}

}  // namespace

DiagonalStrata diagonal_strata(int m, int r, const std::vector<std::vector<long>>& coefficients) {
  if (r != 2) {
    throw Unsupported("diagonal strata are only tabulated for nets (r = 2)");
  }
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  const int columns = 2 * m + 2;
  DiagonalStrata out;
  out.lines = columns;
  out.points = binomial(columns, 2);
  if (coefficients.empty()) {
    return out;
  }
  if (coefficients.size() != 3) {
    throw std::invalid_argument("a net needs 3 rows of coefficients");
  }
  for (const auto& row : coefficients) {
    if (row.size() != static_cast<std::size_t>(columns)) {
      throw std::invalid_argument("each coefficient row needs " + std::to_string(columns) + " entries");
    }
  }
  // general position of the lines sum_i a_ij lambda_i = 0: no three concurrent
  const auto cols = static_cast<std::size_t>(columns);
  for (std::size_t i = 0; i < cols && out.generic; ++i) {
    for (std::size_t j = i + 1; j < cols && out.generic; ++j) {
      for (std::size_t k = j + 1; k < cols; ++k) {
        if (det3(coefficients, i, j, k) == 0) {
          out.generic = false;
          break;
        }
      }
    }
  }
  return out;
}

CokernelDim diagonal_cokernel_dim(DiagonalFamily family, int m) {
  if (m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  switch (family) {
    case DiagonalFamily::net_odd:
      return {binomial(2 * m + 2, 2), false};
    case DiagonalFamily::web_even:
      return {binomial(2 * m + 1, 3), true};
  }
  throw std::invalid_argument("unknown diagonal family");
}

}  // namespace quadcohom
