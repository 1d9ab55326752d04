#pragma once

// Classical invariants of quadrics and of the corank stratification of a
// linear system of quadrics over P^r.

#include <optional>
#include <vector>

#include "quadcohom/betti.hpp"
#include "quadcohom/exactalg.hpp"

namespace quadcohom {

/// Quadric bundle with fibers of dimension n over P^r; n = 2m (even) or 2m - 1 (odd).
class BundleShape {
 public:
  BundleShape(int n, int r);

  int n() const { return n_; }
  int r() const { return r_; }
  int m() const { return (n_ + 1) / 2; }
  bool even() const { return n_ % 2 == 0; }
  /// Size of the symmetric matrices, n + 2.
  int matrix_size() const { return n_ + 2; }
  /// Dimension of the total space, n + r.
  int total_dim() const { return n_ + r_; }

 private:
  int n_;
  int r_;
};

/// A quadric of dimension `dim` whose matrix has corank `corank`:
/// a cone with vertex P^{corank-1} over a smooth quadric of dimension dim - corank.
struct QuadricFiberClass {
  int dim = 0;
  int corank = 0;
};

Integer fiber_euler(const QuadricFiberClass& q);
BettiTable fiber_betti(const QuadricFiberClass& q);

struct StratumInfo {
  int corank = 0;
  int codim = 0;
  int expected_dim = 0;
  bool nonempty = false;
};

/// Strata Delta_i (corank >= i) for i = 1 up to and including the first empty one.
struct StrataReport {
  std::vector<StratumInfo> strata;
};

StrataReport strata_table(const BundleShape& shape);

/// Degree of the locus of corank >= c symmetric N x N matrices.
Integer symmetric_corank_degree(int matrix_size, int corank);

struct DiscriminantInvariants {
  int degree = 0;
  /// Number of nodes of the discriminant surface; only for even n over P^3.
  std::optional<Integer> node_count;
};

DiscriminantInvariants discriminant_invariants(const BundleShape& shape);

/// Node count C(2m+3, 3) for webs of even-dimensional quadrics.
/// Throws Unsupported for any other shape.
Integer web_node_count(const BundleShape& shape);

/// Nets of diagonal quadrics Q_i = sum_j a_ij x_j^2 in P^{2m+1}.
struct DiagonalStrata {
  int lines = 0;
  Integer points;
  /// False when the supplied coefficients are not in general position;
  /// the counts are then the generic ones and do not describe the system.
  bool generic = true;
};

/// `coefficients` is optional: (r+1) rows of 2m+2 integers, checked for general position.
/// Throws Unsupported unless r == 2.
DiagonalStrata diagonal_strata(int m, int r, const std::vector<std::vector<long>>& coefficients = {});

enum class DiagonalFamily { net_odd, web_even };

struct CokernelDim {
  Integer dim;
  /// Set when the index set of the direct sum is not pinned down.
  bool ambiguous = false;
};

/// Dimension of the cokernel of the cylinder map for diagonal nets in P^{2m+1}
/// (one copy of Q per pair of coordinates) and diagonal webs in P^{2m}
/// (one per triple of coordinates).
CokernelDim diagonal_cokernel_dim(DiagonalFamily family, int m);

}  // namespace quadcohom
