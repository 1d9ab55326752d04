#pragma once

// Finite-field scanner for explicit linear systems of quadrics: corank census
// over P^r(F_p), degree of the determinant, and node quality of the
// discriminant at corank-2 points.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadcohom/exactalg.hpp"

namespace quadcohom::detscan {

/// Dense symmetric integer matrix, row-major.
class SymMatrix {
 public:
  SymMatrix() = default;
  SymMatrix(int size, std::vector<std::int64_t> entries);

  int size() const { return size_; }
  std::int64_t operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * size_ + j)]; }
  std::span<const std::int64_t> entries() const { return entries_; }

 private:
  int size_ = 0;
  std::vector<std::int64_t> entries_;
};

/// r+1 symmetric (n+2) x (n+2) matrices A_0..A_r; the pencil is A(l) = sum l_i A_i.
class QuadricSystem {
 public:
  /// Throws std::invalid_argument on wrong counts or sizes, and on asymmetric
  /// input (naming the matrix and the offending indices).
  QuadricSystem(int n, int r, std::vector<std::vector<std::vector<std::int64_t>>> matrices);

  int n() const { return n_; }
  int r() const { return r_; }
  int matrix_size() const { return n_ + 2; }
  const std::vector<SymMatrix>& matrices() const { return matrices_; }

  bool is_diagonal() const;

  /// {"n", "r", "matrices"} JSON document.
  static QuadricSystem from_json(std::string_view text);
  std::string to_json() const;

 private:
  int n_;
  int r_;
  std::vector<SymMatrix> matrices_;
};

/// The determinant of the pencil vanishes identically mod p.
class DegenerateSystem : public std::runtime_error {
 public:
  explicit DegenerateSystem(const std::string& what) : std::runtime_error(what) {}
};

using Point = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t p);

/// Requires an odd prime below 2^31; throws std::invalid_argument otherwise.
void require_scan_prime(std::uint64_t p);

/// Number of points of P^r(F_p).
std::uint64_t projective_point_count(int r, std::uint64_t p);

/// The index-th normalized representative (first nonzero coordinate 1) in
/// lexicographic order.
Point point_at(int r, std::uint64_t p, std::uint64_t index);

/// Rank of a square matrix over F_p by Gaussian elimination. Entries must be reduced.
int rank_mod_p(std::span<const std::uint32_t> matrix, int size, std::uint32_t p);

/// Rank as the size of the largest nonvanishing minor (subset expansion).
int rank_by_minors(std::span<const std::uint32_t> matrix, int size, std::uint32_t p);

std::uint32_t det_mod_p(std::span<const std::uint32_t> matrix, int size, std::uint32_t p);

/// A(point) reduced mod p.
std::vector<std::uint32_t> pencil_at(const QuadricSystem& system, std::span<const std::uint32_t> point,
                                     std::uint32_t p);

struct CorankCensus {
  std::uint64_t prime = 0;
  /// counts[c] = number of points with corank exactly c, c = 0..n+2.
  std::vector<std::uint64_t> counts;
  /// Points of corank >= 2 in enumeration order (up to the cap).
  std::vector<Point> singular_points;
  bool singular_points_truncated = false;

  std::uint64_t total() const;
  std::uint64_t at_least(int corank) const;
};

struct CensusOptions {
  unsigned threads = 1;
  std::uint64_t max_points = 100'000'000;
  std::size_t max_singular_points = 200'000;
};

/// Exact corank census over P^r(F_p). Rejects p = 2, non-primes, the zero system,
/// and enumerations larger than options.max_points (the message carries the size).
CorankCensus corank_census(const QuadricSystem& system, std::uint64_t p, const CensusOptions& options = {});

/// Closed-form census for a diagonal system by inclusion-exclusion over the
/// linear forms l_j = sum_i a_ij l_i; independent of any matrix elimination.
CorankCensus diagonal_census(const QuadricSystem& system, std::uint64_t p);

/// Total degree of det A(l) over F_p by Newton interpolation on the grid {0..n+2}^{r+1}.
/// Requires p > n+2. Throws DegenerateSystem if the determinant vanishes identically.
int det_degree(const QuadricSystem& system, std::uint64_t p);

/// Rank of the Hessian of det A at a point where det and its gradient vanish,
/// by exact interpolation of det(A(point) + s A(xi)) in s and polarization.
int hessian_rank(const QuadricSystem& system, std::span<const std::uint32_t> point, std::uint32_t p);

struct NodeEntry {
  Point point;
  int corank = 0;
  int hessian_rank = 0;
  bool pass = false;
};

struct NodeReport {
  std::vector<NodeEntry> nodes;

  bool all_pass() const;
};

/// Classifies every listed corank >= 2 point: pass iff corank is exactly 2 and
/// the Hessian has full rank r (an ordinary double point of the discriminant).
NodeReport node_quality(const QuadricSystem& system, const CorankCensus& census);

enum class Verdict { regular_compatible, non_regular, inconclusive };

const char* to_string(Verdict v);

struct ScalingCheck {
  int corank = 0;
  std::uint64_t count = 0;  // points of corank >= corank
  int expected_dim = 0;     // r - C(corank+1, 2)
  Rational ratio;           // count / p^expected_dim (count itself when expected_dim < 0)
  bool consistent = false;
  bool excess = false;
};

struct PrimeReport {
  std::uint64_t prime = 0;
  CorankCensus census;
  std::optional<int> det_degree;
  NodeReport nodes;
  std::vector<ScalingCheck> scaling;
  Verdict verdict = Verdict::inconclusive;
};

/// Compares corank >= c counts with the expected dimensions of the strata.
std::vector<ScalingCheck> scaling_checks(const QuadricSystem& system, const CorankCensus& census);

PrimeReport scan_prime(const QuadricSystem& system, std::uint64_t p, const CensusOptions& options = {});

struct RegularityReport {
  std::vector<PrimeReport> primes;
  /// Elimination rank agreed with minor-expansion rank on every sampled matrix.
  bool rank_oracle_agreement = false;
  std::size_t rank_oracle_samples = 0;
  Verdict verdict = Verdict::inconclusive;
};

/// Samples random symmetric matrices of the system's size (rank-deficient ones
/// included, fixed seed) and compares the two rank routines.
bool rank_self_check(int size, std::uint32_t p, std::size_t samples, std::uint64_t seed);

RegularityReport regularity_report(const QuadricSystem& system, std::span<const std::uint64_t> primes,
                                   const CensusOptions& options = {});

/// {"prime", "census", "det_degree", "nodes", "verdict"} in that key order.
std::string report_to_json(const PrimeReport& report);

/// {"reports": [...], "scaling": [...], "rank_oracle": {...}, "verdict": ...}.
std::string regularity_to_json(const RegularityReport& report);

}  // namespace quadcohom::detscan
