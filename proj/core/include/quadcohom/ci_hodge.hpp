#pragma once

// Hodge numbers of smooth complete intersections X = V(d_1, ..., d_c) in P^N,
// computed by Hirzebruch-Riemann-Roch in the truncated cohomology ring of P^N.

#include <optional>
#include <vector>

#include "quadcohom/exactalg.hpp"

namespace quadcohom {

/// A complete intersection of the given multidegree in P^ambient_dim.
/// For a system of quadrics Q_0..Q_r in P^{n+1}: N = n+1, c = r+1.
class CISpace {
 public:
  /// Throws std::invalid_argument on an empty degree list, a degree < 1,
  /// or more equations than the ambient dimension.
  CISpace(int ambient_dim, std::vector<int> degrees);

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int codim() const { return static_cast<int>(degrees_.size()); }
  int dim() const { return ambient_dim_ - codim(); }
  int n() const { return ambient_dim_ - 1; }
  int r() const { return codim() - 1; }
  bool all_quadrics() const;
  Integer degree() const;

 private:
  int ambient_dim_;
  std::vector<int> degrees_;
};

/// Full Hodge diamond h^{p,q}, 0 <= p,q <= dim.
class HodgeDiamond {
 public:
  explicit HodgeDiamond(int dim);

  int dim() const { return dim_; }
  const Integer& at(int p, int q) const { return entries_[index(p, q)]; }
  Integer& at(int p, int q) { return entries_[index(p, q)]; }

  /// Row p + q = dim, indexed by p.
  std::vector<Integer> middle_row() const;

  /// sum (-1)^{p+q} h^{p,q}.
  Integer euler() const;

  bool serre_symmetric() const;
  bool duality_symmetric() const;

  friend bool operator==(const HodgeDiamond&, const HodgeDiamond&) = default;

 private:
  std::size_t index(int p, int q) const;

  int dim_;
  std::vector<Integer> entries_;
};

/// Pure Hodge structure of one weight; entries[p] = h^{p, weight - p}.
struct HodgeRow {
  int weight = 0;
  std::vector<Integer> entries;

  Integer total() const;
};

struct LevelReport {
  /// max |p - q| over nonzero variable h^{p,q}; empty if the variable part is zero.
  std::optional<int> level;
  /// r for even n, r - 1 for odd n; present only for complete intersections of quadrics.
  std::optional<int> parity_prediction;
  /// level == prediction, where a prediction of -1 stands for "no variable cohomology".
  bool matches = false;
};

/// Topological Euler characteristic from the top Chern class of T_X.
Integer euler_char_ci(const CISpace& space);

/// chi(X, Omega^p) for every p = 0..dim X.
std::vector<Integer> chi_all_ci(const CISpace& space);

/// chi(X, Omega^p). Throws std::out_of_range unless 0 <= p <= dim X.
Integer chi_p_ci(const CISpace& space, int p);

HodgeDiamond hodge_diamond_ci(const CISpace& space);

/// Middle row with the ambient class removed (only in even dimension).
HodgeRow variable_middle(const CISpace& space);

LevelReport level_of(const CISpace& space);

/// Closed forms for X = V(2,2,2,2) in P^{2m+1}: h^{m-2,m-1} and h^{m-3,m}.
Rational four_quadrics_h_mid_closed_form(int m);
Rational four_quadrics_h_edge_closed_form(int m);

}  // namespace quadcohom
