#pragma once

// The double solid Z_0 -> P^3 branched along the discriminant surface of a
// web of quadrics in P^{2m+1}, and its blow-up at the nodes.

#include "quadcohom/betti.hpp"
#include "quadcohom/exactalg.hpp"

namespace quadcohom {

class DoubleSolidModel {
 public:
  /// Throws std::invalid_argument for m < 3 or a negative defect.
  explicit DoubleSolidModel(int m, Integer defect = 0);

  int m() const { return m_; }
  int branch_degree() const { return 2 * m_ + 2; }
  const Integer& nodes() const { return mu_; }
  const Integer& defect() const { return defect_; }

 private:
  int m_;
  Integer mu_;
  Integer defect_;
};

struct ResolvedHodge {
  Integer h12;
  Integer h03;
};

/// Hodge numbers of the blow-up of the nodes, from Clemens' formulas.
ResolvedHodge clemens_hodge(const DoubleSolidModel& model);

/// Betti numbers of the blow-up. Throws Unsupported when the defect is nonzero.
BettiTable betti_resolved(const DoubleSolidModel& model);

/// Intersection cohomology of Z_0: the blow-up minus one class per node in degrees 2 and 4.
BettiTable ih_table(const DoubleSolidModel& model);

struct WeightGradedDims {
  Integer gr3;
  Integer ih3;
  Integer h3_resolved;

  bool consistent() const { return gr3 == ih3 && ih3 == h3_resolved; }
};

/// dim Gr^W_3 H^3(Z_0), dim IH^3(Z_0), and b_3 of the blow-up. The first two come
/// from Euler-characteristic bookkeeping, the last from the Clemens numbers.
WeightGradedDims weight_graded_dims(const DoubleSolidModel& model);

/// c_2 of a smooth surface of degree d in P^3: d^3 - 4d^2 + 6d.
Integer smooth_surface_euler(int degree);

/// Each ordinary double point lowers the Euler characteristic by one (Milnor fiber ~ S^2).
Integer nodal_surface_euler(int degree, const Integer& nodes);

/// e(blow-up) = 2 e(P^3) - e(branch surface) + 3 * nodes: the double cover is
/// 2:1 off the branch surface and each node is replaced by a quadric surface.
Integer blowup_euler(int branch_degree, const Integer& nodes);

/// b_3 = IH^3 of a nodal double solid with defect zero, from blowup_euler alone.
Integer ih_middle_from_euler(int branch_degree, const Integer& nodes);

}  // namespace quadcohom
