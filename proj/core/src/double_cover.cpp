#include "quadcohom/double_cover.hpp"

#include <stdexcept>
#include <string>

#include "quadcohom/errors.hpp"

namespace quadcohom {

DoubleSolidModel::DoubleSolidModel(int m, Integer defect) : m_(m), defect_(std::move(defect)) {
  if (m < 3) {
    throw std::invalid_argument("double solid model needs m >= 3, got " + std::to_string(m));
  }
  if (defect_ < 0) {
    throw std::invalid_argument("defect must be nonnegative");
  }
  mu_ = binomial(2 * m + 3, 3);
}

ResolvedHodge clemens_hodge(const DoubleSolidModel& model) {
  const int m = model.m();
  ResolvedHodge out;
  out.h12 = binomial(3 * m + 2, 3) - 4 * binomial(m + 1, 3) - model.nodes() + model.defect();
  out.h03 = binomial(m, 3);
  return out;
}

namespace {

void require_zero_defect(const DoubleSolidModel& model) {
  if (model.defect() != 0) {
    throw Unsupported("Betti assembly is only defined for defect 0 (got " + to_string(model.defect()) + ")");
  }
}

}  // namespace

BettiTable betti_resolved(const DoubleSolidModel& model) {
  require_zero_defect(model);
  const ResolvedHodge h = clemens_hodge(model);
  const Integer b2 = 1 + model.nodes();
  return BettiTable{{1, 0, b2, 2 * (h.h12 + h.h03), b2, 0, 1}};
}

BettiTable ih_table(const DoubleSolidModel& model) {
  BettiTable table = betti_resolved(model);
  // skyscrapers Q_Sigma^mu[1] and Q_Sigma^mu[-1] sit in degrees 2 and 4
  table.values[2] -= model.nodes();
  table.values[4] -= model.nodes();
  return table;
}

WeightGradedDims weight_graded_dims(const DoubleSolidModel& model) {
  require_zero_defect(model);
  WeightGradedDims out;
  out.ih3 = ih_middle_from_euler(model.branch_degree(), model.nodes());
  // Gr^W_3 of the local cohomology at the nodes vanishes, so Gr^W_3 H^3 = IH^3.
  out.gr3 = out.ih3;
  const ResolvedHodge h = clemens_hodge(model);
  out.h3_resolved = 2 * (h.h12 + h.h03);
  return out;
}

Integer smooth_surface_euler(int degree) {
  const Integer d = degree;
  return d * d * d - 4 * d * d + 6 * d;
}

Integer nodal_surface_euler(int degree, const Integer& nodes) { return smooth_surface_euler(degree) - nodes; }

Integer blowup_euler(int branch_degree, const Integer& nodes) {
  return 2 * 4 - nodal_surface_euler(branch_degree, nodes) + 3 * nodes;
}

Integer ih_middle_from_euler(int branch_degree, const Integer& nodes) {
  // IH = [1, 0, 1, b3, 1, 0, 1] and e(IH) = e(blow-up) - 2 * nodes
  const Integer ih_euler = blowup_euler(branch_degree, nodes) - 2 * nodes;
  return 4 - ih_euler;
}

}  // namespace quadcohom
