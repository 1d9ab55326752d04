#pragma once

// Bookkeeping for the decomposition theorem applied to the quadric bundle
// f: X -> P^r of a linear system of quadrics, and dimension/Euler-level
// checks of the identifications between variable cohomology of X and the
// intersection cohomology of the associated double covers.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadcohom/betti.hpp"
#include "quadcohom/exactalg.hpp"
#include "quadcohom/quadric_strata.hpp"

namespace quadcohom {

enum class SummandKind { constant, intersection_complex };
enum class Support { base, discriminant };
enum class LocalSystem { trivial, L0, L1, M0, M1 };

struct Summand {
  SummandKind kind = SummandKind::constant;
  Support support = Support::base;
  LocalSystem local_system = LocalSystem::trivial;
  int shift = 0;

  friend bool operator==(const Summand&, const Summand&) = default;
};

/// Formal splitting of Rf_* Q[total_shift] into shifted summands.
struct SummandList {
  int total_shift = 0;
  std::vector<Summand> summands;

  std::vector<int> constant_shifts() const;
  std::size_t constant_count() const;
};

const char* to_string(SummandKind kind);
const char* to_string(Support support);
const char* to_string(LocalSystem system);

/// Even fiber dimension: Q[d - 2j] for j = 0..n plus IC(M0) on the base.
SummandList summands_even(const BundleShape& shape);

/// Odd fiber dimension: one constant per even fiber degree plus IC_Delta(M1).
SummandList summands_odd(const BundleShape& shape);

SummandList summands_for(const BundleShape& shape);

/// Betti numbers of P^a x P^b.
BettiTable product_projective_betti(int a, int b);

/// Betti table of the total space from the constant summands plus the variable
/// middle dimension. Throws std::invalid_argument on a negative variable
/// dimension, or an odd one in odd total degree.
BettiTable assemble_total_betti(const BundleShape& shape, const Integer& var_middle_dim);

/// (-1)^shift * e(support) for a constant summand on the base P^r.
Integer signed_constant_euler(const Summand& summand, int base_dim);

/// e(total space) = sum over strata of e(stratum) * e(fiber); only for webs
/// (r = 3) of even-dimensional quadrics with n >= 4. Throws Unsupported otherwise.
Integer stratified_euler(const BundleShape& shape);

struct EulerWitness {
  Integer e_ic_l0;
  Integer e_ic_m0;
  bool equal = false;
};

/// Hypercohomology Euler characteristics of IC(L0) (from IH of the double solid)
/// and IC(M0) (from the stratified count of the quadric bundle), for m >= 3.
EulerWitness euler_witness(int m);

/// Named exact quantities on one side of an identity.
using Quantities = std::vector<std::pair<std::string, Integer>>;

struct VerificationReport {
  int m = 0;
  int n = 0;
  int r = 0;
  Quantities lhs;
  Quantities rhs;
  bool pass = false;
  std::string note;
};

/// Compares (h^{1,2}, h^{0,3}) of the blown-up double solid with
/// (h^{m-2,m-1}, h^{m-3,m}) of V(2,2,2,2) in P^{2m+1}. Requires m >= 3.
VerificationReport verify_web_odd(int m);

/// Euler characteristics of the blown-up double solid (Betti assembly vs blow-up
/// count), of the total space (decomposition assembly with the IC(L0) value vs
/// stratified count), and of IC(L0) vs IC(M0). Requires m >= 3.
VerificationReport verify_euler_witness(int m);

/// Compares dim IH^{r-i}_var(Z_i) with dim H^{n-r}_var(X), i = n mod 2, for one
/// (n, r) with r <= 3 and n >= r. Odd n over P^3 is checked at summand-count level.
VerificationReport verify_level_theorem(int n, int r);

}  // namespace quadcohom
