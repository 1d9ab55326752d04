#include <gtest/gtest.h>

#include "quadcohom/ci_hodge.hpp"
#include "quadcohom/decomp.hpp"
#include "quadcohom/errors.hpp"

using namespace quadcohom;

namespace {

Integer lookup(const Quantities& q, const std::string& key) {
  for (const auto& [k, v] : q) {
    if (k == key) {
      return v;
    }
  }
  ADD_FAILURE() << "missing " << key;
  return -1;
}

}  // namespace

TEST(Summands, EvenShifts) {
  const auto list = summands_even(BundleShape(6, 3));
  EXPECT_EQ(list.total_shift, 9);
  EXPECT_EQ(list.constant_shifts(), (std::vector<int>{9, 7, 5, 3, 1, -1, -3}));
  ASSERT_EQ(list.summands.size(), 8u);
  EXPECT_EQ(list.summands.back().local_system, LocalSystem::M0);
  EXPECT_EQ(list.summands.back().support, Support::base);

  EXPECT_EQ(summands_even(BundleShape(2, 1)).constant_shifts(), (std::vector<int>{3, 1, -1}));
  EXPECT_THROW(summands_even(BundleShape(5, 3)), std::invalid_argument);
}

TEST(Summands, OddShifts) {
  const auto list = summands_odd(BundleShape(5, 3));
  EXPECT_EQ(list.constant_shifts(), (std::vector<int>{8, 6, 4, 2, 0, -2}));
  EXPECT_EQ(list.summands.back().local_system, LocalSystem::M1);
  EXPECT_EQ(list.summands.back().support, Support::discriminant);
  EXPECT_EQ(summands_odd(BundleShape(1, 1)).constant_shifts(), (std::vector<int>{2, 0}));
  EXPECT_THROW(summands_odd(BundleShape(6, 3)), std::invalid_argument);
}

TEST(Summands, ConstantCountMatchesFiberEvenClasses) {
  for (int n = 1; n <= 10; ++n) {
    for (int r = 0; r <= 3; ++r) {
      const BundleShape shape(n, r);
      const auto fiber = fiber_betti({n, 0});
      Integer even_classes = 0;
      for (std::size_t k = 0; k < fiber.size(); k += 2) {
        even_classes += fiber[k];
      }
      const auto count = summands_for(shape).constant_count();
      EXPECT_EQ(count, static_cast<std::size_t>(n + 1));
      if (!shape.even()) {
        EXPECT_EQ(Integer(static_cast<unsigned long>(count)), even_classes);
      }
    }
  }
}

TEST(AssembleBetti, WebOfSixDimensionalQuadrics) {
  const auto b = assemble_total_betti(BundleShape(6, 3), 132);
  ASSERT_EQ(b.size(), 19u);
  const std::vector<Integer> expected{1, 0, 2, 0, 3, 0, 4, 0, 4, 132, 4, 0, 4, 0, 3, 0, 2, 0, 1};
  EXPECT_EQ(b.values, expected);
  EXPECT_EQ(b.euler(), -104);
}

TEST(AssembleBetti, LefschetzAgainstProductOfProjectiveSpaces) {
  // 𝒳 is a hypersurface of bidegree (2,1) in P^{n+1} x P^r
  for (int n = 1; n <= 8; ++n) {
    for (int r = 0; r <= std::min(3, n); ++r) {
      const BundleShape shape(n, r);
      const Integer var = variable_middle(CISpace(n + 1, std::vector<int>(static_cast<std::size_t>(r + 1), 2))).total();
      const auto b = assemble_total_betti(shape, var);
      const auto ambient = product_projective_betti(n + 1, r);
      for (int k = 0; k < n + r; ++k) {
        EXPECT_EQ(b[static_cast<std::size_t>(k)], ambient[static_cast<std::size_t>(k)]) << n << "," << r << " k=" << k;
      }
      EXPECT_TRUE(b.palindromic());
    }
  }
}

TEST(AssembleBetti, SingleQuadricAndValidation) {
  // r = 0: the total space is the fiber itself
  const auto b = assemble_total_betti(BundleShape(4, 0), 1);
  EXPECT_EQ(b, fiber_betti({4, 0}));
  EXPECT_THROW(assemble_total_betti(BundleShape(6, 3), 131), std::invalid_argument);
  EXPECT_THROW(assemble_total_betti(BundleShape(6, 2), -1), std::invalid_argument);
}

TEST(SignedEuler, ShiftParityFlipsSign) {
  Summand s{SummandKind::constant, Support::base, LocalSystem::trivial, 4};
  EXPECT_EQ(signed_constant_euler(s, 3), 4);
  s.shift = 5;
  EXPECT_EQ(signed_constant_euler(s, 3), -4);
  s.kind = SummandKind::intersection_complex;
  EXPECT_THROW(signed_constant_euler(s, 3), std::invalid_argument);
}

TEST(StratifiedEuler, MThree) {
  // 8 (4 - 220) + 7 (220 - 84) + 8 * 84
  EXPECT_EQ(stratified_euler(BundleShape(6, 3)), -104);
  EXPECT_THROW(stratified_euler(BundleShape(6, 2)), Unsupported);
  EXPECT_THROW(stratified_euler(BundleShape(5, 3)), Unsupported);
}

TEST(StratifiedEuler, MatchesAssembledTableForAllM) {
  for (int m = 3; m <= 10; ++m) {
    const BundleShape shape(2 * m, 3);
    const Integer var = variable_middle(CISpace(2 * m + 1, {2, 2, 2, 2})).total();
    EXPECT_EQ(stratified_euler(shape), assemble_total_betti(shape, var).euler()) << m;
  }
}

TEST(EulerWitness, ICValuesAgree) {
  const auto w = euler_witness(3);
  EXPECT_EQ(w.e_ic_l0, 132);
  EXPECT_EQ(w.e_ic_m0, 132);
  EXPECT_TRUE(w.equal);
  for (int m = 4; m <= 10; ++m) {
    EXPECT_TRUE(euler_witness(m).equal) << m;
  }
}

TEST(VerifyWebOdd, SweepPasses) {
  const auto m3 = verify_web_odd(3);
  EXPECT_TRUE(m3.pass);
  EXPECT_EQ(lookup(m3.lhs, "h12"), 65);
  EXPECT_EQ(lookup(m3.rhs, "h03"), 1);
  const auto m4 = verify_web_odd(4);
  EXPECT_EQ(lookup(m4.lhs, "h12"), 159);
  EXPECT_EQ(lookup(m4.lhs, "h03"), 4);
  for (int m = 3; m <= 12; ++m) {
    EXPECT_TRUE(verify_web_odd(m).pass) << m;
  }
  EXPECT_THROW(verify_web_odd(2), std::invalid_argument);
}

TEST(VerifyEulerWitness, SweepPasses) {
  const auto m3 = verify_euler_witness(3);
  EXPECT_EQ(lookup(m3.lhs, "e_resolved"), 40);
  EXPECT_EQ(lookup(m3.lhs, "e_total"), -104);
  EXPECT_EQ(lookup(m3.rhs, "e_total"), -104);
  for (int m = 3; m <= 10; ++m) {
    EXPECT_TRUE(verify_euler_witness(m).pass) << m;
  }
}

TEST(VerifyLevelTheorem, Examples) {
  const auto web = verify_level_theorem(6, 3);
  EXPECT_EQ(lookup(web.lhs, "ih_var_Z0"), 132);
  EXPECT_EQ(lookup(web.rhs, "var_middle_X"), 132);
  EXPECT_TRUE(web.pass);

  const auto pencil = verify_level_theorem(2, 1);
  EXPECT_EQ(lookup(pencil.lhs, "ih_var_Z0"), 2);
  EXPECT_TRUE(pencil.pass);

  const auto quadric = verify_level_theorem(6, 0);
  EXPECT_EQ(lookup(quadric.lhs, "ih_var_Z0"), 1);
  EXPECT_TRUE(quadric.pass);

  const auto odd_web = verify_level_theorem(5, 3);
  EXPECT_EQ(odd_web.note, "summand-count only");
  EXPECT_TRUE(odd_web.pass);

  EXPECT_THROW(verify_level_theorem(6, 4), Unsupported);
}

TEST(VerifyLevelTheorem, Sweep) {
  for (int r = 0; r <= 3; ++r) {
    for (int n = std::max(1, r); n <= 12; ++n) {
      EXPECT_TRUE(verify_level_theorem(n, r).pass) << "n=" << n << " r=" << r;
    }
  }
}
