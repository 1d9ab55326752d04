#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "quadcohom/detscan.hpp"

using namespace quadcohom;
using namespace quadcohom::detscan;

namespace {

QuadricSystem load(const std::string& name) {
  std::ifstream in(std::string(QUADCOHOM_TEST_DATA_DIR) + "/" + name);
  std::stringstream text;
  text << in.rdbuf();
  return QuadricSystem::from_json(text.str());
}

const QuadricSystem& random_web() {
  static const QuadricSystem web = load("random_web_n6.json");
  return web;
}

const QuadricSystem& diagonal_net() {
  static const QuadricSystem net = load("diagonal_net_m3.json");
  return net;
}

const QuadricSystem& diagonal_web() {
  static const QuadricSystem web = load("diagonal_web_m3.json");
  return web;
}

using Matrix = std::vector<std::uint32_t>;

std::uint32_t mulmod(std::uint64_t a, std::uint64_t b, std::uint32_t p) { return static_cast<std::uint32_t>(a * b % p); }

// Leibniz expansion over all permutations.
std::uint32_t leibniz_det(const Matrix& a, int n, std::uint32_t p) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)] ? 1 : 0;
      }
    }
    std::uint32_t term = 1;
    for (int i = 0; i < n; ++i) {
      term = mulmod(term, a[static_cast<std::size_t>(i * n + perm[static_cast<std::size_t>(i)])], p);
    }
    total += inversions % 2 == 0 ? term : (p - term) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<std::uint32_t>(total % p);
}

std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
  std::uint32_t result = 1;
  std::uint64_t base = a;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) {
      result = mulmod(result, base, p);
    }
    base = base * base % p;
  }
  return result;
}

// Kernel basis of a square matrix over F_p from its reduced row echelon form.
std::vector<Matrix> kernel(Matrix a, int n, std::uint32_t p) {
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int i = row; i < n; ++i) {
      if (a[static_cast<std::size_t>(i * n + col)] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) {
      continue;
    }
    for (int j = 0; j < n; ++j) {
      std::swap(a[static_cast<std::size_t>(piv * n + j)], a[static_cast<std::size_t>(row * n + j)]);
    }
    const std::uint32_t inv = inverse(a[static_cast<std::size_t>(row * n + col)], p);
    for (int j = 0; j < n; ++j) {
      a[static_cast<std::size_t>(row * n + j)] = mulmod(a[static_cast<std::size_t>(row * n + j)], inv, p);
    }
    for (int i = 0; i < n; ++i) {
      const std::uint32_t f = a[static_cast<std::size_t>(i * n + col)];
      if (i == row || f == 0) {
        continue;
      }
      for (int j = 0; j < n; ++j) {
        const std::uint32_t sub = mulmod(f, a[static_cast<std::size_t>(row * n + j)], p);
        auto& x = a[static_cast<std::size_t>(i * n + j)];
        x = (x + p - sub) % p;
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<Matrix> basis;
  for (int free = 0; free < n; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) {
      continue;
    }
    Matrix v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) {
      v[static_cast<std::size_t>(pivot_col[k])] = (p - a[k * static_cast<std::size_t>(n) + static_cast<std::size_t>(free)]) % p;
    }
    basis.push_back(v);
  }
  return basis;
}

Matrix reduced(const SymMatrix& m, std::uint32_t p) {
  Matrix out;
  for (auto x : m.entries()) {
    const auto r = x % static_cast<std::int64_t>(p);
    out.push_back(static_cast<std::uint32_t>(r < 0 ? r + p : r));
  }
  return out;
}

// Hessian of det A at a point: H_kl = sum over ordered pairs of distinct rows (i, i')
// of det(A with row i taken from A_k and row i' taken from A_l).
int hessian_rank_by_row_replacement(const QuadricSystem& sys, const Point& pt, std::uint32_t p) {
  const int n = sys.matrix_size();
  const int vars = sys.r() + 1;
  const Matrix base = pencil_at(sys, pt, p);
  Matrix hess(static_cast<std::size_t>(vars * vars), 0);
  for (int k = 0; k < vars; ++k) {
    const Matrix ak = reduced(sys.matrices()[static_cast<std::size_t>(k)], p);
    for (int l = 0; l < vars; ++l) {
      const Matrix al = reduced(sys.matrices()[static_cast<std::size_t>(l)], p);
      std::uint64_t total = 0;
      for (int i = 0; i < n; ++i) {
        for (int i2 = 0; i2 < n; ++i2) {
          if (i == i2) {
            continue;
          }
          Matrix m = base;
          std::copy_n(ak.begin() + i * n, n, m.begin() + i * n);
          std::copy_n(al.begin() + i2 * n, n, m.begin() + i2 * n);
          total += det_mod_p(m, n, p);
        }
      }
      hess[static_cast<std::size_t>(k * vars + l)] = static_cast<std::uint32_t>(total % p);
    }
  }
  return rank_mod_p(hess, vars, p);
}

// Rank of the quadratic form xi -> det(K^T A(xi) K) on the two-dimensional kernel K.
int kernel_form_rank(const QuadricSystem& sys, const Point& pt, std::uint32_t p) {
  const int n = sys.matrix_size();
  const int vars = sys.r() + 1;
  const auto ker = kernel(pencil_at(sys, pt, p), n, p);
  EXPECT_EQ(ker.size(), 2u);
  // restricted 2x2 matrices K^T A_k K
  std::vector<std::array<std::uint32_t, 4>> restricted;
  for (int k = 0; k < vars; ++k) {
    const Matrix a = reduced(sys.matrices()[static_cast<std::size_t>(k)], p);
    std::array<std::uint32_t, 4> b{};
    for (int s = 0; s < 2; ++s) {
      for (int t = 0; t < 2; ++t) {
        std::uint64_t acc = 0;
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            acc += static_cast<std::uint64_t>(mulmod(ker[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)],
                                                     a[static_cast<std::size_t>(i * n + j)], p)) *
                   ker[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] % p;
          }
        }
        b[static_cast<std::size_t>(s * 2 + t)] = static_cast<std::uint32_t>(acc % p);
      }
    }
    restricted.push_back(b);
  }
  // det(sum xi_k B_k) = sum_{k,l} xi_k xi_l (B_k[0] B_l[3] - B_k[1] B_l[2]); symmetrize
  Matrix gram(static_cast<std::size_t>(vars * vars));
  for (int k = 0; k < vars; ++k) {
    for (int l = 0; l < vars; ++l) {
      const auto& bk = restricted[static_cast<std::size_t>(k)];
      const auto& bl = restricted[static_cast<std::size_t>(l)];
      const std::uint64_t kl = (mulmod(bk[0], bl[3], p) + p - mulmod(bk[1], bl[2], p)) % p;
      const std::uint64_t lk = (mulmod(bl[0], bk[3], p) + p - mulmod(bl[1], bk[2], p)) % p;
      gram[static_cast<std::size_t>(k * vars + l)] = static_cast<std::uint32_t>((kl + lk) % p);
    }
  }
  return rank_mod_p(gram, vars, p);
}

}  // namespace

TEST(Enumeration, NormalizedLexicographicRepresentatives) {
  const std::uint64_t p = 5;
  const int r = 2;
  ASSERT_EQ(projective_point_count(r, p), 31u);
  std::vector<Point> points;
  for (std::uint64_t i = 0; i < 31; ++i) {
    points.push_back(point_at(r, p, i));
  }
  EXPECT_EQ(points.front(), (Point{0, 0, 1}));
  EXPECT_EQ(points.back(), (Point{1, 4, 4}));
  EXPECT_TRUE(std::is_sorted(points.begin(), points.end()));
  EXPECT_EQ(std::adjacent_find(points.begin(), points.end()), points.end());
  for (const auto& pt : points) {
    const auto lead = std::find_if(pt.begin(), pt.end(), [](std::uint32_t x) { return x != 0; });
    ASSERT_NE(lead, pt.end());
    EXPECT_EQ(*lead, 1u);
  }
  EXPECT_THROW(point_at(r, p, 31), std::out_of_range);
}

TEST(Primes, Validation) {
  EXPECT_TRUE(is_prime(101));
  EXPECT_FALSE(is_prime(91));
  EXPECT_THROW(require_scan_prime(2), std::invalid_argument);
  EXPECT_THROW(require_scan_prime(9), std::invalid_argument);
  EXPECT_NO_THROW(require_scan_prime(2147483629));
}

TEST(LinearAlgebra, RankAgreesWithMinorExpansion) {
  const Matrix rank_one{1, 2, 3, 2, 4, 6, 3, 6, 9};
  EXPECT_EQ(rank_mod_p(rank_one, 3, 101), 1);
  EXPECT_EQ(rank_by_minors(rank_one, 3, 101), 1);
  const Matrix zero(16, 0);
  EXPECT_EQ(rank_mod_p(zero, 4, 7), 0);
  EXPECT_EQ(rank_by_minors(zero, 4, 7), 0);
  // full rank over Q, rank 1 mod 5: [[1, 2], [2, 4 + 5]]
  const Matrix mod_drop{1, 2, 2, 4};
  EXPECT_EQ(rank_mod_p(mod_drop, 2, 5), 1);
  EXPECT_TRUE(rank_self_check(8, 101, 200, 1));
  EXPECT_TRUE(rank_self_check(5, 7, 200, 2));
  EXPECT_THROW(rank_mod_p(Matrix(5, 0), 2, 7), std::invalid_argument);
}

TEST(LinearAlgebra, DeterminantAgreesWithLeibniz) {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {7u, 101u, 65521u}) {
    std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
    for (int n = 1; n <= 6; ++n) {
      for (int trial = 0; trial < 10; ++trial) {
        Matrix a(static_cast<std::size_t>(n * n));
        for (auto& x : a) {
          x = entry(rng);
        }
        EXPECT_EQ(det_mod_p(a, n, p), leibniz_det(a, n, p)) << "n=" << n << " p=" << p;
      }
    }
  }
}

TEST(Census, TotalsEqualProjectiveSpace) {
  for (std::uint64_t p : {101u, 103u}) {
    const auto census = corank_census(diagonal_net(), p);
    EXPECT_EQ(census.total(), projective_point_count(2, p));
  }
  const auto web = corank_census(random_web(), 101);
  EXPECT_EQ(web.total(), projective_point_count(3, 101));
  EXPECT_EQ(web.counts.size(), 9u);
}

TEST(Census, DiagonalNetLineArrangement) {
  const auto census = corank_census(diagonal_net(), 101);
  // 8 lines, 28 double points: 8 * 102 - 28
  EXPECT_EQ(census.at_least(1), 788u);
  EXPECT_EQ(census.at_least(2), 28u);
  EXPECT_EQ(census.at_least(3), 0u);
  EXPECT_EQ(census.singular_points.size(), 28u);
}

TEST(Census, DiagonalClosedFormMatchesElimination) {
  for (std::uint64_t p : {101u, 103u}) {
    EXPECT_EQ(diagonal_census(diagonal_net(), p).counts, corank_census(diagonal_net(), p).counts);
  }
  EXPECT_EQ(diagonal_census(diagonal_web(), 101).counts, corank_census(diagonal_web(), 101).counts);
  EXPECT_THROW(diagonal_census(random_web(), 101), std::invalid_argument);
}

TEST(Census, Rejections) {
  EXPECT_THROW(corank_census(diagonal_net(), 2), std::invalid_argument);
  EXPECT_THROW(corank_census(diagonal_net(), 100), std::invalid_argument);

  const std::vector<std::vector<std::int64_t>> zero(3, std::vector<std::int64_t>(3, 0));
  const QuadricSystem zero_system(1, 1, {zero, zero});
  EXPECT_THROW(corank_census(zero_system, 7), std::invalid_argument);

  CensusOptions tight;
  tight.max_points = 1000;
  try {
    corank_census(random_web(), 101, tight);
    FAIL() << "expected a size rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("1040604"), std::string::npos) << e.what();
  }
}

TEST(Census, ThreadCountDoesNotChangeResults) {
  const auto one = scan_prime(random_web(), 103);
  for (unsigned threads : {2u, 7u}) {
    CensusOptions options;
    options.threads = threads;
    const auto many = scan_prime(random_web(), 103, options);
    EXPECT_EQ(many.census.counts, one.census.counts);
    EXPECT_EQ(many.census.singular_points, one.census.singular_points);
    EXPECT_EQ(report_to_json(many), report_to_json(one));
  }
}

TEST(DetDegree, RandomWebIsPrimeIndependent) {
  for (std::uint64_t p : {101u, 103u, 107u}) {
    EXPECT_EQ(det_degree(random_web(), p), 8) << p;
  }
  EXPECT_THROW(det_degree(random_web(), 7), std::invalid_argument);
}

TEST(DetDegree, PencilOfConics) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-9, 9);
  std::vector<std::vector<std::vector<std::int64_t>>> mats(2, std::vector<std::vector<std::int64_t>>(3, std::vector<std::int64_t>(3)));
  for (auto& m : mats) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = entry(rng);
      }
    }
  }
  EXPECT_EQ(det_degree(QuadricSystem(1, 1, mats), 101), 3);
}

TEST(DetDegree, CommonKernelIsDegenerate) {
  std::vector<std::vector<std::vector<std::int64_t>>> mats(2, std::vector<std::vector<std::int64_t>>(3, std::vector<std::int64_t>(3, 0)));
  mats[0][0][0] = 1;
  mats[0][1][1] = 1;
  mats[1][0][1] = mats[1][1][0] = 1;  // e_2 lies in every kernel
  const QuadricSystem sys(1, 1, mats);
  EXPECT_THROW(det_degree(sys, 101), DegenerateSystem);
  EXPECT_EQ(scan_prime(sys, 101).verdict, Verdict::non_regular);
}

TEST(Hessian, AgreesWithRowReplacementAndKernelForm) {
  std::size_t checked = 0;
  for (std::uint32_t p : {101u, 103u}) {
    const auto census = corank_census(random_web(), p);
    for (const auto& pt : census.singular_points) {
      const int h = hessian_rank(random_web(), pt, p);
      EXPECT_EQ(h, hessian_rank_by_row_replacement(random_web(), pt, p));
      EXPECT_EQ(h, kernel_form_rank(random_web(), pt, p));
      EXPECT_EQ(h, 3);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Hessian, AgreesWithRowReplacementAwayFromNodes) {
  const std::uint32_t p = 101;
  for (std::uint64_t index : {0u, 17u, 5000u, 99999u, 1000000u}) {
    const Point pt = point_at(3, p, index);
    EXPECT_EQ(hessian_rank(random_web(), pt, p), hessian_rank_by_row_replacement(random_web(), pt, p)) << index;
  }
}

TEST(NodeQuality, RandomWebNodesAreOrdinary) {
  for (std::uint64_t p : {101u, 103u}) {
    const auto census = corank_census(random_web(), p);
    const auto report = node_quality(random_web(), census);
    EXPECT_TRUE(report.all_pass());
    EXPECT_LE(report.nodes.size(), 84u);
  }
}

TEST(NodeQuality, DiagonalWebFailsWithCorankThree) {
  const auto census = corank_census(diagonal_web(), 101);
  const auto report = node_quality(diagonal_web(), census);
  EXPECT_FALSE(report.all_pass());
  const bool corank_three = std::any_of(report.nodes.begin(), report.nodes.end(),
                                        [](const NodeEntry& e) { return e.corank == 3 && !e.pass; });
  EXPECT_TRUE(corank_three);
}

TEST(Regularity, Verdicts) {
  const std::vector<std::uint64_t> one_prime{101};
  const auto web = regularity_report(random_web(), one_prime);
  EXPECT_EQ(web.verdict, Verdict::regular_compatible);
  EXPECT_TRUE(web.rank_oracle_agreement);
  EXPECT_EQ(web.rank_oracle_samples, 500u);

  EXPECT_EQ(regularity_report(diagonal_web(), one_prime).verdict, Verdict::non_regular);
  const auto net = regularity_report(diagonal_net(), one_prime);
  EXPECT_EQ(net.verdict, Verdict::non_regular);
  EXPECT_EQ(net.primes[0].census.at_least(2), 28u);
}

TEST(Regularity, ScalingWindows) {
  const auto checks = scaling_checks(diagonal_net(), corank_census(diagonal_net(), 101));
  ASSERT_EQ(checks.size(), 2u);
  EXPECT_EQ(checks[0].ratio, Rational(788, 101));
  EXPECT_TRUE(checks[0].consistent);
  EXPECT_EQ(checks[1].expected_dim, -1);
  EXPECT_TRUE(checks[1].excess);
}

TEST(Json, RoundTripAndValidation) {
  const auto text = random_web().to_json();
  EXPECT_EQ(QuadricSystem::from_json(text).to_json(), text);

  try {
    QuadricSystem::from_json(R"({"n": 1, "r": 0, "matrices": [[[1, 0, 3], [0, 1, 0], [4, 0, 1]]]})");
    FAIL() << "expected an asymmetry error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("(0,2)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(QuadricSystem::from_json(R"({"n": 1, "r": 1, "matrices": [[[1,0,0],[0,1,0],[0,0,1]]]})"),
               std::invalid_argument);
  EXPECT_THROW(QuadricSystem::from_json("{"), std::invalid_argument);
  EXPECT_THROW(QuadricSystem::from_json(R"({"n": 1, "r": 0, "matrices": [[[1,0],[0,1]]]})"), std::invalid_argument);
}

TEST(Json, ReportKeyOrder) {
  const auto report = scan_prime(diagonal_net(), 101);
  const auto doc = nlohmann::ordered_json::parse(report_to_json(report));
  std::vector<std::string> keys;
  for (const auto& item : doc.items()) {
    keys.push_back(item.key());
  }
  EXPECT_EQ(keys, (std::vector<std::string>{"prime", "census", "det_degree", "nodes", "verdict"}));
  EXPECT_EQ(doc["census"]["2"], 28);
  EXPECT_EQ(doc["det_degree"], 8);
  EXPECT_EQ(doc["verdict"], "non-regular");
  std::vector<std::string> node_keys;
  for (const auto& item : doc["nodes"][0].items()) {
    node_keys.push_back(item.key());
  }
  EXPECT_EQ(node_keys, (std::vector<std::string>{"point", "corank", "hessian_rank"}));
}
