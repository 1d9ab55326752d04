#include "quadcohom/detscan.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <thread>
#include <utility>

#include "quadcohom/errors.hpp"
#include "quadcohom/quadric_strata.hpp"

namespace quadcohom::detscan {

SymMatrix::SymMatrix(int size, std::vector<std::int64_t> entries) : size_(size), entries_(std::move(entries)) {
  if (size < 1 || entries_.size() != static_cast<std::size_t>(size * size)) {
    throw std::invalid_argument("matrix entry count does not match its size");
  }
}

QuadricSystem::QuadricSystem(int n, int r, std::vector<std::vector<std::vector<std::int64_t>>> matrices)
    : n_(n), r_(r) {
  if (n < 1) {
    throw std::invalid_argument("n must be >= 1");
  }
  if (r < 0) {
    throw std::invalid_argument("r must be >= 0");
  }
  if (matrices.size() != static_cast<std::size_t>(r + 1)) {
    throw std::invalid_argument("expected r+1 = " + std::to_string(r + 1) + " matrices, got " +
                                std::to_string(matrices.size()));
  }
  const int size = n + 2;
  for (std::size_t k = 0; k < matrices.size(); ++k) {
    const auto& rows = matrices[k];
    if (rows.size() != static_cast<std::size_t>(size)) {
      throw std::invalid_argument("matrix " + std::to_string(k) + " has " + std::to_string(rows.size()) +
                                  " rows, expected " + std::to_string(size));
    }
    std::vector<std::int64_t> flat;
    flat.reserve(static_cast<std::size_t>(size * size));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != static_cast<std::size_t>(size)) {
        throw std::invalid_argument("matrix " + std::to_string(k) + " row " + std::to_string(i) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " + std::to_string(size));
      }
      flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) {
        const auto a = flat[static_cast<std::size_t>(i * size + j)];
        const auto b = flat[static_cast<std::size_t>(j * size + i)];
        if (a != b) {
          throw std::invalid_argument("matrix " + std::to_string(k) + " is not symmetric at (" + std::to_string(i) +
                                      "," + std::to_string(j) + "): " + std::to_string(a) +
                                      " != " + std::to_string(b));
        }
      }
    }
    matrices_.emplace_back(size, std::move(flat));
  }
}

bool QuadricSystem::is_diagonal() const {
  const int size = matrix_size();
  for (const auto& m : matrices_) {
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        if (i != j && m(i, j) != 0) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// F_p arithmetic

namespace {

struct Field {
  std::uint32_t p;
  std::vector<std::uint32_t> inverses;  // only for small p

  explicit Field(std::uint32_t prime) : p(prime) {
    if (p < (1U << 22)) {
      inverses.resize(p);
      if (p > 1) {
        inverses[1] = 1;
      }
      for (std::uint32_t i = 2; i < p; ++i) {
        const std::uint64_t t = static_cast<std::uint64_t>(p - p / i) * inverses[p % i];
        inverses[i] = static_cast<std::uint32_t>(t % p);
      }
    }
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }

  std::uint32_t inv(std::uint32_t a) const {
    if (!inverses.empty()) {
      return inverses[a];
    }
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
  }

  std::uint32_t reduce(std::int64_t x) const {
    const std::int64_t m = x % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(m < 0 ? m + p : m);
  }
};

// In-place elimination on a scratch buffer.
int eliminate_rank(std::uint32_t* a, int n, const Field& f) {
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int i = rank; i < n; ++i) {
      if (a[i * n + col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) {
      continue;
    }
    if (pivot != rank) {
      std::swap_ranges(a + pivot * n + col, a + pivot * n + n, a + rank * n + col);
    }
    const std::uint32_t inv = f.inv(a[rank * n + col]);
    const std::uint32_t* prow = a + rank * n;
    for (int i = rank + 1; i < n; ++i) {
      std::uint32_t* row = a + i * n;
      if (row[col] == 0) {
        continue;
      }
      const std::uint64_t factor = f.neg(f.mul(row[col], inv));
      for (int j = col + 1; j < n; ++j) {
        row[j] = static_cast<std::uint32_t>((row[j] + factor * prow[j]) % f.p);
      }
      row[col] = 0;
    }
    ++rank;
  }
  return rank;
}

std::uint32_t eliminate_det(std::uint32_t* a, int n, const Field& f) {
  std::uint32_t det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i) {
      if (a[i * n + col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) {
      return 0;
    }
    if (pivot != col) {
      std::swap_ranges(a + pivot * n + col, a + pivot * n + n, a + col * n + col);
      det = f.neg(det);
    }
    const std::uint32_t piv = a[col * n + col];
    det = f.mul(det, piv);
    const std::uint32_t inv = f.inv(piv);
    const std::uint32_t* prow = a + col * n;
    for (int i = col + 1; i < n; ++i) {
      std::uint32_t* row = a + i * n;
      if (row[col] == 0) {
        continue;
      }
      const std::uint64_t factor = f.neg(f.mul(row[col], inv));
      for (int j = col + 1; j < n; ++j) {
        row[j] = static_cast<std::uint32_t>((row[j] + factor * prow[j]) % f.p);
      }
    }
  }
  return det;
}

void check_square(std::span<const std::uint32_t> matrix, int size) {
  if (size < 0 || matrix.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {
    throw std::invalid_argument("matrix buffer does not match its size");
  }
}

// Reduced copies of A_0..A_r.
std::vector<std::vector<std::uint32_t>> reduce_system(const QuadricSystem& system, const Field& f) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& m : system.matrices()) {
    std::vector<std::uint32_t> red;
    red.reserve(m.entries().size());
    for (auto x : m.entries()) {
      red.push_back(f.reduce(x));
    }
    out.push_back(std::move(red));
  }
  return out;
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) {
    out *= base;
  }
  return out;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) {
    return false;
  }
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) {
      return false;
    }
  }
  return true;
}

void require_scan_prime(std::uint64_t p) {
  if (p == 2) {
    throw std::invalid_argument("p = 2 is not supported (symmetric forms in characteristic 2)");
  }
  if (p >= (1ULL << 31) || !is_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime below 2^31");
  }
}

std::uint64_t projective_point_count(int r, std::uint64_t p) {
  std::uint64_t total = 0;
  for (int k = 0; k <= r; ++k) {
    total += ipow(p, k);
  }
  return total;
}

Point point_at(int r, std::uint64_t p, std::uint64_t index) {
  Point pt(static_cast<std::size_t>(r + 1), 0);
  for (int lead = r; lead >= 0; --lead) {
    const std::uint64_t block = ipow(p, r - lead);
    if (index < block) {
      pt[static_cast<std::size_t>(lead)] = 1;
      for (int pos = r; pos > lead; --pos) {
        pt[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(index % p);
        index /= p;
      }
      return pt;
    }
    index -= block;
  }
  throw std::out_of_range("point index beyond P^r(F_p)");
}

int rank_mod_p(std::span<const std::uint32_t> matrix, int size, std::uint32_t p) {
  check_square(matrix, size);
  const Field f(p);
  std::vector<std::uint32_t> a(matrix.begin(), matrix.end());
  return eliminate_rank(a.data(), size, f);
}

std::uint32_t det_mod_p(std::span<const std::uint32_t> matrix, int size, std::uint32_t p) {
  check_square(matrix, size);
  const Field f(p);
  std::vector<std::uint32_t> a(matrix.begin(), matrix.end());
  return eliminate_det(a.data(), size, f);
}

namespace {

// Determinant of the minor on rows/cols (given as index lists) by Laplace
// expansion over column subsets: dp[mask] expands the first popcount(mask) rows.
std::uint32_t minor_by_expansion(std::span<const std::uint32_t> matrix, int size, const std::vector<int>& rows,
                                 const std::vector<int>& cols, const Field& f) {
  const int k = static_cast<int>(rows.size());
  std::vector<std::uint32_t> dp(std::size_t{1} << k, 0);
  dp[0] = 1;
  for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
    const int row = std::popcount(mask) - 1;
    std::uint32_t acc = 0;
    for (int j = 0; j < k; ++j) {
      if (!(mask & (1U << j))) {
        continue;
      }
      const std::uint32_t sub = dp[mask & ~(1U << j)];
      if (sub == 0) {
        continue;
      }
      const std::uint32_t entry =
          matrix[static_cast<std::size_t>(rows[static_cast<std::size_t>(row)] * size + cols[static_cast<std::size_t>(j)])];
      const std::uint32_t term = f.mul(entry, sub);
      // sign: number of chosen columns to the right of j
      const int above = std::popcount(mask >> (j + 1));
      acc = (above % 2 == 0) ? f.add(acc, term) : f.sub(acc, term);
    }
    dp[mask] = acc;
  }
  return dp[(std::size_t{1} << k) - 1];
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - k + i) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

bool some_minor_nonzero(std::span<const std::uint32_t> matrix, int size, int k, const Field& f) {
  std::vector<int> rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    rows[static_cast<std::size_t>(i)] = i;
  }
  do {
    std::vector<int> cols(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      cols[static_cast<std::size_t>(i)] = i;
    }
    do {
      if (minor_by_expansion(matrix, size, rows, cols, f) != 0) {
        return true;
      }
    } while (next_combination(cols, size));
  } while (next_combination(rows, size));
  return false;
}

}  // namespace

int rank_by_minors(std::span<const std::uint32_t> matrix, int size, std::uint32_t p) {
  check_square(matrix, size);
  if (size > 16) {
    throw std::invalid_argument("minor expansion is limited to size 16");
  }
  const Field f(p);
  // if every k x k minor vanishes, so does every larger one
  int rank = 0;
  for (int k = 1; k <= size; ++k) {
    if (!some_minor_nonzero(matrix, size, k, f)) {
      break;
    }
    rank = k;
  }
  return rank;
}

std::vector<std::uint32_t> pencil_at(const QuadricSystem& system, std::span<const std::uint32_t> point,
                                     std::uint32_t p) {
  if (point.size() != static_cast<std::size_t>(system.r() + 1)) {
    throw std::invalid_argument("point has the wrong number of coordinates");
  }
  const Field f(p);
  const auto reduced = reduce_system(system, f);
  std::vector<std::uint32_t> out(reduced[0].size(), 0);
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const std::uint32_t c = point[i] % p;
    if (c == 0) {
      continue;
    }
    for (std::size_t e = 0; e < out.size(); ++e) {
      out[e] = f.add(out[e], f.mul(c, reduced[i][e]));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// census

std::uint64_t CorankCensus::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) {
    t += c;
  }
  return t;
}

std::uint64_t CorankCensus::at_least(int corank) const {
  std::uint64_t t = 0;
  for (std::size_t c = static_cast<std::size_t>(std::max(corank, 0)); c < counts.size(); ++c) {
    t += counts[c];
  }
  return t;
}

namespace {

struct ChunkResult {
  std::vector<std::uint64_t> counts;
  std::vector<Point> singular;
  bool truncated = false;
};

void scan_chunk(const std::vector<std::vector<std::uint32_t>>& mats, int r, int size, const Field& f,
                std::uint64_t begin, std::uint64_t end, std::size_t cap, ChunkResult& out) {
  out.counts.assign(static_cast<std::size_t>(size + 1), 0);
  if (begin >= end) {
    return;
  }
  const std::size_t nn = static_cast<std::size_t>(size) * static_cast<std::size_t>(size);
  const auto& last = mats[static_cast<std::size_t>(r)];
  std::vector<std::uint32_t> pencil(nn), scratch(nn);
  Point pt = point_at(r, f.p, begin);
  int lead = 0;
  while (pt[static_cast<std::size_t>(lead)] == 0) {
    ++lead;
  }

  const auto rebuild = [&] {
    std::fill(pencil.begin(), pencil.end(), 0);
    for (int i = 0; i <= r; ++i) {
      const std::uint32_t c = pt[static_cast<std::size_t>(i)];
      if (c == 0) {
        continue;
      }
      const auto& m = mats[static_cast<std::size_t>(i)];
      for (std::size_t e = 0; e < nn; ++e) {
        pencil[e] = static_cast<std::uint32_t>((pencil[e] + static_cast<std::uint64_t>(c) * m[e]) % f.p);
      }
    }
  };
  rebuild();

  for (std::uint64_t idx = begin;;) {
    std::copy(pencil.begin(), pencil.end(), scratch.begin());
    const int corank = size - eliminate_rank(scratch.data(), size, f);
    ++out.counts[static_cast<std::size_t>(corank)];
    if (corank >= 2) {
      if (out.singular.size() < cap) {
        out.singular.push_back(pt);
      } else {
        out.truncated = true;
      }
    }
    if (++idx >= end) {
      break;
    }
    // odometer over the coordinates after the leading 1
    int pos = r;
    while (pos > lead && pt[static_cast<std::size_t>(pos)] == f.p - 1) {
      pt[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos > lead) {
      ++pt[static_cast<std::size_t>(pos)];
      if (pos == r) {
        for (std::size_t e = 0; e < nn; ++e) {
          pencil[e] = f.add(pencil[e], last[e]);
        }
      } else {
        rebuild();
      }
    } else {
      pt[static_cast<std::size_t>(lead)] = 0;
      --lead;
      pt[static_cast<std::size_t>(lead)] = 1;
      rebuild();
    }
  }
}

}  // namespace

CorankCensus corank_census(const QuadricSystem& system, std::uint64_t p, const CensusOptions& options) {
  require_scan_prime(p);
  const std::uint64_t total = projective_point_count(system.r(), p);
  if (total > options.max_points) {
    throw std::invalid_argument("P^" + std::to_string(system.r()) + "(F_" + std::to_string(p) + ") has " +
                                std::to_string(total) + " points, above the limit of " +
                                std::to_string(options.max_points));
  }
  const Field f(static_cast<std::uint32_t>(p));
  const auto mats = reduce_system(system, f);
  const bool all_zero = std::all_of(mats.begin(), mats.end(), [](const auto& m) {
    return std::all_of(m.begin(), m.end(), [](std::uint32_t x) { return x == 0; });
  });
  if (all_zero) {
    throw std::invalid_argument("zero system: every quadric vanishes mod " + std::to_string(p));
  }

  const int size = system.matrix_size();
  const std::uint64_t threads = std::clamp<std::uint64_t>(options.threads, 1, total);
  std::vector<ChunkResult> chunks(threads);
  {
    std::vector<std::jthread> workers;
    for (std::uint64_t t = 0; t < threads; ++t) {
      const std::uint64_t begin = total * t / threads;
      const std::uint64_t end = total * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] {
        scan_chunk(mats, system.r(), size, f, begin, end, options.max_singular_points, chunks[t]);
      });
    }
  }

  CorankCensus census;
  census.prime = p;
  census.counts.assign(static_cast<std::size_t>(size + 1), 0);
  for (auto& chunk : chunks) {
    for (std::size_t c = 0; c < chunk.counts.size(); ++c) {
      census.counts[c] += chunk.counts[c];
    }
    for (auto& pt : chunk.singular) {
      if (census.singular_points.size() < options.max_singular_points) {
        census.singular_points.push_back(std::move(pt));
      } else {
        census.singular_points_truncated = true;
      }
    }
    census.singular_points_truncated = census.singular_points_truncated || chunk.truncated;
  }
  return census;
}

CorankCensus diagonal_census(const QuadricSystem& system, std::uint64_t p) {
  require_scan_prime(p);
  if (!system.is_diagonal()) {
    throw std::invalid_argument("diagonal_census needs a diagonal system");
  }
  const Field f(static_cast<std::uint32_t>(p));
  const int size = system.matrix_size();
  const int vars = system.r() + 1;
  if (size > 24) {
    throw std::invalid_argument("diagonal_census is limited to 24 linear forms");
  }
  // l_j = sum_i a_ij lambda_i
  std::vector<std::vector<std::uint32_t>> forms(static_cast<std::size_t>(size),
                                                std::vector<std::uint32_t>(static_cast<std::size_t>(vars)));
  for (int i = 0; i < vars; ++i) {
    const auto& m = system.matrices()[static_cast<std::size_t>(i)];
    for (int j = 0; j < size; ++j) {
      forms[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = f.reduce(m(j, j));
    }
  }

  const std::size_t subsets = std::size_t{1} << size;
  // g[S] = points where every l_j, j in S, vanishes
  std::vector<std::int64_t> g(subsets);
  std::vector<std::uint32_t> stacked;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    stacked.clear();
    int rows = 0;
    for (int j = 0; j < size; ++j) {
      if (mask & (std::size_t{1} << j)) {
        stacked.insert(stacked.end(), forms[static_cast<std::size_t>(j)].begin(),
                       forms[static_cast<std::size_t>(j)].end());
        ++rows;
      }
    }
    // rank of a rows x vars matrix via a padded square buffer
    const int dim = std::max(rows, vars);
    std::vector<std::uint32_t> square(static_cast<std::size_t>(dim * dim), 0);
    for (int a = 0; a < rows; ++a) {
      for (int b = 0; b < vars; ++b) {
        square[static_cast<std::size_t>(a * dim + b)] = stacked[static_cast<std::size_t>(a * vars + b)];
      }
    }
    const int rank = rows == 0 ? 0 : eliminate_rank(square.data(), dim, f);
    g[mask] = static_cast<std::int64_t>(projective_point_count(vars - rank - 1, p));
    if (vars - rank - 1 < 0) {
      g[mask] = 0;
    }
  }
  // exact[T] = sum_{S >= T} (-1)^{|S - T|} g[S]  (superset Moebius transform)
  for (int j = 0; j < size; ++j) {
    const std::size_t bit = std::size_t{1} << j;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      if (!(mask & bit)) {
        g[mask] -= g[mask | bit];
      }
    }
  }
  CorankCensus census;
  census.prime = p;
  census.counts.assign(static_cast<std::size_t>(size + 1), 0);
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    if (g[mask] < 0) {
      throw ConsistencyError("negative inclusion-exclusion count");
    }
    census.counts[static_cast<std::size_t>(std::popcount(mask))] += static_cast<std::uint64_t>(g[mask]);
  }
  return census;
}

// ---------------------------------------------------------------------------
// interpolation

namespace {

// Values of a polynomial of degree <= n at 0..n (in place) -> monomial coefficients.
void values_to_coefficients(std::vector<std::uint32_t>& v, const Field& f) {
  const int n = static_cast<int>(v.size()) - 1;
  // Newton divided differences on nodes 0..n
  for (int level = 1; level <= n; ++level) {
    const std::uint32_t inv_level = f.inv(static_cast<std::uint32_t>(level));
    for (int i = n; i >= level; --i) {
      v[static_cast<std::size_t>(i)] =
          f.mul(f.sub(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i - 1)]), inv_level);
    }
  }
  // expand sum_k c_k prod_{j<k} (x - j) by Horner from the top
  std::vector<std::uint32_t> poly(v.size(), 0);
  for (int k = n; k >= 0; --k) {
    // poly = poly * (x - k) + c_k
    for (int i = n; i >= 1; --i) {
      poly[static_cast<std::size_t>(i)] =
          f.sub(poly[static_cast<std::size_t>(i - 1)], f.mul(static_cast<std::uint32_t>(k), poly[static_cast<std::size_t>(i)]));
    }
    poly[0] = f.sub(v[static_cast<std::size_t>(k)], f.mul(static_cast<std::uint32_t>(k), poly[0]));
  }
  v = std::move(poly);
}

}  // namespace

int det_degree(const QuadricSystem& system, std::uint64_t p) {
  require_scan_prime(p);
  const int size = system.matrix_size();
  const int deg = size;
  if (p <= static_cast<std::uint64_t>(deg)) {
    throw std::invalid_argument("det_degree needs p > n+2 = " + std::to_string(deg));
  }
  const int vars = system.r() + 1;
  const std::size_t side = static_cast<std::size_t>(deg + 1);
  std::size_t cells = 1;
  for (int i = 0; i < vars; ++i) {
    cells *= side;
    if (cells > 20'000'000) {
      throw std::invalid_argument("interpolation grid too large");
    }
  }
  const Field f(static_cast<std::uint32_t>(p));
  const auto mats = reduce_system(system, f);
  const std::size_t nn = mats[0].size();

  std::vector<std::uint32_t> grid(cells);
  std::vector<std::uint32_t> buf(nn);
  std::vector<std::uint32_t> coord(static_cast<std::size_t>(vars), 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rest = cell;
    for (int i = vars - 1; i >= 0; --i) {
      coord[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % side);
      rest /= side;
    }
    std::fill(buf.begin(), buf.end(), 0);
    for (int i = 0; i < vars; ++i) {
      const std::uint32_t c = coord[static_cast<std::size_t>(i)];
      if (c == 0) {
        continue;
      }
      for (std::size_t e = 0; e < nn; ++e) {
        buf[e] = f.add(buf[e], f.mul(c, mats[static_cast<std::size_t>(i)][e]));
      }
    }
    grid[cell] = eliminate_det(buf.data(), size, f);
  }

  // tensor-product interpolation, one axis at a time
  std::size_t stride = 1;
  std::vector<std::uint32_t> line(side);
  for (int axis = vars - 1; axis >= 0; --axis) {
    for (std::size_t base = 0; base < cells; ++base) {
      if ((base / stride) % side != 0) {
        continue;
      }
      for (std::size_t k = 0; k < side; ++k) {
        line[k] = grid[base + k * stride];
      }
      values_to_coefficients(line, f);
      for (std::size_t k = 0; k < side; ++k) {
        grid[base + k * stride] = line[k];
      }
    }
    stride *= side;
  }

  int degree = -1;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (grid[cell] == 0) {
      continue;
    }
    std::size_t rest = cell;
    int total = 0;
    for (int i = 0; i < vars; ++i) {
      total += static_cast<int>(rest % side);
      rest /= side;
    }
    degree = std::max(degree, total);
  }
  if (degree < 0) {
    throw DegenerateSystem("det A(lambda) vanishes identically mod " + std::to_string(p));
  }
  return degree;
}

int hessian_rank(const QuadricSystem& system, std::span<const std::uint32_t> point, std::uint32_t p) {
  require_scan_prime(p);
  const int size = system.matrix_size();
  if (p <= static_cast<std::uint32_t>(size)) {
    throw std::invalid_argument("hessian_rank needs p > n+2");
  }
  const Field f(p);
  const auto mats = reduce_system(system, f);
  const std::vector<std::uint32_t> base = pencil_at(system, point, p);
  const int vars = system.r() + 1;
  const std::size_t nn = base.size();

  // q(dir) = [s^2] det(A(point) + s * dir), from values at s = 0..size
  std::vector<std::uint32_t> buf(nn), values(static_cast<std::size_t>(size + 1));
  const auto quadratic_coefficient = [&](const std::vector<std::uint32_t>& dir) {
    for (int s = 0; s <= size; ++s) {
      for (std::size_t e = 0; e < nn; ++e) {
        buf[e] = f.add(base[e], f.mul(static_cast<std::uint32_t>(s), dir[e]));
      }
      values[static_cast<std::size_t>(s)] = eliminate_det(buf.data(), size, f);
    }
    std::vector<std::uint32_t> coeffs = values;
    values_to_coefficients(coeffs, f);
    return coeffs[2];
  };

  std::vector<std::uint32_t> diag(static_cast<std::size_t>(vars));
  for (int k = 0; k < vars; ++k) {
    diag[static_cast<std::size_t>(k)] = quadratic_coefficient(mats[static_cast<std::size_t>(k)]);
  }
  std::vector<std::uint32_t> hess(static_cast<std::size_t>(vars * vars));
  std::vector<std::uint32_t> sum(nn);
  for (int k = 0; k < vars; ++k) {
    hess[static_cast<std::size_t>(k * vars + k)] = f.add(diag[static_cast<std::size_t>(k)], diag[static_cast<std::size_t>(k)]);
    for (int l = k + 1; l < vars; ++l) {
      for (std::size_t e = 0; e < nn; ++e) {
        sum[e] = f.add(mats[static_cast<std::size_t>(k)][e], mats[static_cast<std::size_t>(l)][e]);
      }
      const std::uint32_t mixed = f.sub(f.sub(quadratic_coefficient(sum), diag[static_cast<std::size_t>(k)]),
                                        diag[static_cast<std::size_t>(l)]);
      hess[static_cast<std::size_t>(k * vars + l)] = mixed;
      hess[static_cast<std::size_t>(l * vars + k)] = mixed;
    }
  }
  return eliminate_rank(hess.data(), vars, f);
}

bool NodeReport::all_pass() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const NodeEntry& e) { return e.pass; });
}

NodeReport node_quality(const QuadricSystem& system, const CorankCensus& census) {
  const auto p = static_cast<std::uint32_t>(census.prime);
  NodeReport report;
  const int size = system.matrix_size();
  for (const auto& pt : census.singular_points) {
    NodeEntry entry;
    entry.point = pt;
    entry.corank = size - rank_mod_p(pencil_at(system, pt, p), size, p);
    entry.hessian_rank = hessian_rank(system, pt, p);
    entry.pass = entry.corank == 2 && entry.hessian_rank == system.r();
    report.nodes.push_back(std::move(entry));
  }
  return report;
}

// ---------------------------------------------------------------------------
// reports

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::regular_compatible:
      return "regular-compatible";
    case Verdict::non_regular:
      return "non-regular";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<ScalingCheck> scaling_checks(const QuadricSystem& system, const CorankCensus& census) {
  std::vector<ScalingCheck> checks;
  const int size = system.matrix_size();
  const Integer p = static_cast<unsigned long>(census.prime);
  for (int c = 1; c <= size; ++c) {
    ScalingCheck check;
    check.corank = c;
    check.count = census.at_least(c);
    check.expected_dim = system.r() - c * (c + 1) / 2;
    const Integer count = static_cast<unsigned long>(check.count);
    const Integer degree = symmetric_corank_degree(size, c);
    if (check.expected_dim >= 1) {
      Integer scale;
      mpz_pow_ui(scale.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(check.expected_dim));
      check.ratio = make_rational(count, scale);
      check.excess = check.ratio > Rational(2 * degree);
      check.consistent = check.ratio >= Rational(1, 2) && !check.excess;
    } else if (check.expected_dim == 0) {
      check.ratio = Rational(count);
      check.excess = count > degree;
      check.consistent = !check.excess;
    } else {
      check.ratio = Rational(count);
      check.excess = count > 0;
      check.consistent = !check.excess;
    }
    checks.push_back(check);
    if (check.expected_dim < 0) {
      break;
    }
  }
  return checks;
}

PrimeReport scan_prime(const QuadricSystem& system, std::uint64_t p, const CensusOptions& options) {
  PrimeReport report;
  report.prime = p;
  report.census = corank_census(system, p, options);
  try {
    report.det_degree = det_degree(system, p);
  } catch (const DegenerateSystem&) {
    report.det_degree.reset();
  }
  report.scaling = scaling_checks(system, report.census);
  if (report.det_degree) {
    report.nodes = node_quality(system, report.census);
  }

  const bool excess = std::any_of(report.scaling.begin(), report.scaling.end(),
                                  [](const ScalingCheck& s) { return s.excess; });
  const bool all_consistent = std::all_of(report.scaling.begin(), report.scaling.end(),
                                          [](const ScalingCheck& s) { return s.consistent; });
  if (!report.det_degree || excess || !report.nodes.all_pass()) {
    report.verdict = Verdict::non_regular;
  } else if (*report.det_degree != system.matrix_size() || !all_consistent ||
             report.census.singular_points_truncated) {
    report.verdict = Verdict::inconclusive;
  } else {
    report.verdict = Verdict::regular_compatible;
  }
  return report;
}

bool rank_self_check(int size, std::uint32_t p, std::size_t samples, std::uint64_t seed) {
  const Field f(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
  std::uniform_int_distribution<int> target(0, size);
  const auto nn = static_cast<std::size_t>(size * size);
  for (std::size_t s = 0; s < samples; ++s) {
    // symmetric B D B^T with an inner dimension of `k` has rank <= k
    const int k = target(rng);
    std::vector<std::uint32_t> b(static_cast<std::size_t>(size * std::max(k, 1)));
    for (auto& x : b) {
      x = entry(rng);
    }
    std::vector<std::uint32_t> d(static_cast<std::size_t>(std::max(k, 1)));
    for (auto& x : d) {
      x = entry(rng);
    }
    std::vector<std::uint32_t> m(nn, 0);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        std::uint32_t acc = 0;
        for (int t = 0; t < k; ++t) {
          const std::uint32_t bi = b[static_cast<std::size_t>(i * k + t)];
          const std::uint32_t bj = b[static_cast<std::size_t>(j * k + t)];
          acc = f.add(acc, f.mul(f.mul(bi, d[static_cast<std::size_t>(t)]), bj));
        }
        m[static_cast<std::size_t>(i * size + j)] = acc;
      }
    }
    if (rank_mod_p(m, size, p) != rank_by_minors(m, size, p)) {
      return false;
    }
  }
  return true;
}

RegularityReport regularity_report(const QuadricSystem& system, std::span<const std::uint64_t> primes,
                                   const CensusOptions& options) {
  if (system.r() > 3) {
    throw std::invalid_argument("regularity_report supports r <= 3");
  }
  if (primes.empty()) {
    throw std::invalid_argument("need at least one prime");
  }
  RegularityReport out;
  for (std::uint64_t p : primes) {
    out.primes.push_back(scan_prime(system, p, options));
  }
  out.rank_oracle_samples = 500;
  out.rank_oracle_agreement = rank_self_check(system.matrix_size(), static_cast<std::uint32_t>(primes.front()),
                                              out.rank_oracle_samples, 0x5eed);
  const bool any_non_regular = std::any_of(out.primes.begin(), out.primes.end(), [](const PrimeReport& r) {
    return r.verdict == Verdict::non_regular;
  });
  const bool all_regular = std::all_of(out.primes.begin(), out.primes.end(), [](const PrimeReport& r) {
    return r.verdict == Verdict::regular_compatible;
  });
  if (!out.rank_oracle_agreement) {
    out.verdict = Verdict::inconclusive;
  } else if (any_non_regular) {
    out.verdict = Verdict::non_regular;
  } else if (all_regular) {
    out.verdict = Verdict::regular_compatible;
  } else {
    out.verdict = Verdict::inconclusive;
  }
  return out;
}

}  // namespace quadcohom::detscan
