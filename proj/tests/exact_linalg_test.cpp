#include <doctest.h>

#include <random>

#include "thetakit/exact_linalg.hpp"

using namespace thetakit;

namespace {

// Plain rational Gaussian elimination, for comparison.
std::size_t rational_rank(const IntMatrix& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = static_cast<long>(m(r, c));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

IntMatrix low_rank(std::size_t rows, std::size_t cols, std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<std::vector<int>> a(rows, std::vector<int>(k)), b(k, std::vector<int>(cols));
  for (auto& row : a)
    for (auto& v : row) v = d(rng);
  for (auto& row : b)
    for (auto& v : row) v = d(rng);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t i = 0; i < k; ++i) m(r, c) += a[r][i] * b[i][c];
  return m;
}

}  // namespace

TEST_CASE("small ranks") {
  IntMatrix zero(3, 4);
  CHECK(bareiss_rank(zero) == 0);
  IntMatrix id(3, 3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK(bareiss_rank(id) == 3);
  IntMatrix dup(2, 3);
  dup(0, 0) = 1, dup(0, 1) = 2, dup(0, 2) = 3;
  dup(1, 0) = 2, dup(1, 1) = 4, dup(1, 2) = 6;
  CHECK(bareiss_rank(dup) == 1);
  CHECK(bareiss_rank(dup.transposed()) == 1);
  IntMatrix empty;
  CHECK(bareiss_rank(empty) == 0);
}

TEST_CASE("random low-rank products against rational elimination") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 3 + trial % 9, cols = 4 + (trial * 7) % 11;
    const std::size_t k = 1 + trial % std::min(rows, cols);
    const auto m = low_rank(rows, cols, k, rng);
    const auto expected = rational_rank(m);
    CHECK(bareiss_rank(m) == expected);
    CHECK(bareiss_rank(m.transposed()) == expected);
    const auto report = certified_rank(m);
    CHECK(report.rank == expected);
    CHECK(report.primes.size() == 2);
    for (auto r : report.modular_ranks) CHECK(r == expected);
  }
}

TEST_CASE("modular rank sees characteristic p") {
  IntMatrix m(2, 2);
  m(0, 0) = 1, m(0, 1) = 1;
  m(1, 0) = 1, m(1, 1) = 8;  // det 7
  CHECK(modular_rank(m, 7) == 1);
  CHECK(modular_rank(m, 11) == 2);
  CHECK(bareiss_rank(m) == 2);
}

TEST_CASE("primes") {
  CHECK(is_prime_u32(2));
  CHECK(is_prime_u32(2147483647u));
  CHECK_FALSE(is_prime_u32(1));
  CHECK_FALSE(is_prime_u32(561));       // Carmichael
  CHECK_FALSE(is_prime_u32(3215031751u));  // strong pseudoprime to 2, 3, 5, 7
  const auto ps = random_primes_30bit(5, 4);
  CHECK(ps.size() == 4);
  for (auto p : ps) {
    CHECK(is_prime_u32(p));
    CHECK(p >= (1u << 29));
    CHECK(p < (1u << 30));
  }
  CHECK(random_primes_30bit(5, 4) == ps);
}

TEST_CASE("integer nullspace and rational solve") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = low_rank(5, 8, 1 + trial % 5, rng);
    const auto kernel = integer_nullspace(m);
    CHECK(kernel.size() == m.cols() - rational_rank(m));
    for (const auto& v : kernel) {
      for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class s = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) s += v[c] * static_cast<long>(m(r, c));
        CHECK(s == 0);
      }
      mpz_class g = 0;
      for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      CHECK(g == 1);
    }
    // b in the column space is solvable
    std::vector<std::int64_t> b(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) b[r] = m(r, 0) - 2 * m(r, 3);
    const auto x = solve_rational(m, b);
    REQUIRE(x.has_value());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      mpq_class s = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) s += (*x)[c] * static_cast<long>(m(r, c));
      CHECK(s == b[r]);
    }
  }
  IntMatrix m(2, 1);
  m(0, 0) = 1, m(1, 0) = 1;
  CHECK_FALSE(solve_rational(m, {1, 2}).has_value());
}
