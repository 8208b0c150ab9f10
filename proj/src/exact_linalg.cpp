#include "thetakit/exact_linalg.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

namespace thetakit {

IntMatrix IntMatrix::transposed() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

std::size_t bareiss_rank(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = static_cast<long>(m(r, c));

  mpz_class prev = 1;
  mpz_class t;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (sgn(a[r][c]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    const auto& prow = a[rank];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      auto& row = a[r];
      const bool below_zero = sgn(row[c]) == 0;
      for (std::size_t j = c + 1; j < cols; ++j) {
        // row[j] = (pivot * row[j] - row[c] * prow[j]) / prev, exact.
        mpz_mul(t.get_mpz_t(), prow[c].get_mpz_t(), row[j].get_mpz_t());
        if (!below_zero) mpz_submul(t.get_mpz_t(), row[c].get_mpz_t(), prow[j].get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = prow[c];
    ++rank;
  }
  return rank;
}

std::size_t modular_rank(const IntMatrix& m, std::uint32_t prime) {
  if (prime < 3 || !is_prime_u32(prime)) throw std::invalid_argument("modular_rank: modulus must be an odd prime");
  const std::uint64_t p = prime;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      std::int64_t v = m(r, c) % static_cast<std::int64_t>(p);
      a[r][c] = static_cast<std::uint64_t>(v < 0 ? v + static_cast<std::int64_t>(p) : v);
    }

  auto power = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t result = 1;
    b %= p;
    while (e) {
      if (e & 1) result = result * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return result;
  };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    std::uint64_t inv = power(a[rank][c], p - 2);
    for (std::size_t j = c; j < cols; ++j) a[rank][j] = a[rank][j] * inv % p;
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint64_t f = a[r][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        a[r][j] = (a[r][j] + (p - f) * a[rank][j]) % p;
      }
    }
    ++rank;
  }
  return rank;
}

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t small : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 32-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) { return a * b % n; };
  for (std::uint64_t base : {2u, 7u, 61u}) {
    if (base % n == 0) continue;
    std::uint64_t x = 1, b = base, e = d;
    while (e) {
      if (e & 1) x = mulmod(x, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> random_primes_30bit(std::uint64_t seed, int count) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint32_t> out;
  while (static_cast<int>(out.size()) < count) {
    auto candidate = static_cast<std::uint32_t>((gen() >> 35) | (1u << 29) | 1u) & ((1u << 30) - 1);
    if (is_prime_u32(candidate) && std::find(out.begin(), out.end(), candidate) == out.end()) {
      out.push_back(candidate);
    }
  }
  return out;
}

RankReport certified_rank(const IntMatrix& m, std::uint64_t prime_seed) {
  RankReport report{bareiss_rank(m), random_primes_30bit(prime_seed, 2), {}};
  for (auto p : report.primes) {
    report.modular_ranks.push_back(modular_rank(m, p));
    if (report.modular_ranks.back() != report.rank) {
      throw RankMismatch("rank mismatch: Bareiss " + std::to_string(report.rank) + " vs mod " + std::to_string(p) +
                         " " + std::to_string(report.modular_ranks.back()));
    }
  }
  return report;
}

namespace {

// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<mpq_class>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t pivot = a.size();
    for (std::size_t r = row; r < a.size(); ++r) {
      if (sgn(a[r][c]) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == a.size()) continue;
    std::swap(a[row], a[pivot]);
    mpq_class inv = 1 / a[row][c];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][c]) == 0) continue;
      mpq_class f = a[r][c];
      for (std::size_t j = c; j < a[r].size(); ++j) a[r][j] -= f * a[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<mpq_class>> to_rational(const IntMatrix& m, std::size_t extra_cols) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols() + extra_cols));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = static_cast<long>(m(r, c));
  return a;
}

}  // namespace

std::vector<std::vector<mpz_class>> integer_nullspace(const IntMatrix& m) {
  auto a = to_rational(m, 0);
  auto pivots = rref(a, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<mpz_class>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<mpq_class> x(m.cols(), 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -a[i][free];
    mpz_class denom_lcm = 1;
    for (const auto& v : x) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), v.get_den_mpz_t());
    std::vector<mpz_class> xi(m.cols());
    mpz_class g = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      mpq_class scaled = x[k] * denom_lcm;
      xi[k] = scaled.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), xi[k].get_mpz_t());
    }
    if (g > 1) {
      for (auto& v : xi) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    basis.push_back(std::move(xi));
  }
  return basis;
}

std::optional<std::vector<mpq_class>> solve_rational(const IntMatrix& m, const std::vector<std::int64_t>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_rational: right-hand side has wrong length");
  auto a = to_rational(m, 1);
  for (std::size_t r = 0; r < m.rows(); ++r) a[r][m.cols()] = static_cast<long>(b[r]);
  auto pivots = rref(a, m.cols() + 1);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<mpq_class> x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][m.cols()];
  return x;
}

}  // namespace thetakit
