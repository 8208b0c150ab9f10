// Exact linear algebra over Z and Q for the symbolic side of the library.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace thetakit {

/// Dense row-major matrix of machine integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// The two rank backends disagree.
class RankMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fraction-free (Bareiss) elimination over Z.
std::size_t bareiss_rank(const IntMatrix& m);

/// Rank over Z/pZ; p must be an odd prime below 2^31.
std::size_t modular_rank(const IntMatrix& m, std::uint32_t prime);

bool is_prime_u32(std::uint32_t n);

/// `count` distinct primes in [2^29, 2^30) drawn from a seeded generator.
std::vector<std::uint32_t> random_primes_30bit(std::uint64_t seed, int count);

struct RankReport {
  std::size_t rank;
  std::vector<std::uint32_t> primes;
  std::vector<std::size_t> modular_ranks;
};

/// Bareiss rank checked against two random 30-bit primes. Throws
/// RankMismatch on any disagreement.
RankReport certified_rank(const IntMatrix& m, std::uint64_t prime_seed = 0x7e7a6b1dULL);

/// Primitive integer basis of the right kernel {x : m x = 0}.
std::vector<std::vector<mpz_class>> integer_nullspace(const IntMatrix& m);

/// Some rational solution of m x = b, or nullopt when inconsistent.
std::optional<std::vector<mpq_class>> solve_rational(const IntMatrix& m, const std::vector<std::int64_t>& b);

}  // namespace thetakit
