#include <doctest.h>

#include <limits>
#include <random>

#include "thetakit/polynomial.hpp"

using namespace thetakit;

namespace {

long binomial(long n, long k) {
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

IntPolynomial random_poly(int g, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-5, 5);
  IntPolynomial p(g);
  for (const auto& m : monomials_of_degree(g, degree))
    if (rng() % 3 == 0) p.add_term(m, c(rng));
  return p;
}

}  // namespace

TEST_CASE("monomial counts and order") {
  for (int g = 1; g <= 3; ++g)
    for (int d = 0; d <= 4; ++d)
      CHECK(static_cast<long>(monomials_of_degree(g, d).size()) == binomial((1 << g) + d - 1, d));
  CHECK(monomials_of_degree(4, 3).size() == 816);

  // degrevlex, X_0 > X_1 > X_2 > X_3
  const auto m = monomials_of_degree(2, 2);
  const std::vector<std::vector<BitVec>> expected{{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2},
                                                  {2, 2}, {0, 3}, {1, 3}, {2, 3}, {3, 3}};
  REQUIRE(m.size() == expected.size());
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(m[i].vars() == expected[i]);
  const DegRevLexGreater before;
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    CHECK(before(m[i], m[i + 1]));
    CHECK_FALSE(before(m[i + 1], m[i]));
  }
}

TEST_CASE("monomial arithmetic") {
  const Monomial a({3, 1}), b({1, 2});
  CHECK(a.vars() == std::vector<BitVec>{1, 3});
  CHECK((a * b).vars() == std::vector<BitVec>{1, 1, 2, 3});
  CHECK((a * b).exponent(1) == 2);
  CHECK(a.index_sum() == (3u ^ 1u));
  CHECK_THROWS(Monomial({0, 0, 0, 0, 0}));
}

TEST_CASE("ring operations agree with evaluation") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int g = 1 + trial % 3;
    const auto p = random_poly(g, 2, rng), q = random_poly(g, 2, rng);
    std::vector<std::complex<double>> x(1 << g);
    for (auto& v : x) v = {u(rng), u(rng)};
    const auto pv = p.evaluate(x), qv = q.evaluate(x);
    CHECK(std::abs((p * q).evaluate(x) - pv * qv) < 1e-10);
    CHECK(std::abs((p + q).evaluate(x) - (pv + qv)) < 1e-12);
    CHECK(std::abs((p - q).evaluate(x) - (pv - qv)) < 1e-12);
    CHECK(p - p == IntPolynomial(g));
    CHECK((p * q) == (q * p));
    CHECK(std::abs((3 * p).evaluate(x) - 3.0 * pv) < 1e-12);
  }
}

TEST_CASE("derivative") {
  const int g = 2;
  const auto x0 = IntPolynomial::variable(g, 0), x1 = IntPolynomial::variable(g, 1);
  const auto p = x0 * x0 * x1 + 5 * x1 * x1 * x1;
  CHECK(p.derivative(0) == 2 * x0 * x1);
  CHECK(p.derivative(1) == x0 * x0 + 15 * x1 * x1);
  CHECK(p.derivative(3).is_zero());
  CHECK(p.degree() == 3);
  CHECK(p.is_homogeneous());
  CHECK_FALSE((p + IntPolynomial::constant(g, 1)).is_homogeneous());
  CHECK(IntPolynomial(g).degree() == -1);

  // Euler: sum_sigma X_sigma dP/dX_sigma = deg P * P
  std::mt19937_64 rng(37);
  const auto r = random_poly(2, 3, rng);
  IntPolynomial euler(2);
  for (BitVec s = 0; s < 4; ++s) euler += IntPolynomial::variable(2, s) * r.derivative(s);
  CHECK(euler == 3 * r);
}

TEST_CASE("overflow and degree guards") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  CHECK_THROWS_AS(checked_add(big, 1), std::overflow_error);
  CHECK_THROWS_AS(checked_mul(big, 2), std::overflow_error);
  CHECK(checked_mul(-3, 4) == -12);
  IntPolynomial p(1);
  p.add_term(Monomial({0}), big);
  CHECK_THROWS_AS(p.add_term(Monomial({0}), 1), std::overflow_error);
  const auto x = IntPolynomial::variable(1, 0);
  const auto x4 = x * x * x * x;
  CHECK_THROWS(x4 * x);
  CHECK_THROWS(IntPolynomial::variable(1, 2));
}

TEST_CASE("to_string is stable") {
  const auto x0 = IntPolynomial::variable(2, 0), x3 = IntPolynomial::variable(2, 3);
  const auto p = x0 * x0 - 2 * x0 * x3;
  CHECK(p.to_string() == (p + IntPolynomial(2)).to_string());
  CHECK_FALSE(p.to_string().empty());
}
