#include <doctest.h>

#include <random>

#include "thetakit/heisenberg.hpp"

using namespace thetakit;

namespace {

IntPolynomial X(int g, BitVec s) { return IntPolynomial::variable(g, s); }

IntPolynomial random_k_invariant_cubic(int g, std::mt19937_64& rng) {
  IntPolynomial f(g);
  for (const auto& m : monomials_of_degree(g, 3))
    if (m.index_sum() == 0) {
      const int c = static_cast<int>(rng() % 7) - 3;
      if (c) f.add_term(m, c);
    }
  return f;
}

HeisenbergElement random_element(int g, std::mt19937_64& rng) {
  const BitVec n = BitVec{1} << g;
  return {rng() % 2 ? 1 : -1, static_cast<BitVec>(rng() % n), static_cast<BitVec>(rng() % n)};
}

}  // namespace

TEST_CASE("Q polynomials in genus 1") {
  CHECK(q_poly(1, 0, 0) == X(1, 0) * X(1, 0) + X(1, 1) * X(1, 1));
  CHECK(q_poly(1, 0, 1) == X(1, 0) * X(1, 0) - X(1, 1) * X(1, 1));
  CHECK(q_poly(1, 1, 0) == 2 * X(1, 0) * X(1, 1));
  CHECK_THROWS_AS(q_poly(1, 1, 1), std::invalid_argument);
}

TEST_CASE("Q basis size and independence") {
  for (int g = 1; g <= 3; ++g) {
    const auto pairs = admissible_pairs(g);
    CHECK(static_cast<long>(pairs.size()) == (1L << (g - 1)) * ((1L << g) + 1));
    std::vector<IntPolynomial> qs;
    for (const auto& p : pairs) qs.push_back(q_poly(g, p.eps(), p.delta()));
    CHECK(span_rank(qs) == pairs.size());
  }
  CHECK(admissible_pairs(2).size() == 10);
}

TEST_CASE("Heisenberg action") {
  std::mt19937_64 rng(41);
  for (int g = 1; g <= 3; ++g) {
    const auto pairs = admissible_pairs(g);
    for (int trial = 0; trial < 20; ++trial) {
      const auto& p = pairs[rng() % pairs.size()];
      const auto q = q_poly(g, p.eps(), p.delta());
      CHECK(act(HeisenbergElement{}, q) == q);
      const BitVec n = BitVec{1} << g;
      const HeisenbergElement h{1, static_cast<BitVec>(rng() % n), static_cast<BitVec>(rng() % n)};
      const int sign = (dot2(h.x, p.delta()) + dot2(h.xstar, p.eps())) % 2 ? -1 : 1;
      CHECK(act(h, q) == sign * q);
      CHECK(q_character(p.eps(), p.delta()).value(h) == sign);
      const HeisenbergElement shift{1, h.x, 0};
      const auto cubic = X(g, static_cast<BitVec>(rng() % n)) * q;
      CHECK(act(shift, act(shift, cubic)) == cubic);

      // group law
      const auto h1 = random_element(g, rng), h2 = random_element(g, rng);
      CHECK(act(h1 * h2, cubic) == act(h1, act(h2, cubic)));
    }
  }
}

TEST_CASE("K-invariant cubics, F_sigma and M(chi)") {
  std::mt19937_64 rng(43);
  for (int g = 2; g <= 3; ++g) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_k_invariant_cubic(g, rng);
      REQUIRE(is_k_invariant(f));
      CHECK(f_sigma(f, 0) == f);
      const BitVec n = BitVec{1} << g;
      for (BitVec s = 0; s < n; ++s) CHECK(act(HeisenbergElement{1, s, 0}, f_sigma(f, s)) == f);

      const auto m0 = m_chi(HCharacter{0, 0}, f);
      for (BitVec s = 0; s < n; ++s) CHECK(m0.derivative(s) == 4 * f_sigma(f, s));
      CHECK(m0.derivative(0) == 4 * f);  // 4^-1 d/dX_0 inverts M(0)

      const HCharacter chi{static_cast<BitVec>(rng() % n), static_cast<BitVec>(rng() % n)};
      const auto mc = m_chi(chi, f);
      for (int k = 0; k < 4; ++k) {
        const HeisenbergElement h{1, static_cast<BitVec>(rng() % n), static_cast<BitVec>(rng() % n)};
        CHECK(act(h, mc) == chi.value(h) * mc);
      }
    }
  }
  const auto not_invariant = X(2, 1) * X(2, 0) * X(2, 0);
  CHECK_FALSE(is_k_invariant(not_invariant));
  CHECK_THROWS_AS(f_sigma(not_invariant, 1), std::invalid_argument);
  CHECK_THROWS_AS(m_chi(HCharacter{}, not_invariant), std::invalid_argument);
}

TEST_CASE("eigenspace dimensions") {
  for (int g = 2; g <= 3; ++g) {
    const int n = 1 << g;
    CHECK(quartic_eigenspace_dim(g, HCharacter{0, 0}) == (n + 1) * (n / 2 + 1) / 3);
    CHECK(sym2_quadric_eigenspace_dim(g, HCharacter{0, 0}) == (n / 2) * (n + 1));
    for (BitVec ys = 0; ys < static_cast<BitVec>(n); ++ys)
      for (BitVec y = 0; y < static_cast<BitVec>(n); ++y) {
        if (ys == 0 && y == 0) continue;
        CHECK(quartic_eigenspace_dim(g, HCharacter{ys, y}) == (n / 2 + 1) * (n / 4 + 1) / 3);
        CHECK(sym2_quadric_eigenspace_dim(g, HCharacter{ys, y}) == (n / 4) * (n / 2 + 1));
      }
  }
  CHECK(cubic_space_dimension(4) == 816);
  CHECK(cubic_space_dimension(4) == static_cast<long>(monomials_of_degree(4, 3).size()));
}

TEST_CASE("span ranks") {
  std::vector<IntPolynomial> g1;
  for (const auto& p : admissible_pairs(1)) g1.push_back(q_poly(1, p.eps(), p.delta()));
  CHECK(span_rank(g1) == 3);

  const auto hyper = cubics_from_quadrics(predicted_vanishing_set(4));
  CHECK(hyper.size() == 160);
  CHECK(span_rank(hyper) == 144);
  const auto vd = cubics_from_quadrics(varley_debarre_sets(4, VarleyDebarreVariant::weight_two_three));
  CHECK(vd.size() == 160);
  CHECK(span_rank(vd) == 160);

  // Heisenberg translates have the same rank.
  std::mt19937_64 rng(47);
  for (int k = 0; k < 3; ++k) {
    const auto h = random_element(4, rng);
    std::vector<IntPolynomial> moved;
    for (const auto& p : hyper) moved.push_back(act(h, p));
    CHECK(span_rank(moved) == 144);
  }

  std::vector<IntPolynomial> mixed{X(2, 0), X(2, 0) * X(2, 1)};
  CHECK_THROWS(span_rank(mixed));
  CHECK_THROWS(cubics_from_quadrics({Characteristic::parse("1|1")}));
}

TEST_CASE("genus-4 cubics R_sigma lie in the span of the 160 generators") {
  // 4 R_sigma is a combination of d/dX_sigma of the squares of vanishing Q's,
  // so adjoining it does not raise the rank.
  auto generators = cubics_from_quadrics(predicted_vanishing_set(4));
  for (BitVec sigma : {0u, 5u, 15u}) {
    auto extended = generators;
    extended.push_back(grushevsky_cubic(4, sigma));
    CHECK(span_rank(extended) == 144);
  }
}

TEST_CASE("relation spaces") {
  const auto s1 = relation_space(1, 0, 0);
  CHECK(s1.dimension() == 1);
  // Q00^2 - Q01^2 - Q10^2 = 0 up to scaling
  const auto jacobi = q_poly(1, 0, 0) * q_poly(1, 0, 0) - q_poly(1, 0, 1) * q_poly(1, 0, 1) -
                      q_poly(1, 1, 0) * q_poly(1, 1, 0);
  CHECK(jacobi.is_zero());
  CHECK(relation_space_dim(2, 0, 0) == 5);
  for (BitVec s = 0; s < 2; ++s)
    for (BitVec r = 0; r < 2; ++r) {
      const auto space = relation_space(1, s, r);
      for (const auto& v : space.kernel) CHECK(relation_quartic(v).is_zero());
    }
  for (const auto& v : relation_space(2, 0, 0).kernel) CHECK(relation_quartic(v).is_zero());
  for (const auto& p : relation_support(2, 1, 2)) {
    CHECK(p.is_even());
    CHECK((p + Characteristic(2, 1, 2)).is_even());
  }
  CHECK_THROWS_AS(relation_space(4, 0, 0), std::invalid_argument);
}

TEST_CASE("Frobenius witnesses") {
  for (int g = 1; g <= 3; ++g) {
    const auto w = frobenius_vector_in_kernel(g);
    REQUIRE(w.found);
    CHECK(w.expansion.is_zero());
    CHECK(relation_quartic(w.vector).is_zero());
    const auto vanishing = predicted_vanishing_set(g);
    for (const auto& t : w.vector.terms) {
      CHECK(abs(t.coeff) == 1);
      bool allowed = t.pair == Characteristic::zero(g);
      for (int k = 0; k <= g; ++k) allowed = allowed || t.pair == Characteristic(g, prefix_vector(k), unit_vector(k + 1, g));
      for (const auto& v : vanishing) allowed = allowed || t.pair == v;
      CHECK(allowed);
    }
  }
  // genus 2: Q00^2 - Q[0,e1]^2 - Q[s1,e2]^2 - Q[s2,0]^2 = 0
  const auto q = [](BitVec e, BitVec d) { return q_poly(2, e, d); };
  const auto rf = q(0, 0) * q(0, 0) - q(0, 1) * q(0, 1) - q(1, 2) * q(1, 2) - q(3, 0) * q(3, 0);
  CHECK(rf.is_zero());
}
