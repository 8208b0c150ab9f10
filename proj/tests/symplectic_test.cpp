#include <doctest.h>

#include <set>

#include "thetakit/jacobian_tools.hpp"

using namespace thetakit;

namespace {

IntMat j_matrix(int g) {
  IntMat j = IntMat::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g) = -IntMat::Identity(g, g);
  j.bottomLeftCorner(g, g) = IntMat::Identity(g, g);
  return j;
}

}  // namespace

TEST_CASE("generators are symplectic") {
  for (int g = 1; g <= 4; ++g) {
    const auto gens = standard_generators(g);
    CHECK(gens.size() == static_cast<std::size_t>(1 + g * (g + 1) / 2 + g * (g - 1)));
    const IntMat j = j_matrix(g);
    for (const auto& gen : gens) {
      const IntMat& m = gen.gamma.matrix();
      CHECK(m.transpose() * j * m == j);
      CHECK(gen.gamma * gen.gamma.inverse() == SymplecticMatrix::identity(g));
      CHECK(generator_by_name(g, gen.name) == gen.gamma);
    }
  }
  IntMat bad = IntMat::Identity(2, 2);
  bad(0, 1) = 1;
  bad(1, 0) = 1;
  CHECK_THROWS_AS(SymplecticMatrix{bad}, std::invalid_argument);
  CHECK_THROWS(generator_by_name(2, "T_33"));
}

TEST_CASE("word products compose left to right") {
  const auto j = generator_by_name(2, "J");
  const auto t = generator_by_name(2, "T_12");
  CHECK(word_product(2, {}) == SymplecticMatrix::identity(2));
  CHECK(word_product(2, {"J", "T_12"}) == t * j);
  CHECK(word_product(2, {"J", "J", "J", "J"}) == SymplecticMatrix::identity(2));
}

TEST_CASE("action on Siegel space") {
  for (int g = 1; g <= 3; ++g) {
    const PeriodMatrix i_tau(CMatrix::Identity(g, g) * Complex(0, 1));
    const auto image = sp_act(generator_by_name(g, "J"), i_tau);
    CHECK((image.tau() - i_tau.tau()).norm() < 1e-14);
  }
  Rng rng(3);
  const auto gens = standard_generators(2);
  for (int k = 0; k < 20; ++k) {
    const auto tau = random_tau(2, rng);
    const auto& a = gens[rng.below(static_cast<int>(gens.size()))].gamma;
    const auto& b = gens[rng.below(static_cast<int>(gens.size()))].gamma;
    // group action: (ab) tau = a (b tau)
    const auto lhs = sp_act(a * b, tau);
    const auto rhs = sp_act(a, sp_act(b, tau));
    CHECK((lhs.tau() - rhs.tau()).norm() < 1e-10 * (1 + lhs.tau().norm()));
    CHECK((sp_act(a.inverse(), sp_act(a, tau)).tau() - tau.tau()).norm() < 1e-10);
  }
}

TEST_CASE("action on characteristics") {
  for (int g = 1; g <= 3; ++g) {
    const auto gens = standard_generators(g);
    for (const auto& m : all_characteristics(g)) {
      CHECK(char_act(SymplecticMatrix::identity(g), m) == m);
      for (const auto& gen : gens) {
        CHECK(parity(char_act(gen.gamma, m)) == parity(m));
        for (const auto& other : gens)
          CHECK(char_act(gen.gamma * other.gamma, m) == char_act(gen.gamma, char_act(other.gamma, m)));
      }
    }
  }
  // Sp acts transitively on even characteristics.
  const auto gens = standard_generators(3);
  std::set<std::string> orbit{"101|111"};
  std::vector<Characteristic> frontier{Characteristic::parse("101|111")};
  while (!frontier.empty()) {
    const auto m = frontier.back();
    frontier.pop_back();
    for (const auto& gen : gens) {
      const auto next = char_act(gen.gamma, m);
      if (orbit.insert(next.to_string()).second) frontier.push_back(next);
    }
  }
  CHECK(orbit.size() == 36);
}

TEST_CASE("absolute transformation law") {
  Rng rng(5);
  for (int g = 1; g <= 3; ++g) {
    const auto tau = random_tau(g, rng);
    for (const auto& gen : standard_generators(g))
      for (const auto& m : even_characteristics(g))
        CHECK(transformation_law_residual(gen.gamma, m, tau).relative < 1e-9);
  }
}

TEST_CASE("congruence subgroups") {
  const auto id = SymplecticMatrix::identity(2);
  CHECK(congruence_membership(id, 2).level_n);
  CHECK(congruence_membership(id, 2).level_n_2n);
  CHECK_FALSE(congruence_membership(generator_by_name(2, "J"), 2).level_n);
  const auto t11 = generator_by_name(2, "T_11");
  const auto t12 = generator_by_name(2, "T_12");
  CHECK(congruence_membership(t11 * t11, 2).level_n);
  CHECK_FALSE(congruence_membership(t11 * t11, 2).level_n_2n);
  CHECK(congruence_membership(t12 * t12, 2).level_n_2n);
}
