#include <doctest.h>

#include <cmath>

#include "thetakit/identities.hpp"
#include "thetakit/jacobian_tools.hpp"

using namespace thetakit;

namespace {

// Genus-3 hyperelliptic tau moved to the standard vanishing pattern.
PeriodMatrix standard_genus3_tau() {
  const auto periods = hyperelliptic_periods(BranchPointSet::parse("0,1,2,3,4,5,6,7"));
  const auto pattern = vanishing_pattern(periods.tau, 1e-6);
  const auto transport = transport_to_standard(periods.tau, pattern);
  REQUIRE(transport.success);
  return *transport.tau_prime;
}

}  // namespace

TEST_CASE("Rng streams are reproducible") {
  Rng a(123), b(123), c(124);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    (void)c;
  }
  Rng d(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = d.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const int k = d.below(7);
    CHECK(k >= 0);
    CHECK(k < 7);
  }
  CHECK(Rng(1).next() != Rng(2).next());
}

TEST_CASE("random_tau lies in Siegel space") {
  Rng rng(9);
  for (int g = 1; g <= 4; ++g)
    for (int k = 0; k < 10; ++k) {
      const auto tau = random_tau(g, rng);
      CHECK(tau.min_eigenvalue() >= 0.3 - 1e-12);
      CHECK((tau.tau() - tau.tau().transpose()).norm() == 0.0);
    }
}

TEST_CASE("addition formula") {
  Rng rng(11);
  for (int g = 1; g <= 3; ++g) {
    const BitVec n = BitVec{1} << g;
    for (int k = 0; k < 10; ++k) {
      const auto tau = random_tau(g, rng);
      const auto z = random_z(g, rng), w = random_z(g, rng);
      const auto r = addition_formula_residual(tau, z, w, rng.next() % n, rng.next() % n, rng.next() % n);
      CHECK(r.relative < 1e-10);
    }
  }
}

TEST_CASE("Riemann relations from kernel vectors") {
  Rng rng(13);
  for (BitVec sigma : {0u, 1u, 3u})
    for (BitVec rho : {0u, 2u}) {
      const auto space = relation_space(2, sigma, rho);
      for (const auto& v : space.kernel) {
        const auto tau = random_tau(2, rng);
        const auto z = random_z(2, rng);
        const std::vector<long> x{static_cast<long>(rng.below(2)), static_cast<long>(rng.below(2))};
        const std::vector<long> y{static_cast<long>(rng.below(2)), 0};
        CHECK(riemann_residual(tau, z, v, x, y).relative < 1e-9);
      }
    }
  // A vector that is not a relation is refused.
  RelationVector bogus{2, 0, 0, {{Characteristic::zero(2), 1}}};
  Rng r2(1);
  CHECK_THROWS_AS(riemann_residual(random_tau(2, r2), CVector::Zero(2), bogus, {0, 0}, {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("Frobenius formula and R_sigma on random genus 2") {
  Rng rng(17);
  const auto f = standard_fundamental_system(2);
  for (int k = 0; k < 10; ++k) {
    const auto tau = random_tau(2, rng);
    const auto z1 = random_z(2, rng), z2 = random_z(2, rng), z3 = random_z(2, rng);
    CHECK(frobenius_residual(tau, f, z1, z2, z3).relative < 1e-9);
    for (BitVec s = 0; s < 4; ++s) CHECK(grushevsky_residual(tau, s, z1).relative < 1e-9);
    CHECK(rf_residual(tau, z1).relative < 1e-9);
  }
}

TEST_CASE("R_sigma agrees with its polynomial form") {
  Rng rng(19);
  for (int g = 2; g <= 3; ++g) {
    const auto tau = random_tau(g, rng);
    const auto z = random_z(g, rng);
    const auto th2 = th2_map(tau, z);
    std::vector<Complex> vals;
    for (const auto& t : th2) vals.push_back(t.value);
    for (BitVec s = 0; s < (BitVec{1} << g); ++s) {
      const auto poly = grushevsky_cubic(g, s).evaluate(vals);
      const auto r = grushevsky_residual_th2(g, s, th2);
      CHECK(std::abs(std::abs(poly) - r.max_abs_residual) <= 1e-12 * std::max(1.0, r.scale));
    }
  }
}

TEST_CASE("rf2a and rf2 on a genus-3 hyperelliptic tau") {
  const auto tau = standard_genus3_tau();
  Rng rng(23);
  for (int k = 0; k < 3; ++k) {
    const auto z = random_z(3, rng);
    for (BitVec s = 0; s < 8; ++s) CHECK(grushevsky_residual(tau, s, z).relative < 1e-7);
    for (const auto& m : even_characteristics(3)) CHECK(rf2a_residual(tau, z, m.eps(), m.delta()).relative < 1e-7);
  }
  CHECK(rf2_residual(tau, CVector::Zero(3), {1, 0, 1}, {1, 1, 1}).relative < 1e-7);
  CHECK_THROWS_AS(rf2a_residual(tau, CVector::Zero(3), 1, 1), std::invalid_argument);
}

TEST_CASE("rf2 needs the sign factor") {
  // With x = e1 the sign (-1)^<x, e_{k+1}> is -1 only for k = 0; the signed
  // identity holds on random genus-2 tau.
  Rng rng(29);
  for (int k = 0; k < 5; ++k) {
    const auto tau = random_tau(2, rng);
    const auto z = random_z(2, rng);
    CHECK(rf2_residual(tau, z, {1, 0}, {0, 1}).relative < 1e-9);
    CHECK(rf2_residual(tau, z, {1, 1}, {1, 0}).relative < 1e-9);
  }
}

TEST_CASE("arrowhead determinant") {
  for (int n = 2; n <= 7; ++n) CHECK(arrowhead_determinant_identity(n));
  const auto sys = arrowhead_system(Complex(2.0, 1.0), {Complex(1, 0), Complex(0, 1), Complex(3, -1), Complex(-2, 0),
                                                        Complex(0.5, 0.5)});
  CHECK(sys.matrix.rows() == 6);
  CHECK(std::abs(sys.determinant - sys.matrix.determinant()) < 1e-9 * std::abs(sys.determinant));
  Rng rng(31);
  CHECK_THROWS_AS(genus4_system(random_tau(3, rng)), std::invalid_argument);
}
