#include <doctest.h>

#include <cmath>
#include <numeric>

#include "thetakit/jacobian_tools.hpp"

using namespace thetakit;

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 40; ++i) {  // quadratic convergence, 40 steps is plenty
    const double m = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = m;
  }
  return a;
}

}  // namespace

TEST_CASE("branch point parsing") {
  CHECK(BranchPointSet::parse("0,1,2").genus() == 1);
  CHECK(BranchPointSet::parse("0,1,2").has_infinity());
  CHECK(BranchPointSet::parse("0,1,2,inf").genus() == 1);
  CHECK(BranchPointSet::parse("0,1,2,3").genus() == 1);
  CHECK_FALSE(BranchPointSet::parse("0,1,2,3").has_infinity());
  CHECK(BranchPointSet::parse("0,1,2,3,4,5,6,7").genus() == 3);
  CHECK(BranchPointSet::parse("0,1,2,3,4,5,6,7,8").genus() == 4);
  CHECK_THROWS_AS(BranchPointSet::parse("0,1"), std::invalid_argument);
  CHECK_THROWS_AS(BranchPointSet::parse("0,2,1"), std::invalid_argument);
  CHECK_THROWS_AS(BranchPointSet::parse("0,inf,1,2"), std::invalid_argument);
  CHECK_THROWS_AS(BranchPointSet::parse("0,1,x"), std::invalid_argument);
}

TEST_CASE("genus 1 against the AGM") {
  for (double lambda : {2.0, 3.0, 1.5, 10.0, 1.1}) {
    const auto r = hyperelliptic_periods(BranchPointSet({0.0, 1.0, lambda}, true));
    const double k = std::sqrt((lambda - 1) / lambda), kp = std::sqrt(1 / lambda);
    const Complex expected(0.0, agm(1, k) / agm(1, kp));
    CHECK(std::abs(r.tau.tau()(0, 0) - expected) < 1e-10);
  }
}

TEST_CASE("higher genus periods are Riemann matrices") {
  for (const char* text : {"0,1,2,3,4", "0,1,2,3,4,5,6,7", "-3,-1,0.5,2,2.5,4,7,9,11"}) {
    const auto bp = BranchPointSet::parse(text);
    const auto r = hyperelliptic_periods(bp);
    CHECK(r.tau.genus() == bp.genus());
    CHECK(r.symmetry_defect < 1e-10);
    CHECK(r.refinement_change < 1e-9);
    CHECK(r.tau.min_eigenvalue() > 0);
    CHECK(r.a_periods.rows() == bp.genus());
  }
  CHECK_THROWS_AS(hyperelliptic_periods(BranchPointSet::parse("0,1,2"), 4), std::invalid_argument);
  CHECK_THROWS_AS(hyperelliptic_periods(BranchPointSet::parse("0,1,2,3,4,5,6,7,8,9,10")), std::invalid_argument);
}

TEST_CASE("Mobius invariance of the vanishing count") {
  // Different real branch points of genus 3 always give one vanishing even constant.
  for (const char* text : {"0,1,2,3,4,5,6,7", "0,0.3,1,4,5,5.5,9"}) {
    const auto r = hyperelliptic_periods(BranchPointSet::parse(text));
    const auto pattern = vanishing_pattern(r.tau, 1e-6);
    CHECK(pattern.vanishing.size() == 1);
  }
}
