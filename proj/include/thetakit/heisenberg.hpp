// The finite Heisenberg group acting on polynomials in X_sigma, the
// quadrics Q[eps, eps'] diagonalizing it, and exact rank computations for
// the spaces of cubics and quartic relations built from them.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "thetakit/characteristics.hpp"
#include "thetakit/exact_linalg.hpp"
#include "thetakit/polynomial.hpp"

namespace thetakit {

/// Q[eps, eps'] = sum_sigma (-1)^<sigma, eps'> X_sigma X_{sigma+eps}.
/// Throws std::invalid_argument when <eps, eps'> = 1.
IntPolynomial q_poly(int genus, BitVec eps, BitVec eps_prime);

/// All (eps, eps') with <eps, eps'> = 0, ordered by Characteristic::index.
std::vector<Characteristic> admissible_pairs(int genus);

/// (t, x, x*) with t = +-1. The character x* is v -> (-1)^<xstar, v>.
struct HeisenbergElement {
  int t = 1;
  BitVec x = 0;
  BitVec xstar = 0;

  /// (t,x,x*)(s,y,y*) = (t s y*(x), x+y, x*+y*).
  HeisenbergElement operator*(const HeisenbergElement& other) const;
  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

/// chi(x, x*) = ystar(x) * x*(y).
struct HCharacter {
  BitVec ystar = 0;
  BitVec y = 0;

  int value(const HeisenbergElement& h) const;
  bool is_trivial() const { return ystar == 0 && y == 0; }
};

/// (t, x, x*) X_sigma = t x*(x + sigma) X_{x+sigma}, extended multiplicatively.
IntPolynomial act(const HeisenbergElement& h, const IntPolynomial& p);

/// Invariant under every (1, 0, x*).
bool is_k_invariant(const IntPolynomial& f);

/// F_sigma = (1, sigma, 0) F. Throws std::invalid_argument unless F is a
/// K-invariant cubic.
IntPolynomial f_sigma(const IntPolynomial& f, BitVec sigma);

/// M(chi) F = sum_sigma ystar(sigma) X_{sigma+y} F_sigma.
IntPolynomial m_chi(const HCharacter& chi, const IntPolynomial& f);

/// Coefficient matrix: one row per polynomial, columns indexed by the union
/// of monomials in degrevlex order.
IntMatrix coefficient_matrix(const std::vector<IntPolynomial>& polys);

/// Exact rank over Q, cross-checked modulo two primes. Throws on mixed
/// degree or genus.
std::size_t span_rank(const std::vector<IntPolynomial>& polys);

/// X_rho * Q[eps, delta] for each pair (outer loop) and rho (inner loop).
std::vector<IntPolynomial> cubics_from_quadrics(const std::vector<Characteristic>& pairs);

/// dim S^3 B_1 = 2^g (2^g+1)(2^{g-1}+1)/3.
std::int64_t cubic_space_dimension(int genus);

/// Coefficients of a quartic relation
///   sum (-1)^<sigma, delta> v_{eps,delta} Q[eps,delta] Q[eps+sigma, delta+rho].
struct RelationTerm {
  Characteristic pair;
  mpq_class coeff;
};

struct RelationVector {
  int genus;
  BitVec sigma;
  BitVec rho;
  std::vector<RelationTerm> terms;
};

/// Pairs (eps, delta) with both <eps,delta> and <eps+sigma, delta+rho> even.
std::vector<Characteristic> relation_support(int genus, BitVec sigma, BitVec rho);

/// The quartic attached to v; rational coefficients are cleared to a
/// common denominator first.
IntPolynomial relation_quartic(const RelationVector& v);

inline constexpr int kMaxRelationGenus = 3;

struct RelationSpace {
  std::vector<Characteristic> support;
  std::vector<RelationVector> kernel;
  int dimension() const { return static_cast<int>(kernel.size()); }
};

/// Kernel of v -> relation_quartic(v). Throws std::invalid_argument for
/// g > 3.
RelationSpace relation_space(int genus, BitVec sigma, BitVec rho);
int relation_space_dim(int genus, BitVec sigma, BitVec rho);

/// Relation vector with v_{0,0} = 1, v_{s_k, e_{k+1}} = -1 and the
/// remaining support on the predicted vanishing pairs.
struct FrobeniusWitness {
  bool found = false;
  RelationVector vector;
  IntPolynomial expansion;  // zero when found
};

FrobeniusWitness frobenius_vector_in_kernel(int genus);

/// R_sigma = Q[0,0] X_sigma - sum_{k=0}^{g} (-1)^<sigma, e_{k+1}> Q[s_k, e_{k+1}] X_{sigma+s_k}.
IntPolynomial grushevsky_cubic(int genus, BitVec sigma);

/// Dimension of the chi-eigenspace of S^4 B_1, by projecting monomials.
int quartic_eigenspace_dim(int genus, const HCharacter& chi);

/// Dimension of the chi-eigenspace of the formal symmetric square of the
/// span of the Q[eps, eps'].
int sym2_quadric_eigenspace_dim(int genus, const HCharacter& chi);

/// The character by which h acts on Q[eps, eps'].
HCharacter q_character(BitVec eps, BitVec eps_prime);

}  // namespace thetakit
