#include "thetakit/heisenberg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace thetakit {

namespace {

int sign_of(int parity_bit) { return parity_bit ? -1 : 1; }

void check_poly_genus(int genus) {
  if (genus < 1 || genus > kMaxPolyGenus) throw std::invalid_argument("genus out of range for polynomials");
}

}  // namespace

IntPolynomial q_poly(int genus, BitVec eps, BitVec eps_prime) {
  check_poly_genus(genus);
  const BitVec mask = full_mask(genus);
  if ((eps & ~mask) || (eps_prime & ~mask)) throw std::invalid_argument("q_poly: index out of range");
  if (dot2(eps, eps_prime)) throw std::invalid_argument("q_poly: <eps, eps'> must be even");
  IntPolynomial q(genus);
  for (BitVec sigma = 0; sigma <= mask; ++sigma) {
    q.add_term(Monomial({sigma, sigma ^ eps}), sign_of(dot2(sigma, eps_prime)));
  }
  return q;
}

std::vector<Characteristic> admissible_pairs(int genus) { return even_characteristics(genus); }

HeisenbergElement HeisenbergElement::operator*(const HeisenbergElement& other) const {
  return {t * other.t * sign_of(dot2(other.xstar, x)), x ^ other.x, xstar ^ other.xstar};
}

int HCharacter::value(const HeisenbergElement& h) const { return sign_of(dot2(ystar, h.x) ^ dot2(h.xstar, y)); }

HCharacter q_character(BitVec eps, BitVec eps_prime) { return {eps_prime, eps}; }

IntPolynomial act(const HeisenbergElement& h, const IntPolynomial& p) {
  if (h.t != 1 && h.t != -1) throw std::invalid_argument("act: scalar must be +-1");
  IntPolynomial r(p.genus());
  for (const auto& [m, c] : p.terms()) {
    std::vector<BitVec> vars = m.vars();
    int parity_bit = (h.t == -1) ? (m.degree() & 1) : 0;
    for (auto& v : vars) {
      v ^= h.x;
      parity_bit ^= dot2(h.xstar, v);
    }
    r.add_term(Monomial(std::move(vars)), parity_bit ? -c : c);
  }
  return r;
}

bool is_k_invariant(const IntPolynomial& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [](const auto& t) { return t.first.index_sum() == 0; });
}

namespace {
void require_invariant_cubic(const IntPolynomial& f) {
  if (!f.is_zero() && (f.degree() != 3 || !f.is_homogeneous()))
    throw std::invalid_argument("expected a homogeneous cubic");
  if (!is_k_invariant(f)) throw std::invalid_argument("cubic is not K-invariant");
}
}  // namespace

IntPolynomial f_sigma(const IntPolynomial& f, BitVec sigma) {
  require_invariant_cubic(f);
  return act({1, sigma, 0}, f);
}

IntPolynomial m_chi(const HCharacter& chi, const IntPolynomial& f) {
  require_invariant_cubic(f);
  const int g = f.genus();
  IntPolynomial r(g);
  for (BitVec sigma = 0; sigma <= full_mask(g); ++sigma) {
    IntPolynomial term = IntPolynomial::variable(g, sigma ^ chi.y) * act({1, sigma, 0}, f);
    if (dot2(chi.ystar, sigma)) r -= term;
    else r += term;
  }
  return r;
}

IntMatrix coefficient_matrix(const std::vector<IntPolynomial>& polys) {
  std::set<Monomial, DegRevLexGreater> columns;
  int genus = -1;
  int degree = -1;
  for (const auto& p : polys) {
    if (genus == -1) genus = p.genus();
    if (p.genus() != genus) throw std::invalid_argument("span_rank: mixed genera");
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) throw std::invalid_argument("span_rank: inhomogeneous polynomial");
    if (degree == -1) degree = p.degree();
    if (p.degree() != degree) throw std::invalid_argument("span_rank: mixed degrees");
    for (const auto& t : p.terms()) columns.insert(t.first);
  }
  std::vector<Monomial> cols(columns.begin(), columns.end());
  IntMatrix m(polys.size(), cols.size());
  for (std::size_t r = 0; r < polys.size(); ++r) {
    for (const auto& [mono, c] : polys[r].terms()) {
      auto it = std::lower_bound(cols.begin(), cols.end(), mono, DegRevLexGreater{});
      m(r, static_cast<std::size_t>(it - cols.begin())) = c;
    }
  }
  return m;
}

std::size_t span_rank(const std::vector<IntPolynomial>& polys) {
  IntMatrix m = coefficient_matrix(polys);
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Elimination cost scales with the shorter side squared.
  if (m.cols() < m.rows()) m = m.transposed();
  return certified_rank(m).rank;
}

std::vector<IntPolynomial> cubics_from_quadrics(const std::vector<Characteristic>& pairs) {
  std::vector<IntPolynomial> out;
  for (const auto& p : pairs) {
    const int g = p.genus();
    if (!p.is_even()) throw std::invalid_argument("cubics_from_quadrics: inadmissible pair " + p.to_string());
    IntPolynomial q = q_poly(g, p.eps(), p.delta());
    for (BitVec rho = 0; rho <= full_mask(g); ++rho) out.push_back(IntPolynomial::variable(g, rho) * q);
  }
  return out;
}

std::int64_t cubic_space_dimension(int genus) {
  const std::int64_t n = std::int64_t{1} << genus;
  return n * (n + 1) * (n / 2 + 1) / 3;
}

std::vector<Characteristic> relation_support(int genus, BitVec sigma, BitVec rho) {
  std::vector<Characteristic> out;
  for (const auto& m : admissible_pairs(genus)) {
    if (dot2(m.eps() ^ sigma, m.delta() ^ rho) == 0) out.push_back(m);
  }
  return out;
}

namespace {

IntPolynomial relation_product(int genus, BitVec sigma, BitVec rho, const Characteristic& p) {
  IntPolynomial prod = q_poly(genus, p.eps(), p.delta()) * q_poly(genus, p.eps() ^ sigma, p.delta() ^ rho);
  return dot2(sigma, p.delta()) ? -1 * prod : prod;
}

}  // namespace

IntPolynomial relation_quartic(const RelationVector& v) {
  mpz_class denom = 1;
  for (const auto& t : v.terms) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), t.coeff.get_den_mpz_t());
  IntPolynomial r(v.genus);
  for (const auto& t : v.terms) {
    mpz_class c = t.coeff.get_num() * (denom / t.coeff.get_den());
    if (!c.fits_slong_p()) throw std::overflow_error("relation coefficient too large");
    if (dot2(t.pair.eps() ^ v.sigma, t.pair.delta() ^ v.rho))
      throw std::invalid_argument("relation term outside the admissible support");
    r += c.get_si() * relation_product(v.genus, v.sigma, v.rho, t.pair);
  }
  return r;
}

RelationSpace relation_space(int genus, BitVec sigma, BitVec rho) {
  if (genus < 1 || genus > kMaxRelationGenus)
    throw std::invalid_argument("relation_space: exact quartic backend is limited to g <= 3");
  const BitVec mask = full_mask(genus);
  if ((sigma & ~mask) || (rho & ~mask)) throw std::invalid_argument("relation_space: index out of range");

  RelationSpace space;
  space.support = relation_support(genus, sigma, rho);
  std::vector<IntPolynomial> columns;
  for (const auto& p : space.support) columns.push_back(relation_product(genus, sigma, rho, p));
  // Rows of coefficient_matrix are polynomials; the kernel acts on them.
  IntMatrix by_poly = coefficient_matrix(columns);
  IntMatrix system = by_poly.transposed();
  for (const auto& x : integer_nullspace(system)) {
    RelationVector v{genus, sigma, rho, {}};
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (sgn(x[i]) != 0) v.terms.push_back({space.support[i], mpq_class(x[i])});
    }
    space.kernel.push_back(std::move(v));
  }
  return space;
}

int relation_space_dim(int genus, BitVec sigma, BitVec rho) { return relation_space(genus, sigma, rho).dimension(); }

FrobeniusWitness frobenius_vector_in_kernel(int genus) {
  if (genus < 1 || genus > kMaxRelationGenus)
    throw std::invalid_argument("frobenius_vector_in_kernel: limited to g <= 3");
  FrobeniusWitness w{false, {genus, 0, 0, {}}, IntPolynomial(genus)};
  std::vector<RelationTerm> fixed;
  fixed.push_back({Characteristic::zero(genus), 1});
  for (int k = 0; k <= genus; ++k) {
    fixed.push_back({Characteristic(genus, prefix_vector(k), unit_vector(k + 1, genus)), -1});
  }
  const auto vanishing = predicted_vanishing_set(genus);

  IntPolynomial base(genus);
  for (const auto& t : fixed) base += t.coeff.get_num().get_si() * relation_product(genus, 0, 0, t.pair);

  std::vector<IntPolynomial> all;
  for (const auto& p : vanishing) all.push_back(relation_product(genus, 0, 0, p));
  all.push_back(base);
  IntMatrix m = coefficient_matrix(all).transposed();  // columns: vanishing pairs, then base
  const std::size_t nv = vanishing.size();
  IntMatrix a(m.rows(), nv);
  std::vector<std::int64_t> b(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < nv; ++c) a(r, c) = m(r, c);
    b[r] = -m(r, nv);
  }

  std::vector<mpq_class> solution;
  if (nv == 0) {
    if (!base.is_zero()) return w;
  } else {
    auto sol = solve_rational(a, b);
    if (!sol) return w;
    solution = std::move(*sol);
  }

  w.vector.terms = fixed;
  bool unit_coefficients = true;
  for (std::size_t i = 0; i < nv; ++i) {
    if (abs(solution[i]) != 1) unit_coefficients = false;
    w.vector.terms.push_back({vanishing[i], solution[i]});
  }
  w.expansion = relation_quartic(w.vector);
  w.found = unit_coefficients && w.expansion.is_zero();
  return w;
}

IntPolynomial grushevsky_cubic(int genus, BitVec sigma) {
  IntPolynomial r = q_poly(genus, 0, 0) * IntPolynomial::variable(genus, sigma);
  for (int k = 0; k <= genus; ++k) {
    const BitVec s = prefix_vector(k);
    const BitVec e = unit_vector(k + 1, genus);
    IntPolynomial term = q_poly(genus, s, e) * IntPolynomial::variable(genus, sigma ^ s);
    if (dot2(sigma, e)) r += term;
    else r -= term;
  }
  return r;
}

int quartic_eigenspace_dim(int genus, const HCharacter& chi) {
  check_poly_genus(genus);
  std::vector<IntPolynomial> projections;
  for (const auto& m : monomials_of_degree(genus, 4)) {
    if (m.index_sum() != chi.y) continue;  // the K part acts by x*(index sum)
    IntPolynomial mono(genus);
    mono.add_term(m, 1);
    IntPolynomial proj(genus);
    for (BitVec x = 0; x <= full_mask(genus); ++x) {
      IntPolynomial moved = act({1, x, 0}, mono);
      if (dot2(chi.ystar, x)) proj -= moved;
      else proj += moved;
    }
    if (!proj.is_zero()) projections.push_back(std::move(proj));
  }
  return static_cast<int>(span_rank(projections));
}

int sym2_quadric_eigenspace_dim(int genus, const HCharacter& chi) {
  const auto pairs = admissible_pairs(genus);
  int count = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i; j < pairs.size(); ++j) {
      const HCharacter a = q_character(pairs[i].eps(), pairs[i].delta());
      const HCharacter b = q_character(pairs[j].eps(), pairs[j].delta());
      if ((a.ystar ^ b.ystar) == chi.ystar && (a.y ^ b.y) == chi.y) ++count;
    }
  }
  return count;
}

}  // namespace thetakit
