#include "thetakit/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace thetakit {

namespace {

IntCharacteristic make_char(int g, BitVec eps, BitVec delta) { return lift(Characteristic(g, eps, delta)); }

IntCharacteristic shifted(IntCharacteristic m, const std::vector<long>& x, const std::vector<long>& y) {
  for (std::size_t k = 0; k < m.eps.size(); ++k) {
    m.eps[k] += x[k];
    m.delta[k] += y[k];
  }
  return m;
}

IntCharacteristic bits_plus(int g, BitVec a, BitVec b, BitVec c, BitVec d) {
  // [a + c; b + d] unreduced
  return make_char(g, a, b) + make_char(g, c, d);
}

void require_genus(const PeriodMatrix& tau, const CVector& z) {
  if (z.size() != tau.genus()) throw std::invalid_argument("z has the wrong dimension");
}

}  // namespace

PeriodMatrix random_tau(int genus, Rng& rng) {
  CMatrix s = CMatrix::Zero(genus, genus);
  Eigen::MatrixXd r(genus, genus);
  for (int i = 0; i < genus; ++i)
    for (int j = i; j < genus; ++j) {
      double v = rng.uniform(-1.0, 1.0);
      s(i, j) = v;
      s(j, i) = v;
    }
  for (int i = 0; i < genus; ++i)
    for (int j = 0; j < genus; ++j) r(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::MatrixXd q = r.transpose() * r + 0.3 * Eigen::MatrixXd::Identity(genus, genus);
  return PeriodMatrix(s + Complex(0.0, 1.0) * q.cast<Complex>());
}

CVector random_z(int genus, Rng& rng, double re, double im) {
  CVector z(genus);
  for (int k = 0; k < genus; ++k) z[k] = Complex(rng.uniform(-re, re), rng.uniform(-im, im));
  return z;
}

void ResidualReport::add_sample(double abs_residual, double sample_scale, double tail) {
  ++samples;
  max_abs_residual = std::max(max_abs_residual, abs_residual);
  scale = std::max(scale, sample_scale);
  tail_allowance += tail;
  if (sample_scale > 0.0) {
    relative = std::max(relative, abs_residual / sample_scale);
  } else if (abs_residual > 0.0) {
    relative = std::numeric_limits<double>::infinity();
  }
}

void ResidualReport::merge(const ResidualReport& other) {
  samples += other.samples;
  max_abs_residual = std::max(max_abs_residual, other.max_abs_residual);
  scale = std::max(scale, other.scale);
  relative = std::max(relative, other.relative);
  tail_allowance += other.tail_allowance;
  for (const auto& [k, v] : other.extras) {
    auto it = extras.find(k);
    extras[k] = it == extras.end() ? v : std::max(it->second, v);
  }
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

ResidualReport make_report(std::string label, std::uint64_t seed) {
  ResidualReport r;
  r.label = std::move(label);
  r.seed = seed;
  return r;
}

ResidualReport addition_formula_residual(const PeriodMatrix& tau, const CVector& z, const CVector& w, BitVec eps,
                                         BitVec eps_prime, BitVec delta, const TruncationPolicy& policy) {
  require_genus(tau, z);
  require_genus(tau, w);
  const int g = tau.genus();
  const PeriodMatrix tau2 = tau.scaled(2.0);
  ThetaValue lhs = theta1(make_char(g, eps, delta), tau2, (2.0 * z).eval(), policy) *
                   theta1(bits_plus(g, eps, delta, eps_prime, 0), tau2, (2.0 * w).eval(), policy);
  const CVector sum = z + w;
  const CVector diff = z - w;
  ThetaValue rhs{0.0, 0.0};
  double scale = std::abs(lhs.value);
  for (BitVec sigma = 0; sigma <= full_mask(g); ++sigma) {
    ThetaValue term = theta1(bits_plus(g, eps_prime, delta, 0, sigma), tau, sum, policy) *
                      theta1(make_char(g, eps_prime, sigma), tau, diff, policy);
    term = std::ldexp(1.0, -g) * term;
    scale = std::max(scale, std::abs(term.value));
    rhs = dot2(eps, sigma) ? rhs - term : rhs + term;
  }
  auto report = make_report("addition");
  report.add_sample(std::abs(lhs.value - rhs.value), scale, lhs.tail_bound + rhs.tail_bound);
  return report;
}

ResidualReport riemann_residual(const PeriodMatrix& tau, const CVector& z, const RelationVector& v,
                                const std::vector<long>& x, const std::vector<long>& y,
                                const TruncationPolicy& policy) {
  require_genus(tau, z);
  const int g = tau.genus();
  if (v.genus != g) throw std::invalid_argument("riemann_residual: relation genus differs from tau");
  if (static_cast<int>(x.size()) != g || static_cast<int>(y.size()) != g)
    throw std::invalid_argument("riemann_residual: x and y need length g");
  if (!relation_quartic(v).is_zero())
    throw std::invalid_argument("riemann_residual: vector is not in the relation kernel");

  mpz_class denom = 1;
  for (const auto& t : v.terms) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), t.coeff.get_den_mpz_t());

  const CVector z0 = CVector::Zero(g);
  const CVector z2 = 2.0 * z;
  std::vector<long> sx = x;
  for (int k = 0; k < g; ++k) sx[k] += (v.sigma >> k) & 1u;
  int x_parity = 0;
  ThetaValue total{0.0, 0.0};
  double scale = 0.0;
  for (const auto& t : v.terms) {
    const BitVec e = t.pair.eps();
    const BitVec d = t.pair.delta();
    const IntCharacteristic m1 = make_char(g, e, d);
    const IntCharacteristic m2 = bits_plus(g, e, d, v.sigma, v.rho);
    ThetaValue term = theta1(m1, tau, z0, policy) * theta1(m2, tau, z0, policy) *
                      theta1(shifted(m1, x, y), tau, z2, policy) * theta1(shifted(m2, x, y), tau, z2, policy);
    mpq_class c = t.coeff * denom;
    term = c.get_d() * term;
    // (-1)^<sigma + x, delta> with x an integer vector
    x_parity = 0;
    for (int k = 0; k < g; ++k) x_parity ^= static_cast<int>(((sx[k] % 2) + 2) % 2 & ((d >> k) & 1u));
    scale = std::max(scale, std::abs(term.value));
    total = x_parity ? total - term : total + term;
  }
  auto report = make_report("riemann");
  report.add_sample(std::abs(total.value), scale, total.tail_bound);
  return report;
}

ResidualReport frobenius_residual(const PeriodMatrix& tau, const FundamentalSystem& f, const CVector& z1,
                                  const CVector& z2, const CVector& z3, const TruncationPolicy& policy) {
  require_genus(tau, z1);
  require_genus(tau, z2);
  require_genus(tau, z3);
  if (f.genus() != tau.genus()) throw std::invalid_argument("frobenius_residual: genus mismatch");
  const CVector z4 = -(z1 + z2 + z3);
  const double zscale = std::max({1.0, z1.cwiseAbs().maxCoeff(), z2.cwiseAbs().maxCoeff(), z3.cwiseAbs().maxCoeff()});
  if ((z1 + z2 + z3 + z4).cwiseAbs().maxCoeff() > 1e-14 * zscale)
    throw std::runtime_error("frobenius_residual: points do not sum to zero");
  const int g = tau.genus();
  ThetaValue total{0.0, 0.0};
  double scale = 0.0;
  for (int j = 1; j <= 2 * g + 2; ++j) {
    const Characteristic& m = f.at(j);
    ThetaValue prod = theta1(m, tau, z1, policy) * theta1(m, tau, z2, policy) * theta1(m, tau, z3, policy) *
                      theta1(m, tau, z4, policy);
    scale = std::max(scale, std::abs(prod.value));
    total = epsilon_u(j, f.u()) > 0 ? total + prod : total - prod;
  }
  auto report = make_report("frobenius");
  report.add_sample(std::abs(total.value), scale, total.tail_bound);
  return report;
}

ResidualReport grushevsky_residual_th2(int genus, BitVec sigma, const std::vector<ThetaValue>& th2) {
  if (th2.size() != (std::size_t{1} << genus)) throw std::invalid_argument("grushevsky: need 2^g values");
  if (sigma > full_mask(genus)) throw std::invalid_argument("grushevsky: sigma out of range");
  ThetaValue q00 = q_from_th2(0, 0, th2);
  ThetaValue total = q00 * th2[sigma];
  double scale = std::abs(total.value);
  double nondegeneracy = std::abs(q00.value);
  for (int k = 0; k <= genus; ++k) {
    const BitVec s = prefix_vector(k);
    const BitVec e = unit_vector(k + 1, genus);
    ThetaValue qk = q_from_th2(s, e, th2);
    nondegeneracy = std::max(nondegeneracy, std::abs(qk.value));
    ThetaValue term = qk * th2[sigma ^ s];
    scale = std::max(scale, std::abs(term.value));
    total = dot2(sigma, e) ? total + term : total - term;
  }
  auto report = make_report("grushevsky");
  report.add_sample(std::abs(total.value), scale, total.tail_bound);
  report.extras["nondegeneracy"] = nondegeneracy;
  return report;
}

ResidualReport grushevsky_residual(const PeriodMatrix& tau, BitVec sigma, const CVector& z,
                                   const TruncationPolicy& policy) {
  require_genus(tau, z);
  return grushevsky_residual_th2(tau.genus(), sigma, th2_map(tau, z, policy));
}

ResidualReport rf2a_residual_th2(int genus, const std::vector<ThetaValue>& th2, BitVec eps1, BitVec delta1) {
  if (dot2(eps1, delta1)) throw std::invalid_argument("rf2a: <eps1, delta1> must be even");
  const ThetaValue q00 = q_from_th2(0, 0, th2);
  ThetaValue lhs = q00 * q_from_th2(eps1, delta1, th2);
  // floor at |Q[0,0]|^2: when Q[eps1, delta1] vanishes identically every term is rounding noise
  double scale = std::max(std::abs(lhs.value), std::norm(q00.value));
  ThetaValue rhs{0.0, 0.0};
  auto report = make_report("rf2a");
  for (int k = 0; k <= genus; ++k) {
    const BitVec s = prefix_vector(k);
    const BitVec e = unit_vector(k + 1, genus);
    if (dot2(s ^ eps1, e ^ delta1)) {
      report.notes.push_back("skipped odd pair " + Characteristic(genus, s ^ eps1, e ^ delta1).to_string());
      continue;
    }
    ThetaValue term = q_from_th2(s, e, th2) * q_from_th2(s ^ eps1, e ^ delta1, th2);
    scale = std::max(scale, std::abs(term.value));
    rhs = dot2(eps1, e) ? rhs - term : rhs + term;
  }
  report.add_sample(std::abs(lhs.value - rhs.value), scale, lhs.tail_bound + rhs.tail_bound);
  return report;
}

ResidualReport rf2a_residual(const PeriodMatrix& tau, const CVector& z, BitVec eps1, BitVec delta1,
                             const TruncationPolicy& policy) {
  require_genus(tau, z);
  if (dot2(eps1, delta1)) throw std::invalid_argument("rf2a: <eps1, delta1> must be even");
  return rf2a_residual_th2(tau.genus(), th2_map(tau, z, policy), eps1, delta1);
}

ResidualReport rf_residual(const PeriodMatrix& tau, const CVector& z, const TruncationPolicy& policy) {
  auto report = rf2a_residual(tau, z, 0, 0, policy);
  report.label = "rf";
  return report;
}

ResidualReport rf2_residual(const PeriodMatrix& tau, const CVector& z, const std::vector<long>& x,
                            const std::vector<long>& y, const TruncationPolicy& policy) {
  require_genus(tau, z);
  const int g = tau.genus();
  if (static_cast<int>(x.size()) != g || static_cast<int>(y.size()) != g)
    throw std::invalid_argument("rf2: x and y need length g");
  const CVector z0 = CVector::Zero(g);
  const CVector z2 = 2.0 * z;
  const IntCharacteristic zero = make_char(g, 0, 0);
  ThetaValue t00 = theta1(zero, tau, z0, policy);
  ThetaValue lhs = t00 * t00;
  ThetaValue shifted00 = theta1(shifted(zero, x, y), tau, z2, policy);
  lhs = lhs * shifted00 * shifted00;
  ThetaValue reference = theta1(zero, tau, z2, policy);
  double scale = std::max(std::abs(lhs.value), std::abs((t00 * t00 * reference * reference).value));
  ThetaValue rhs{0.0, 0.0};
  for (int k = 0; k <= g; ++k) {
    const IntCharacteristic mk = make_char(g, prefix_vector(k), unit_vector(k + 1, g));
    ThetaValue c = theta1(mk, tau, z0, policy);
    ThetaValue s = theta1(shifted(mk, x, y), tau, z2, policy);
    ThetaValue term = c * c * s * s;
    scale = std::max(scale, std::abs(term.value));
    const long xk = k < g ? x[k] : 0;  // <x, e_{k+1}>, e_{g+1} = 0
    rhs = (((xk % 2) + 2) % 2) ? rhs - term : rhs + term;
  }
  auto report = make_report("rf2");
  report.add_sample(std::abs(lhs.value - rhs.value), scale, lhs.tail_bound + rhs.tail_bound);
  return report;
}

Genus4System arrowhead_system(Complex diagonal, const std::vector<Complex>& border) {
  const int n = static_cast<int>(border.size()) + 1;
  Genus4System out;
  out.matrix = CMatrix::Zero(n, n);
  out.matrix(0, 0) = diagonal;
  Complex border_sq = 0.0;
  out.scale = std::abs(diagonal);
  for (int k = 1; k < n; ++k) {
    out.matrix(k, k) = diagonal;
    out.matrix(0, k) = -border[k - 1];
    out.matrix(k, 0) = -border[k - 1];
    border_sq += border[k - 1] * border[k - 1];
    out.scale = std::max(out.scale, std::abs(border[k - 1]));
  }
  Eigen::JacobiSVD<CMatrix> svd(out.matrix);
  const auto& sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  out.rank = 0;
  for (double s : out.singular_values)
    if (s > kGenus4RankTolerance * out.singular_values.front()) ++out.rank;
  out.determinant = out.matrix.determinant();
  out.determinant_formula = std::pow(diagonal, n - 2) * (diagonal * diagonal - border_sq);
  const double norm = std::pow(out.scale, n);
  out.determinant_residual = norm > 0 ? std::abs(out.determinant - out.determinant_formula) / norm : 0.0;
  out.determinant_relative = norm > 0 ? std::abs(out.determinant) / norm : 0.0;
  return out;
}

Genus4System genus4_system(const PeriodMatrix& tau, const TruncationPolicy& policy) {
  if (tau.genus() != 4) throw std::invalid_argument("genus4_system requires g = 4");
  const int g = 4;
  const Complex t00 = theta_const(Characteristic::zero(g), tau, policy).value;
  std::vector<Complex> border;
  for (int k = 0; k <= g; ++k) {
    const Complex t = theta_const(Characteristic(g, prefix_vector(k), unit_vector(k + 1, g)), tau, policy).value;
    border.push_back(t * t);
  }
  return arrowhead_system(t00 * t00, border);
}

bool arrowhead_determinant_identity(int n) {
  if (n < 2 || n > 9) throw std::invalid_argument("arrowhead_determinant_identity: size out of range");
  // Variable 0 is the diagonal a, variable k the border entry b_k.
  using Exponents = std::vector<int>;
  std::map<Exponents, long> det;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Exponents e(n, 0);
    int sign = 1;
    bool zero = false;
    for (int i = 0; i < n && !zero; ++i) {
      const int j = perm[i];
      if (i == j) {
        ++e[0];
      } else if (i == 0 || j == 0) {
        ++e[i == 0 ? j : i];
        sign = -sign;  // border entries are -b_k
      } else {
        zero = true;
      }
    }
    if (zero) continue;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    det[e] += sign;
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::erase_if(det, [](const auto& t) { return t.second == 0; });

  std::map<Exponents, long> expected;
  Exponents lead(n, 0);
  lead[0] = n;
  expected[lead] = 1;
  for (int k = 1; k < n; ++k) {
    Exponents e(n, 0);
    e[0] = n - 2;
    e[k] = 2;
    expected[e] = -1;
  }
  return det == expected;
}

}  // namespace thetakit
