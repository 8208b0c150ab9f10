// Numerical residuals of theta identities: the addition formula, Riemann's
// biquadratic relations, Frobenius' formula, the cubic identities R_sigma
// and their quartic consequences, and the genus-4 system of six equations.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "thetakit/characteristics.hpp"
#include "thetakit/heisenberg.hpp"
#include "thetakit/theta_engine.hpp"

namespace thetakit {

/// mt19937_64 with doubles built as (next() >> 11) * 2^-53, so streams are
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [0, n).
  int below(int n) { return static_cast<int>(uniform() * n); }
  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// tau = S + iQ, S symmetric with uniform [-1, 1] entries, Q = R^t R + 0.3 I
/// with R uniform in [-1, 1].
PeriodMatrix random_tau(int genus, Rng& rng);
/// Real parts uniform in [-re, re], imaginary parts in [-im, im].
CVector random_z(int genus, Rng& rng, double re = 0.5, double im = 0.2);

/// Residuals are measured against the largest summand ("scale"); for a
/// batch, `relative` is the worst per-sample ratio.
struct ResidualReport {
  std::string label;
  double max_abs_residual = 0.0;
  double scale = 0.0;
  double relative = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double tail_allowance = 0.0;  // accumulated truncation bounds
  std::map<std::string, double> extras;
  std::vector<std::string> notes;

  void add_sample(double abs_residual, double sample_scale, double tail = 0.0);
  void merge(const ResidualReport& other);
  bool passes(double tol) const { return relative < tol; }
};

ResidualReport make_report(std::string label, std::uint64_t seed = 0);

/// theta[eps; delta](2tau, 2z) theta[eps+eps'; delta](2tau, 2w)
///   = 2^-g sum_sigma (-1)^<eps,sigma> theta[eps'; delta+sigma](tau, z+w) theta[eps'; sigma](tau, z-w)
/// with the sums eps+eps', delta+sigma taken in Z^g.
ResidualReport addition_formula_residual(const PeriodMatrix& tau, const CVector& z, const CVector& w, BitVec eps,
                                         BitVec eps_prime, BitVec delta, const TruncationPolicy& policy = {});

/// sum (-1)^<sigma+x, delta> v_{eps,delta} theta[eps;delta](0) theta[eps+sigma; delta+rho](0)
///     theta[eps+x; delta+y](2z) theta[eps+sigma+x; delta+rho+y](2z),
/// characteristic sums unreduced. Throws std::invalid_argument unless v
/// expands to the zero quartic.
ResidualReport riemann_residual(const PeriodMatrix& tau, const CVector& z, const RelationVector& v,
                                const std::vector<long>& x, const std::vector<long>& y,
                                const TruncationPolicy& policy = {});

/// sum_{j in B} eps_U(j) prod_{i=1}^4 theta[m_j](tau, z_i), z_4 = -(z_1+z_2+z_3).
ResidualReport frobenius_residual(const PeriodMatrix& tau, const FundamentalSystem& f, const CVector& z1,
                                  const CVector& z2, const CVector& z3, const TruncationPolicy& policy = {});

/// R_sigma at z. extras["nondegeneracy"] is max(|Q[0,0]|, |Q[s_k, e_{k+1}]|).
ResidualReport grushevsky_residual(const PeriodMatrix& tau, BitVec sigma, const CVector& z,
                                   const TruncationPolicy& policy = {});
/// Same from precomputed second order thetas at z.
ResidualReport grushevsky_residual_th2(int genus, BitVec sigma, const std::vector<ThetaValue>& th2);

/// Q[0,0]^2 - sum_k Q[s_k, e_{k+1}]^2.
ResidualReport rf_residual(const PeriodMatrix& tau, const CVector& z, const TruncationPolicy& policy = {});

/// Q[0,0] Q[eps1,delta1] - sum_k (-1)^<eps1, e_{k+1}> Q[s_k,e_{k+1}] Q[s_k+eps1, e_{k+1}+delta1]. Terms whose
/// index pair is odd vanish identically and are skipped (listed in notes).
/// The scale never drops below |Q[0,0]|^2. Throws std::invalid_argument when
/// <eps1, delta1> = 1.
ResidualReport rf2a_residual(const PeriodMatrix& tau, const CVector& z, BitVec eps1, BitVec delta1,
                             const TruncationPolicy& policy = {});
ResidualReport rf2a_residual_th2(int genus, const std::vector<ThetaValue>& th2, BitVec eps1, BitVec delta1);

/// theta[0;0](0)^2 theta[x;y](2z)^2 - sum_k (-1)^<x, e_{k+1}> theta[s_k;e_{k+1}](0)^2
/// theta[s_k+x; e_{k+1}+y](2z)^2. The scale never drops below
/// |theta[0;0](0)^2 theta[0;0](2z)^2|, so identities whose terms all vanish
/// are still measured.
ResidualReport rf2_residual(const PeriodMatrix& tau, const CVector& z, const std::vector<long>& x,
                            const std::vector<long>& y, const TruncationPolicy& policy = {});

/// The 6x6 arrowhead system in the squares theta[eps_k; delta_k](0)^2.
struct Genus4System {
  CMatrix matrix;
  std::vector<double> singular_values;
  int rank = 0;
  Complex determinant;
  Complex determinant_formula;  // theta00^8 (Q[0,0]^2 - sum Q[s_k,e_{k+1}]^2) at z = 0
  double determinant_residual = 0.0;  // |det - formula| / scale^6
  double determinant_relative = 0.0;  // |det| / scale^6
  double scale = 0.0;                 // largest |entry|
};

inline constexpr double kGenus4RankTolerance = 1e-6;

/// Throws std::invalid_argument unless g = 4.
Genus4System genus4_system(const PeriodMatrix& tau, const TruncationPolicy& policy = {});
/// Same matrix pattern from a diagonal value and five border values.
Genus4System arrowhead_system(Complex diagonal, const std::vector<Complex>& border);

/// Leibniz expansion of the n x n arrowhead determinant with symbolic
/// diagonal a and border b_1..b_{n-1}, compared with a^{n-2}(a^2 - sum b_k^2).
bool arrowhead_determinant_identity(int n);

}  // namespace thetakit
