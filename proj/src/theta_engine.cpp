#include "thetakit/theta_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace thetakit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

void check_dimensions(const PeriodMatrix& tau, const CVector& z, int char_genus) {
  if (z.size() != tau.genus() || char_genus != tau.genus()) {
    throw std::invalid_argument("theta: genus of tau, z and characteristic disagree");
  }
}

// Centre of the Gaussian |term| as a function of n + eps/2: Y^{-1} Im z.
Eigen::VectorXd gaussian_centre(const PeriodMatrix& tau, const CVector& z) {
  return tau.imag_inverse() * z.imag();
}

// Tail inequality. With Y = Im tau, lambda its smallest eigenvalue and
// c = Y^{-1} Im z, every term satisfies
//   |term(v)| = exp(pi c^t Y c) exp(-pi w^t Y w),   w = v + c,
// where v runs over Z^g + eps/2. For any 0 < eta < 1, points outside the
// ellipsoid w^t Y w <= R^2 obey
//   sum_{w^t Y w > R^2} exp(-pi w^t Y w)
//     <= exp(-pi (1 - eta) R^2) sum_w exp(-pi eta lambda |w|^2)
//     <= exp(-pi (1 - eta) R^2) (1 + 1/sqrt(eta lambda))^g,
// the last step by Poisson summation (a shifted 1-D Gaussian lattice sum is
// at most the unshifted one, which is <= 1 + sqrt(pi / alpha)).
constexpr double kEtaGrid[] = {0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6};

double log_tail(double log_prefactor, double lambda, int g, double eta, double radius) {
  return log_prefactor - kPi * (1.0 - eta) * radius * radius + g * std::log1p(1.0 / std::sqrt(eta * lambda));
}

double log_prefactor(const PeriodMatrix& tau, const CVector& z) {
  Eigen::VectorXd c = gaussian_centre(tau, z);
  return kPi * c.dot(tau.imag() * c);
}

double max_extent_factor(const PeriodMatrix& tau) {
  return std::sqrt(tau.imag_inverse().diagonal().maxCoeff());
}

struct NeumaierSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + compensation; }
};

class EllipsoidSum {
 public:
  EllipsoidSum(const PeriodMatrix& tau, const IntCharacteristic& m, const CVector& z, double radius)
      : tau_(tau), g_(tau.genus()), radius_sq_(radius * radius), w_(g_), n_(g_) {
    centre_ = gaussian_centre(tau, z);
    offset_.resize(g_);
    shift_.resize(g_);
    for (int k = 0; k < g_; ++k) {
      offset_[k] = 0.5 * static_cast<double>(m.eps[k]) + centre_[k];
      shift_[k] = 0.5 * static_cast<double>(m.eps[k]);
    }
    zb_ = z;
    for (int k = 0; k < g_; ++k) zb_[k] += 0.5 * static_cast<double>(m.delta[k]);
  }

  ThetaValue run() {
    if (g_ > 0) descend(g_ - 1, radius_sq_);
    Complex value(re_.value(), im_.value());
    double rounding = 16.0 * kUnitRoundoff * rounding_weight_;
    return {value, rounding};
  }

  long points() const { return points_; }

 private:
  void descend(int i, double remaining) {
    const auto& u = tau_.cholesky_upper();
    double partial = 0.0;
    for (int j = i + 1; j < g_; ++j) partial += u(i, j) * w_[j];
    double r = std::sqrt(std::max(remaining, 0.0));
    double lo = (-partial - r) / u(i, i) - offset_[i];
    double hi = (-partial + r) / u(i, i) - offset_[i];
    for (long n = static_cast<long>(std::ceil(lo)); n <= static_cast<long>(std::floor(hi)); ++n) {
      w_[i] = static_cast<double>(n) + offset_[i];
      n_[i] = n;
      double q = u(i, i) * w_[i] + partial;
      double rest = remaining - q * q;
      if (rest < 0.0) continue;
      if (i == 0) {
        accumulate();
      } else {
        descend(i - 1, rest);
      }
    }
  }

  void accumulate() {
    double v[kMaxGenus];
    for (int k = 0; k < g_; ++k) v[k] = static_cast<double>(n_[k]) + shift_[k];
    const CMatrix& t = tau_.tau();
    Complex quad = 0.0;
    Complex lin = 0.0;
    for (int j = 0; j < g_; ++j) {
      Complex row = 0.5 * t(j, j) * v[j];
      for (int k = j + 1; k < g_; ++k) row += t(j, k) * v[k];
      quad += 2.0 * v[j] * row;
      lin += v[j] * zb_[j];
    }
    Complex arg = Complex(0.0, kPi) * (quad + 2.0 * lin);
    Complex term = std::exp(arg);
    re_.add(term.real());
    im_.add(term.imag());
    rounding_weight_ += std::abs(term) * (1.0 + g_ * std::abs(arg));
    ++points_;
  }

  const PeriodMatrix& tau_;
  int g_;
  double radius_sq_;
  Eigen::VectorXd centre_;
  Eigen::VectorXd offset_;
  Eigen::VectorXd shift_;
  CVector zb_;
  std::vector<double> w_;
  std::vector<long> n_;
  NeumaierSum re_;
  NeumaierSum im_;
  double rounding_weight_ = 0.0;
  long points_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

PeriodMatrix::PeriodMatrix(const CMatrix& tau) {
  if (tau.rows() != tau.cols() || tau.rows() < 1) {
    throw std::invalid_argument("period matrix must be square and non-empty");
  }
  if (tau.rows() > kMaxGenus) {
    throw std::invalid_argument("period matrix genus exceeds supported maximum");
  }
  if (!tau.allFinite()) {
    throw std::invalid_argument("period matrix has non-finite entries");
  }
  double scale = std::max(1.0, tau.cwiseAbs().maxCoeff());
  double asym = (tau - tau.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw std::invalid_argument("period matrix is not symmetric (relative defect " + std::to_string(asym / scale) +
                                ")");
  }
  tau_ = 0.5 * (tau + tau.transpose());
  imag_ = tau_.imag();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(imag_, Eigen::EigenvaluesOnly);
  min_eigenvalue_ = eig.eigenvalues().minCoeff();
  if (!(min_eigenvalue_ > 1e-8)) {
    throw std::invalid_argument("Im tau is not positive definite (min eigenvalue " + std::to_string(min_eigenvalue_) +
                                ")");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(imag_);
  chol_upper_ = llt.matrixU();
  imag_inverse_ = llt.solve(Eigen::MatrixXd::Identity(imag_.rows(), imag_.cols()));
}

PeriodMatrix PeriodMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("period matrix scale factor must be positive");
  PeriodMatrix out;
  out.tau_ = factor * tau_;
  out.imag_ = factor * imag_;
  out.imag_inverse_ = imag_inverse_ / factor;
  out.chol_upper_ = std::sqrt(factor) * chol_upper_;
  out.min_eigenvalue_ = factor * min_eigenvalue_;
  return out;
}

// ---------------------------------------------------------------------------

double tail_bound_at_radius(const PeriodMatrix& tau, const CVector& z, double radius) {
  double lp = log_prefactor(tau, z);
  double best = std::numeric_limits<double>::infinity();
  for (double eta : kEtaGrid) {
    best = std::min(best, log_tail(lp, tau.min_eigenvalue(), tau.genus(), eta, radius));
  }
  return std::exp(best);
}

double truncation_radius(const PeriodMatrix& tau, const CVector& z, const TruncationPolicy& policy) {
  if (!(policy.target_tail > 0.0 && policy.target_tail < 1.0)) {
    throw std::invalid_argument("target tail must lie in (0, 1)");
  }
  double lp = log_prefactor(tau, z);
  double best_sq = std::numeric_limits<double>::infinity();
  for (double eta : kEtaGrid) {
    double num = lp + tau.genus() * std::log1p(1.0 / std::sqrt(eta * tau.min_eigenvalue())) -
                 std::log(policy.target_tail);
    best_sq = std::min(best_sq, num / (kPi * (1.0 - eta)));
  }
  return std::sqrt(std::max(best_sq, 0.0));
}

ThetaValue theta1_at_radius(const IntCharacteristic& m, const PeriodMatrix& tau, const CVector& z, double radius) {
  check_dimensions(tau, z, m.genus());
  EllipsoidSum sum(tau, m, z, radius);
  ThetaValue out = sum.run();
  out.tail_bound += tail_bound_at_radius(tau, z, radius);
  return out;
}

ThetaValue theta1(const IntCharacteristic& m, const PeriodMatrix& tau, const CVector& z,
                  const TruncationPolicy& policy) {
  check_dimensions(tau, z, m.genus());
  double radius = truncation_radius(tau, z, policy);
  double extent = max_extent_factor(tau);
  if (radius * extent <= policy.hard_radius_cap) {
    return theta1_at_radius(m, tau, z, radius);
  }
  // The absolute target is out of reach; accept the largest admissible
  // ellipsoid if its tail meets the target relative to the value.
  double capped = policy.hard_radius_cap / extent;
  ThetaValue out = theta1_at_radius(m, tau, z, capped);
  if (out.tail_bound <= policy.target_tail * std::abs(out.value)) return out;
  throw TruncationError("theta: tail target " + std::to_string(policy.target_tail) +
                        " unreachable within radius cap " + std::to_string(policy.hard_radius_cap) +
                        " (bound at cap " + std::to_string(out.tail_bound) + ")");
}

ThetaValue theta1(const Characteristic& m, const PeriodMatrix& tau, const CVector& z,
                  const TruncationPolicy& policy) {
  return theta1(lift(m), tau, z, policy);
}

ThetaValue theta2(BitVec sigma, const PeriodMatrix& tau, const CVector& z, const TruncationPolicy& policy) {
  Characteristic m(tau.genus(), sigma, 0u);
  return theta1(m, tau.scaled(2.0), (2.0 * z).eval(), policy);
}

ThetaValue theta_const(const Characteristic& m, const PeriodMatrix& tau, const TruncationPolicy& policy) {
  if (!m.is_even()) return {Complex(0.0, 0.0), 0.0};
  return theta1(m, tau, CVector::Zero(tau.genus()), policy);
}

std::vector<ThetaValue> th2_map(const PeriodMatrix& tau, const CVector& z, const TruncationPolicy& policy) {
  const int g = tau.genus();
  if (z.size() != g) throw std::invalid_argument("th2_map: z has wrong dimension");
  PeriodMatrix doubled = tau.scaled(2.0);
  CVector z2 = 2.0 * z;
  std::vector<ThetaValue> out;
  out.reserve(std::size_t{1} << g);
  for (BitVec sigma = 0; sigma < (1u << g); ++sigma) {
    out.push_back(theta1(Characteristic(g, sigma, 0u), doubled, z2, policy));
  }
  return out;
}

ThetaValue q_from_th2(BitVec eps, BitVec eps_prime, const std::vector<ThetaValue>& th2) {
  if (dot2(eps, eps_prime) != 0) {
    throw std::invalid_argument("Q[eps, eps'] requires <eps, eps'> = 0");
  }
  ThetaValue acc{Complex(0.0, 0.0), 0.0};
  for (BitVec sigma = 0; sigma < th2.size(); ++sigma) {
    ThetaValue term = th2[sigma] * th2[sigma ^ eps];
    acc = dot2(sigma, eps_prime) ? acc - term : acc + term;
  }
  return acc;
}

ThetaValue q_eval(BitVec eps, BitVec eps_prime, const PeriodMatrix& tau, const CVector& z, QMethod method,
                  const TruncationPolicy& policy) {
  if (dot2(eps, eps_prime) != 0) {
    throw std::invalid_argument("Q[eps, eps'] requires <eps, eps'> = 0");
  }
  if (method == QMethod::sum) return q_from_th2(eps, eps_prime, th2_map(tau, z, policy));
  Characteristic m(tau.genus(), eps, eps_prime);
  return theta_const(m, tau, policy) * theta1(m, tau, (2.0 * z).eval(), policy);
}

CVector half_period(const PeriodMatrix& tau, BitVec eps, BitVec delta) {
  const int g = tau.genus();
  Eigen::VectorXd e(g), d(g);
  for (int k = 0; k < g; ++k) {
    e[k] = (eps >> k) & 1u;
    d[k] = (delta >> k) & 1u;
  }
  return 0.5 * (tau.tau() * e.cast<Complex>() + d.cast<Complex>());
}

ThetaValue operator*(const ThetaValue& a, const ThetaValue& b) {
  return {a.value * b.value,
          std::abs(a.value) * b.tail_bound + std::abs(b.value) * a.tail_bound + a.tail_bound * b.tail_bound};
}

ThetaValue operator+(const ThetaValue& a, const ThetaValue& b) {
  return {a.value + b.value, a.tail_bound + b.tail_bound};
}

ThetaValue operator-(const ThetaValue& a, const ThetaValue& b) {
  return {a.value - b.value, a.tail_bound + b.tail_bound};
}

ThetaValue operator*(double s, const ThetaValue& a) { return {s * a.value, std::abs(s) * a.tail_bound}; }

}  // namespace thetakit
