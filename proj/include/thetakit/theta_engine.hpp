// Certified evaluation of Riemann theta functions with characteristics.
//
//   theta[eps; delta](tau, z) =
//       sum_{n in Z^g} exp(pi i [(n + eps/2)^t tau (n + eps/2)
//                                + 2 (n + eps/2)^t (z + delta/2)])
//
// The series is truncated to an ellipsoid adapted to Im tau and every value
// carries a bound on the omitted tail (see theta_engine.cpp for the
// inequality). Second order thetas are Theta[s](tau, z) = theta[s; 0](2tau, 2z).
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "thetakit/characteristics.hpp"

namespace thetakit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Point of the Siegel upper half-space: symmetric with Im tau > 0.
class PeriodMatrix {
 public:
  /// Symmetrizes; throws std::invalid_argument when the relative asymmetry
  /// exceeds 1e-12 or the smallest eigenvalue of Im tau is <= 1e-8.
  explicit PeriodMatrix(const CMatrix& tau);

  int genus() const { return static_cast<int>(tau_.rows()); }
  const CMatrix& tau() const { return tau_; }
  const Eigen::MatrixXd& imag() const { return imag_; }
  const Eigen::MatrixXd& imag_inverse() const { return imag_inverse_; }
  /// Upper triangular R with R^t R = Im tau.
  const Eigen::MatrixXd& cholesky_upper() const { return chol_upper_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

  /// factor * tau, reusing the factorization.
  PeriodMatrix scaled(double factor) const;

 private:
  PeriodMatrix() = default;

  CMatrix tau_;
  Eigen::MatrixXd imag_;
  Eigen::MatrixXd imag_inverse_;
  Eigen::MatrixXd chol_upper_;
  double min_eigenvalue_ = 0.0;
};

struct ThetaValue {
  Complex value;
  double tail_bound = 0.0;  // omitted terms plus a floating-point allowance
};

struct TruncationPolicy {
  double target_tail = 1e-12;
  int hard_radius_cap = 60;  // largest admissible |n_k - centre_k|
};

/// The tail target cannot be met within the radius cap.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ellipsoid radius R meeting policy.target_tail for this (tau, z).
double truncation_radius(const PeriodMatrix& tau, const CVector& z, const TruncationPolicy& policy);

/// Upper bound for the terms outside the ellipsoid of radius R.
double tail_bound_at_radius(const PeriodMatrix& tau, const CVector& z, double radius);

/// Sum over the ellipsoid of radius R, no policy checks. Used to certify
/// that refining the truncation stays inside the reported bound.
ThetaValue theta1_at_radius(const IntCharacteristic& m, const PeriodMatrix& tau, const CVector& z,
                            double radius);

ThetaValue theta1(const IntCharacteristic& m, const PeriodMatrix& tau, const CVector& z,
                  const TruncationPolicy& policy = {});
ThetaValue theta1(const Characteristic& m, const PeriodMatrix& tau, const CVector& z,
                  const TruncationPolicy& policy = {});

ThetaValue theta2(BitVec sigma, const PeriodMatrix& tau, const CVector& z, const TruncationPolicy& policy = {});

/// Odd characteristics return exactly zero.
ThetaValue theta_const(const Characteristic& m, const PeriodMatrix& tau, const TruncationPolicy& policy = {});

/// (Theta[sigma](tau, z)) for sigma = 0, 1, ..., 2^g - 1 (bit k-1 = coordinate k).
std::vector<ThetaValue> th2_map(const PeriodMatrix& tau, const CVector& z, const TruncationPolicy& policy = {});

enum class QMethod { sum, product };

/// Q[eps, eps'](tau, z). The sum form expands over second order thetas, the
/// product form is theta[eps; eps'](tau, 0) theta[eps; eps'](tau, 2z).
/// Throws std::invalid_argument when <eps, eps'> = 1.
ThetaValue q_eval(BitVec eps, BitVec eps_prime, const PeriodMatrix& tau, const CVector& z, QMethod method,
                  const TruncationPolicy& policy = {});

/// Q[eps, eps'] from precomputed second order thetas.
ThetaValue q_from_th2(BitVec eps, BitVec eps_prime, const std::vector<ThetaValue>& th2);

/// (tau eps + delta) / 2.
CVector half_period(const PeriodMatrix& tau, BitVec eps, BitVec delta);

ThetaValue operator*(const ThetaValue& a, const ThetaValue& b);
ThetaValue operator+(const ThetaValue& a, const ThetaValue& b);
ThetaValue operator-(const ThetaValue& a, const ThetaValue& b);
ThetaValue operator*(double s, const ThetaValue& a);

}  // namespace thetakit
