#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "thetakit/jacobian_tools.hpp"

namespace thetakit {

BranchPointSet::BranchPointSet(std::vector<double> finite_points, bool point_at_infinity)
    : points_(std::move(finite_points)), infinity_(point_at_infinity) {
  const std::size_t total = points_.size() + (infinity_ ? 1 : 0);
  if (total < 4 || total % 2 != 0) throw std::invalid_argument("branch points: need 2g+2 points with g >= 1");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) throw std::invalid_argument("branch points: non-finite value");
    if (i > 0 && !(points_[i] - points_[i - 1] > 1e-9))
      throw std::invalid_argument("branch points: must increase strictly with gaps above 1e-9");
  }
}

BranchPointSet BranchPointSet::parse(std::string_view text) {
  std::vector<double> pts;
  bool inf = false;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (inf) throw std::invalid_argument("branch points: 'inf' must come last");
    if (item == "inf" || item == "infinity") {
      inf = true;
      continue;
    }
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("branch points: cannot parse '" + item + "'");
    pts.push_back(v);
  }
  if (!inf && pts.size() % 2 == 1) inf = true;
  return BranchPointSet(std::move(pts), inf);
}

int BranchPointSet::genus() const { return static_cast<int>((points_.size() + (infinity_ ? 1 : 0) - 2) / 2); }

namespace {

constexpr double kPi = std::numbers::pi;

// Integral of x^k / sqrt|p(x)| over [lambda_j, lambda_{j+1}]. The two
// endpoint factors combine into the Chebyshev weight 1/sqrt(1 - t^2).
class SegmentIntegrals {
 public:
  SegmentIntegrals(const std::vector<double>& lambda, int nodes) : lambda_(lambda), nodes_(nodes) {}

  double operator()(int j, int k) const {
    const double lo = lambda_[j];
    const double hi = lambda_[j + 1];
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int n = 1; n <= nodes_; ++n) {
      const double t = std::cos((2.0 * n - 1.0) * kPi / (2.0 * nodes_));
      const double x = mid + half * t;
      double h = 1.0;
      for (std::size_t i = 0; i < lambda_.size(); ++i) {
        if (static_cast<int>(i) == j || static_cast<int>(i) == j + 1) continue;
        h *= std::abs(x - lambda_[i]);
      }
      sum += std::pow(x, k) / std::sqrt(h);
    }
    return sum * kPi / nodes_;
  }

 private:
  const std::vector<double>& lambda_;
  int nodes_;
};

struct RawPeriods {
  CMatrix a;
  CMatrix b;
  CMatrix tau;
};

RawPeriods periods_at(const BranchPointSet& bp, int nodes) {
  const int g = bp.genus();
  const auto& lambda = bp.finite_points();
  SegmentIntegrals integral(lambda, nodes);
  RawPeriods r{CMatrix(g, g), CMatrix(g, g), CMatrix()};
  const Complex iu(0.0, 1.0);
  for (int i = 1; i <= g; ++i) {
    // y = prod sqrt(lambda_l - x) picks up a factor i per branch point
    // passed, so cut i carries i^{2i-1}.
    const Complex phase = (i % 2 == 1) ? iu : -iu;
    for (int k = 0; k < g; ++k) {
      r.a(k, i - 1) = 2.0 * phase * integral(2 * i - 2, k);
      double b = 0.0;
      for (int j = i; j <= g; ++j) b += ((j % 2) ? -1.0 : 1.0) * integral(2 * j - 1, k);
      r.b(k, i - 1) = 2.0 * b;
    }
  }
  r.tau = r.a.partialPivLu().solve(r.b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r.tau.imag(), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().maxCoeff() < 0.0) {
    r.tau = -r.tau;
  }
  return r;
}

}  // namespace

PeriodResult hyperelliptic_periods(const BranchPointSet& bp, int nodes) {
  const int g = bp.genus();
  if (g > kMaxPeriodGenus) throw std::invalid_argument("hyperelliptic_periods: genus above 4 is not supported");
  if (nodes < 8) throw std::invalid_argument("hyperelliptic_periods: too few quadrature nodes");

  RawPeriods coarse = periods_at(bp, nodes);
  RawPeriods fine = periods_at(bp, 2 * nodes);
  const double change = (fine.tau - coarse.tau).cwiseAbs().maxCoeff();
  if (!(change < 1e-9)) {
    throw QuadratureError("hyperelliptic_periods: node doubling changed tau by " + std::to_string(change));
  }
  const double scale = std::max(1.0, fine.tau.cwiseAbs().maxCoeff());
  const double defect = (fine.tau - fine.tau.transpose()).cwiseAbs().maxCoeff() / scale;
  if (!(defect < 1e-8)) {
    throw std::runtime_error("hyperelliptic_periods: symmetry defect " + std::to_string(defect));
  }
  CMatrix sym = 0.5 * (fine.tau + fine.tau.transpose());
  PeriodResult out{PeriodMatrix(sym), fine.a, fine.b, defect, change, 2 * nodes, {}};
  if (out.tau.min_eigenvalue() < 0.2) {
    out.warnings.push_back("Im tau has a small eigenvalue (" + std::to_string(out.tau.min_eigenvalue()) +
                           "); tau is far from the fundamental domain and no reduction is attempted");
  }
  return out;
}

}  // namespace thetakit
