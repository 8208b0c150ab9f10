#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "thetakit/jacobian_tools.hpp"

namespace thetakit {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd bits_to_vector(BitVec v, int g) {
  Eigen::VectorXd out(g);
  for (int k = 0; k < g; ++k) out[k] = (v >> k) & 1u;
  return out;
}

// Rows Th2(A_i + z) from Th2(z) alone:
//   Theta[sigma](z + (tau s + e)/2) = c(z) (-1)^<sigma, e> Theta[sigma + s](z),
//   c(z) = exp(-pi i s^t tau s / 2 - 2 pi i s^t z).
CMatrix shifted_rows(const PeriodMatrix& tau, const CVector& z, const std::vector<ThetaValue>& th2) {
  const int g = tau.genus();
  const std::size_t n = th2.size();
  CMatrix rows(g + 2, static_cast<Eigen::Index>(n));
  for (std::size_t sigma = 0; sigma < n; ++sigma) rows(0, sigma) = th2[sigma].value;
  for (int i = 1; i <= g + 1; ++i) {
    const BitVec s = prefix_vector(i - 1);
    const BitVec e = unit_vector(i, g);
    const CVector sv = bits_to_vector(s, g).cast<Complex>();
    const Complex quad = sv.dot(tau.tau() * sv);
    const Complex lin = sv.dot(z);  // dot conjugates the left factor, which is real here
    const Complex c = std::exp(Complex(0.0, -kPi) * (0.5 * quad + 2.0 * lin));
    for (std::size_t sigma = 0; sigma < n; ++sigma) {
      const double sign = dot2(static_cast<BitVec>(sigma), e) ? -1.0 : 1.0;
      rows(i, sigma) = c * sign * th2[sigma ^ s].value;
    }
  }
  return rows;
}

double dependence_ratio(CMatrix rows) {
  if (rows.rows() > rows.cols()) return 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 0) rows.row(i) /= norm;
  }
  Eigen::JacobiSVD<CMatrix> svd(rows);
  const auto& sv = svd.singularValues();
  return sv[sv.size() - 1] / sv[0];
}

}  // namespace

std::vector<CVector> gunning_points(const PeriodMatrix& tau) {
  const int g = tau.genus();
  std::vector<CVector> pts{CVector::Zero(g)};
  for (int k = 1; k <= g + 1; ++k) pts.push_back(half_period(tau, prefix_vector(k - 1), unit_vector(k, g)));
  return pts;
}

bool GunningReport::passes(int genus, double dependence_tol, double off_block_tol) const {
  return max_dependence_ratio < dependence_tol && off_block_relative < off_block_tol &&
         block_equal_error < off_block_tol && gram_product_error < off_block_tol && gram_rank == genus + 1;
}

GunningReport gunning_check(const PeriodMatrix& tau, const std::vector<CVector>& z_samples,
                            const TruncationPolicy& policy, double threshold_ratio) {
  const int g = tau.genus();
  const auto pattern = vanishing_pattern(tau, threshold_ratio, policy);
  if (pattern.verdict != Verdict::consistent_hyperelliptic || pattern.vanishing != predicted_vanishing_set(g))
    throw std::invalid_argument("gunning_check: tau does not show the standard vanishing pattern");

  const auto points = gunning_points(tau);
  GunningReport report;
  for (const auto& z : z_samples) {
    if (z.size() != g) throw std::invalid_argument("gunning_check: z has the wrong dimension");
    const CMatrix rows = shifted_rows(tau, z, th2_map(tau, z, policy));
    GunningSample sample{z, dependence_ratio(rows), 0.0};
    for (int i = 1; i <= g + 1; ++i) {
      const auto direct = th2_map(tau, (points[i] + z).eval(), policy);
      double row_scale = 0.0, err = 0.0;
      for (std::size_t sigma = 0; sigma < direct.size(); ++sigma) {
        row_scale = std::max(row_scale, std::abs(direct[sigma].value));
        err = std::max(err, std::abs(direct[sigma].value - rows(i, sigma)));
      }
      sample.sign_rule_error = std::max(sample.sign_rule_error, err / row_scale);
    }
    report.max_dependence_ratio = std::max(report.max_dependence_ratio, sample.dependence_ratio);
    report.max_sign_rule_error = std::max(report.max_sign_rule_error, sample.sign_rule_error);
    report.samples.push_back(std::move(sample));
  }

  // General position at y = (A_1 - A_0)/2 = e_1/4.
  const CVector y = 0.5 * (points[1] - points[0]);
  const CMatrix rows = shifted_rows(tau, y, th2_map(tau, y, policy));
  report.gram = rows * rows.transpose();
  const double gram_scale = report.gram.cwiseAbs().maxCoeff();
  const Characteristic zero = Characteristic::zero(g);
  for (int i = 0; i < g + 2; ++i) {
    for (int j = 0; j < g + 2; ++j) {
      const Complex product = theta1(zero, tau, (points[i] - points[j]).eval(), policy).value *
                              theta1(zero, tau, (points[i] + points[j] + 2.0 * y).eval(), policy).value;
      report.gram_product_error =
          std::max(report.gram_product_error, std::abs(product - report.gram(i, j)) / gram_scale);
      const bool in_block = i < 2 && j < 2;
      if (!in_block && i != j) {
        report.off_block_relative = std::max(report.off_block_relative, std::abs(report.gram(i, j)) / gram_scale);
      }
    }
  }
  const Complex b00 = report.gram(0, 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      report.block_equal_error = std::max(report.block_equal_error, std::abs(report.gram(i, j) - b00) / std::abs(b00));
  Eigen::JacobiSVD<CMatrix> svd(report.gram);
  const auto& sv = svd.singularValues();
  report.gram_singular_values.assign(sv.data(), sv.data() + sv.size());
  for (double s : report.gram_singular_values)
    if (s > kGramRankTolerance * sv[0]) ++report.gram_rank;
  return report;
}

std::string to_string(Irreducibility v) {
  switch (v) {
    case Irreducibility::irreducible:
      return "irreducible";
    case Irreducibility::reducible:
      return "reducible";
    case Irreducibility::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

bool is_block_diagonal(const CMatrix& tau, double tol) {
  const int g = static_cast<int>(tau.rows());
  if (g < 2) return false;
  const double cutoff = tol * tau.cwiseAbs().maxCoeff();
  // Connected components of the graph with an edge wherever |tau_ij| is large.
  std::vector<bool> reached(g, false);
  std::vector<int> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < g; ++j) {
      if (!reached[j] && std::abs(tau(i, j)) > cutoff) {
        reached[j] = true;
        stack.push_back(j);
      }
    }
  }
  return std::find(reached.begin(), reached.end(), false) != reached.end();
}

IrreducibilityReport irreducibility_witness(const PeriodMatrix& tau, int max_length, std::size_t budget,
                                            double tol) {
  IrreducibilityReport report;
  report.max_length = max_length;
  const int g = tau.genus();
  if (g == 1) {
    report.status = Irreducibility::irreducible;
    return report;
  }
  const auto gens = standard_generators(g);
  std::vector<std::string> word;
  bool exhausted = false;

  std::function<bool(const PeriodMatrix&, int)> search = [&](const PeriodMatrix& t, int depth) -> bool {
    ++report.words_examined;
    if (is_block_diagonal(t.tau(), tol)) {
      report.word = word;
      return true;
    }
    if (depth == max_length) return false;
    for (const auto& gen : gens) {
      if (report.words_examined >= budget) {
        exhausted = true;
        return false;
      }
      std::optional<PeriodMatrix> next;
      try {
        next = sp_act(gen.gamma, t);
      } catch (const std::invalid_argument&) {
        continue;  // numerically degenerate image; nothing to learn below it
      }
      word.push_back(gen.name);
      const bool hit = search(*next, depth + 1);
      word.pop_back();
      if (hit) return true;
    }
    return false;
  };

  if (search(tau, 0)) {
    report.status = Irreducibility::reducible;
  } else {
    report.status = exhausted ? Irreducibility::inconclusive : Irreducibility::irreducible;
  }
  return report;
}

}  // namespace thetakit
