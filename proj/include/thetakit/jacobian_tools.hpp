// Hyperelliptic period matrices from real branch points, the symplectic
// group acting on Siegel space and on characteristics, classification of
// theta-constant vanishing patterns, and the multisecant rank check.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "thetakit/characteristics.hpp"
#include "thetakit/identities.hpp"
#include "thetakit/theta_engine.hpp"

namespace thetakit {

// ---------------------------------------------------------------- periods

/// Real branch points of y^2 = prod (x - lambda_i): 2g+2 finite points, or
/// 2g+1 finite points and one at infinity.
class BranchPointSet {
 public:
  BranchPointSet(std::vector<double> finite_points, bool point_at_infinity);
  /// Comma separated list; "inf" may close the list. An odd number of
  /// finite points implies a point at infinity.
  static BranchPointSet parse(std::string_view text);

  int genus() const;
  const std::vector<double>& finite_points() const { return points_; }
  bool has_infinity() const { return infinity_; }

 private:
  std::vector<double> points_;
  bool infinity_;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PeriodResult {
  PeriodMatrix tau;
  CMatrix a_periods;  // rows: differentials x^k dx / y, columns: cycles
  CMatrix b_periods;
  double symmetry_defect = 0.0;    // relative, before symmetrization
  double refinement_change = 0.0;  // max |tau(2N) - tau(N)|
  int nodes = 0;
  std::vector<std::string> warnings;
};

inline constexpr int kMaxPeriodGenus = 4;

/// a-cycles encircle [lambda_{2i-1}, lambda_{2i}], b-cycles run through the
/// gaps [lambda_{2j}, lambda_{2j+1}] for j >= i. Each segment integral is
/// Gauss-Chebyshev with `nodes` points; the result at 2*nodes is returned
/// after checking the change stays below 1e-9.
PeriodResult hyperelliptic_periods(const BranchPointSet& bp, int nodes = 256);

// ------------------------------------------------------------- symplectic

using IntMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// 2g x 2g integer matrix [[a, b], [c, d]] with gamma^t J gamma = J.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(IntMat m);
  static SymplecticMatrix identity(int genus);

  int genus() const { return static_cast<int>(m_.rows() / 2); }
  const IntMat& matrix() const { return m_; }
  IntMat a() const { return m_.topLeftCorner(genus(), genus()); }
  IntMat b() const { return m_.topRightCorner(genus(), genus()); }
  IntMat c() const { return m_.bottomLeftCorner(genus(), genus()); }
  IntMat d() const { return m_.bottomRightCorner(genus(), genus()); }

  SymplecticMatrix operator*(const SymplecticMatrix& other) const;
  /// -J gamma^t J.
  SymplecticMatrix inverse() const;
  friend bool operator==(const SymplecticMatrix& x, const SymplecticMatrix& y) { return x.m_ == y.m_; }

 private:
  IntMat m_;
};

struct NamedGenerator {
  std::string name;
  SymplecticMatrix gamma;
};

/// J = [[0, -I], [I, 0]]; T_ij (i <= j) = [[I, E_ij + E_ji], [0, I]] (E_ii on
/// the diagonal); U_ij (i != j) = [[A, 0], [0, A^-t]] with A = I + E_ij.
/// Indices in names are 1-based.
std::vector<NamedGenerator> standard_generators(int genus);
SymplecticMatrix generator_by_name(int genus, std::string_view name);
/// The word [g_1, ..., g_k] denotes g_k ... g_1, i.e. g_1 acts first.
SymplecticMatrix word_product(int genus, const std::vector<std::string>& word);

/// (a tau + b)(c tau + d)^-1. Throws std::invalid_argument when c tau + d is
/// numerically singular or the result fails validation.
PeriodMatrix sp_act(const SymplecticMatrix& gamma, const PeriodMatrix& tau);
Complex det_c_tau_d(const SymplecticMatrix& gamma, const PeriodMatrix& tau);

/// (eps, delta) -> (d eps - c delta + diag(c d^t), -b eps + a delta + diag(a b^t)) mod 2.
Characteristic char_act(const SymplecticMatrix& gamma, const Characteristic& m);

/// | |theta[gamma m](gamma tau, 0)|^2 - |det(c tau + d)| |theta[m](tau, 0)|^2 |,
/// relative to the larger side.
ResidualReport transformation_law_residual(const SymplecticMatrix& gamma, const Characteristic& m,
                                           const PeriodMatrix& tau, const TruncationPolicy& policy = {});

struct CongruenceMembership {
  bool level_n;     // gamma = I mod n
  bool level_n_2n;  // additionally diag(a^t b) = diag(c^t d) = 0 mod 2n
};
CongruenceMembership congruence_membership(const SymplecticMatrix& gamma, int n);

// --------------------------------------------------------- classification

enum class Verdict { consistent_hyperelliptic, inconsistent, inconclusive };
std::string to_string(Verdict v);

struct ConstantSample {
  Characteristic m;
  Complex value;
  double tail_bound;
  double ratio;  // |value| / max |even constant|
};

struct ClassificationReport {
  int genus = 0;
  double threshold_ratio = 0.0;
  double max_abs = 0.0;
  std::vector<ConstantSample> constants;  // all even characteristics
  std::vector<Characteristic> vanishing;  // sorted
  int expected_count = 0;
  Verdict verdict = Verdict::inconclusive;
  double largest_vanishing_ratio = 0.0;
  double smallest_nonvanishing_ratio = 0.0;
  std::vector<ResidualReport> residuals;
  std::string reason;
};

/// Ratios within a factor 10 of the threshold on either side make the
/// verdict inconclusive.
ClassificationReport vanishing_pattern(const PeriodMatrix& tau, double threshold_ratio,
                                       const TruncationPolicy& policy = {});

struct TransportOptions {
  int max_word_length = 12;
  std::size_t max_states = 4'000'000;
};

struct TransportResult {
  bool success = false;
  std::vector<std::string> word;
  std::optional<SymplecticMatrix> gamma;
  std::optional<PeriodMatrix> tau_prime;
  std::optional<ClassificationReport> validation;
  std::size_t states_explored = 0;
  int best_overlap = 0;  // largest |image ∩ target| seen when the search fails
  std::vector<Characteristic> best_image;
  std::string message;
};

/// Breadth-first search over generator words acting on the vanishing set
/// until it becomes predicted_vanishing_set(g), then re-classifies gamma tau.
/// Throws std::invalid_argument unless the report is consistent.
TransportResult transport_to_standard(const PeriodMatrix& tau, const ClassificationReport& report,
                                      const TransportOptions& options = {});

// ---------------------------------------------------------- multisecant

struct GunningSample {
  CVector z;
  double dependence_ratio = 0.0;  // smallest / largest singular value, unit rows
  double sign_rule_error = 0.0;   // shifted rows vs direct evaluation
};

struct GunningReport {
  std::vector<GunningSample> samples;
  double max_dependence_ratio = 0.0;
  double max_sign_rule_error = 0.0;
  CMatrix gram;                       // b_ij = sum_sigma Th2(A_i+y)_sigma Th2(A_j+y)_sigma
  double gram_product_error = 0.0;    // vs theta00(A_i-A_j) theta00(A_i+A_j+2y), relative
  double block_equal_error = 0.0;     // spread of the leading 2x2 block, relative
  double off_block_relative = 0.0;    // largest entry outside block and diagonal
  std::vector<double> gram_singular_values;
  int gram_rank = 0;

  bool passes(int genus, double dependence_tol = 1e-6, double off_block_tol = 1e-8) const;
};

inline constexpr double kGramRankTolerance = 1e-8;

/// A_0 = 0, A_k = (tau s_{k-1} + e_k)/2 for k = 1..g+1. Throws
/// std::invalid_argument unless tau shows the standard vanishing pattern.
GunningReport gunning_check(const PeriodMatrix& tau, const std::vector<CVector>& z_samples,
                            const TruncationPolicy& policy = {}, double threshold_ratio = 1e-5);

/// Points A_i.
std::vector<CVector> gunning_points(const PeriodMatrix& tau);

enum class Irreducibility { irreducible, reducible, inconclusive };
std::string to_string(Irreducibility v);

struct IrreducibilityReport {
  Irreducibility status = Irreducibility::inconclusive;
  std::vector<std::string> word;  // reaches block-diagonal form when reducible
  std::size_t words_examined = 0;
  int max_length = 0;
};

/// Searches generator words of length <= max_length for one bringing tau
/// within tol (relative) of block-diagonal form.
IrreducibilityReport irreducibility_witness(const PeriodMatrix& tau, int max_length = 6,
                                            std::size_t budget = 400'000, double tol = 1e-6);

/// Whether the entries coupling some nontrivial index split are all small.
bool is_block_diagonal(const CMatrix& tau, double tol);

}  // namespace thetakit
