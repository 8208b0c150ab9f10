#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thetakit/jacobian_tools.hpp"

namespace thetakit {

namespace {

IntMat standard_form(int g) {
  IntMat j = IntMat::Zero(2 * g, 2 * g);
  j.topRightCorner(g, g) = -IntMat::Identity(g, g);
  j.bottomLeftCorner(g, g) = IntMat::Identity(g, g);
  return j;
}

long long mod(long long v, long long n) {
  long long r = v % n;
  return r < 0 ? r + n : r;
}

BitVec to_bits(const IntMat& v) {
  BitVec out = 0;
  for (int k = 0; k < v.rows(); ++k)
    if (mod(v(k, 0), 2)) out |= BitVec{1} << k;
  return out;
}

IntMat from_bits(BitVec v, int g) {
  IntMat out(g, 1);
  for (int k = 0; k < g; ++k) out(k, 0) = (v >> k) & 1u;
  return out;
}

}  // namespace

SymplecticMatrix::SymplecticMatrix(IntMat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2 || m_.rows() % 2 != 0)
    throw std::invalid_argument("symplectic matrix must be 2g x 2g");
  const IntMat j = standard_form(genus());
  if (m_.transpose() * j * m_ != j) throw std::invalid_argument("matrix is not symplectic");
}

SymplecticMatrix SymplecticMatrix::identity(int genus) {
  return SymplecticMatrix(IntMat::Identity(2 * genus, 2 * genus));
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& other) const {
  if (other.genus() != genus()) throw std::invalid_argument("symplectic genus mismatch");
  return SymplecticMatrix(m_ * other.m_);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const IntMat j = standard_form(genus());
  return SymplecticMatrix(-j * m_.transpose() * j);
}

std::vector<NamedGenerator> standard_generators(int genus) {
  const int g = genus;
  std::vector<NamedGenerator> out;
  out.push_back({"J", SymplecticMatrix(standard_form(g))});
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      IntMat m = IntMat::Identity(2 * g, 2 * g);
      m(i, g + j) = 1;
      m(j, g + i) = 1;
      out.push_back({"T_" + std::to_string(i + 1) + std::to_string(j + 1), SymplecticMatrix(m)});
    }
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      if (i == j) continue;
      IntMat m = IntMat::Identity(2 * g, 2 * g);
      m(i, j) = 1;       // A = I + E_ij
      m(g + j, g + i) = -1;  // A^-t = I - E_ji
      out.push_back({"U_" + std::to_string(i + 1) + std::to_string(j + 1), SymplecticMatrix(m)});
    }
  }
  return out;
}

SymplecticMatrix generator_by_name(int genus, std::string_view name) {
  for (auto& gen : standard_generators(genus))
    if (gen.name == name) return gen.gamma;
  throw std::invalid_argument("unknown symplectic generator '" + std::string(name) + "'");
}

SymplecticMatrix word_product(int genus, const std::vector<std::string>& word) {
  SymplecticMatrix gamma = SymplecticMatrix::identity(genus);
  for (const auto& name : word) gamma = generator_by_name(genus, name) * gamma;
  return gamma;
}

PeriodMatrix sp_act(const SymplecticMatrix& gamma, const PeriodMatrix& tau) {
  if (gamma.genus() != tau.genus()) throw std::invalid_argument("sp_act: genus mismatch");
  const CMatrix a = gamma.a().cast<double>().cast<Complex>();
  const CMatrix b = gamma.b().cast<double>().cast<Complex>();
  const CMatrix c = gamma.c().cast<double>().cast<Complex>();
  const CMatrix d = gamma.d().cast<double>().cast<Complex>();
  const CMatrix num = a * tau.tau() + b;
  const CMatrix den = c * tau.tau() + d;
  Eigen::PartialPivLU<CMatrix> lu(den.transpose());
  if (!(lu.rcond() > 1e-13)) throw std::invalid_argument("sp_act: c tau + d is numerically singular");
  // (num den^-1)^t = den^-t num^t
  CMatrix result = lu.solve(num.transpose()).transpose();
  const double scale = std::max(1.0, result.cwiseAbs().maxCoeff());
  const double defect = (result - result.transpose()).cwiseAbs().maxCoeff() / scale;
  if (!(defect < 1e-8)) throw std::invalid_argument("sp_act: result is not symmetric (" + std::to_string(defect) + ")");
  return PeriodMatrix(0.5 * (result + result.transpose()));
}

Complex det_c_tau_d(const SymplecticMatrix& gamma, const PeriodMatrix& tau) {
  const CMatrix c = gamma.c().cast<double>().cast<Complex>();
  const CMatrix d = gamma.d().cast<double>().cast<Complex>();
  return (c * tau.tau() + d).determinant();
}

Characteristic char_act(const SymplecticMatrix& gamma, const Characteristic& m) {
  const int g = gamma.genus();
  if (m.genus() != g) throw std::invalid_argument("char_act: genus mismatch");
  const IntMat a = gamma.a(), b = gamma.b(), c = gamma.c(), d = gamma.d();
  const IntMat e = from_bits(m.eps(), g);
  const IntMat dl = from_bits(m.delta(), g);
  IntMat ne = d * e - c * dl;
  IntMat nd = -b * e + a * dl;
  const IntMat cd = c * d.transpose();
  const IntMat ab = a * b.transpose();
  for (int k = 0; k < g; ++k) {
    ne(k, 0) += cd(k, k);
    nd(k, 0) += ab(k, k);
  }
  return Characteristic(g, to_bits(ne), to_bits(nd));
}

ResidualReport transformation_law_residual(const SymplecticMatrix& gamma, const Characteristic& m,
                                           const PeriodMatrix& tau, const TruncationPolicy& policy) {
  const PeriodMatrix image = sp_act(gamma, tau);
  const Characteristic mm = char_act(gamma, m);
  const double lhs = std::norm(theta_const(mm, image, policy).value);
  const double rhs = std::abs(det_c_tau_d(gamma, tau)) * std::norm(theta_const(m, tau, policy).value);
  auto report = make_report("transformation");
  report.add_sample(std::abs(lhs - rhs), std::max(lhs, rhs));
  return report;
}

CongruenceMembership congruence_membership(const SymplecticMatrix& gamma, int n) {
  if (n < 1) throw std::invalid_argument("congruence level must be >= 1");
  const int g = gamma.genus();
  const IntMat& m = gamma.matrix();
  bool level_n = true;
  for (int i = 0; i < 2 * g && level_n; ++i)
    for (int j = 0; j < 2 * g; ++j)
      if (mod(m(i, j) - (i == j ? 1 : 0), n) != 0) {
        level_n = false;
        break;
      }
  bool diag = true;
  const IntMat ab = gamma.a().transpose() * gamma.b();
  const IntMat cd = gamma.c().transpose() * gamma.d();
  for (int k = 0; k < g; ++k)
    if (mod(ab(k, k), 2LL * n) != 0 || mod(cd(k, k), 2LL * n) != 0) diag = false;
  return {level_n, level_n && diag};
}

}  // namespace thetakit
