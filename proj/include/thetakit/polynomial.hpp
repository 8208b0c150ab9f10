// Integer polynomials of degree <= 4 in the variables X_sigma, sigma in Z_2^g.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "thetakit/characteristics.hpp"

namespace thetakit {

inline constexpr int kMaxDegree = 4;
inline constexpr int kMaxPolyGenus = 8;

/// Sorted multiset of variable indices.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<BitVec> vars);

  int degree() const { return degree_; }
  BitVec var(int i) const { return vars_[i]; }
  std::vector<BitVec> vars() const { return {vars_.begin(), vars_.begin() + degree_}; }
  /// XOR of the variable indices.
  BitVec index_sum() const;
  int exponent(BitVec v) const;

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.degree_ == b.degree_ && a.vars_ == b.vars_; }

 private:
  std::array<std::uint16_t, kMaxDegree> vars_{};
  int degree_ = 0;
};

/// Degree reverse lexicographic with X_0 > X_1 > ... (binary counting).
/// Returns true when a comes strictly before b.
struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class IntPolynomial {
 public:
  using Terms = std::map<Monomial, std::int64_t, DegRevLexGreater>;

  explicit IntPolynomial(int genus);
  static IntPolynomial variable(int genus, BitVec sigma);
  static IntPolynomial constant(int genus, std::int64_t c);

  int genus() const { return genus_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  std::int64_t coefficient(const Monomial& m) const;

  /// Adds c * m; drops the term if it cancels. Throws std::overflow_error.
  void add_term(const Monomial& m, std::int64_t c);

  IntPolynomial operator+(const IntPolynomial& other) const;
  IntPolynomial operator-(const IntPolynomial& other) const;
  IntPolynomial operator*(const IntPolynomial& other) const;
  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);

  IntPolynomial derivative(BitVec sigma) const;
  /// values[sigma] is substituted for X_sigma.
  std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const;

  std::string to_string() const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.genus_ == b.genus_ && a.terms_ == b.terms_;
  }

 private:
  int genus_;
  Terms terms_;
};

IntPolynomial operator*(std::int64_t c, const IntPolynomial& p);

/// All monomials of degree d in 2^g variables, in degrevlex order.
std::vector<Monomial> monomials_of_degree(int genus, int degree);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace thetakit
