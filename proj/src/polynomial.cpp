#include "thetakit/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace thetakit {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer coefficient overflow");
  return r;
}

Monomial::Monomial(std::vector<BitVec> vars) {
  if (vars.size() > kMaxDegree) throw std::invalid_argument("monomial degree exceeds 4");
  std::sort(vars.begin(), vars.end());
  degree_ = static_cast<int>(vars.size());
  for (int i = 0; i < degree_; ++i) {
    if (vars[i] >= (1u << kMaxPolyGenus)) throw std::invalid_argument("variable index out of range");
    vars_[i] = static_cast<std::uint16_t>(vars[i]);
  }
}

BitVec Monomial::index_sum() const {
  BitVec s = 0;
  for (int i = 0; i < degree_; ++i) s ^= vars_[i];
  return s;
}

int Monomial::exponent(BitVec v) const {
  return static_cast<int>(std::count(vars_.begin(), vars_.begin() + degree_, v));
}

Monomial Monomial::operator*(const Monomial& other) const {
  auto v = vars();
  auto w = other.vars();
  v.insert(v.end(), w.begin(), w.end());
  return Monomial(std::move(v));
}

bool DegRevLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  // Strip matching variables from the top; the first mismatch names the
  // largest variable whose exponents differ. More of it means smaller.
  for (int i = a.degree() - 1; i >= 0; --i) {
    if (a.var(i) != b.var(i)) return a.var(i) < b.var(i);
  }
  return false;
}

IntPolynomial::IntPolynomial(int genus) : genus_(genus) {
  if (genus < 1 || genus > kMaxPolyGenus) throw std::invalid_argument("polynomial genus out of range");
}

IntPolynomial IntPolynomial::variable(int genus, BitVec sigma) {
  IntPolynomial p(genus);
  if (sigma > full_mask(genus)) throw std::invalid_argument("variable index out of range");
  p.add_term(Monomial({sigma}), 1);
  return p;
}

IntPolynomial IntPolynomial::constant(int genus, std::int64_t c) {
  IntPolynomial p(genus);
  p.add_term(Monomial(), c);
  return p;
}

int IntPolynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool IntPolynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

std::int64_t IntPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void IntPolynomial::add_term(const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  if (other.genus_ != genus_) throw std::invalid_argument("polynomial genus mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) {
  if (other.genus_ != genus_) throw std::invalid_argument("polynomial genus mismatch");
  for (const auto& [m, c] : other.terms_) add_term(m, checked_mul(-1, c));
  return *this;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& other) const {
  IntPolynomial r = *this;
  r += other;
  return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& other) const {
  IntPolynomial r = *this;
  r -= other;
  return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& other) const {
  if (other.genus_ != genus_) throw std::invalid_argument("polynomial genus mismatch");
  IntPolynomial r(genus_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : other.terms_) r.add_term(m1 * m2, checked_mul(c1, c2));
  return r;
}

IntPolynomial operator*(std::int64_t c, const IntPolynomial& p) {
  IntPolynomial r(p.genus());
  for (const auto& [m, a] : p.terms()) r.add_term(m, checked_mul(c, a));
  return r;
}

IntPolynomial IntPolynomial::derivative(BitVec sigma) const {
  IntPolynomial r(genus_);
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(sigma);
    if (e == 0) continue;
    auto v = m.vars();
    v.erase(std::find(v.begin(), v.end(), sigma));
    r.add_term(Monomial(std::move(v)), checked_mul(c, e));
  }
  return r;
}

std::complex<double> IntPolynomial::evaluate(const std::vector<std::complex<double>>& values) const {
  if (values.size() != (std::size_t{1} << genus_)) throw std::invalid_argument("evaluate: need 2^g values");
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = static_cast<double>(c);
    for (int i = 0; i < m.degree(); ++i) t *= values[m.var(i)];
    sum += t;
  }
  return sum;
}

std::string IntPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || m.degree() == 0) out << a;
    for (int i = 0; i < m.degree(); ++i) {
      if (a != 1 || i > 0) out << "*";
      out << "X" << m.var(i);
    }
  }
  return out.str();
}

namespace {
void monomials_rec(int nvars, int degree, BitVec start, std::vector<BitVec>& cur, std::vector<Monomial>& out) {
  if (static_cast<int>(cur.size()) == degree) {
    out.emplace_back(cur);
    return;
  }
  for (BitVec v = start; v < static_cast<BitVec>(nvars); ++v) {
    cur.push_back(v);
    monomials_rec(nvars, degree, v, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Monomial> monomials_of_degree(int genus, int degree) {
  if (degree < 0 || degree > kMaxDegree) throw std::invalid_argument("degree out of range");
  std::vector<Monomial> out;
  std::vector<BitVec> cur;
  monomials_rec(1 << genus, degree, 0, cur, out);
  std::sort(out.begin(), out.end(), DegRevLexGreater{});
  return out;
}

}  // namespace thetakit
