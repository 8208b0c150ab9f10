#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "thetakit/characteristics.hpp"

using namespace thetakit;

namespace {

int brute_parity(const Characteristic& m) {
  int s = 0;
  for (int k = 0; k < m.genus(); ++k) s += ((m.eps() >> k) & 1) * ((m.delta() >> k) & 1);
  return s % 2;
}

// Truncated genus-1 series with unreduced characteristic, tau = i, z = 0.3 + 0.1i.
std::complex<double> series(double eps, double delta) {
  const std::complex<double> tau(0.0, 1.0), z(0.3, 0.1), I(0.0, 1.0);
  std::complex<double> sum = 0.0;
  for (int n = -40; n <= 40; ++n) {
    const double a = n + eps / 2.0;
    sum += std::exp(M_PI * I * (a * a * tau + 2.0 * a * (z + delta / 2.0)));
  }
  return sum;
}

int binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

}  // namespace

TEST_CASE("encoding of e_k and s_k") {
  CHECK(unit_vector(1, 3) == 0b001);
  CHECK(unit_vector(3, 3) == 0b100);
  CHECK(unit_vector(4, 3) == 0);
  CHECK(prefix_vector(0) == 0);
  CHECK(prefix_vector(3) == 0b111);
  CHECK(format_bits(0b0101, 4) == "1010");
  CHECK(parse_bits("1010", 4) == 0b0101);
  CHECK_THROWS(parse_bits("10", 4));
  CHECK_THROWS(parse_bits("1020", 4));
}

TEST_CASE("text form round trip") {
  const auto m = Characteristic::parse("0101|1111");
  CHECK(m.genus() == 4);
  CHECK(m.to_string() == "0101|1111");
  CHECK(Characteristic::from_index(4, m.index()) == m);
  CHECK_THROWS(Characteristic::parse("01|111"));
  CHECK_THROWS(Characteristic::parse("0101"));
}

TEST_CASE("parity") {
  CHECK(Characteristic::parse("1|1").parity() == Parity::odd);
  CHECK(Characteristic::parse("0000|0000").is_even());
  for (int g = 1; g <= 5; ++g) {
    const auto all = all_characteristics(g);
    CHECK(all.size() == (1u << (2 * g)));
    const auto evens = even_characteristics(g);
    CHECK(static_cast<long>(evens.size()) == (1L << (g - 1)) * ((1L << g) + 1));
    int odd = 0;
    for (const auto& m : all) {
      CHECK(brute_parity(m) == (m.is_even() ? 0 : 1));
      odd += m.is_even() ? 0 : 1;
    }
    CHECK(odd == (1 << (g - 1)) * ((1 << g) - 1));
  }
  CHECK(even_characteristics(2).size() == 10);
}

TEST_CASE("reduce against the series") {
  SUBCASE("stated examples") {
    const std::vector<long> e1{2}, d1{0};
    auto r = reduce(e1, d1);
    CHECK(r.reduced == Characteristic::parse("0|0"));
    CHECK(r.sign == 1);
    const std::vector<long> e2{1}, d2{2};
    r = reduce(e2, d2);
    CHECK(r.reduced == Characteristic::parse("1|0"));
    CHECK(r.sign == -1);
  }
  SUBCASE("genus 2, eps = (3,0), delta = (0,2)") {
    // The delta shift sits in the coordinate where eps is even, so no sign.
    const std::vector<long> e{3, 0}, d{0, 2};
    const auto r = reduce(e, d);
    CHECK(r.reduced == Characteristic::parse("10|00"));
    CHECK(r.sign == 1);
  }
  SUBCASE("genus 1 series oracle") {
    for (long e = -3; e <= 3; ++e) {
      for (long d = -3; d <= 3; ++d) {
        const std::vector<long> ev{e}, dv{d};
        const auto r = reduce(ev, dv);
        const auto lhs = series(static_cast<double>(e), static_cast<double>(d));
        const auto rhs = static_cast<double>(r.sign) * series(r.reduced.eps(), r.reduced.delta());
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
  const std::vector<long> a{1, 2}, b{1};
  CHECK_THROWS(reduce(a, b));
}

TEST_CASE("azygetic triples and tuples") {
  const auto f4 = standard_fundamental_system(4);
  const auto& c = f4.chars();
  CHECK(is_azygetic_triple(c[0], c[1], c[2]));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      for (std::size_t k = j + 1; k < c.size(); ++k) CHECK(is_azygetic_triple(c[i], c[j], c[k]));
  for (const auto& m : all_characteristics(1)) CHECK_FALSE(is_azygetic_triple(m, m, m));

  for (int g = 1; g <= 5; ++g) {
    const auto f = standard_fundamental_system(g);
    CHECK(is_azygetic_tuple(f.chars()));
    for (int k = 0; k < 2 * g + 2; ++k) CHECK(f.chars()[k].is_even() == (k >= g));
  }
  std::vector<Characteristic> repeated{c[4], c[5], c[4]};
  CHECK_FALSE(is_azygetic_tuple(repeated));

  // Random even 4-tuples at g = 2 against the triple-wise definition.
  const auto evens = even_characteristics(2);
  for (std::size_t a = 0; a < evens.size(); ++a)
    for (std::size_t b = a + 1; b < evens.size(); ++b)
      for (std::size_t d = b + 1; d < evens.size(); ++d)
        for (std::size_t e = d + 1; e < evens.size(); e += 3) {
          std::vector<Characteristic> t{evens[a], evens[b], evens[d], evens[e]};
          bool expect = true;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
              for (int k = j + 1; k < 4; ++k) {
                const auto s = t[i] + t[j] + t[k];
                expect = expect && (brute_parity(t[i]) + brute_parity(t[j]) + brute_parity(t[k]) + brute_parity(s)) % 2 == 1;
              }
          CHECK(is_azygetic_tuple(t) == expect);
        }
}

TEST_CASE("standard fundamental system in genus 4") {
  const auto f = standard_fundamental_system(4);
  // m_k = [s_k; e_k], m_{4+k} = [s_{k-1}; e_k], m_9 = [s_4; 0], m_inf = 0.
  const std::vector<std::string> expected{"1000|1000", "1100|0100", "1110|0010", "1111|0001", "0000|1000",
                                          "1000|0100", "1100|0010", "1110|0001", "1111|0000", "0000|0000"};
  REQUIRE(f.chars().size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(f.chars()[k].to_string() == expected[k]);
  CHECK(f.at(SubsetLabel::infinity(4)) == Characteristic::zero(4));
  CHECK(f.u() == SubsetLabel::of(4, {5, 6, 7, 8, 9}));
}

TEST_CASE("subset bijection and parity") {
  for (int g = 1; g <= 4; ++g) {
    const auto f = standard_fundamental_system(g);
    CHECK(subset_to_char(SubsetLabel(g, 0), f) == Characteristic::zero(g));
    const auto pair = SubsetLabel::of(g, {2 * g + 1, SubsetLabel::infinity(g)});
    CHECK(subset_to_char(pair, f) == Characteristic(g, prefix_vector(g), 0));
    std::vector<bool> hit(1u << (2 * g), false);
    for (std::uint64_t mask = 0; mask < (1ull << (2 * g + 2)); ++mask) {
      const SubsetLabel t(g, mask);
      if (!t.is_even() || t.contains(SubsetLabel::infinity(g))) continue;
      const auto m = subset_to_char(t, f);
      CHECK_FALSE(hit[m.index()]);
      hit[m.index()] = true;
      CHECK(char_to_subset(m, f) == t);
      CHECK(subset_to_char(t.complement(), f) == m);
      CHECK(subset_parity(t, f.u()) == m.parity());
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
  }
  CHECK(subset_parity(SubsetLabel(4, 0), standard_fundamental_system(4).u()) == Parity::even);
  const auto f3 = standard_fundamental_system(3);
  const auto t = SubsetLabel::of(3, {1, 2});
  CHECK(subset_parity(t, f3.u()) == parity(subset_to_char(t, f3)));
  CHECK(SubsetLabel::of(2, {1, 5}).canonical() == SubsetLabel::of(2, {1, 5}));
  CHECK(SubsetLabel::of(2, {1, 6}).canonical() == SubsetLabel::of(2, {2, 3, 4, 5}));
}

TEST_CASE("predicted vanishing sets") {
  CHECK(predicted_vanishing_set(1).empty());
  CHECK(predicted_vanishing_set(2).empty());
  const auto v3 = predicted_vanishing_set(3);
  REQUIRE(v3.size() == 1);
  CHECK(v3[0] == Characteristic::parse("101|111"));

  // The ten characteristics as displayed, top row eps, bottom row delta.
  std::vector<Characteristic> ten;
  for (const char* text : {"0101|1111", "1101|0111", "1001|1011", "1011|1101", "1010|1110", "0101|0111",
                           "1101|1011", "1001|1101", "1011|1110", "1010|1111"})
    ten.push_back(Characteristic::parse(text));
  std::sort(ten.begin(), ten.end());
  CHECK(predicted_vanishing_set(4) == ten);
  for (const auto& m : ten) CHECK(m.is_even());

  for (int g = 1; g <= 5; ++g) {
    const int formula = (1 << (g - 1)) * ((1 << g) + 1) - binomial(2 * g + 2, g + 1) / 2;
    CHECK(expected_vanishing_count(g) == formula);
    CHECK(static_cast<int>(predicted_vanishing_set(g).size()) == formula);
  }
  CHECK(expected_vanishing_count(4) == 10);
}

TEST_CASE("epsilon_U") {
  const auto u = standard_fundamental_system(2).u();
  CHECK(epsilon_u(3, u) == 1);
  CHECK(epsilon_u(1, u) == -1);
  CHECK(epsilon_u(SubsetLabel::infinity(2), u) == -1);
}

TEST_CASE("Varley-Debarre sets") {
  const auto n = varley_debarre_sets(4, VarleyDebarreVariant::explicit_n);
  REQUIRE(n.size() == 10);
  CHECK(n[0] == Characteristic::parse("0000|0000"));
  CHECK(n[9] == Characteristic::parse("1111|1111"));
  for (const auto& m : n) CHECK(m.is_even());
  const auto cs = complementary_sum(n);
  CHECK(cs.complement.size() == 6);
  CHECK(cs.sums_to_zero);

  const auto w = varley_debarre_sets(4, VarleyDebarreVariant::weight_two_three);
  CHECK(w.size() == 10);
  for (const auto& m : w) {
    CHECK(m.eps() == 0);
    const int weight = std::popcount(m.delta());
    CHECK((weight == 2 || weight == 3));
  }
  CHECK_THROWS(varley_debarre_sets(3, VarleyDebarreVariant::explicit_n));
}
