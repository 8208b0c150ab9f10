#include "thetakit/characteristics.hpp"

#include <algorithm>
#include <functional>
#include <bit>
#include <stdexcept>

namespace thetakit {

namespace {

void check_genus(int genus) {
  if (genus < 1 || genus > kMaxGenus) {
    throw std::invalid_argument("genus must lie in [1, " + std::to_string(kMaxGenus) + "], got " +
                                std::to_string(genus));
  }
}

void check_same_genus(const Characteristic& a, const Characteristic& b) {
  if (a.genus() != b.genus()) {
    throw std::invalid_argument("characteristics of different genus");
  }
}

long floor_div2(long v) { return (v - (((v % 2) + 2) % 2)) / 2; }

}  // namespace

int dot2(BitVec a, BitVec b) { return std::popcount(a & b) & 1; }

BitVec unit_vector(int k, int genus) {
  if (k < 1 || k > genus + 1) {
    throw std::invalid_argument("unit vector index out of range");
  }
  return k == genus + 1 ? 0u : (1u << (k - 1));
}

BitVec prefix_vector(int k) {
  if (k < 0 || k > 31) {
    throw std::invalid_argument("prefix vector index out of range");
  }
  return k == 0 ? 0u : (k == 32 ? ~0u : ((1u << k) - 1));
}

BitVec full_mask(int genus) { return genus >= 32 ? ~0u : ((1u << genus) - 1); }

BitVec parse_bits(std::string_view text, int genus) {
  if (static_cast<int>(text.size()) != genus) {
    throw std::invalid_argument("bit string '" + std::string(text) + "' does not have length " +
                                std::to_string(genus));
  }
  BitVec v = 0;
  for (int k = 0; k < genus; ++k) {
    if (text[k] == '1') {
      v |= 1u << k;
    } else if (text[k] != '0') {
      throw std::invalid_argument("bit string may contain only 0 and 1: '" + std::string(text) + "'");
    }
  }
  return v;
}

std::string format_bits(BitVec v, int genus) {
  std::string out(genus, '0');
  for (int k = 0; k < genus; ++k) {
    if ((v >> k) & 1u) out[k] = '1';
  }
  return out;
}

// ---------------------------------------------------------------------------

Characteristic::Characteristic(int genus, BitVec eps, BitVec delta)
    : genus_(genus), eps_(eps), delta_(delta) {
  check_genus(genus);
  if ((eps & ~full_mask(genus)) != 0 || (delta & ~full_mask(genus)) != 0) {
    throw std::invalid_argument("characteristic bits exceed genus");
  }
}

Characteristic Characteristic::parse(std::string_view text) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw std::invalid_argument("characteristic must have the form e1..eg|d1..dg: '" + std::string(text) + "'");
  }
  auto top = text.substr(0, bar);
  auto bottom = text.substr(bar + 1);
  int genus = static_cast<int>(top.size());
  if (static_cast<int>(bottom.size()) != genus) {
    throw std::invalid_argument("characteristic halves differ in length: '" + std::string(text) + "'");
  }
  check_genus(genus);
  return {genus, parse_bits(top, genus), parse_bits(bottom, genus)};
}

Characteristic Characteristic::from_index(int genus, std::uint32_t index) {
  return {genus, index & full_mask(genus), (index >> genus) & full_mask(genus)};
}

Parity Characteristic::parity() const { return dot2(eps_, delta_) ? Parity::odd : Parity::even; }

std::string Characteristic::to_string() const {
  return format_bits(eps_, genus_) + "|" + format_bits(delta_, genus_);
}

Characteristic Characteristic::operator+(const Characteristic& other) const {
  check_same_genus(*this, other);
  return {genus_, eps_ ^ other.eps_, delta_ ^ other.delta_};
}

Parity parity(const Characteristic& m) { return m.parity(); }

// ---------------------------------------------------------------------------

IntCharacteristic lift(const Characteristic& m) {
  IntCharacteristic out;
  out.eps.resize(m.genus());
  out.delta.resize(m.genus());
  for (int k = 0; k < m.genus(); ++k) {
    out.eps[k] = (m.eps() >> k) & 1u;
    out.delta[k] = (m.delta() >> k) & 1u;
  }
  return out;
}

IntCharacteristic operator+(const IntCharacteristic& a, const IntCharacteristic& b) {
  if (a.eps.size() != b.eps.size() || a.delta.size() != b.delta.size()) {
    throw std::invalid_argument("characteristics of different genus");
  }
  IntCharacteristic out = a;
  for (std::size_t k = 0; k < a.eps.size(); ++k) {
    out.eps[k] += b.eps[k];
    out.delta[k] += b.delta[k];
  }
  return out;
}

IntCharacteristic unreduced_sum(const Characteristic& a, const Characteristic& b) {
  return lift(a) + lift(b);
}

Reduction reduce(std::span<const long> eps, std::span<const long> delta) {
  if (eps.size() != delta.size()) {
    throw std::invalid_argument("reduce: eps and delta have different lengths");
  }
  int genus = static_cast<int>(eps.size());
  check_genus(genus);
  BitVec e = 0, d = 0, d_high = 0;
  for (int k = 0; k < genus; ++k) {
    if (((eps[k] % 2) + 2) % 2) e |= 1u << k;
    if (((delta[k] % 2) + 2) % 2) d |= 1u << k;
    if (floor_div2(delta[k]) & 1) d_high |= 1u << k;
  }
  return {Characteristic(genus, e, d), dot2(e, d_high) ? -1 : 1};
}

Reduction reduce(const IntCharacteristic& m) { return reduce(m.eps, m.delta); }

// ---------------------------------------------------------------------------

bool is_azygetic_triple(const Characteristic& a, const Characteristic& b, const Characteristic& c) {
  check_same_genus(a, b);
  check_same_genus(a, c);
  int total = dot2(a.eps(), a.delta()) + dot2(b.eps(), b.delta()) + dot2(c.eps(), c.delta()) +
              dot2(a.eps() ^ b.eps() ^ c.eps(), a.delta() ^ b.delta() ^ c.delta());
  return (total & 1) == 1;
}

bool is_azygetic_tuple(std::span<const Characteristic> seq) {
  for (std::size_t i = 1; i < seq.size(); ++i) check_same_genus(seq[0], seq[i]);
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      for (std::size_t k = j + 1; k < seq.size(); ++k)
        if (!is_azygetic_triple(seq[i], seq[j], seq[k])) return false;
  return true;
}

std::vector<Characteristic> all_characteristics(int genus) {
  check_genus(genus);
  std::vector<Characteristic> out;
  out.reserve(std::size_t{1} << (2 * genus));
  for (std::uint32_t idx = 0; idx < (1u << (2 * genus)); ++idx) {
    out.push_back(Characteristic::from_index(genus, idx));
  }
  return out;
}

std::vector<Characteristic> even_characteristics(int genus) {
  auto all = all_characteristics(genus);
  std::erase_if(all, [](const Characteristic& m) { return !m.is_even(); });
  return all;
}

// ---------------------------------------------------------------------------

SubsetLabel::SubsetLabel(int genus, std::uint64_t mask) : genus_(genus), mask_(mask) {
  check_genus(genus);
  std::uint64_t universe = (std::uint64_t{1} << (2 * genus + 2)) - 1;
  if ((mask & ~universe) != 0) {
    throw std::invalid_argument("subset has elements outside {1, ..., 2g+1, inf}");
  }
}

SubsetLabel SubsetLabel::of(int genus, std::initializer_list<int> members) {
  std::uint64_t mask = 0;
  for (int j : members) {
    if (j < 1 || j > infinity(genus)) {
      throw std::invalid_argument("subset element out of range: " + std::to_string(j));
    }
    mask |= std::uint64_t{1} << (j - 1);
  }
  return {genus, mask};
}

bool SubsetLabel::contains(int j) const {
  return j >= 1 && j <= infinity(genus_) && ((mask_ >> (j - 1)) & 1u);
}

int SubsetLabel::size() const { return std::popcount(mask_); }

std::vector<int> SubsetLabel::members() const {
  std::vector<int> out;
  for (int j = 1; j <= infinity(genus_); ++j) {
    if (contains(j)) out.push_back(j);
  }
  return out;
}

SubsetLabel SubsetLabel::complement() const {
  std::uint64_t universe = (std::uint64_t{1} << (2 * genus_ + 2)) - 1;
  return {genus_, universe & ~mask_};
}

SubsetLabel SubsetLabel::symmetric_difference(const SubsetLabel& other) const {
  if (other.genus_ != genus_) throw std::invalid_argument("subsets of different genus");
  return {genus_, mask_ ^ other.mask_};
}

SubsetLabel SubsetLabel::canonical() const {
  return contains(infinity(genus_)) ? complement() : *this;
}

// ---------------------------------------------------------------------------

FundamentalSystem::FundamentalSystem(std::vector<Characteristic> chars, SubsetLabel u)
    : genus_(u.genus()), chars_(std::move(chars)), u_(u) {
  const int g = genus_;
  if (static_cast<int>(chars_.size()) != 2 * g + 2) {
    throw std::invalid_argument("fundamental system must have 2g+2 characteristics");
  }
  for (const auto& m : chars_) {
    if (m.genus() != g) throw std::invalid_argument("fundamental system genus mismatch");
  }
  for (int k = 0; k < 2 * g + 2; ++k) {
    bool want_odd = k < g;
    if ((chars_[k].parity() == Parity::odd) != want_odd) {
      throw std::invalid_argument("fundamental system must have g odd then g+2 even characteristics");
    }
  }
  if (!is_azygetic_tuple(chars_)) {
    throw std::invalid_argument("fundamental system is not azygetic");
  }

  // Even subsets of {1..2g+1} are the canonical representatives; there are
  // 2^{2g} of them, one per characteristic when the system is valid.
  constexpr std::uint64_t kUnset = ~std::uint64_t{0};
  subset_table_.assign(std::size_t{1} << (2 * g), kUnset);
  const std::uint64_t finite = (std::uint64_t{1} << (2 * g + 1)) - 1;
  for (std::uint64_t mask = 0; mask <= finite; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    BitVec e = 0, d = 0;
    for (int j = 0; j < 2 * g + 1; ++j) {
      if ((mask >> j) & 1u) {
        e ^= chars_[j].eps();
        d ^= chars_[j].delta();
      }
    }
    auto idx = Characteristic(g, e, d).index();
    if (subset_table_[idx] != kUnset) {
      throw std::invalid_argument("subset labelling is not a bijection for this system");
    }
    subset_table_[idx] = mask;
  }
}

const Characteristic& FundamentalSystem::at(int j) const {
  if (j < 1 || j > SubsetLabel::infinity(genus_)) {
    throw std::out_of_range("fundamental system index out of range");
  }
  return chars_[j - 1];
}

Characteristic FundamentalSystem::char_of(const SubsetLabel& t) const {
  if (t.genus() != genus_) throw std::invalid_argument("subset genus mismatch");
  BitVec e = 0, d = 0;
  for (int j : t.members()) {
    e ^= at(j).eps();
    d ^= at(j).delta();
  }
  return {genus_, e, d};
}

SubsetLabel FundamentalSystem::subset_of(const Characteristic& m) const {
  if (m.genus() != genus_) throw std::invalid_argument("characteristic genus mismatch");
  return {genus_, subset_table_[m.index()]};
}

FundamentalSystem standard_fundamental_system(int genus) {
  check_genus(genus);
  const int g = genus;
  std::vector<Characteristic> chars;
  chars.reserve(2 * g + 2);
  for (int k = 1; k <= g; ++k) chars.emplace_back(g, prefix_vector(k), unit_vector(k, g));
  for (int k = 1; k <= g; ++k) chars.emplace_back(g, prefix_vector(k - 1), unit_vector(k, g));
  chars.emplace_back(g, prefix_vector(g), 0u);
  chars.emplace_back(g, 0u, 0u);
  std::uint64_t u_mask = 0;
  for (int j = g + 1; j <= 2 * g + 1; ++j) u_mask |= std::uint64_t{1} << (j - 1);
  return FundamentalSystem(std::move(chars), SubsetLabel(g, u_mask));
}

Characteristic subset_to_char(const SubsetLabel& t, const FundamentalSystem& f) { return f.char_of(t); }

SubsetLabel char_to_subset(const Characteristic& m, const FundamentalSystem& f) { return f.subset_of(m); }

Parity subset_parity(const SubsetLabel& t, const SubsetLabel& u) {
  int n = t.symmetric_difference(u).size();
  int excess = n - t.genus() - 1;
  if (excess % 2 != 0) {
    throw std::invalid_argument("#(T o U) - g - 1 is odd; parity formula does not apply");
  }
  return (excess / 2) % 2 == 0 ? Parity::even : Parity::odd;
}

std::vector<Characteristic> predicted_vanishing_set(int genus) {
  auto f = standard_fundamental_system(genus);
  const int g = genus;
  std::vector<Characteristic> out;
  const std::uint64_t finite = (std::uint64_t{1} << (2 * g + 1)) - 1;
  for (std::uint64_t mask = 0; mask <= finite; mask += 1) {
    if (std::popcount(mask) % 2 != 0) continue;
    SubsetLabel t(g, mask);
    if (t.symmetric_difference(f.u()).size() == g + 1) continue;
    if (subset_parity(t, f.u()) != Parity::even) continue;
    out.push_back(f.char_of(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int expected_vanishing_count(int genus) {
  check_genus(genus);
  long even = (1L << (genus - 1)) * ((1L << genus) + 1);
  long binom = 1;
  for (int k = 1; k <= genus + 1; ++k) binom = binom * (genus + 1 + k) / k;  // C(2g+2, g+1)
  return static_cast<int>(even - binom / 2);
}

int epsilon_u(int j, const SubsetLabel& u) { return u.contains(j) ? 1 : -1; }

std::vector<Characteristic> varley_debarre_sets(int genus, VarleyDebarreVariant variant) {
  if (genus != 4) {
    throw std::invalid_argument("Varley-Debarre characteristic sets are defined for genus 4 only");
  }
  std::vector<Characteristic> out;
  if (variant == VarleyDebarreVariant::explicit_n) {
    for (const char* text : {"0000|0000", "1010|0000", "0101|0000", "1111|0000", "0101|1010", "1010|0101",
                             "0000|1010", "0000|0101", "0000|1111", "1111|1111"}) {
      out.push_back(Characteristic::parse(text));
    }
  } else {
    for (BitVec alpha = 0; alpha < 16; ++alpha) {
      int w = std::popcount(alpha);
      if (w == 2 || w == 3) out.emplace_back(4, 0u, alpha);
    }
  }
  return out;
}

ComplementarySum complementary_sum(std::span<const Characteristic> set) {
  if (set.empty()) throw std::invalid_argument("complementary_sum of an empty set");
  const int g = set[0].genus();
  const std::uint32_t base = set[0].index();

  // Row-reduced basis of the differences, then the full affine span.
  std::vector<std::uint32_t> basis;
  for (const auto& m : set) {
    if (m.genus() != g) throw std::invalid_argument("characteristics of different genus");
    std::uint32_t v = m.index() ^ base;
    for (auto b : basis) v = std::min(v, v ^ b);
    if (v != 0) {
      basis.push_back(v);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  }
  std::vector<std::uint32_t> span{0};
  for (auto b : basis) {
    auto n = span.size();
    for (std::size_t i = 0; i < n; ++i) span.push_back(span[i] ^ b);
  }

  ComplementarySum out{static_cast<int>(basis.size()), {}, false};
  std::uint32_t total = 0;
  for (auto v : span) {
    std::uint32_t idx = v ^ base;
    bool member = std::any_of(set.begin(), set.end(), [&](const Characteristic& m) { return m.index() == idx; });
    if (!member) {
      out.complement.push_back(Characteristic::from_index(g, idx));
      total ^= idx;
    }
  }
  std::sort(out.complement.begin(), out.complement.end());
  out.sums_to_zero = total == 0;
  return out;
}

}  // namespace thetakit
