// Theta characteristics over Z_2: parity, azygetic systems, the subset
// labelling attached to a special fundamental system, and the vanishing
// pattern of theta constants on the hyperelliptic locus.
#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace thetakit {

/// Vector in Z_2^g. Coordinate k (1-indexed) is stored in bit k-1.
using BitVec = std::uint32_t;

inline constexpr int kMaxGenus = 12;

/// <a, b> mod 2.
int dot2(BitVec a, BitVec b);

/// e_k for k = 1..g+1; e_{g+1} is the zero vector.
BitVec unit_vector(int k, int genus);

/// s_k = e_1 + ... + e_k, with s_0 = 0.
BitVec prefix_vector(int k);

/// Mask with the low `genus` bits set.
BitVec full_mask(int genus);

/// Parses "0101" (coordinate 1 first) into a BitVec of the given length.
BitVec parse_bits(std::string_view text, int genus);
std::string format_bits(BitVec v, int genus);

enum class Parity { even, odd };

/// A reduced characteristic [eps; delta] with eps, delta in Z_2^g.
class Characteristic {
 public:
  Characteristic(int genus, BitVec eps, BitVec delta);

  static Characteristic zero(int genus) { return {genus, 0, 0}; }
  /// Text form "e1e2...eg|d1d2...dg", e.g. "0101|1111".
  static Characteristic parse(std::string_view text);
  /// Inverse of index(): eps in the low g bits, delta above.
  static Characteristic from_index(int genus, std::uint32_t index);

  int genus() const { return genus_; }
  BitVec eps() const { return eps_; }
  BitVec delta() const { return delta_; }
  std::uint32_t index() const { return eps_ | (delta_ << genus_); }

  Parity parity() const;
  bool is_even() const { return parity() == Parity::even; }
  std::string to_string() const;

  /// Sum in Z_2^{2g}; the reduction sign is discarded.
  Characteristic operator+(const Characteristic& other) const;

  friend bool operator==(const Characteristic&, const Characteristic&) = default;
  friend auto operator<=>(const Characteristic&, const Characteristic&) = default;

 private:
  int genus_;
  BitVec eps_;
  BitVec delta_;
};

Parity parity(const Characteristic& m);

/// Characteristic with arbitrary integer entries. Theta functions attached
/// to a sum of characteristics are evaluated with these, unreduced.
struct IntCharacteristic {
  std::vector<long> eps;
  std::vector<long> delta;

  int genus() const { return static_cast<int>(eps.size()); }
};

IntCharacteristic lift(const Characteristic& m);
IntCharacteristic operator+(const IntCharacteristic& a, const IntCharacteristic& b);
IntCharacteristic unreduced_sum(const Characteristic& a, const Characteristic& b);

struct Reduction {
  Characteristic reduced;
  int sign;  // +1 or -1
};

/// theta[eps + 2eps'; delta + 2delta'] = (-1)^<eps, delta'> theta[eps; delta]
/// with eps, delta the mod-2 residues. Throws on length mismatch.
Reduction reduce(std::span<const long> eps, std::span<const long> delta);
Reduction reduce(const IntCharacteristic& m);

bool is_azygetic_triple(const Characteristic& a, const Characteristic& b, const Characteristic& c);
/// True iff every 3-element subset is azygetic (vacuously true below 3).
bool is_azygetic_tuple(std::span<const Characteristic> seq);

std::vector<Characteristic> all_characteristics(int genus);
std::vector<Characteristic> even_characteristics(int genus);

/// Subset of B = {1, ..., 2g+1, inf}. Element j in 1..2g+1 is bit j-1 and
/// inf (index 2g+2) is bit 2g+1.
class SubsetLabel {
 public:
  SubsetLabel(int genus, std::uint64_t mask);
  static SubsetLabel of(int genus, std::initializer_list<int> members);
  static int infinity(int genus) { return 2 * genus + 2; }

  int genus() const { return genus_; }
  std::uint64_t mask() const { return mask_; }
  bool contains(int j) const;
  int size() const;
  bool is_even() const { return size() % 2 == 0; }
  std::vector<int> members() const;

  SubsetLabel complement() const;
  /// T o S = (T \ S) u (S \ T).
  SubsetLabel symmetric_difference(const SubsetLabel& other) const;
  /// The member of {T, CT} not containing inf.
  SubsetLabel canonical() const;

  friend bool operator==(const SubsetLabel&, const SubsetLabel&) = default;

 private:
  int genus_;
  std::uint64_t mask_;
};

/// Ordered azygetic (2g+2)-tuple m_1..m_{2g+1}, m_inf with the index set U.
class FundamentalSystem {
 public:
  /// Validates length, azygeticity and the odd/even pattern (first g odd).
  FundamentalSystem(std::vector<Characteristic> chars, SubsetLabel u);

  int genus() const { return genus_; }
  const std::vector<Characteristic>& chars() const { return chars_; }
  /// j in 1..2g+1, or SubsetLabel::infinity(g).
  const Characteristic& at(int j) const;
  const SubsetLabel& u() const { return u_; }

  Characteristic char_of(const SubsetLabel& t) const;
  SubsetLabel subset_of(const Characteristic& m) const;

 private:
  int genus_;
  std::vector<Characteristic> chars_;
  SubsetLabel u_;
  std::vector<std::uint64_t> subset_table_;  // indexed by Characteristic::index()
};

FundamentalSystem standard_fundamental_system(int genus);

Characteristic subset_to_char(const SubsetLabel& t, const FundamentalSystem& f);
SubsetLabel char_to_subset(const Characteristic& m, const FundamentalSystem& f);

/// Parity of m_T read off from #(T o U). Throws std::invalid_argument if
/// #(T o U) - g - 1 is odd.
Parity subset_parity(const SubsetLabel& t, const SubsetLabel& u);

/// Even m_T with #(T o U) != g+1 for the standard system, sorted.
std::vector<Characteristic> predicted_vanishing_set(int genus);

/// 2^{g-1}(2^g+1) - C(2g+2, g+1)/2.
int expected_vanishing_count(int genus);

/// +1 iff j is in U.
int epsilon_u(int j, const SubsetLabel& u);

enum class VarleyDebarreVariant { explicit_n, weight_two_three };

std::vector<Characteristic> varley_debarre_sets(int genus, VarleyDebarreVariant variant);

/// For a set S of characteristics: the elements of the affine span of S
/// (in Z_2^{2g}) not in S sum to zero. Returns the complement alongside.
struct ComplementarySum {
  int span_dimension;
  std::vector<Characteristic> complement;
  bool sums_to_zero;
};
ComplementarySum complementary_sum(std::span<const Characteristic> set);

}  // namespace thetakit
