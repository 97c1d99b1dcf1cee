#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aal/error.hpp"

namespace aal {

/// Lexicographic mixed-radix index of a group element (first coordinate most
/// significant). Every set and density in the workbench is addressed by it.
using Index = std::uint64_t;

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// A finite abelian group presented as a product of cyclic groups Z/n_1 x ...
/// x Z/n_k. Canonical form drops order-1 factors (a single factor of order 1
/// survives for the trivial group). Presentations are taken at face value; no
/// isomorphism normalization happens.
class GroupSpec {
public:
  explicit GroupSpec(std::vector<std::uint32_t> orders, std::uint64_t cap = kDefaultEnumerationCap);

  /// Accepts "Z8", "Z2^3", "Z2xZ3xZ5" (case-insensitive, whitespace ignored).
  static GroupSpec parse(std::string_view text, std::uint64_t cap = kDefaultEnumerationCap);

  std::string str() const;

  const std::vector<std::uint32_t>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::uint64_t size() const { return size_; }
  /// lcm of the cyclic orders: the exponent of the group, and the common
  /// denominator of every character phase.
  std::uint64_t exponent() const { return exponent_; }

  bool trivial() const { return size_ == 1; }

  // --- element arithmetic on indices ---
  Index add(Index x, Index y) const;
  Index neg(Index x) const;
  Index sub(Index x, Index y) const { return add(x, neg(y)); }
  /// t-fold sum of x (t may be negative).
  Index mul(Index x, std::int64_t t) const;

  std::vector<std::uint32_t> coords(Index x) const;
  Index index_of(std::span<const std::uint32_t> coords) const;
  /// Coordinates may be arbitrary signed integers; they are reduced mod n_i.
  Index index_of_signed(std::span<const std::int64_t> coords) const;

  // --- characters (the dual group shares this index space) ---
  /// Exact phase of gamma_t(x) as a numerator a in [0, L) with phase a/L,
  /// L = exponent(). gamma_t(x) = exp(2*pi*i * a / L).
  std::uint64_t char_phase(Index t, Index x) const;
  std::complex<double> char_value(Index t, Index x) const;
  /// |gamma_t(x) - 1| = 2 sin(pi * a / L), evaluated from the exact phase.
  double char_dist_to_one(Index t, Index x) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.orders_ == b.orders_; }
  friend bool operator!=(const GroupSpec& a, const GroupSpec& b) { return !(a == b); }

  /// Throws GroupMismatch when two operands live in different presentations.
  void require_same(const GroupSpec& other) const;

private:
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint64_t> strides_;  // strides_[i] = prod of orders after i
  std::uint64_t size_ = 1;
  std::uint64_t exponent_ = 1;
  std::vector<std::uint64_t> phase_mult_;  // exponent / orders_[i]
};

/// An element presented as a coordinate vector (the IO-level representation;
/// kernels work on indices).
struct GroupElement {
  std::vector<std::uint32_t> coords;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// A character of the group, addressed by its dual coordinate vector t:
/// gamma_t(x) = exp(2*pi*i * sum_i t_i x_i / n_i).
struct Character {
  std::vector<std::uint32_t> dual_coords;
  friend bool operator==(const Character&, const Character&) = default;
};

/// A finite subset of a group: bitset over the element index with a cached
/// popcount. Immutable by convention once built; all set operations return
/// fresh values.
class GSet {
public:
  explicit GSet(GroupSpec group);

  static GSet empty_set(const GroupSpec& g) { return GSet(g); }
  static GSet full_set(const GroupSpec& g);
  static GSet singleton(const GroupSpec& g, Index x);
  static GSet of(const GroupSpec& g, std::initializer_list<std::int64_t> single_coords);

  /// Set literal: "{(0,1),(1,2)}" or "{0,2,4}" for single-factor groups.
  /// Signed entries reduce mod the orders; "a..b" ranges are accepted in the
  /// single-factor form.
  static GSet parse(const GroupSpec& g, std::string_view text);
  std::string str() const;

  const GroupSpec& group() const { return group_; }
  std::uint64_t universe() const { return group_.size(); }
  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(Index x) const { return (bits_[x >> 6] >> (x & 63)) & 1; }
  void add(Index x);
  void remove(Index x);

  std::vector<Index> elements() const;
  template <class F>
  void for_each(F&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        unsigned b = std::countr_zero(word);
        fn(Index(w * 64 + b));
        word &= word - 1;
      }
    }
  }

  GSet& operator|=(const GSet& o);
  GSet& operator&=(const GSet& o);
  GSet& operator^=(const GSet& o);
  friend GSet operator|(GSet a, const GSet& b) { return a |= b; }
  friend GSet operator&(GSet a, const GSet& b) { return a &= b; }
  friend GSet operator^(GSet a, const GSet& b) { return a ^= b; }
  GSet complement() const;

  friend bool operator==(const GSet& a, const GSet& b) {
    return a.group_ == b.group_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const GSet& a, const GSet& b) { return !(a == b); }
  bool is_subset_of(const GSet& o) const;

  std::span<const std::uint64_t> words() const { return bits_; }
  std::span<std::uint64_t> mutable_words() { return bits_; }
  /// Recompute the cached size after direct word writes.
  void recount();

private:
  GroupSpec group_;
  std::vector<std::uint64_t> bits_;
  std::uint64_t size_ = 0;
};

/// Character sets live in the dual group, which shares the index space of G;
/// the alias keeps signatures honest about which side they address.
using CharSet = GSet;

// --- operations -------------------------------------------------------------

/// All |G| elements in index order (index 0 is the identity).
std::vector<GroupElement> enumerate_elements(const GroupSpec& g);

GroupElement add(const GroupSpec& g, const GroupElement& x, const GroupElement& y);
GroupElement neg(const GroupSpec& g, const GroupElement& x);
std::complex<double> char_value(const GroupSpec& g, const Character& gamma, const GroupElement& x);

/// Smallest subgroup containing the generators (BFS closure; {0} for empty
/// generating sets).
GSet subgroup_generated(const GSet& gens);

struct CosetCheck {
  bool is_coset = false;
  Index translate = 0;  // valid when is_coset
  GSet subgroup;        // empty set when not a coset
};

/// A nonempty set closed under x+y-z is a coset; returns the witness
/// (translate, subgroup) when it is.
CosetCheck is_coset(const GSet& a);

}  // namespace aal
