#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relkit/common.hpp"

namespace relkit {

/// Dense boolean matrix on a universe {0..n-1}; row a holds the b with (a,b).
class BinRel {
 public:
  BinRel() = default;
  explicit BinRel(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

  static BinRel diagonal(std::size_t n);
  static BinRel full(std::size_t n);
  static BinRel from_pairs(std::size_t n, std::span<const Pair> pairs);

  std::size_t universe() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool contains(Element a, Element b) const noexcept {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }
  void insert(Element a, Element b) noexcept {
    bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  }
  void erase(Element a, Element b) noexcept {
    bits_[a * words_ + b / 64] &= ~(std::uint64_t{1} << (b % 64));
  }

  std::span<const std::uint64_t> row(Element a) const noexcept {
    return {bits_.data() + a * words_, words_};
  }
  std::span<std::uint64_t> row(Element a) noexcept {
    return {bits_.data() + a * words_, words_};
  }

  /// Calls fn(b) for every b with (a,b) in the relation, in increasing order.
  template <typename Fn>
  void for_each_in_row(Element a, Fn&& fn) const {
    const std::uint64_t* r = bits_.data() + a * words_;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        fn(static_cast<Element>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
  }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  std::vector<Pair> pairs() const;

  bool subset_of(const BinRel& other) const noexcept;
  bool is_reflexive() const noexcept;
  bool is_symmetric() const noexcept;
  bool is_transitive() const;

  BinRel& operator&=(const BinRel& other);
  BinRel& operator|=(const BinRel& other);
  friend BinRel operator&(BinRel a, const BinRel& b) { return a &= b; }
  friend BinRel operator|(BinRel a, const BinRel& b) { return a |= b; }
  friend bool operator==(const BinRel&, const BinRel&) = default;

  std::size_t hash() const noexcept;

  /// Sorted pair list "[(a,b),...]".
  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct BinRelHash {
  std::size_t operator()(const BinRel& r) const noexcept { return r.hash(); }
};

/// Canonical order: by number of pairs, then by sorted pair list.
bool canonical_less(const BinRel& a, const BinRel& b) noexcept;

/// Parse "[(a,b),...]" (whitespace tolerant) into a relation on n elements.
BinRel parse_pair_list(std::size_t n, std::string_view text);

}  // namespace relkit
