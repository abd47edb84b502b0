#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qcrib {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Fixed-universe bitset used for sieves, cribles and subset lattices.
/// Comparison is "set-lex": the sorted member lists are compared
/// lexicographically, so {} < {0} < {0,1} < {0,2} < {1}. All canonical
/// enumeration orders in the library derive from this.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bitset full(std::size_t n) {
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i);
    return b;
  }

  std::size_t universe() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  std::size_t first() const { return next_from(0); }
  std::size_t next(std::size_t i) const { return next_from(i + 1); }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

  /// Set-lex order; total on a common universe.
  friend bool operator<(const Bitset& a, const Bitset& b) {
    std::size_t i = a.first(), j = b.first();
    while (i != npos && j != npos) {
      if (i != j) return i < j;
      i = a.next(i);
      j = b.next(j);
    }
    return i == npos && j != npos;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = first(); i != npos; i = next(i)) out.push_back(i);
    return out;
  }

 private:
  std::size_t next_from(std::size_t i) const {
    while (i < n_) {
      std::uint64_t w = w_[i >> 6] >> (i & 63);
      if (w) return i + std::countr_zero(w);
      i = (i & ~std::size_t{63}) + 64;
    }
    return npos;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace qcrib
