#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fodist {

/// Fixed-size bit vector whose width is chosen at run time.
///
/// Used both for adjacency rows and for vertex subsets. Bits past size() are
/// always zero, so equality and ordering compare only meaningful bits.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool value) {
    if (value) {
      set(i);
    } else {
      reset(i);
    }
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  bool any() const { return !none(); }

  /// Index of the first set bit at or after `from`, or size() if none.
  std::size_t next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= words_.size()) return size_;
      w = words_[wi];
    }
  }
  std::size_t first() const { return next(0); }

  /// Set-bit indices in ascending order.
  std::vector<int> members() const {
    std::vector<int> out;
    for (std::size_t i = first(); i < size_; i = next(i + 1)) out.push_back(static_cast<int>(i));
    return out;
  }

  DynBitset& operator&=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DynBitset& operator^=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  DynBitset& subtract(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  DynBitset complemented() const {
    DynBitset out(*this);
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend DynBitset operator^(DynBitset a, const DynBitset& b) { return a ^= b; }

  bool intersects(const DynBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const DynBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const DynBitset&, const DynBitset&) = default;
  /// Lexicographic order by bit index 0, 1, 2, ... (bit 0 most significant).
  friend bool operator<(const DynBitset& a, const DynBitset& b) {
    for (std::size_t i = 0; i < a.words_.size() && i < b.words_.size(); ++i) {
      if (a.words_[i] == b.words_[i]) continue;
      std::uint64_t diff = a.words_[i] ^ b.words_[i];
      std::uint64_t low = diff & (~diff + 1);
      return (b.words_[i] & low) != 0;
    }
    return a.size_ < b.size_;
  }

 private:
  void trim() {
    if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace fodist
