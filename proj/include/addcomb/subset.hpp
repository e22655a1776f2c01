#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace addcomb {

/// Bit-vector over the elements 0..N-1 of a group, with a cached cardinality.
///
/// Bits past the universe size are always zero. Groups of order up to 128
/// are stored inline, which keeps the exhaustive batteries allocation free.
class Subset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Subset() = default;
  explicit Subset(std::size_t universe);

  static Subset full(std::size_t universe);
  static Subset from_indices(std::size_t universe, std::span<const std::uint32_t> indices);
  static Subset from_indices(std::size_t universe, std::initializer_list<std::uint32_t> indices);
  // Only for universe <= 64.
  static Subset from_mask(std::size_t universe, std::uint64_t mask);
  static Subset from_hex(std::size_t universe, std::string_view hex);

  std::size_t universe() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool contains(std::uint32_t x) const {
    return x < n_ && ((words_[x / kWordBits] >> (x % kWordBits)) & 1u) != 0;
  }
  void insert(std::uint32_t x);
  void erase(std::uint32_t x);

  std::vector<std::uint32_t> elements() const;
  std::uint32_t min_element() const;  // requires !empty()
  std::uint64_t to_mask() const;      // only for universe <= 64
  std::string to_hex() const;

  Subset complement() const;
  bool intersects(const Subset& other) const;
  bool is_subset_of(const Subset& other) const;

  Subset& operator|=(const Subset& other);
  Subset& operator&=(const Subset& other);
  Subset& operator-=(const Subset& other);  // set difference

  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator-(Subset a, const Subset& b) { return a -= b; }
  friend bool operator==(const Subset& a, const Subset& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  std::span<const Word> words() const { return {words_.data(), words_.size()}; }
  // Raw word access for kernels; caller must call recount() afterwards.
  std::span<Word> mutable_words() { return {words_.data(), words_.size()}; }
  void recount();

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<std::uint32_t>(w * kWordBits + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

 private:
  void clear_tail();

  std::size_t n_ = 0;
  std::size_t count_ = 0;
  boost::container::small_vector<Word, 2> words_;
};

}  // namespace addcomb
