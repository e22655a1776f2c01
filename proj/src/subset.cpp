#include "addcomb/subset.hpp"

#include <stdexcept>

namespace addcomb {

namespace {

std::size_t word_count(std::size_t n) { return (n + Subset::kWordBits - 1) / Subset::kWordBits; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Subset::Subset(std::size_t universe) : n_(universe), words_(word_count(universe), 0) {}

Subset Subset::full(std::size_t universe) {
  Subset s(universe);
  for (auto& w : s.words_) w = ~Word{0};
  s.clear_tail();
  s.count_ = universe;
  return s;
}

Subset Subset::from_indices(std::size_t universe, std::span<const std::uint32_t> indices) {
  Subset s(universe);
  for (auto x : indices) s.insert(x);
  return s;
}

Subset Subset::from_indices(std::size_t universe, std::initializer_list<std::uint32_t> indices) {
  Subset s(universe);
  for (auto x : indices) s.insert(x);
  return s;
}

Subset Subset::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > kWordBits) throw std::invalid_argument("from_mask: universe exceeds 64");
  if (universe < kWordBits && (mask >> universe) != 0) {
    throw std::invalid_argument("from_mask: bits outside the universe");
  }
  Subset s(universe);
  if (universe > 0) {
    s.words_[0] = mask;
    s.recount();
  }
  return s;
}

Subset Subset::from_hex(std::size_t universe, std::string_view hex) {
  // Most significant nibble first, as written by to_hex().
  Subset s(universe);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const int v = hex_value(*it);
    if (v < 0) throw std::invalid_argument("from_hex: bad digit");
    for (int b = 0; b < 4; ++b) {
      if ((v >> b) & 1) {
        if (bit + static_cast<std::size_t>(b) >= universe) throw std::invalid_argument("from_hex: bits outside the universe");
        s.insert(static_cast<std::uint32_t>(bit + static_cast<std::size_t>(b)));
      }
    }
  }
  return s;
}

void Subset::insert(std::uint32_t x) {
  if (x >= n_) throw std::out_of_range("Subset::insert: index out of range");
  Word& w = words_[x / kWordBits];
  const Word bit = Word{1} << (x % kWordBits);
  if ((w & bit) == 0) {
    w |= bit;
    ++count_;
  }
}

void Subset::erase(std::uint32_t x) {
  if (x >= n_) return;
  Word& w = words_[x / kWordBits];
  const Word bit = Word{1} << (x % kWordBits);
  if ((w & bit) != 0) {
    w &= ~bit;
    --count_;
  }
}

std::vector<std::uint32_t> Subset::elements() const {
  std::vector<std::uint32_t> out;
  out.reserve(count_);
  for_each([&](std::uint32_t x) { out.push_back(x); });
  return out;
}

std::uint32_t Subset::min_element() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return static_cast<std::uint32_t>(w * kWordBits + static_cast<std::size_t>(__builtin_ctzll(words_[w])));
  }
  throw std::logic_error("min_element of empty subset");
}

std::uint64_t Subset::to_mask() const {
  if (n_ > kWordBits) throw std::logic_error("to_mask: universe exceeds 64");
  return words_.empty() ? 0 : words_[0];
}

std::string Subset::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t nibbles = std::max<std::size_t>(1, (n_ + 3) / 4);
  std::string out(nibbles, '0');
  for (std::size_t i = 0; i < nibbles; ++i) {
    const std::size_t bit = i * 4;
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b) {
      if (bit + b < n_ && contains(static_cast<std::uint32_t>(bit + b))) v |= 1u << b;
    }
    out[nibbles - 1 - i] = kDigits[v];
  }
  return out;
}

Subset Subset::complement() const {
  Subset s(*this);
  for (auto& w : s.words_) w = ~w;
  s.clear_tail();
  s.count_ = n_ - count_;
  return s;
}

bool Subset::intersects(const Subset& other) const {
  const std::size_t m = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < m; ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

bool Subset::is_subset_of(const Subset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const Word o = i < other.words_.size() ? other.words_[i] : 0;
    if ((words_[i] & ~o) != 0) return false;
  }
  return true;
}

Subset& Subset::operator|=(const Subset& other) {
  if (other.n_ != n_) throw std::invalid_argument("Subset: universe mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  recount();
  return *this;
}

Subset& Subset::operator&=(const Subset& other) {
  if (other.n_ != n_) throw std::invalid_argument("Subset: universe mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  recount();
  return *this;
}

Subset& Subset::operator-=(const Subset& other) {
  if (other.n_ != n_) throw std::invalid_argument("Subset: universe mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  recount();
  return *this;
}

void Subset::recount() {
  clear_tail();
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  count_ = c;
}

void Subset::clear_tail() {
  const std::size_t rem = n_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

}  // namespace addcomb
