#pragma once

// Bit-mask kernels shared by the census and the exhaustive batteries.
// Subsets of groups of order <= 32 are uint32 masks, bit x for element x.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "addcomb/census.hpp"
#include "addcomb/group.hpp"

namespace addcomb::detail {

using Mask = std::uint32_t;

// Bit-permutation kernels for groups of order <= 32. Translation in a cyclic
// group is a rotation; everything else goes through per-byte lookup tables
// built from the group law.
class MaskKernel {
 public:
  explicit MaskKernel(const GroupSpec& g)
      : n_(g.order()), cyclic_(g.is_cyclic()), full_(n_ == 32 ? ~Mask{0} : (Mask{1} << n_) - 1),
        chunks_((n_ + 7) / 8), units_(unit_multipliers(g)) {
    if (n_ > 32) throw GuardExceeded("mask kernel: group order exceeds 32");
    translate_table_ = build(g, n_, [&](std::uint32_t which, std::uint32_t x) {
      return g.add(Element{x}, Element{which}).index;
    });
    negate_table_ = build(g, 1, [&](std::uint32_t, std::uint32_t x) { return g.neg(Element{x}).index; });
    dilate_table_ = build(g, static_cast<std::uint32_t>(units_.size()), [&](std::uint32_t which, std::uint32_t x) {
      return g.scale(Element{x}, units_[which]).index;
    });
  }

  std::uint32_t order() const { return n_; }
  Mask full() const { return full_; }
  const std::vector<std::uint32_t>& units() const { return units_; }

  Mask translate(Mask m, std::uint32_t t) const {
    if (cyclic_) {
      if (t == 0) return m;
      return ((m << t) | (m >> (n_ - t))) & full_;
    }
    return lookup(translate_table_, t, m);
  }

  Mask negate(Mask m) const { return lookup(negate_table_, 0, m); }

  Mask dilate(Mask m, std::size_t unit_index) const { return lookup(dilate_table_, unit_index, m); }

  // Lexicographically least translate of m.
  Mask min_translate(Mask m) const {
    Mask best = m;
    for (std::uint32_t t = 1; t < n_; ++t) {
      const Mask img = translate(m, t);
      if (lex_less(img, best)) best = img;
    }
    return best;
  }

  std::uint32_t translate_stabilizer(Mask from, Mask to) const {
    std::uint32_t c = 0;
    for (std::uint32_t t = 0; t < n_; ++t) c += translate(from, t) == to;
    return c;
  }

 private:
  template <typename Map>
  std::vector<Mask> build(const GroupSpec&, std::uint32_t count, Map&& map) const {
    std::vector<Mask> table(std::size_t{count} * chunks_ * 256, 0);
    for (std::uint32_t w = 0; w < count; ++w) {
      for (std::uint32_t c = 0; c < chunks_; ++c) {
        for (std::uint32_t byte = 0; byte < 256; ++byte) {
          Mask out = 0;
          for (std::uint32_t b = 0; b < 8; ++b) {
            const std::uint32_t x = c * 8 + b;
            if (((byte >> b) & 1u) != 0 && x < n_) out |= Mask{1} << map(w, x);
          }
          table[(std::size_t{w} * chunks_ + c) * 256 + byte] = out;
        }
      }
    }
    return table;
  }

  Mask lookup(const std::vector<Mask>& table, std::size_t which, Mask m) const {
    Mask out = 0;
    const Mask* base = &table[which * chunks_ * 256];
    for (std::uint32_t c = 0; c < chunks_; ++c) out |= base[c * 256 + ((m >> (8 * c)) & 0xffu)];
    return out;
  }

  std::uint32_t n_;
  bool cyclic_;
  Mask full_;
  std::uint32_t chunks_;
  std::vector<std::uint32_t> units_;
  std::vector<Mask> translate_table_;
  std::vector<Mask> negate_table_;
  std::vector<Mask> dilate_table_;
};

// Splits [0, total) into contiguous blocks handed out to workers; results
// are combined by the caller in block order, so totals never depend on the
// schedule.
template <typename Partial, typename Work>
std::vector<Partial> run_blocks(std::uint64_t total, unsigned workers, Work&& work) {
  const std::uint64_t block_count = std::min<std::uint64_t>(total, 256);
  std::vector<Partial> partial(block_count);
  std::atomic<std::uint64_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::uint64_t blk = next.fetch_add(1);
      if (blk >= block_count) return;
      const std::uint64_t lo = total * blk / block_count;
      const std::uint64_t hi = total * (blk + 1) / block_count;
      partial[blk] = work(lo, hi);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  return partial;
}

// For a fixed A, tallies |A + B| over every B using
// A + B = (A + (B minus its lowest element)) | (A + lowest element).
class SumsetSweep {
 public:
  explicit SumsetSweep(const MaskKernel& k) : k_(k), sums_(std::size_t{1} << k.order()) {}

  template <typename Visit>
  void run(Mask a, Visit&& visit) {
    const std::uint32_t n = k_.order();
    Mask shifted[32];
    for (std::uint32_t t = 0; t < n; ++t) shifted[t] = k_.translate(a, t);
    sums_[0] = 0;
    visit(Mask{0}, Mask{0});
    const std::size_t total = std::size_t{1} << n;
    for (std::size_t b = 1; b < total; ++b) {
      const Mask s = sums_[b & (b - 1)] | shifted[__builtin_ctzll(b)];
      sums_[b] = s;
      visit(static_cast<Mask>(b), s);
    }
  }

 private:
  const MaskKernel& k_;
  std::vector<Mask> sums_;
};

inline Mask sumset_mask(const MaskKernel& k, Mask a, Mask b) {
  Mask out = 0;
  for (std::uint32_t y = 0; y < k.order(); ++y) {
    if ((b >> y) & 1u) out |= k.translate(a, y);
  }
  return out;
}

}  // namespace addcomb::detail
