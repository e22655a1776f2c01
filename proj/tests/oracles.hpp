#pragma once

// Naive reference implementations. They work on coordinate tuples and plain
// vectors and share no code with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Tuple = std::vector<std::uint32_t>;

// All elements of Z_{m_1} x ... x Z_{m_k}, first coordinate fastest.
inline std::vector<Tuple> elements(const std::vector<std::uint32_t>& moduli) {
  std::vector<Tuple> out{Tuple(moduli.size(), 0)};
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    std::vector<Tuple> next;
    for (std::uint32_t v = 0; v < moduli[j]; ++v) {
      for (auto t : out) {
        t[j] = v;
        next.push_back(t);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::uint32_t index_of(const std::vector<std::uint32_t>& moduli, const Tuple& t) {
  std::uint32_t idx = 0;
  for (std::size_t j = moduli.size(); j-- > 0;) idx = idx * moduli[j] + t[j];
  return idx;
}

inline Tuple tuple_of(const std::vector<std::uint32_t>& moduli, std::uint32_t idx) {
  Tuple t(moduli.size());
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    t[j] = idx % moduli[j];
    idx /= moduli[j];
  }
  return t;
}

inline std::uint32_t add(const std::vector<std::uint32_t>& moduli, std::uint32_t x, std::uint32_t y) {
  Tuple a = tuple_of(moduli, x);
  const Tuple b = tuple_of(moduli, y);
  for (std::size_t j = 0; j < moduli.size(); ++j) a[j] = (a[j] + b[j]) % moduli[j];
  return index_of(moduli, a);
}

inline std::uint32_t order(const std::vector<std::uint32_t>& moduli) {
  std::uint32_t n = 1;
  for (auto m : moduli) n *= m;
  return n;
}

inline std::set<std::uint32_t> sumset(const std::vector<std::uint32_t>& moduli, const std::set<std::uint32_t>& a,
                                      const std::set<std::uint32_t>& b) {
  std::set<std::uint32_t> out;
  for (auto x : a) {
    for (auto y : b) out.insert(add(moduli, x, y));
  }
  return out;
}

inline std::vector<std::uint32_t> convolution(const std::vector<std::uint32_t>& moduli,
                                              const std::set<std::uint32_t>& a, const std::set<std::uint32_t>& b) {
  std::vector<std::uint32_t> counts(order(moduli), 0);
  for (auto x : a) {
    for (auto y : b) ++counts[add(moduli, x, y)];
  }
  return counts;
}

inline std::set<std::uint32_t> from_mask(std::uint64_t mask) {
  std::set<std::uint32_t> s;
  for (std::uint32_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1) s.insert(i);
  }
  return s;
}

// Triples (A, B, C) with no a + b = c, by testing every triple.
inline std::uint64_t count_triples(const std::vector<std::uint32_t>& moduli) {
  const std::uint32_t n = order(moduli);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t total = 0;
  for (std::uint64_t a = 0; a < subsets; ++a) {
    for (std::uint64_t b = 0; b < subsets; ++b) {
      std::uint64_t sums = 0;
      for (auto x : from_mask(a)) {
        for (auto y : from_mask(b)) sums |= std::uint64_t{1} << add(moduli, x, y);
      }
      for (std::uint64_t c = 0; c < subsets; ++c) total += (sums & c) == 0;
    }
  }
  return total;
}

// Independent sets of a hypergraph by trying every vertex subset.
inline std::uint64_t count_independent(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& edges) {
  std::vector<std::uint64_t> masks;
  for (const auto& e : edges) {
    std::uint64_t m = 0;
    for (auto v : e) m |= std::uint64_t{1} << v;
    masks.push_back(m);
  }
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (auto m : masks) {
      if ((s & m) == m) {
        ok = false;
        break;
      }
    }
    total += ok;
  }
  return total;
}

// f^(r) = sum_x f(x) exp(-2 pi i <r, x>) with <r, x> = sum_j r_j x_j / m_j.
inline std::vector<std::complex<double>> dft(const std::vector<std::uint32_t>& moduli,
                                             const std::vector<std::complex<double>>& f) {
  const std::uint32_t n = order(moduli);
  std::vector<std::complex<double>> out(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    const Tuple rt = tuple_of(moduli, r);
    for (std::uint32_t x = 0; x < n; ++x) {
      const Tuple xt = tuple_of(moduli, x);
      double angle = 0.0;
      for (std::size_t j = 0; j < moduli.size(); ++j) {
        angle += static_cast<double>((std::uint64_t{rt[j]} * xt[j]) % moduli[j]) / moduli[j];
      }
      out[r] += f[x] * std::polar(1.0, -2.0 * std::numbers::pi * angle);
    }
  }
  return out;
}

// Least-squares slope of ln|y| against x.
inline double log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double ly = std::log(std::abs(ys[i]));
    sx += xs[i];
    sy += ly;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline boost::multiprecision::cpp_int choose(unsigned n, unsigned k) {
  if (k > n) return 0;
  boost::multiprecision::cpp_int r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
