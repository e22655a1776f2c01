#include "addcomb/census.hpp"

#include "mask_kernel.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace addcomb {

std::string to_string(CensusMethod m) {
  switch (m) {
    case CensusMethod::brute: return "brute";
    case CensusMethod::reduced: return "reduced";
    case CensusMethod::symmetric: return "symmetric";
  }
  return "unknown";
}

CensusMethod parse_method(std::string_view text) {
  if (text == "brute") return CensusMethod::brute;
  if (text == "reduced") return CensusMethod::reduced;
  if (text == "symmetric") return CensusMethod::symmetric;
  throw std::invalid_argument("unknown census method '" + std::string(text) + "'");
}

BigInt StratifiedTable::total() const {
  BigInt t = 0;
  for (const auto& e : entries) t += e;
  return t;
}

bool lex_less(std::uint32_t x, std::uint32_t y) {
  if (x == y) return false;
  const std::uint32_t d = x ^ y;
  const int k = __builtin_ctz(d);
  // Below bit k the lists agree; whoever holds k next wins unless the other
  // list has already ended.
  if ((x >> k) & 1u) return (y >> k) != 0;
  return (x >> k) == 0;
}

std::vector<std::uint32_t> unit_multipliers(const GroupSpec& g) {
  std::vector<std::uint32_t> units;
  const std::uint32_t e = g.exponent();
  if (e <= 2) return {1};
  for (std::uint32_t u = 1; u < e; ++u) {
    if (std::gcd(u, e) == 1) units.push_back(u);
  }
  return units;
}

namespace {

using Clock = std::chrono::steady_clock;
using detail::Mask;
using detail::MaskKernel;
using detail::SumsetSweep;
using detail::run_blocks;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BigInt histogram_total(std::uint32_t n, const std::vector<std::uint64_t>& hist) {
  BigInt t = 0;
  for (std::uint32_t k = 0; k <= n; ++k) t += BigInt(hist[k]) << (n - k);
  return t;
}

}  // namespace

CensusResult count_brute(const GroupSpec& g) {
  const std::uint32_t n = g.order();
  if (n > kBruteGuard) throw GuardExceeded("count_brute: N must be <= 8");
  const auto start = Clock::now();
  std::vector<std::uint32_t> sum(std::size_t{n} * n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) sum[x * n + y] = g.add(Element{x}, Element{y}).index;
  }
  const std::uint32_t subsets = 1u << n;
  std::uint64_t count = 0;
  for (std::uint32_t a = 0; a < subsets; ++a) {
    for (std::uint32_t b = 0; b < subsets; ++b) {
      for (std::uint32_t c = 0; c < subsets; ++c) {
        bool ok = true;
        for (std::uint32_t x = 0; x < n && ok; ++x) {
          if (((a >> x) & 1u) == 0) continue;
          for (std::uint32_t y = 0; y < n; ++y) {
            if (((b >> y) & 1u) != 0 && ((c >> sum[x * n + y]) & 1u) != 0) {
              ok = false;
              break;
            }
          }
        }
        count += ok;
      }
    }
  }
  CensusResult r;
  r.group = g;
  r.count = count;
  r.method = CensusMethod::brute;
  r.elapsed = seconds_since(start);
  return r;
}

CensusResult count_reduced(const GroupSpec& g, const CensusOptions& opts) {
  const std::uint32_t n = g.order();
  if (n > kReducedGuard) throw GuardExceeded("count_reduced: N must be <= 16");
  const auto start = Clock::now();
  const MaskKernel kernel(g);
  using Hist = std::vector<std::uint64_t>;
  const auto partial = run_blocks<Hist>(std::uint64_t{1} << n, opts.workers, [&](std::uint64_t lo, std::uint64_t hi) {
    Hist h(n + 1, 0);
    SumsetSweep sweep(kernel);
    for (std::uint64_t a = lo; a < hi; ++a) {
      sweep.run(static_cast<Mask>(a), [&](Mask, Mask s) { ++h[__builtin_popcount(s)]; });
    }
    return h;
  });
  CensusResult r;
  r.group = g;
  r.method = CensusMethod::reduced;
  r.sumset_histogram.assign(n + 1, 0);
  for (const auto& h : partial) {
    for (std::uint32_t k = 0; k <= n; ++k) r.sumset_histogram[k] += h.empty() ? 0 : h[k];
  }
  r.count = histogram_total(n, r.sumset_histogram);
  r.elapsed = seconds_since(start);
  return r;
}

CensusResult count_symmetric(const GroupSpec& g, const CensusOptions& opts) {
  const std::uint32_t n = g.order();
  if (n > kSymmetricGuard) throw GuardExceeded("count_symmetric: N must be <= 20");
  const auto start = Clock::now();
  const MaskKernel kernel(g);
  const std::size_t unit_count = kernel.units().size();
  const std::uint64_t group_size = std::uint64_t{n} * unit_count;
  using Hist = std::vector<std::uint64_t>;

  // A-orbits under x -> u x + s. Sum over B is invariant on an orbit because
  // |(uA + s) + B| = |A + u^-1 (B - s)|.
  const auto partial = run_blocks<Hist>(std::uint64_t{1} << n, opts.workers, [&](std::uint64_t lo, std::uint64_t hi) {
    Hist h(n + 1, 0);
    Hist local(n + 1, 0);
    SumsetSweep sweep(kernel);
    for (std::uint64_t a64 = lo; a64 < hi; ++a64) {
      const Mask a = static_cast<Mask>(a64);
      if (a == 0) {
        h[0] += std::uint64_t{1} << n;
        continue;
      }
      if ((a & 1u) == 0) continue;  // canonical nonempty sets contain 0
      std::uint64_t stab = 0;
      bool canonical = true;
      for (std::size_t u = 0; u < unit_count && canonical; ++u) {
        const Mask d = kernel.dilate(a, u);
        for (std::uint32_t t = 0; t < n; ++t) {
          const Mask img = kernel.translate(d, t);
          if (img == a) {
            ++stab;
          } else if (lex_less(img, a)) {
            canonical = false;
            break;
          }
        }
      }
      if (!canonical) continue;
      const std::uint64_t weight = group_size / stab;
      std::fill(local.begin(), local.end(), 0);
      sweep.run(a, [&](Mask, Mask s) { ++local[__builtin_popcount(s)]; });
      for (std::uint32_t k = 0; k <= n; ++k) h[k] += weight * local[k];
    }
    return h;
  });
  CensusResult r;
  r.group = g;
  r.method = CensusMethod::symmetric;
  r.sumset_histogram.assign(n + 1, 0);
  for (const auto& h : partial) {
    for (std::uint32_t k = 0; k <= n; ++k) r.sumset_histogram[k] += h.empty() ? 0 : h[k];
  }
  r.count = histogram_total(n, r.sumset_histogram);
  r.elapsed = seconds_since(start);
  return r;
}

CensusResult run_census(const GroupSpec& g, CensusMethod method, const CensusOptions& opts) {
  switch (method) {
    case CensusMethod::brute: return count_brute(g);
    case CensusMethod::reduced: return count_reduced(g, opts);
    case CensusMethod::symmetric: return count_symmetric(g, opts);
  }
  throw std::invalid_argument("run_census: unknown method");
}

StratifiedTable stratified_census(const GroupSpec& g, const CensusOptions& opts) {
  const std::uint32_t n = g.order();
  if (n > kStratifiedGuard) throw GuardExceeded("stratified_census: N must be <= 14");
  const MaskKernel kernel(g);
  const std::size_t side = n + 1;
  using Hist = std::vector<std::uint64_t>;  // [a][b][|A+B|]
  const auto partial = run_blocks<Hist>(std::uint64_t{1} << n, opts.workers, [&](std::uint64_t lo, std::uint64_t hi) {
    Hist h(side * side * side, 0);
    SumsetSweep sweep(kernel);
    for (std::uint64_t a = lo; a < hi; ++a) {
      const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(a)) * side;
      sweep.run(static_cast<Mask>(a), [&](Mask b, Mask s) {
        ++h[(row + static_cast<std::size_t>(__builtin_popcount(b))) * side + static_cast<std::size_t>(__builtin_popcount(s))];
      });
    }
    return h;
  });
  Hist hist(side * side * side, 0);
  for (const auto& h : partial) {
    for (std::size_t i = 0; i < h.size(); ++i) hist[i] += h[i];
  }
  std::vector<std::vector<BigInt>> binom(side, std::vector<BigInt>(side));
  for (std::uint32_t m = 0; m <= n; ++m) {
    for (std::uint32_t c = 0; c <= n; ++c) binom[m][c] = binomial(m, c);
  }
  StratifiedTable t;
  t.n = n;
  t.entries.assign(side * side * side, BigInt(0));
  for (std::size_t a = 0; a < side; ++a) {
    for (std::size_t b = 0; b < side; ++b) {
      for (std::size_t s = 0; s < side; ++s) {
        const std::uint64_t pairs = hist[(a * side + b) * side + s];
        if (pairs == 0) continue;
        for (std::size_t c = 0; c + s <= n; ++c) {
          t.entries[(a * side + b) * side + c] += BigInt(pairs) * binom[n - s][c];
        }
      }
    }
  }
  return t;
}

BigInt lower_bound_count(std::uint32_t n) { return 3 * pow_big(4, n) - 3 * pow_big(2, n) + 1; }

ResidualReport residuals(std::uint32_t n, const BigInt& count) {
  ResidualReport r;
  r.r_lb = count - lower_bound_count(n);
  r.r1 = count - 3 * pow_big(4, n);
  r.r2 = r.r1 - 3 * BigInt(n) * pow_big(3, n);
  if (r.r_lb < 0) throw InvariantViolation("residuals: count below 3 4^N - 3 2^N + 1");
  return r;
}

ResidualReport residuals(const CensusResult& result) { return residuals(result.group.order(), result.count); }

std::pair<std::uint32_t, std::uint32_t> canonical_pair(const GroupSpec& g, std::uint32_t a, std::uint32_t b) {
  if (g.order() > kSymmetricGuard) throw GuardExceeded("canonical_pair: N must be <= 20");
  const MaskKernel kernel(g);
  std::pair<std::uint32_t, std::uint32_t> best{a, b};
  bool first = true;
  auto consider = [&](Mask x, Mask y) {
    if (first || lex_less(x, best.first) || (x == best.first && lex_less(y, best.second))) best = {x, y};
    first = false;
  };
  for (std::size_t u = 0; u < kernel.units().size(); ++u) {
    const Mask ua = kernel.min_translate(kernel.dilate(a, u));
    const Mask ub = kernel.min_translate(kernel.dilate(b, u));
    consider(ua, ub);
    consider(ub, ua);
  }
  return best;
}

std::uint64_t pair_orbit_size(const GroupSpec& g, std::uint32_t a, std::uint32_t b) {
  if (g.order() > kSymmetricGuard) throw GuardExceeded("pair_orbit_size: N must be <= 20");
  const MaskKernel kernel(g);
  const std::uint64_t n = g.order();
  const std::uint64_t group_size = kernel.units().size() * n * n * 2;
  std::uint64_t stab = 0;
  for (std::size_t u = 0; u < kernel.units().size(); ++u) {
    const Mask ua = kernel.dilate(a, u);
    const Mask ub = kernel.dilate(b, u);
    stab += std::uint64_t{kernel.translate_stabilizer(ua, a)} * kernel.translate_stabilizer(ub, b);
    stab += std::uint64_t{kernel.translate_stabilizer(ub, a)} * kernel.translate_stabilizer(ua, b);
  }
  return group_size / stab;
}

std::vector<PairOrbit> enumerate_pair_orbits(const GroupSpec& g) {
  const std::uint32_t n = g.order();
  if (n > 10) throw GuardExceeded("enumerate_pair_orbits: N must be <= 10");
  std::vector<PairOrbit> out;
  const std::uint32_t subsets = 1u << n;
  for (std::uint32_t a = 0; a < subsets; ++a) {
    for (std::uint32_t b = 0; b < subsets; ++b) {
      const auto c = canonical_pair(g, a, b);
      if (c.first == a && c.second == b) out.push_back(PairOrbit{a, b, pair_orbit_size(g, a, b)});
    }
  }
  return out;
}

}  // namespace addcomb
