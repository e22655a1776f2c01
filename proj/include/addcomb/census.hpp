#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addcomb/group.hpp"

namespace addcomb {

inline constexpr std::uint32_t kBruteGuard = 8;
inline constexpr std::uint32_t kReducedGuard = 16;
inline constexpr std::uint32_t kSymmetricGuard = 20;
inline constexpr std::uint32_t kStratifiedGuard = 14;

enum class CensusMethod { brute, reduced, symmetric };

std::string to_string(CensusMethod m);
CensusMethod parse_method(std::string_view text);

struct CensusOptions {
  unsigned workers = 1;
};

/// N_{a,b,c}: triples with |A| = a, |B| = b, |C| = c. Indexed [a][b][c].
struct StratifiedTable {
  std::uint32_t n = 0;
  std::vector<BigInt> entries;  // (n+1)^3, row-major in (a, b, c)

  const BigInt& at(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    return entries[(std::size_t{a} * (n + 1) + b) * (n + 1) + c];
  }
  BigInt total() const;
};

struct CensusResult {
  GroupSpec group;
  BigInt count;  // T(G)
  CensusMethod method = CensusMethod::reduced;
  double elapsed = 0.0;  // seconds
  // Pairs (A, B) by |A + B|; present for reduced and symmetric runs.
  std::vector<std::uint64_t> sumset_histogram;
  std::optional<StratifiedTable> stratified;
};

struct ResidualReport {
  BigInt r_lb;  // T - (3 4^N - 3 2^N + 1)
  BigInt r1;    // T - 3 4^N
  BigInt r2;    // T - 3 4^N - 3 N 3^N
};

// Direct test of the defining condition over all 8^N triples; N <= 8.
CensusResult count_brute(const GroupSpec& g);
// sum over (A, B) of 2^{N - |A+B|}; N <= 16.
CensusResult count_reduced(const GroupSpec& g, const CensusOptions& opts = {});
// Orbit representatives of A under translations and unit dilations, all B
// summed per representative; N <= 20.
CensusResult count_symmetric(const GroupSpec& g, const CensusOptions& opts = {});
CensusResult run_census(const GroupSpec& g, CensusMethod method, const CensusOptions& opts = {});

StratifiedTable stratified_census(const GroupSpec& g, const CensusOptions& opts = {});

BigInt lower_bound_count(std::uint32_t n);  // 3 4^N - 3 2^N + 1
ResidualReport residuals(const CensusResult& result);
ResidualReport residuals(std::uint32_t n, const BigInt& count);

// Pair symmetries: independent translations of A and B, a common unit
// dilation, and the swap A <-> B. Sets are compared as sorted index lists,
// so every nonempty canonical set contains 0. Masks need N <= 20.
struct PairOrbit {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint64_t size = 0;
};
std::pair<std::uint32_t, std::uint32_t> canonical_pair(const GroupSpec& g, std::uint32_t a, std::uint32_t b);
std::uint64_t pair_orbit_size(const GroupSpec& g, std::uint32_t a, std::uint32_t b);
// Every pair orbit; N <= 10.
std::vector<PairOrbit> enumerate_pair_orbits(const GroupSpec& g);

// Sorted-list lexicographic order on subsets encoded as masks.
bool lex_less(std::uint32_t x, std::uint32_t y);

// Units u in [1, exponent) with gcd(u, exponent) = 1.
std::vector<std::uint32_t> unit_multipliers(const GroupSpec& g);

}  // namespace addcomb
