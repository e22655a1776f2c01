#pragma once

#include <cstdint>
#include <vector>

#include "addcomb/group.hpp"

namespace addcomb {

/// counts[x] = #{(a, b) in A x B : a + b = x}.
struct ConvolutionTable {
  std::vector<std::uint32_t> counts;
};

struct KneserReport {
  std::size_t sumset_size = 0;
  std::size_t stab_size = 0;
  std::int64_t bound = 0;  // |A+H| + |B+H| - |H|
  std::int64_t slack = 0;  // sumset_size - bound
  Subgroup stab;
};

Subset sumset(const GroupSpec& g, const Subset& a, const Subset& b);
// {a - b}.
Subset difference_set(const GroupSpec& g, const Subset& a, const Subset& b);

ConvolutionTable convolution(const GroupSpec& g, const Subset& a, const Subset& b);

// Smallest representation count r with r >= eps*N, but never below 1.
// eps*N within 1e-9 of an integer is treated as that integer.
std::uint64_t representation_threshold(double eps, std::uint32_t order);

// Elements with at least eps*N representations as a + b. eps in [0, 1];
// eps = 0 (or eps*N <= 1) gives the ordinary sumset.
Subset thick_sumset(const GroupSpec& g, const Subset& a, const Subset& b, double eps);
Subset thick_sumset(const GroupSpec& g, const ConvolutionTable& conv, double eps);
// Elements with at least eta*N representations as z - y, z in Z, y in Y.
Subset thick_difference(const GroupSpec& g, const Subset& z, const Subset& y, double eta);

// True iff X and Y are disjoint.
bool avoids(const Subset& x, const Subset& y);

// Throws std::invalid_argument for empty inputs; InvariantViolation if the
// computed slack is negative.
KneserReport kneser_slack(const GroupSpec& g, const Subset& a, const Subset& b);

}  // namespace addcomb
