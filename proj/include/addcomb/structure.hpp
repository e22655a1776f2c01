#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "addcomb/fourier.hpp"
#include "addcomb/sumset.hpp"

namespace addcomb {

struct PollardReport {
  bool skipped = false;  // preconditions not met; nothing was checked
  std::string skip_reason;
  std::size_t thick_size = 0;
  double rhs_bound = 0.0;
  double slack = 0.0;
  std::size_t subgroup_size = 0;  // |H| for the general variant, 0 otherwise
  bool holds() const { return skipped || slack >= -1e-9; }
};

// |A +_eps B| >= min{p, |A|+|B|} - 2 p sqrt(eps), for sqrt(eps) p < |A|, |B|.
PollardReport pollard_slack(const GroupSpec& p, const Subset& a, const Subset& b, double eps);
// |A +_eps B| >= min(N, |A|+|B|-|H|) - 3 sqrt(eps) N, H a maximal proper subgroup.
PollardReport general_pollard_slack(const GroupSpec& g, const Subset& a, const Subset& b, double eps);
// Same, with H supplied by the caller (saves the subgroup search in batteries).
PollardReport general_pollard_slack(const GroupSpec& g, const Subset& a, const Subset& b, double eps,
                                    const Subgroup& h);

// Denominator C in the requirement delta <= eps^2 / C of the size-sum check.
inline constexpr double kSizeSumDeltaDivisor = 9.0;

struct SizeSumReport {
  bool skipped = false;
  std::string skip_reason;
  std::size_t total = 0;  // |Wa| + |Wb| + |Wc|
  double bound = 0.0;     // N + |H| + 3 sqrt(delta) N
  bool holds() const { return skipped || static_cast<double>(total) <= bound + 1e-9; }
};

// Three dense sets with Wa avoiding Wb +_delta Wc have total size at most
// N + |H| + 3 sqrt(delta) N.
SizeSumReport size_sum_check(const GroupSpec& g, const Subset& wa, const Subset& wb, const Subset& wc, double eps,
                             double delta);

struct FilterResult {
  Subset x_prime;
  double eta = 0.0;
  Subset thick_difference;  // Z -_eta Y
};

// Removes from X the elements that are eta-popular differences z - y,
// eta = delta T / eps; at most |X| / T of them.
FilterResult robust_filter(const GroupSpec& p, const Subset& x, const Subset& y, const Subset& z, double delta,
                           double eps, double t);

struct DecompositionParams {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double eta = 0.0;
  double zeta = 0.0;  // delta (alpha beta)^{-1/2}
};

struct Decomposition {
  DecompositionParams params;
  Subset c;        // the set being contained
  Subset y;        // Fourier-exceptional set
  Subset w_raw;    // union of the cover shifts meeting C \ Y
  Subset w_core;   // w_raw \ y
  Subset w;        // w_core minus the popular sums A +_(eta+delta) B
  ChangBasis lambda;
  BohrSpec bohr;
  std::vector<Element> shifts_used;
  std::size_t t_total = 0;
  std::size_t spectrum_size = 0;

  double energy = 0.0;  // sum (f - g)^2
  double energy_bound = 0.0;
  double y_bound = 0.0;
  double w_size_bound = 0.0;
  std::size_t raw_violations = 0;  // elements of w_core with f >= (eta+delta) p
  double max_core_ratio = 0.0;     // max over w_core of f / (delta p)

  bool container_ok = false;   // C \ Y subset of W
  bool exceptional_ok = false; // |Y| bound
  bool avoidance_ok = false;   // W avoids A +_(eta+delta) B
  bool size_ok = false;        // |W| bound
  bool size_checked = false;   // false when |A|+|B| > p makes the bound vacuous
  bool energy_ok = false;
  // Every element of w_core has f < (eta + 4 delta) p: one delta from each
  // end of |f - g| and two from g varying across a shift of the Bohr set.
  bool core_ok = false;

  bool all_ok() const {
    return container_ok && exceptional_ok && avoidance_ok && size_ok && energy_ok && core_ok;
  }
};

// C = complement of A + B; throws std::invalid_argument if it is empty.
Decomposition decompose(const GroupSpec& p, const Subset& a, const Subset& b, double delta, double eps);
// C must avoid A +_eta B.
Decomposition decompose_thick(const GroupSpec& p, const Subset& a, const Subset& b, const Subset& c, double eta,
                              double delta, double eps);

struct SetPair {
  Subset a;
  Subset b;
};

// Random subsets of one dilated interval (independent shifts) at the given
// densities, redrawn until A + B misses part of Z_p. Throws
// std::invalid_argument after 100 unsuccessful draws.
SetPair sample_avoiding_pair(std::uint32_t p, double a_density, double b_density, std::uint64_t seed);

// Densities, set sizes, dim Lambda, Bohr radius, t_total and each invariant.
std::string to_json(const Decomposition& d);

}  // namespace addcomb
