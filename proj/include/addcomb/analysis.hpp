#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "addcomb/census.hpp"
#include "addcomb/common.hpp"
#include "addcomb/group.hpp"

namespace addcomb {

using Rational = boost::multiprecision::cpp_rational;
using WideFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

struct SeriesPoint {
  double n = 0.0;
  double value = 0.0;
};

struct SlopeFit {
  std::vector<SeriesPoint> series;  // the points actually fitted
  std::size_t window_begin = 0;     // index range into the input series
  std::size_t window_end = 0;
  double slope = 0.0;               // of ln|value| against n
  double intercept = 0.0;
  double fitted_base = 0.0;         // exp(slope)
  std::vector<double> residuals;    // ln|value| - fit, per fitted point
  std::vector<int> signs;           // sign of each fitted value
};

// Least squares of ln|value| on n over [begin, end), zero entries dropped.
// Needs at least three nonzero points.
SlopeFit slope_fit(std::span<const SeriesPoint> series, std::size_t begin, std::size_t end);
SlopeFit slope_fit(std::span<const SeriesPoint> series);

// Residual window used for census data: the last kResidualWindow points with
// d >= kResidualMinOrder.
inline constexpr std::size_t kResidualWindow = 5;
inline constexpr std::uint32_t kResidualMinOrder = 6;

// |R2(d)| series for cyclic censuses, in increasing d.
std::vector<SeriesPoint> r2_series(std::span<const CensusResult> results);
SlopeFit residual_fit(std::span<const CensusResult> results);

struct GammaProfile {
  double gamma_star = 0.0;
  double base = 0.0;
  double tol = 0.0;
};

// exp(-g ln g - (1-g) ln(1-g) + (1-g)^2 ln 2); the limits at 0 and 1 are 2 and 1.
double gamma_profile(double gamma);
GammaProfile gamma_optimize(double tol = 1e-10);

struct ProofAudit {
  unsigned p = 0;
  unsigned m = 0;
  BigInt lhs;              // sum over 1 <= a <= M, b, c of the binomial products
  Rational weighted;       // 2^{p+1} sum_a C(p,a) 2^-a sum_b C(p,b) 2^-b
  Rational binomial_bound; // 4 3^p C(p,M) 2^-M
  WideFloat mid;           // 4 3^p (e p / 2M)^M
  Rational final_bound;    // 4 (15/4)^p
  bool lhs_le_weighted = false;
  bool weighted_le_binomial = false;
  bool binomial_le_mid = false;  // with 1e-6 relative margin
  bool mid_lt_final = false;     // with 1e-6 relative margin
  bool lhs_lt_final = false;     // exact
  bool ok() const {
    return lhs_le_weighted && weighted_le_binomial && binomial_le_mid && mid_lt_final && lhs_lt_final;
  }
};

// Requires 1 <= M <= p/16.
ProofAudit proof_audit(unsigned p, unsigned m);
BigInt proof_audit_lhs(unsigned p, unsigned m);

struct ChernoffParams {
  std::uint64_t n = 0;
  double lambda = 0.0;
  double sigma = 0.0;
  double bound = 0.0;  // 2 max(e^{-lambda^2/4}, e^{-lambda sigma/2})
};

ChernoffParams chernoff_params(std::uint64_t n, double lambda, double sigma);

struct TailCheck {
  ChernoffParams params;
  double frequency = 0.0;
  double standard_error = 0.0;
  bool ok = false;  // frequency <= bound + 3 standard errors
};

struct ChernoffReport {
  std::uint32_t p = 0;
  double gamma = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double size_mean = 0.0;  // |C|
  std::vector<TailCheck> size_tails;
  double overlap_mean = 0.0;  // |C intersect (C+1)|
  double overlap_sd = 0.0;
  double overlap_expected = 0.0;  // gamma^2 p
  // Counts of |overlap - gamma^2 p| >= k sd for k = 0, 1, 2, ...
  std::vector<std::uint64_t> overlap_tail_counts;
  bool ok() const;
};

// C is a Bernoulli(gamma) subset of Z_p. Tails of |C| are checked against
// the bound at each lambda; the overlap is only measured.
ChernoffReport chernoff_experiment(std::uint32_t p, double gamma, std::uint64_t trials, std::uint64_t seed,
                                   std::span<const double> lambdas = {});

struct Index2Report {
  BigInt count;  // 2^{3N/2}
  bool exhaustive = false;
  std::uint64_t triples_checked = 0;
  bool ok = false;
};

// All triples A, B inside an index-2 subgroup H and C outside it avoid A + B.
// Exhaustive for N <= 8, otherwise via H + H = H.
Index2Report index2_check(const GroupSpec& g);

// Derived generator seed for one named experiment under a global seed.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stream);

}  // namespace addcomb
