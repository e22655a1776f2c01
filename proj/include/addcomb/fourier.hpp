#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "addcomb/group.hpp"

namespace addcomb {

inline constexpr std::uint32_t kDftGuard = 4096;
inline constexpr std::size_t kExactDimensionGuard = 20;
// Relative tolerance of the transform self-checks.
inline constexpr double kTransformTolerance = 1e-9;

using ComplexVector = std::vector<std::complex<double>>;

/// f^(chi) = sum_x f(x) conj(chi(x)), indexed by dual_index.
struct SpectrumCoefficients {
  ComplexVector coeffs;
  double source_norm = 0.0;  // sum |f(x)|
  double parseval_error = 0.0;
  double inversion_error = 0.0;
};

struct ChangBasis {
  std::vector<Character> lambda;
  std::size_t claimed_dim = 0;
};

struct BohrSpec {
  std::vector<Character> gamma;
  double radius = 0.0;
  Subset realized;
};

enum class DimensionMode { exact, greedy };

struct DimensionResult {
  std::size_t dim = 0;
  ChangBasis certificate;
  bool exact = false;
};

struct ChangReport {
  std::size_t spectrum_size = 0;
  std::size_t dim_lower_bound = 0;
  bool exact = false;
  double chang_bound = 0.0;  // 2 eps^-2 log2(N/|A|)
  bool ok = false;
};

struct BohrCover {
  std::vector<Element> shifts;
  std::size_t t = 0;
  BohrSpec half;  // radius eps/2, used for the packing
  BohrSpec full;  // radius eps, its shifts cover the group
};

// Naive O(N^2) transform; throws InvariantViolation if the Parseval or
// inversion self-check misses kTransformTolerance.
SpectrumCoefficients dft(const GroupSpec& g, std::span<const std::complex<double>> f);
SpectrumCoefficients dft(const GroupSpec& g, const Subset& a);
ComplexVector inverse_dft(const GroupSpec& g, std::span<const std::complex<double>> coeffs);

// Characters with |A^(chi)| >= eps |A|. The threshold is inclusive with a
// relative slack of 1e-9 on the accepting side.
std::vector<Character> spectrum(const GroupSpec& g, const Subset& a, double eps);
std::vector<Character> spectrum(const GroupSpec& g, const SpectrumCoefficients& a_hat, std::size_t a_size, double eps);

// No nontrivial {-1,0,1} relation; checked as "all 2^k subset sums distinct".
bool is_dissociated(const GroupSpec& g, std::span<const Character> s);
// True iff x is a {-1,0,1}-combination of the basis.
bool in_signed_span(const GroupSpec& g, std::span<const Character> basis, Character x);

DimensionResult additive_dimension(const GroupSpec& g, std::span<const Character> s, DimensionMode mode);
ChangReport chang_check(const GroupSpec& g, const Subset& a, double eps);

// |chi(x) - 1| for x in the group, computed as 2|sin(pi * phase / exponent)|.
double character_distance(const GroupSpec& g, Character chi, Element x);

// Throws InvariantViolation if the (eps/2pi)^|Gamma| N size bound fails.
BohrSpec bohr_set(const GroupSpec& g, std::span<const Character> gamma, double eps);
// Greedy maximal packing by the radius-eps/2 set; the radius-eps shifts then
// cover G. Throws InvariantViolation if they don't or if t|B'| > N.
BohrCover bohr_cover(const GroupSpec& g, std::span<const Character> gamma, double eps);

}  // namespace addcomb
