#include "addcomb/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace addcomb {

namespace {

// Phases of every (r, x) pair reduce to digit products; precomputing the
// digits keeps the O(N^2) loops free of divisions.
class PhaseTable {
 public:
  explicit PhaseTable(const GroupSpec& g) : g_(g), k_(g.rank()), roots_(g.exponent()) {
    const std::uint32_t n = g.order();
    digits_.resize(std::size_t{n} * k_);
    for (std::uint32_t x = 0; x < n; ++x) {
      const auto d = g.digits(Element{x});
      std::copy(d.begin(), d.end(), digits_.begin() + std::ptrdiff_t(std::size_t{x} * k_));
    }
    for (std::uint32_t j = 0; j < k_; ++j) weight_.push_back(g.exponent() / g.moduli()[j]);
    for (std::uint32_t p = 0; p < g.exponent(); ++p) {
      const double angle = 2.0 * std::numbers::pi * p / g.exponent();
      roots_[p] = {std::cos(angle), std::sin(angle)};
    }
  }

  std::uint32_t phase(std::uint32_t r, std::uint32_t x) const {
    if (k_ == 1) return static_cast<std::uint32_t>(std::uint64_t{r} * x % g_.order());
    std::uint64_t acc = 0;
    const std::uint32_t* dr = &digits_[std::size_t{r} * k_];
    const std::uint32_t* dx = &digits_[std::size_t{x} * k_];
    for (std::size_t j = 0; j < k_; ++j) {
      acc += std::uint64_t{dr[j]} * dx[j] % g_.moduli()[j] * weight_[j];
    }
    return static_cast<std::uint32_t>(acc % g_.exponent());
  }

  const std::complex<double>& root(std::uint32_t p) const { return roots_[p]; }

 private:
  const GroupSpec& g_;
  std::size_t k_;
  std::vector<std::uint32_t> digits_;
  std::vector<std::uint32_t> weight_;
  ComplexVector roots_;
};

void check_size(const GroupSpec& g, std::size_t len) {
  if (g.order() > kDftGuard) throw GuardExceeded("dft: group order exceeds 4096");
  if (len != g.order()) throw std::invalid_argument("dft: vector length does not match the group order");
}

ComplexVector transform(const GroupSpec& g, const PhaseTable& table, std::span<const std::complex<double>> f,
                        bool inverse) {
  const std::uint32_t n = g.order();
  ComplexVector out(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    std::complex<double> acc{0.0, 0.0};
    for (std::uint32_t x = 0; x < n; ++x) {
      if (f[x] == std::complex<double>{}) continue;
      const auto& w = table.root(table.phase(r, x));
      acc += f[x] * (inverse ? w : std::conj(w));
    }
    out[r] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

}  // namespace

SpectrumCoefficients dft(const GroupSpec& g, std::span<const std::complex<double>> f) {
  check_size(g, f.size());
  const PhaseTable table(g);
  SpectrumCoefficients out;
  out.coeffs = transform(g, table, f, false);

  double energy = 0.0;
  double peak = 0.0;
  for (const auto& v : f) {
    energy += std::norm(v);
    out.source_norm += std::abs(v);
    peak = std::max(peak, std::abs(v));
  }
  double dual_energy = 0.0;
  for (const auto& c : out.coeffs) dual_energy += std::norm(c);
  dual_energy /= g.order();
  out.parseval_error = std::abs(energy - dual_energy) / std::max(1.0, energy);

  const ComplexVector back = transform(g, table, out.coeffs, true);
  double worst = 0.0;
  for (std::size_t i = 0; i < back.size(); ++i) worst = std::max(worst, std::abs(back[i] - f[i]));
  out.inversion_error = worst / std::max(1.0, peak);

  if (out.parseval_error > kTransformTolerance || out.inversion_error > kTransformTolerance) {
    throw InvariantViolation("dft: Parseval or inversion self-check failed");
  }
  return out;
}

SpectrumCoefficients dft(const GroupSpec& g, const Subset& a) {
  ComplexVector f(g.order());
  a.for_each([&](std::uint32_t x) { f[x] = 1.0; });
  return dft(g, f);
}

ComplexVector inverse_dft(const GroupSpec& g, std::span<const std::complex<double>> coeffs) {
  check_size(g, coeffs.size());
  const PhaseTable table(g);
  return transform(g, table, coeffs, true);
}

std::vector<Character> spectrum(const GroupSpec& g, const SpectrumCoefficients& a_hat, std::size_t a_size,
                                double eps) {
  if (a_size == 0) throw std::invalid_argument("spectrum: A must be nonempty");
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("spectrum: eps must lie in (0, 1]");
  const double thr = eps * static_cast<double>(a_size) * (1.0 - 1e-9);
  std::vector<Character> out;
  for (std::uint32_t r = 0; r < g.order(); ++r) {
    if (std::abs(a_hat.coeffs[r]) >= thr) out.push_back(Character{r});
  }
  return out;
}

std::vector<Character> spectrum(const GroupSpec& g, const Subset& a, double eps) {
  if (a.empty()) throw std::invalid_argument("spectrum: A must be nonempty");
  return spectrum(g, dft(g, a), a.size(), eps);
}

bool is_dissociated(const GroupSpec& g, std::span<const Character> s) {
  Subset sums = Subset::from_indices(g.order(), {0});
  for (auto chi : s) {
    const Subset moved = translate(g, sums, Element{chi.dual_index});
    if (moved.intersects(sums)) return false;
    sums |= moved;
  }
  return true;
}

bool in_signed_span(const GroupSpec& g, std::span<const Character> basis, Character x) {
  Subset reach = Subset::from_indices(g.order(), {0});
  for (auto chi : basis) {
    const Element e{chi.dual_index};
    reach = reach | translate(g, reach, e) | translate(g, reach, g.neg(e));
  }
  return reach.contains(x.dual_index);
}

namespace {

class DissociatedSearch {
 public:
  DissociatedSearch(const GroupSpec& g, std::vector<Character> items)
      : g_(g), items_(std::move(items)), cap_(static_cast<std::size_t>(std::bit_width(g.order())) - 1) {}

  std::vector<Character> run() {
    Subset sums = Subset::from_indices(g_.order(), {0});
    recurse(0, sums);
    return best_;
  }

 private:
  void recurse(std::size_t i, const Subset& sums) {
    if (chosen_.size() > best_.size()) best_ = chosen_;
    // 2^k distinct sums fit in N elements, so k <= floor(log2 N).
    if (best_.size() >= cap_) return;
    if (chosen_.size() + (items_.size() - i) <= best_.size()) return;
    for (std::size_t j = i; j < items_.size(); ++j) {
      if (chosen_.size() + (items_.size() - j) <= best_.size()) return;
      const Subset moved = translate(g_, sums, Element{items_[j].dual_index});
      if (moved.intersects(sums)) continue;
      chosen_.push_back(items_[j]);
      recurse(j + 1, sums | moved);
      chosen_.pop_back();
      if (best_.size() >= cap_) return;
    }
  }

  const GroupSpec& g_;
  std::vector<Character> items_;
  std::size_t cap_;
  std::vector<Character> chosen_;
  std::vector<Character> best_;
};

}  // namespace

DimensionResult additive_dimension(const GroupSpec& g, std::span<const Character> s, DimensionMode mode) {
  std::vector<Character> items(s.begin(), s.end());
  std::sort(items.begin(), items.end());
  DimensionResult out;
  if (mode == DimensionMode::exact) {
    if (items.size() > kExactDimensionGuard) throw GuardExceeded("additive_dimension: exact mode needs |S| <= 20");
    out.certificate.lambda = DissociatedSearch(g, items).run();
    out.exact = true;
  } else {
    std::vector<Character> basis;
    Subset sums = Subset::from_indices(g.order(), {0});
    for (auto chi : items) {
      const Subset moved = translate(g, sums, Element{chi.dual_index});
      if (moved.intersects(sums)) continue;
      basis.push_back(chi);
      sums |= moved;
    }
    out.certificate.lambda = std::move(basis);
  }
  if (!is_dissociated(g, out.certificate.lambda)) {
    throw InvariantViolation("additive_dimension: certificate is not dissociated");
  }
  out.dim = out.certificate.lambda.size();
  out.certificate.claimed_dim = out.dim;
  return out;
}

ChangReport chang_check(const GroupSpec& g, const Subset& a, double eps) {
  if (a.empty()) throw std::invalid_argument("chang_check: A must be nonempty");
  const auto spec = spectrum(g, a, eps);
  const auto mode = spec.size() <= kExactDimensionGuard ? DimensionMode::exact : DimensionMode::greedy;
  const auto dim = additive_dimension(g, spec, mode);
  ChangReport r;
  r.spectrum_size = spec.size();
  r.dim_lower_bound = dim.dim;
  r.exact = dim.exact;
  r.chang_bound = 2.0 / (eps * eps) * std::log2(static_cast<double>(g.order()) / static_cast<double>(a.size()));
  r.ok = static_cast<double>(r.dim_lower_bound) <= r.chang_bound + 1e-12;
  return r;
}

double character_distance(const GroupSpec& g, Character chi, Element x) {
  const std::uint32_t p = g.phase(chi, x);
  const std::uint32_t d = std::min(p, g.exponent() - p);
  return 2.0 * std::sin(std::numbers::pi * d / g.exponent());
}

namespace {

// Largest folded phase d in [0, L/2] with 2 sin(pi d / L) <= eps; the map is
// monotone there, so membership reduces to one integer comparison.
std::uint32_t phase_cutoff(std::uint32_t exponent, double eps) {
  std::uint32_t d = 0;
  while (d + 1 <= exponent / 2 && 2.0 * std::sin(std::numbers::pi * (d + 1) / exponent) <= eps + 1e-12) ++d;
  return d;
}

}  // namespace

BohrSpec bohr_set(const GroupSpec& g, std::span<const Character> gamma, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("bohr_set: radius must be positive");
  BohrSpec b;
  b.gamma.assign(gamma.begin(), gamma.end());
  b.radius = eps;
  b.realized = g.full_set();
  const std::uint32_t cutoff = phase_cutoff(g.exponent(), eps);
  const std::uint32_t l = g.exponent();
  for (auto chi : gamma) {
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      if (!b.realized.contains(x)) continue;
      const std::uint32_t p = g.phase(chi, Element{x});
      if (std::min(p, l - p) > cutoff) b.realized.erase(x);
    }
  }
  // The bound only means something for radius <= 2 pi.
  const double ratio = std::min(1.0, eps / (2.0 * std::numbers::pi));
  const double bound = std::pow(ratio, static_cast<double>(gamma.size())) * g.order();
  if (static_cast<double>(b.realized.size()) < bound * (1.0 - 1e-12)) {
    throw InvariantViolation("bohr_set: size bound (eps/2pi)^d N violated");
  }
  return b;
}

BohrCover bohr_cover(const GroupSpec& g, std::span<const Character> gamma, double eps) {
  BohrCover c;
  c.half = bohr_set(g, gamma, eps / 2.0);
  c.full = bohr_set(g, gamma, eps);
  Subset occupied(g.order());
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (occupied.contains(x)) continue;
    const Subset moved = translate(g, c.half.realized, Element{x});
    if (moved.intersects(occupied)) continue;
    occupied |= moved;
    c.shifts.push_back(Element{x});
  }
  c.t = c.shifts.size();
  Subset covered(g.order());
  for (auto s : c.shifts) covered |= translate(g, c.full.realized, s);
  if (covered.size() != g.order()) throw InvariantViolation("bohr_cover: shifts do not cover the group");
  if (c.t * c.half.realized.size() > g.order()) throw InvariantViolation("bohr_cover: t |B'| exceeds N");
  return c;
}

}  // namespace addcomb
