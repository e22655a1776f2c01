#include "addcomb/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace addcomb {

namespace {

void require_prime(const GroupSpec& p, const char* who) {
  if (!p.is_cyclic() || !is_prime(p.order())) {
    throw std::invalid_argument(std::string(who) + ": group must be a prime cyclic group");
  }
}

PollardReport skip(std::string reason) {
  PollardReport r;
  r.skipped = true;
  r.skip_reason = std::move(reason);
  return r;
}

PollardReport general_pollard_with(const GroupSpec& g, const Subset& a, const Subset& b, double eps,
                                   std::size_t h_size) {
  const double n = g.order();
  if (std::sqrt(eps) * n >= static_cast<double>(std::min(a.size(), b.size()))) {
    return skip("sqrt(eps) N >= min(|A|, |B|)");
  }
  PollardReport r;
  r.subgroup_size = h_size;
  r.thick_size = thick_sumset(g, a, b, eps).size();
  const double sum = static_cast<double>(a.size() + b.size()) - static_cast<double>(h_size);
  r.rhs_bound = std::min(n, sum) - 3.0 * std::sqrt(eps) * n;
  r.slack = static_cast<double>(r.thick_size) - r.rhs_bound;
  return r;
}

}  // namespace

PollardReport pollard_slack(const GroupSpec& p, const Subset& a, const Subset& b, double eps) {
  require_prime(p, "pollard_slack");
  if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("pollard_slack: eps must lie in (0, 1)");
  const double n = p.order();
  if (std::sqrt(eps) * n >= static_cast<double>(std::min(a.size(), b.size()))) {
    return skip("sqrt(eps) p >= min(|A|, |B|)");
  }
  PollardReport r;
  r.thick_size = thick_sumset(p, a, b, eps).size();
  r.rhs_bound = std::min(n, static_cast<double>(a.size() + b.size())) - 2.0 * n * std::sqrt(eps);
  r.slack = static_cast<double>(r.thick_size) - r.rhs_bound;
  return r;
}

PollardReport general_pollard_slack(const GroupSpec& g, const Subset& a, const Subset& b, double eps) {
  if (g.order() == 1) throw std::invalid_argument("general_pollard_slack: trivial group has no proper subgroup");
  if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("general_pollard_slack: eps must lie in (0, 1)");
  return general_pollard_with(g, a, b, eps, maximal_proper_subgroup(g).carrier.size());
}

PollardReport general_pollard_slack(const GroupSpec& g, const Subset& a, const Subset& b, double eps,
                                    const Subgroup& h) {
  if (g.order() == 1) throw std::invalid_argument("general_pollard_slack: trivial group has no proper subgroup");
  if (!(eps > 0.0) || eps >= 1.0) throw std::invalid_argument("general_pollard_slack: eps must lie in (0, 1)");
  if (h.carrier.size() >= g.order()) throw std::invalid_argument("general_pollard_slack: H must be proper");
  return general_pollard_with(g, a, b, eps, h.carrier.size());
}

SizeSumReport size_sum_check(const GroupSpec& g, const Subset& wa, const Subset& wb, const Subset& wc, double eps,
                             double delta) {
  SizeSumReport r;
  const double n = g.order();
  const double floor_size = eps * n;
  if (static_cast<double>(std::min({wa.size(), wb.size(), wc.size()})) < floor_size) {
    r.skipped = true;
    r.skip_reason = "a set is smaller than eps N";
    return r;
  }
  if (delta > eps * eps / kSizeSumDeltaDivisor) {
    r.skipped = true;
    r.skip_reason = "delta exceeds eps^2 / 9";
    return r;
  }
  if (!avoids(wa, thick_sumset(g, wb, wc, delta))) {
    r.skipped = true;
    r.skip_reason = "Wa meets Wb +_delta Wc";
    return r;
  }
  const std::size_t h = g.order() == 1 ? 1 : maximal_proper_subgroup(g).carrier.size();
  r.total = wa.size() + wb.size() + wc.size();
  r.bound = n + static_cast<double>(h) + 3.0 * std::sqrt(delta) * n;
  return r;
}

FilterResult robust_filter(const GroupSpec& p, const Subset& x, const Subset& y, const Subset& z, double delta,
                           double eps, double t) {
  if (z.empty()) throw std::invalid_argument("robust_filter: Z must be nonempty");
  if (!(t > 1.0)) throw std::invalid_argument("robust_filter: T must exceed 1");
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("robust_filter: eps must lie in (0, 1]");
  if (!(delta > 0.0) || delta >= 1.0) throw std::invalid_argument("robust_filter: delta must lie in (0, 1)");
  if (static_cast<double>(x.size()) < eps * p.order() * (1.0 - 1e-12)) {
    throw std::invalid_argument("robust_filter: |X| < eps p");
  }
  if (!avoids(z, thick_sumset(p, x, y, delta))) {
    throw std::invalid_argument("robust_filter: Z meets X +_delta Y");
  }
  FilterResult r;
  r.eta = delta * t / eps;
  r.thick_difference = thick_difference(p, z, y, r.eta);
  r.x_prime = x & r.thick_difference;
  if (static_cast<double>(r.x_prime.size()) > static_cast<double>(x.size()) / t + 1e-9) {
    throw InvariantViolation("robust_filter: |X'| exceeds |X| / T");
  }
  if (!avoids(x - r.x_prime, r.thick_difference)) {
    throw InvariantViolation("robust_filter: X \\ X' meets Z -_eta Y");
  }
  return r;
}

namespace {

Decomposition run_decomposition(const GroupSpec& p, const Subset& a, const Subset& b, Subset c, double eta,
                                double delta, double eps) {
  if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("decompose: delta must lie in (0, 1]");
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("decompose: eps must lie in (0, 1]");
  const double n = p.order();
  Decomposition d;
  d.params.alpha = static_cast<double>(a.size()) / n;
  d.params.beta = static_cast<double>(b.size()) / n;
  d.params.delta = delta;
  d.params.eps = eps;
  d.params.eta = eta;
  d.params.zeta = delta / std::sqrt(d.params.alpha * d.params.beta);
  d.c = std::move(c);

  const ConvolutionTable f = convolution(p, a, b);
  const SpectrumCoefficients a_hat = dft(p, a);
  const SpectrumCoefficients b_hat = dft(p, b);
  const auto spec = spectrum(p, a_hat, a.size(), eps);
  d.spectrum_size = spec.size();

  // g = N^-1 sum over Spec(A) of f^(r) e(rx), with f^ = A^ B^.
  ComplexVector truncated(p.order(), {0.0, 0.0});
  for (auto chi : spec) truncated[chi.dual_index] = a_hat.coeffs[chi.dual_index] * b_hat.coeffs[chi.dual_index];
  const ComplexVector g = inverse_dft(p, truncated);

  d.y = Subset(p.order());
  for (std::uint32_t x = 0; x < p.order(); ++x) {
    const double diff = std::abs(static_cast<double>(f.counts[x]) - g[x]);
    d.energy += diff * diff;
    if (diff > delta * n) d.y.insert(x);
  }
  const double sa = static_cast<double>(a.size());
  const double sb = static_cast<double>(b.size());
  d.energy_bound = eps * eps * sa * sa * sb;
  d.energy_ok = d.energy <= d.energy_bound * (1.0 + 1e-9) + 1e-9;
  d.y_bound = eps * eps * d.params.alpha * d.params.alpha * d.params.beta / (delta * delta) * n;
  d.exceptional_ok = static_cast<double>(d.y.size()) <= d.y_bound + 1e-9;

  const auto mode = spec.size() <= kExactDimensionGuard ? DimensionMode::exact : DimensionMode::greedy;
  d.lambda = additive_dimension(p, spec, mode).certificate;
  for (auto chi : spec) {
    if (!in_signed_span(p, d.lambda.lambda, chi)) {
      throw InvariantViolation("decompose: spectrum element outside the span of the dissociated basis");
    }
  }

  const double radius = d.lambda.lambda.empty() ? d.params.zeta
                                                : d.params.zeta / static_cast<double>(d.lambda.lambda.size());
  const BohrCover cover = bohr_cover(p, d.lambda.lambda, radius);
  d.bohr = cover.full;
  d.t_total = cover.t;

  const Subset core = d.c - d.y;
  d.w_raw = Subset(p.order());
  for (auto s : cover.shifts) {
    Subset piece = translate(p, d.bohr.realized, s);
    if (!piece.intersects(core)) continue;
    d.w_raw |= piece;
    d.shifts_used.push_back(s);
  }
  d.w_core = d.w_raw - d.y;

  const Subset popular = thick_sumset(p, f, std::min(1.0, eta + delta));
  d.w = d.w_core - popular;
  d.raw_violations = (d.w_core & popular).size();
  d.w_core.for_each([&](std::uint32_t x) {
    d.max_core_ratio = std::max(d.max_core_ratio, static_cast<double>(f.counts[x]) / (delta * n));
  });
  d.core_ok = d.max_core_ratio < eta / delta + 4.0;
  d.container_ok = core.is_subset_of(d.w);
  d.avoidance_ok = avoids(d.w, popular);
  d.w_size_bound = n - sa - sb + 2.0 * n * std::sqrt(eta + delta);
  d.size_checked = a.size() + b.size() <= p.order();
  d.size_ok = !d.size_checked || static_cast<double>(d.w.size()) <= d.w_size_bound + 1e-9;
  return d;
}

}  // namespace

Decomposition decompose(const GroupSpec& p, const Subset& a, const Subset& b, double delta, double eps) {
  require_prime(p, "decompose");
  if (a.empty() || b.empty()) throw std::invalid_argument("decompose: A and B must be nonempty");
  Subset c = sumset(p, a, b).complement();
  if (c.empty()) throw std::invalid_argument("decompose: A + B is the whole group");
  return run_decomposition(p, a, b, std::move(c), 0.0, delta, eps);
}

Decomposition decompose_thick(const GroupSpec& p, const Subset& a, const Subset& b, const Subset& c, double eta,
                              double delta, double eps) {
  require_prime(p, "decompose_thick");
  if (a.empty() || b.empty() || c.empty()) throw std::invalid_argument("decompose_thick: A, B, C must be nonempty");
  if (!(eta >= 0.0) || eta > 1.0) throw std::invalid_argument("decompose_thick: eta must lie in [0, 1]");
  if (!avoids(c, thick_sumset(p, a, b, eta))) throw std::invalid_argument("decompose_thick: C meets A +_eta B");
  return run_decomposition(p, a, b, c, eta, delta, eps);
}

namespace {

Subset interval_sample(std::mt19937_64& rng, std::uint32_t p, std::uint32_t size, std::uint32_t dilation,
                       std::uint32_t shift) {
  const std::uint32_t spare = size / 3 + 2;
  const std::uint32_t len = std::min<std::uint32_t>(p, size + static_cast<std::uint32_t>(rng() % spare));
  std::vector<std::uint32_t> positions(len);
  for (std::uint32_t i = 0; i < len; ++i) positions[i] = i;
  std::shuffle(positions.begin(), positions.end(), rng);
  Subset s(p);
  for (std::uint32_t i = 0; i < size && i < len; ++i) {
    s.insert(static_cast<std::uint32_t>((std::uint64_t{positions[i]} * dilation + shift) % p));
  }
  return s;
}

}  // namespace

SetPair sample_avoiding_pair(std::uint32_t p, double a_density, double b_density, std::uint64_t seed) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("sample_avoiding_pair: p must be prime");
  if (!(a_density > 0.0) || a_density >= 1.0 || !(b_density > 0.0) || b_density >= 1.0) {
    throw std::invalid_argument("sample_avoiding_pair: densities must lie in (0, 1)");
  }
  const GroupSpec g = make_group({p});
  const auto size_a = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::lround(a_density * p)));
  const auto size_b = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::lround(b_density * p)));
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const auto dilation = 1 + static_cast<std::uint32_t>(rng() % (p - 1));
    SetPair pair{interval_sample(rng, p, size_a, dilation, static_cast<std::uint32_t>(rng() % p)),
                 interval_sample(rng, p, size_b, dilation, static_cast<std::uint32_t>(rng() % p))};
    if (sumset(g, pair.a, pair.b).size() < p) return pair;
  }
  throw std::invalid_argument("sample_avoiding_pair: every draw had A + B = Z_p; lower the densities");
}

std::string to_json(const Decomposition& d) {
  nlohmann::json j;
  j["alpha"] = d.params.alpha;
  j["beta"] = d.params.beta;
  j["delta"] = d.params.delta;
  j["eps"] = d.params.eps;
  j["eta"] = d.params.eta;
  j["C"] = std::to_string(d.c.size());
  j["Y"] = std::to_string(d.y.size());
  j["W"] = std::to_string(d.w.size());
  j["W_raw"] = std::to_string(d.w_raw.size());
  j["W_core"] = std::to_string(d.w_core.size());
  j["spectrum"] = std::to_string(d.spectrum_size);
  j["dim_lambda"] = std::to_string(d.lambda.lambda.size());
  j["bohr_radius"] = d.bohr.radius;
  j["bohr_size"] = std::to_string(d.bohr.realized.size());
  j["t_total"] = std::to_string(d.t_total);
  j["shifts_used"] = std::to_string(d.shifts_used.size());
  j["energy"] = d.energy;
  j["energy_bound"] = d.energy_bound;
  j["y_bound"] = d.y_bound;
  j["w_size_bound"] = d.w_size_bound;
  j["untrimmed_violations"] = std::to_string(d.raw_violations);
  j["max_core_ratio"] = d.max_core_ratio;
  j["invariants"] = {{"container", d.container_ok}, {"exceptional", d.exceptional_ok},
                     {"avoidance", d.avoidance_ok}, {"size", d.size_ok},
                     {"size_checked", d.size_checked}, {"energy", d.energy_ok},
                     {"core", d.core_ok}};
  j["ok"] = d.all_ok();
  return j.dump(2);
}

}  // namespace addcomb
