#include "addcomb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "addcomb/sumset.hpp"

namespace addcomb {

SlopeFit slope_fit(std::span<const SeriesPoint> series, std::size_t begin, std::size_t end) {
  if (begin > end || end > series.size()) throw std::out_of_range("slope_fit: window outside the series");
  if (end - begin < 3) throw std::invalid_argument("slope_fit: window must hold at least three points");
  SlopeFit fit;
  fit.window_begin = begin;
  fit.window_end = end;
  for (std::size_t i = begin; i < end; ++i) {
    if (series[i].value != 0.0 && std::isfinite(series[i].value)) fit.series.push_back(series[i]);
  }
  if (fit.series.size() < 3) throw std::invalid_argument("slope_fit: need at least three nonzero points");
  const double count = static_cast<double>(fit.series.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& pt : fit.series) {
    mean_x += pt.n;
    mean_y += std::log(std::abs(pt.value));
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& pt : fit.series) {
    const double dx = pt.n - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(std::abs(pt.value)) - mean_y);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope_fit: all points share one abscissa");
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.fitted_base = std::exp(fit.slope);
  for (const auto& pt : fit.series) {
    fit.residuals.push_back(std::log(std::abs(pt.value)) - (fit.intercept + fit.slope * pt.n));
    fit.signs.push_back(pt.value > 0 ? 1 : -1);
  }
  return fit;
}

SlopeFit slope_fit(std::span<const SeriesPoint> series) { return slope_fit(series, 0, series.size()); }

std::vector<SeriesPoint> r2_series(std::span<const CensusResult> results) {
  std::vector<SeriesPoint> out;
  for (const auto& r : results) {
    if (!r.group.is_cyclic()) continue;
    out.push_back({static_cast<double>(r.group.order()), residuals(r).r2.convert_to<double>()});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.n < y.n; });
  return out;
}

SlopeFit residual_fit(std::span<const CensusResult> results) {
  const auto series = r2_series(results);
  std::size_t first = 0;
  while (first < series.size() && series[first].n < kResidualMinOrder) ++first;
  const std::size_t begin = std::max(first, series.size() >= kResidualWindow ? series.size() - kResidualWindow : 0);
  return slope_fit(series, begin, series.size());
}

double gamma_profile(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma_profile: gamma must lie in [0, 1]");
  const double ln2 = std::log(2.0);
  auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  const double q = 1.0 - gamma;
  return std::exp(-xlogx(gamma) - xlogx(q) + q * q * ln2);
}

GammaProfile gamma_optimize(double tol) {
  if (!(tol >= 1e-10)) throw std::invalid_argument("gamma_optimize: tol must be >= 1e-10");
  const auto coarse = boost::math::tools::brent_find_minima([](double g) { return -gamma_profile(g); }, 1e-9,
                                                            1.0 - 1e-9, std::numeric_limits<double>::digits / 2);
  // Stationary point of ln f: ln((1-g)/g) = 2 (1-g) ln 2.
  auto slope = [](double g) { return std::log((1.0 - g) / g) - 2.0 * (1.0 - g) * std::log(2.0); };
  double lo = std::max(1e-9, coarse.first - 1e-4);
  double hi = std::min(1.0 - 1e-9, coarse.first + 1e-4);
  double gamma = coarse.first;
  if (slope(lo) > 0.0 && slope(hi) < 0.0) {
    std::uintmax_t iterations = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        slope, lo, hi, [tol](double a, double b) { return std::abs(b - a) <= tol; }, iterations);
    gamma = 0.5 * (bracket.first + bracket.second);
  }
  GammaProfile out{gamma, gamma_profile(gamma), tol};
  for (int i = 0; i <= 1000; ++i) {
    if (gamma_profile(i / 1000.0) > out.base * (1.0 + 1e-12)) {
      throw InvariantViolation("gamma_optimize: grid point beats the optimum");
    }
  }
  return out;
}

namespace {

std::vector<BigInt> binomial_row(unsigned p) {
  std::vector<BigInt> row(p + 1);
  row[0] = 1;
  for (unsigned k = 0; k < p; ++k) row[k + 1] = row[k] * (p - k) / (k + 1);
  return row;
}

}  // namespace

BigInt proof_audit_lhs(unsigned p, unsigned m) {
  const auto row = binomial_row(p);
  BigInt lhs = 0;
  for (unsigned a = 1; a <= m; ++a) {
    BigInt inner = 0;
    for (unsigned b = 1; b <= p; ++b) {
      const long free_slots = static_cast<long>(p) - a - b + 1;
      if (free_slots < 1) break;
      inner += row[b] * ((BigInt(1) << free_slots) - 1);
    }
    lhs += row[a] * inner;
  }
  return lhs;
}

ProofAudit proof_audit(unsigned p, unsigned m) {
  if (m < 1 || 16 * m > p) throw std::invalid_argument("proof_audit: need 1 <= M <= p/16");
  ProofAudit audit;
  audit.p = p;
  audit.m = m;
  const auto row = binomial_row(p);
  audit.lhs = proof_audit_lhs(p, m);

  Rational sum_a = 0;
  for (unsigned a = 1; a <= m; ++a) sum_a += Rational(row[a], BigInt(1) << a);
  Rational sum_b = 0;
  for (unsigned b = 1; b <= p; ++b) sum_b += Rational(row[b], BigInt(1) << b);
  audit.weighted = Rational(BigInt(1) << (p + 1)) * sum_a * sum_b;
  const BigInt three_p = pow_big(3, p);
  audit.binomial_bound = Rational(4 * three_p * row[m], BigInt(1) << m);
  const WideFloat e = boost::math::constants::e<WideFloat>();
  audit.mid = WideFloat(4 * three_p) * pow(e * WideFloat(p) / WideFloat(2 * m), static_cast<int>(m));
  audit.final_bound = Rational(4 * pow_big(15, p), pow_big(4, p));

  const WideFloat margin = WideFloat(1) + WideFloat(1e-6);
  audit.lhs_le_weighted = Rational(audit.lhs) <= audit.weighted;
  audit.weighted_le_binomial = audit.weighted <= audit.binomial_bound;
  audit.binomial_le_mid = WideFloat(audit.binomial_bound) * margin <= audit.mid;
  audit.mid_lt_final = audit.mid * margin < WideFloat(audit.final_bound);
  audit.lhs_lt_final = audit.lhs * pow_big(4, p) < 4 * pow_big(15, p);
  return audit;
}

ChernoffParams chernoff_params(std::uint64_t n, double lambda, double sigma) {
  if (!(lambda >= 0.0) || !(sigma >= 0.0)) throw std::invalid_argument("chernoff: lambda and sigma must be >= 0");
  ChernoffParams c{n, lambda, sigma, 0.0};
  c.bound = 2.0 * std::max(std::exp(-lambda * lambda / 4.0), std::exp(-lambda * sigma / 2.0));
  return c;
}

bool ChernoffReport::ok() const {
  return std::all_of(size_tails.begin(), size_tails.end(), [](const TailCheck& t) { return t.ok; });
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stream) {
  std::vector<std::uint32_t> material{static_cast<std::uint32_t>(global_seed),
                                      static_cast<std::uint32_t>(global_seed >> 32)};
  for (unsigned char ch : stream) material.push_back(ch);
  std::seed_seq seq(material.begin(), material.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[1]} << 32) | out[0];
}

ChernoffReport chernoff_experiment(std::uint32_t p, double gamma, std::uint64_t trials, std::uint64_t seed,
                                   std::span<const double> lambdas) {
  if (p < 100) throw std::invalid_argument("chernoff_experiment: p must be >= 100");
  if (trials < 1000) throw std::invalid_argument("chernoff_experiment: trials must be >= 1000");
  if (!(gamma > 0.0) || gamma >= 1.0) throw std::invalid_argument("chernoff_experiment: gamma must lie in (0, 1)");
  static constexpr double kDefaultLambdas[] = {1.0, 2.0, 3.0};
  if (lambdas.empty()) lambdas = kDefaultLambdas;

  std::mt19937_64 rng(derive_seed(seed, "chernoff"));
  std::vector<std::uint32_t> sizes(trials);
  std::vector<std::uint32_t> overlaps(trials);
  std::vector<std::uint8_t> in(p);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint32_t size = 0;
    for (std::uint32_t x = 0; x < p; ++x) {
      in[x] = static_cast<double>(rng() >> 11) * 0x1.0p-53 < gamma;
      size += in[x];
    }
    std::uint32_t overlap = 0;
    for (std::uint32_t x = 0; x < p; ++x) overlap += in[x] && in[x == 0 ? p - 1 : x - 1];
    sizes[t] = size;
    overlaps[t] = overlap;
  }

  ChernoffReport r;
  r.p = p;
  r.gamma = gamma;
  r.trials = trials;
  r.seed = seed;
  const double count = static_cast<double>(trials);
  const double mu = gamma * p;
  const double sigma = std::sqrt(p * gamma * (1.0 - gamma));
  for (auto s : sizes) r.size_mean += s;
  r.size_mean /= count;
  for (double lambda : lambdas) {
    TailCheck tail;
    tail.params = chernoff_params(p, lambda, sigma);
    std::uint64_t hits = 0;
    for (auto s : sizes) hits += std::abs(static_cast<double>(s) - mu) >= lambda * sigma;
    tail.frequency = static_cast<double>(hits) / count;
    tail.standard_error = std::sqrt(tail.frequency * (1.0 - tail.frequency) / count);
    tail.ok = tail.frequency <= tail.params.bound + 3.0 * tail.standard_error;
    r.size_tails.push_back(tail);
  }

  r.overlap_expected = gamma * gamma * p;
  for (auto o : overlaps) r.overlap_mean += o;
  r.overlap_mean /= count;
  double ss = 0.0;
  for (auto o : overlaps) ss += (o - r.overlap_mean) * (o - r.overlap_mean);
  r.overlap_sd = std::sqrt(ss / (count - 1.0));
  for (int k = 0; k <= 5; ++k) {
    std::uint64_t hits = 0;
    for (auto o : overlaps) hits += std::abs(o - r.overlap_expected) >= k * r.overlap_sd;
    r.overlap_tail_counts.push_back(hits);
  }
  return r;
}

Index2Report index2_check(const GroupSpec& g) {
  const auto subgroups = subgroups_up_to_index(g, 2);
  const auto it = std::find_if(subgroups.begin(), subgroups.end(), [](const Subgroup& s) { return s.index_in_group == 2; });
  if (it == subgroups.end()) throw std::invalid_argument("index2_check: " + g.name() + " has no index-2 subgroup");
  const auto inside = it->carrier.elements();
  const auto outside = it->carrier.complement().elements();
  Index2Report r;
  r.count = BigInt(1) << (3 * g.order() / 2);
  if (g.order() <= 8) {
    r.exhaustive = true;
    r.ok = true;
    const std::uint32_t half = 1u << inside.size();
    for (std::uint32_t a = 0; a < half; ++a) {
      for (std::uint32_t b = 0; b < half; ++b) {
        for (std::uint32_t c = 0; c < half; ++c) {
          ++r.triples_checked;
          for (std::size_t i = 0; i < inside.size(); ++i) {
            if (((a >> i) & 1u) == 0) continue;
            for (std::size_t j = 0; j < inside.size(); ++j) {
              if (((b >> j) & 1u) == 0) continue;
              const auto s = g.add(Element{inside[i]}, Element{inside[j]}).index;
              for (std::size_t k = 0; k < outside.size(); ++k) {
                if (((c >> k) & 1u) != 0 && outside[k] == s) r.ok = false;
              }
            }
          }
        }
      }
    }
  } else {
    // Every such A + B lies in H + H = H, which misses G \ H.
    r.ok = is_subgroup(g, it->carrier) && avoids(sumset(g, it->carrier, it->carrier), it->carrier.complement());
  }
  return r;
}

}  // namespace addcomb
