#include "addcomb/sumset.hpp"

#include <cmath>
#include <stdexcept>

namespace addcomb {

namespace {

void check_universe(const GroupSpec& g, const Subset& s) {
  if (s.universe() != g.order()) throw std::invalid_argument("subset universe does not match the group order");
}

}  // namespace

Subset sumset(const GroupSpec& g, const Subset& a, const Subset& b) {
  check_universe(g, a);
  check_universe(g, b);
  Subset out(g.order());
  if (a.empty() || b.empty()) return out;
  // Shift-OR the larger operand by every element of the smaller one.
  const Subset& shifts = a.size() <= b.size() ? a : b;
  const Subset& body = a.size() <= b.size() ? b : a;
  auto acc = out.mutable_words();
  shifts.for_each([&](std::uint32_t s) {
    const Subset moved = translate(g, body, Element{s});
    const auto w = moved.words();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= w[i];
  });
  out.recount();
  return out;
}

Subset difference_set(const GroupSpec& g, const Subset& a, const Subset& b) {
  return sumset(g, a, negate(g, b));
}

ConvolutionTable convolution(const GroupSpec& g, const Subset& a, const Subset& b) {
  check_universe(g, a);
  check_universe(g, b);
  ConvolutionTable t{std::vector<std::uint32_t>(g.order(), 0)};
  const auto bs = b.elements();
  if (g.is_cyclic()) {
    const std::uint32_t n = g.order();
    a.for_each([&](std::uint32_t x) {
      for (auto y : bs) {
        const std::uint32_t s = x + y;
        ++t.counts[s >= n ? s - n : s];
      }
    });
  } else {
    a.for_each([&](std::uint32_t x) {
      for (auto y : bs) ++t.counts[g.add(Element{x}, Element{y}).index];
    });
  }
  return t;
}

std::uint64_t representation_threshold(double eps, std::uint32_t order) {
  if (!(eps >= 0.0) || eps > 1.0 + 1e-12) throw std::invalid_argument("thick sumset: eps must lie in [0, 1]");
  const double target = eps * order;
  const double nearest = std::round(target);
  const double r = std::abs(target - nearest) <= 1e-9 ? nearest : std::ceil(target);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(r));
}

Subset thick_sumset(const GroupSpec& g, const ConvolutionTable& conv, double eps) {
  const std::uint64_t thr = representation_threshold(eps, g.order());
  Subset out(g.order());
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (conv.counts[x] >= thr) out.insert(x);
  }
  return out;
}

Subset thick_sumset(const GroupSpec& g, const Subset& a, const Subset& b, double eps) {
  return thick_sumset(g, convolution(g, a, b), eps);
}

Subset thick_difference(const GroupSpec& g, const Subset& z, const Subset& y, double eta) {
  // Nothing has more than N representations.
  if (eta > 1.0) return Subset(g.order());
  return thick_sumset(g, convolution(g, z, negate(g, y)), eta);
}

bool avoids(const Subset& x, const Subset& y) { return !x.intersects(y); }

KneserReport kneser_slack(const GroupSpec& g, const Subset& a, const Subset& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("kneser_slack: inputs must be nonempty");
  const Subset ab = sumset(g, a, b);
  KneserReport r;
  r.stab = stabilizer(g, ab);
  r.sumset_size = ab.size();
  r.stab_size = r.stab.carrier.size();
  const auto ah = sumset(g, a, r.stab.carrier).size();
  const auto bh = sumset(g, b, r.stab.carrier).size();
  r.bound = static_cast<std::int64_t>(ah + bh) - static_cast<std::int64_t>(r.stab_size);
  r.slack = static_cast<std::int64_t>(r.sumset_size) - r.bound;
  if (r.slack < 0) throw InvariantViolation("kneser_slack: negative slack for " + g.name());
  return r;
}

}  // namespace addcomb
