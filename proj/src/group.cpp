#include "addcomb/group.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace addcomb {

GroupSpec::GroupSpec(std::vector<std::uint32_t> moduli, std::uint64_t ceiling) : moduli_(std::move(moduli)) {
  std::uint64_t order = 1;
  std::uint64_t exponent = 1;
  for (auto m : moduli_) {
    if (m < 2) throw std::invalid_argument("make_group: every modulus must be >= 2");
    order *= m;
    if (order > ceiling) throw GuardExceeded("make_group: group order exceeds the enumeration ceiling");
    exponent = std::lcm(exponent, std::uint64_t{m});
  }
  order_ = static_cast<std::uint32_t>(order);
  exponent_ = static_cast<std::uint32_t>(exponent);
  std::uint32_t stride = 1;
  for (auto m : moduli_) {
    strides_.push_back(stride);
    phase_weight_.push_back(exponent_ / m);
    stride *= m;
  }
}

void GroupSpec::check(Element x) const {
  if (x.index >= order_) throw std::out_of_range("group element index out of range");
}

std::vector<std::uint32_t> GroupSpec::digits(Element x) const {
  check(x);
  std::vector<std::uint32_t> d(moduli_.size());
  std::uint32_t rest = x.index;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    d[j] = rest % moduli_[j];
    rest /= moduli_[j];
  }
  return d;
}

Element GroupSpec::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() != moduli_.size()) throw std::invalid_argument("from_digits: wrong number of digits");
  std::uint32_t idx = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (digits[j] >= moduli_[j]) throw std::out_of_range("from_digits: digit out of range");
    idx += digits[j] * strides_[j];
  }
  return Element{idx};
}

Element GroupSpec::add(Element x, Element y) const {
  check(x);
  check(y);
  if (moduli_.size() <= 1) {
    const std::uint32_t s = x.index + y.index;
    return Element{s >= order_ ? s - order_ : s};
  }
  std::uint32_t a = x.index;
  std::uint32_t b = y.index;
  std::uint32_t idx = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const std::uint32_t m = moduli_[j];
    std::uint32_t s = a % m + b % m;
    if (s >= m) s -= m;
    idx += s * strides_[j];
    a /= m;
    b /= m;
  }
  return Element{idx};
}

Element GroupSpec::neg(Element x) const {
  check(x);
  if (moduli_.size() <= 1) return Element{x.index == 0 ? 0 : order_ - x.index};
  std::uint32_t a = x.index;
  std::uint32_t idx = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const std::uint32_t m = moduli_[j];
    const std::uint32_t d = a % m;
    idx += (d == 0 ? 0 : m - d) * strides_[j];
    a /= m;
  }
  return Element{idx};
}

Element GroupSpec::scale(Element x, std::int64_t k) const {
  check(x);
  std::uint32_t a = x.index;
  std::uint32_t idx = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const std::int64_t m = moduli_[j];
    const std::int64_t kk = ((k % m) + m) % m;
    idx += static_cast<std::uint32_t>((kk * (a % m)) % m) * strides_[j];
    a /= static_cast<std::uint32_t>(m);
  }
  return Element{idx};
}

std::uint32_t GroupSpec::phase(Character chi, Element x) const {
  check(Element{chi.dual_index});
  check(x);
  std::uint32_t r = chi.dual_index;
  std::uint32_t a = x.index;
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const std::uint32_t m = moduli_[j];
    acc += std::uint64_t{r % m} * (a % m) % m * phase_weight_[j];
    r /= m;
    a /= m;
  }
  return static_cast<std::uint32_t>(acc % exponent_);
}

std::string GroupSpec::name() const {
  if (moduli_.empty()) return "1";
  std::string out;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (j != 0) out += 'x';
    out += std::to_string(moduli_[j]);
  }
  return out;
}

GroupSpec make_group(std::vector<std::uint32_t> moduli, std::uint64_t ceiling) {
  return GroupSpec(std::move(moduli), ceiling);
}

GroupSpec parse_group(std::string_view text, std::uint64_t ceiling) {
  std::vector<std::uint32_t> moduli;
  if (text.empty() || text == "1") return make_group({}, ceiling);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find_first_of("xX*", pos), text.size());
    const std::string_view part = text.substr(pos, next - pos);
    std::uint32_t m = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), m);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw std::invalid_argument("parse_group: cannot parse '" + std::string(text) + "'");
    }
    moduli.push_back(m);
    pos = next + 1;
  }
  return make_group(std::move(moduli), ceiling);
}

Element group_op(const GroupSpec& g, GroupOp op, Element x, std::optional<Element> y) {
  switch (op) {
    case GroupOp::add:
      if (!y) throw std::invalid_argument("group_op: add needs two operands");
      return g.add(x, *y);
    case GroupOp::neg:
      return g.neg(x);
  }
  throw std::invalid_argument("group_op: unknown operation");
}

std::complex<double> char_eval(const GroupSpec& g, Character chi, Element x) {
  const double angle = 2.0 * std::numbers::pi * g.phase(chi, x) / g.exponent();
  return {std::cos(angle), std::sin(angle)};
}

namespace {

// out = rotate-left of the N-bit vector `in` by t (bit i -> bit (i+t) mod N).
void rotate_bits(std::span<const Subset::Word> in, std::span<Subset::Word> out, std::size_t n, std::size_t t) {
  constexpr std::size_t W = Subset::kWordBits;
  std::fill(out.begin(), out.end(), 0);
  if (n == 0) return;
  t %= n;
  // Left shift by t.
  const std::size_t ws = t / W;
  const std::size_t bs = t % W;
  for (std::size_t i = out.size(); i-- > ws;) {
    Subset::Word v = in[i - ws] << bs;
    if (bs != 0 && i - ws >= 1) v |= in[i - ws - 1] >> (W - bs);
    out[i] |= v;
  }
  if (t == 0) return;
  // Right shift by n - t brings the wrapped high bits down.
  const std::size_t r = n - t;
  const std::size_t wr = r / W;
  const std::size_t br = r % W;
  for (std::size_t i = 0; i + wr < in.size(); ++i) {
    Subset::Word v = in[i + wr] >> br;
    if (br != 0 && i + wr + 1 < in.size()) v |= in[i + wr + 1] << (W - br);
    out[i] |= v;
  }
}

}  // namespace

Subset translate(const GroupSpec& g, const Subset& s, Element t) {
  if (s.universe() != g.order()) throw std::invalid_argument("translate: subset universe mismatch");
  if (t.index >= g.order()) throw std::out_of_range("translate: shift out of range");
  Subset out(g.order());
  if (g.is_cyclic()) {
    rotate_bits(s.words(), out.mutable_words(), g.order(), t.index);
    out.recount();
    return out;
  }
  s.for_each([&](std::uint32_t x) { out.insert(g.add(Element{x}, t).index); });
  return out;
}

Subset negate(const GroupSpec& g, const Subset& s) {
  Subset out(g.order());
  s.for_each([&](std::uint32_t x) { out.insert(g.neg(Element{x}).index); });
  return out;
}

Subset dilate(const GroupSpec& g, const Subset& s, std::int64_t u) {
  Subset out(g.order());
  s.for_each([&](std::uint32_t x) { out.insert(g.scale(Element{x}, u).index); });
  return out;
}

bool is_subgroup(const GroupSpec& g, const Subset& s) {
  if (s.universe() != g.order() || !s.contains(0)) return false;
  const auto elems = s.elements();
  for (auto x : elems) {
    for (auto y : elems) {
      if (!s.contains(g.sub(Element{x}, Element{y}).index)) return false;
    }
  }
  return true;
}

std::uint32_t smallest_prime_factor(std::uint32_t n) {
  if (n < 2) return n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

bool is_prime(std::uint32_t n) { return n >= 2 && smallest_prime_factor(n) == n; }

namespace {

struct DualSubgroup {
  Subset carrier;
  std::vector<Character> generators;
};

Subset annihilator(const GroupSpec& g, const std::vector<Character>& gens) {
  Subset h(g.order());
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool fixed = true;
    for (auto chi : gens) {
      if (g.phase(chi, Element{x}) != 0) {
        fixed = false;
        break;
      }
    }
    if (fixed) h.insert(x);
  }
  return h;
}

}  // namespace

std::vector<Subgroup> subgroups_up_to_index(const GroupSpec& g, std::uint32_t n) {
  if (g.order() > kSubgroupGuard) throw GuardExceeded("subgroups_up_to_index: group order exceeds 4096");
  std::vector<Subgroup> out;
  if (n == 0) return out;

  // Subgroups H of index k are the annihilators of subgroups K of the dual
  // group of order k, so it suffices to close small subgroups of the dual.
  std::vector<DualSubgroup> found;
  std::set<std::string> seen;
  DualSubgroup trivial{Subset::from_indices(g.order(), {0}), {}};
  seen.insert(trivial.carrier.to_hex());
  found.push_back(std::move(trivial));
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::uint32_t r = 0; r < g.order(); ++r) {
      const DualSubgroup& k = found[i];
      if (k.carrier.contains(r)) continue;
      // Order of r modulo K.
      std::uint64_t j = 1;
      Element multiple{r};
      while (!k.carrier.contains(multiple.index)) {
        multiple = g.add(multiple, Element{r});
        ++j;
      }
      if (k.carrier.size() * j > n) continue;
      Subset next(g.order());
      Element step{0};
      for (std::uint64_t m = 0; m < j; ++m) {
        next |= translate(g, k.carrier, step);
        step = g.add(step, Element{r});
      }
      if (!seen.insert(next.to_hex()).second) continue;
      auto gens = k.generators;
      gens.push_back(Character{r});
      found.push_back(DualSubgroup{std::move(next), std::move(gens)});
    }
  }

  for (const auto& k : found) {
    Subset h = annihilator(g, k.generators);
    if (!is_subgroup(g, h) || h.size() * k.carrier.size() != g.order()) {
      throw InvariantViolation("subgroups_up_to_index: annihilator failed the closure check");
    }
    out.push_back(Subgroup{std::move(h), static_cast<std::uint32_t>(k.carrier.size())});
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.carrier.size() != b.carrier.size()) return a.carrier.size() > b.carrier.size();
    return a.carrier.elements() < b.carrier.elements();
  });
  return out;
}

Subgroup maximal_proper_subgroup(const GroupSpec& g) {
  if (g.order() == 1) throw std::invalid_argument("maximal_proper_subgroup: trivial group has no proper subgroup");
  const std::uint32_t p = smallest_prime_factor(g.order());
  for (auto& h : subgroups_up_to_index(g, p)) {
    if (h.index_in_group == p) return h;
  }
  throw InvariantViolation("maximal_proper_subgroup: no subgroup of prime index found");
}

Subgroup stabilizer(const GroupSpec& g, const Subset& s) {
  if (s.universe() != g.order()) throw std::invalid_argument("stabilizer: subset universe mismatch");
  if (s.empty() || s.size() == g.order()) return Subgroup{g.full_set(), 1};
  Subset h(g.order());
  const Element s0{s.min_element()};
  // x stabilizes S only if s0 + x lies in S.
  s.for_each([&](std::uint32_t y) {
    const Element x = g.sub(Element{y}, s0);
    if (translate(g, s, x) == s) h.insert(x.index);
  });
  if (!h.contains(0) || g.order() % h.size() != 0) {
    throw InvariantViolation("stabilizer: result is not a subgroup");
  }
  return Subgroup{std::move(h), static_cast<std::uint32_t>(g.order() / h.size())};
}

}  // namespace addcomb
