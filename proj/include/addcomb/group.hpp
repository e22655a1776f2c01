#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addcomb/common.hpp"
#include "addcomb/subset.hpp"

namespace addcomb {

inline constexpr std::uint64_t kDefaultCeiling = std::uint64_t{1} << 20;
// Closure enumeration guard for subgroups_up_to_index.
inline constexpr std::uint32_t kSubgroupGuard = 4096;

struct Element {
  std::uint32_t index = 0;
  friend auto operator<=>(const Element&, const Element&) = default;
};

// Characters are labelled by the same mixed-radix tuples as elements.
struct Character {
  std::uint32_t dual_index = 0;
  friend auto operator<=>(const Character&, const Character&) = default;
};

/// Finite abelian group Z_{m_1} x ... x Z_{m_k}.
///
/// Element indices are mixed radix with the first modulus varying fastest:
/// index = x_1 + m_1 * (x_2 + m_2 * (...)). Cached census results depend on
/// this ordering, so it must not change.
class GroupSpec {
 public:
  GroupSpec() : GroupSpec(std::vector<std::uint32_t>{}, kDefaultCeiling) {}
  GroupSpec(std::vector<std::uint32_t> moduli, std::uint64_t ceiling);

  std::span<const std::uint32_t> moduli() const { return moduli_; }
  std::uint32_t order() const { return order_; }
  // lcm of the moduli; character phases live in Z_exponent.
  std::uint32_t exponent() const { return exponent_; }
  bool is_cyclic() const { return moduli_.size() <= 1; }
  std::size_t rank() const { return moduli_.size(); }

  std::vector<std::uint32_t> digits(Element x) const;
  Element from_digits(std::span<const std::uint32_t> digits) const;

  Element add(Element x, Element y) const;
  Element neg(Element x) const;
  Element sub(Element x, Element y) const { return add(x, neg(y)); }
  Element scale(Element x, std::int64_t k) const;

  // Numerator of <r, x> in Z_exponent: chi_r(x) = exp(2 pi i phase / exponent).
  std::uint32_t phase(Character chi, Element x) const;

  // "2x3", "12", or "1" for the trivial group.
  std::string name() const;

  Subset empty_set() const { return Subset(order_); }
  Subset full_set() const { return Subset::full(order_); }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.moduli_ == b.moduli_; }

 private:
  void check(Element x) const;

  std::vector<std::uint32_t> moduli_;
  std::vector<std::uint32_t> strides_;
  std::vector<std::uint32_t> phase_weight_;  // exponent / m_j
  std::uint32_t order_ = 1;
  std::uint32_t exponent_ = 1;
};

GroupSpec make_group(std::vector<std::uint32_t> moduli, std::uint64_t ceiling = kDefaultCeiling);
// Parses "2x3", "12", "1" or "" (trivial group).
GroupSpec parse_group(std::string_view text, std::uint64_t ceiling = kDefaultCeiling);

enum class GroupOp { add, neg };
Element group_op(const GroupSpec& g, GroupOp op, Element x, std::optional<Element> y = std::nullopt);

std::complex<double> char_eval(const GroupSpec& g, Character chi, Element x);

Subset translate(const GroupSpec& g, const Subset& s, Element t);
Subset negate(const GroupSpec& g, const Subset& s);
// x -> u*x; a group automorphism when gcd(u, exponent) == 1.
Subset dilate(const GroupSpec& g, const Subset& s, std::int64_t u);

struct Subgroup {
  Subset carrier;
  std::uint32_t index_in_group = 1;
};

// Independent closure check: contains 0, closed under + and -.
bool is_subgroup(const GroupSpec& g, const Subset& s);

// All subgroups of index <= n, largest first. Requires N <= kSubgroupGuard.
std::vector<Subgroup> subgroups_up_to_index(const GroupSpec& g, std::uint32_t n);

// A largest proper subgroup (index = smallest prime factor of N).
// Throws std::invalid_argument for the trivial group.
Subgroup maximal_proper_subgroup(const GroupSpec& g);

// {x : S + x = S}; the whole group for S empty.
Subgroup stabilizer(const GroupSpec& g, const Subset& s);

std::uint32_t smallest_prime_factor(std::uint32_t n);
bool is_prime(std::uint32_t n);

}  // namespace addcomb
