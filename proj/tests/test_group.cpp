#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "addcomb/group.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {

const std::vector<std::vector<std::uint32_t>> kSmallGroups{{}, {2}, {5}, {7}, {12}, {2, 2}, {2, 3}, {2, 4}, {3, 3},
                                                          {2, 2, 2}, {4, 4}, {2, 6}, {64}, {2, 2, 2, 2, 2, 2}};

Subset subset_of(const GroupSpec& g, std::initializer_list<std::uint32_t> xs) {
  return Subset::from_indices(g.order(), xs);
}

}  // namespace

TEST_CASE("make_group orders and shapes") {
  CHECK(make_group({2, 3}).order() == 6);
  CHECK(make_group({}).order() == 1);
  const auto z5 = make_group({5});
  CHECK(z5.order() == 5);
  CHECK(z5.is_cyclic());
  CHECK_FALSE(make_group({2, 3}).is_cyclic());
  CHECK(make_group({4, 6}).exponent() == 12);
  CHECK_THROWS_AS(make_group({1}), std::invalid_argument);
  CHECK_THROWS_AS(make_group({0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(make_group({1024, 1024, 2}), GuardExceeded);
  CHECK_NOTHROW(make_group({1024, 1024}));
}

TEST_CASE("parse_group and name round trip") {
  for (const char* text : {"12", "2x3", "2x2x2", "1"}) CHECK(parse_group(text).name() == text);
  CHECK(parse_group("").order() == 1);
  CHECK(parse_group("1").order() == 1);
  CHECK(parse_group("2x6") == make_group({2, 6}));
  CHECK_THROWS_AS(parse_group("2y3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group("x3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_group("-4"), std::invalid_argument);
}

TEST_CASE("group_op small cases") {
  const auto z5 = make_group({5});
  CHECK(group_op(z5, GroupOp::add, {3}, Element{4}).index == 2);
  CHECK(group_op(make_group({7}), GroupOp::neg, {2}).index == 5);

  const auto g = make_group({2, 3});
  const std::uint32_t d12[] = {1, 2};
  const std::uint32_t d01[] = {0, 1};
  const Element x = g.from_digits(d12);
  CHECK(group_op(g, GroupOp::add, x, x) == g.from_digits(d01));
  CHECK_THROWS_AS(group_op(z5, GroupOp::add, {5}, Element{0}), std::out_of_range);
  CHECK_THROWS_AS(group_op(z5, GroupOp::add, {1}), std::invalid_argument);
}

TEST_CASE("mixed radix indexing puts the first modulus fastest") {
  const auto g = make_group({2, 3});
  for (std::uint32_t i = 0; i < 6; ++i) {
    const auto d = g.digits({i});
    CHECK(d[0] == i % 2);
    CHECK(d[1] == i / 2);
  }
}

TEST_CASE("addition agrees with coordinatewise arithmetic") {
  for (const auto& moduli : kSmallGroups) {
    const auto g = make_group(moduli);
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      CHECK(g.add({x}, g.neg({x})).index == 0);
      for (std::uint32_t y = 0; y < g.order(); ++y) {
        const auto s = g.add({x}, {y});
        REQUIRE(s == g.add({y}, {x}));
        REQUIRE(s.index == oracle::add(moduli, x, y));
      }
    }
  }
}

TEST_CASE("scale is repeated addition") {
  const auto g = make_group({3, 4});
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    Element acc{0};
    for (int k = 0; k <= 13; ++k) {
      CHECK(g.scale({x}, k) == acc);
      CHECK(g.scale({x}, -k) == g.neg(acc));
      acc = g.add(acc, {x});
    }
  }
}

TEST_CASE("char_eval values") {
  const auto z4 = make_group({4});
  for (std::uint32_t x = 0; x < 4; ++x) CHECK(std::abs(char_eval(z4, {0}, {x}) - 1.0) < 1e-12);
  CHECK(std::abs(char_eval(z4, {1}, {2}) + 1.0) < 1e-12);
  CHECK(std::abs(char_eval(z4, {1}, {1}) - std::complex<double>(0, 1)) < 1e-12);

  const auto v4 = make_group({2, 2});
  const std::uint32_t r[] = {1, 0};
  const std::uint32_t x[] = {1, 1};
  CHECK(std::abs(char_eval(v4, {v4.from_digits(r).index}, v4.from_digits(x)) + 1.0) < 1e-12);
}

TEST_CASE("characters are homomorphisms") {
  std::mt19937_64 rng(17);
  for (const auto& moduli : kSmallGroups) {
    const auto g = make_group(moduli);
    std::uniform_int_distribution<std::uint32_t> pick(0, g.order() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const Character chi{pick(rng)};
      const Element x{pick(rng)}, y{pick(rng)};
      const auto lhs = char_eval(g, chi, g.add(x, y));
      const auto rhs = char_eval(g, chi, x) * char_eval(g, chi, y);
      REQUIRE(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("subgroups up to index") {
  const auto z4 = make_group({4});
  auto subs = subgroups_up_to_index(z4, 2);
  REQUIRE(subs.size() == 2);
  CHECK(subs[0].carrier == z4.full_set());
  CHECK(subs[1].carrier == subset_of(z4, {0, 2}));
  CHECK(subs[1].index_in_group == 2);

  const auto v4 = make_group({2, 2});
  subs = subgroups_up_to_index(v4, 2);
  CHECK(subs.size() == 4);
  std::set<std::string> carriers;
  for (const auto& s : subs) carriers.insert(s.carrier.to_hex());
  CHECK(carriers.size() == 4);

  CHECK(subgroups_up_to_index(make_group({5}), 2).size() == 1);
  CHECK_THROWS_AS(subgroups_up_to_index(make_group({8192}), 2), GuardExceeded);
}

TEST_CASE("subgroup counts match known lattices") {
  // Z_12 has one subgroup per divisor; Z_2^3 has 1 + 7 + 7 + 1.
  CHECK(subgroups_up_to_index(make_group({12}), 12).size() == 6);
  CHECK(subgroups_up_to_index(make_group({2, 2, 2}), 8).size() == 16);
  CHECK(subgroups_up_to_index(make_group({3, 3}), 9).size() == 6);
  for (const auto& moduli : kSmallGroups) {
    const auto g = make_group(moduli);
    for (const auto& s : subgroups_up_to_index(g, g.order())) {
      CHECK(is_subgroup(g, s.carrier));
      CHECK(s.carrier.size() * s.index_in_group == g.order());
    }
  }
}

TEST_CASE("maximal proper subgroup has prime index") {
  CHECK(maximal_proper_subgroup(make_group({12})).index_in_group == 2);
  CHECK(maximal_proper_subgroup(make_group({3, 3})).index_in_group == 3);
  CHECK(maximal_proper_subgroup(make_group({7})).carrier.size() == 1);
  CHECK_THROWS_AS(maximal_proper_subgroup(make_group({})), std::invalid_argument);
}

TEST_CASE("stabilizer examples") {
  const auto z4 = make_group({4});
  CHECK(stabilizer(z4, z4.full_set()).carrier == z4.full_set());
  CHECK(stabilizer(z4, subset_of(z4, {0, 2})).carrier == subset_of(z4, {0, 2}));
  const auto z5 = make_group({5});
  CHECK(stabilizer(z5, subset_of(z5, {0, 1})).carrier == subset_of(z5, {0}));
  CHECK(stabilizer(z5, z5.empty_set()).carrier == z5.full_set());
}

TEST_CASE("stabilizer is translation invariant and a subgroup") {
  std::mt19937_64 rng(5);
  for (const auto& moduli : kSmallGroups) {
    const auto g = make_group(moduli);
    if (g.order() > 64) continue;
    for (int trial = 0; trial < 50; ++trial) {
      Subset s(g.order());
      for (std::uint32_t x = 0; x < g.order(); ++x) {
        if (rng() % 2) s.insert(x);
      }
      const auto h = stabilizer(g, s);
      CHECK(h.carrier.contains(0));
      CHECK(is_subgroup(g, h.carrier));
      const Element t{static_cast<std::uint32_t>(rng() % g.order())};
      CHECK(stabilizer(g, translate(g, s, t)).carrier == h.carrier);
    }
  }
}

TEST_CASE("translate, negate and dilate match pointwise maps") {
  std::mt19937_64 rng(9);
  for (const auto& moduli : kSmallGroups) {
    const auto g = make_group(moduli);
    Subset s(g.order());
    for (std::uint32_t x = 0; x < g.order(); ++x) {
      if (rng() % 3 == 0) s.insert(x);
    }
    const Element t{static_cast<std::uint32_t>(rng() % g.order())};
    Subset shifted(g.order()), negated(g.order()), tripled(g.order());
    s.for_each([&](std::uint32_t x) {
      shifted.insert(g.add({x}, t).index);
      negated.insert(g.neg({x}).index);
      tripled.insert(g.scale({x}, 3).index);
    });
    CHECK(translate(g, s, t) == shifted);
    CHECK(negate(g, s) == negated);
    CHECK(dilate(g, s, 3) == tripled);
  }
}

TEST_CASE("is_subgroup rejects non-subgroups") {
  const auto z6 = make_group({6});
  CHECK(is_subgroup(z6, subset_of(z6, {0, 3})));
  CHECK(is_subgroup(z6, subset_of(z6, {0, 2, 4})));
  CHECK_FALSE(is_subgroup(z6, subset_of(z6, {0, 1})));
  CHECK_FALSE(is_subgroup(z6, subset_of(z6, {2, 4})));
  CHECK_FALSE(is_subgroup(z6, z6.empty_set()));
}

TEST_CASE("trivial group degenerates cleanly") {
  const auto g = make_group({});
  CHECK(g.add({0}, {0}).index == 0);
  CHECK(std::abs(char_eval(g, {0}, {0}) - 1.0) < 1e-12);
  CHECK(stabilizer(g, g.full_set()).carrier == g.full_set());
  CHECK(subgroups_up_to_index(g, 1).size() == 1);
}

TEST_CASE("primes") {
  CHECK(is_prime(2));
  CHECK(is_prime(101));
  CHECK(is_prime(1009));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(smallest_prime_factor(91) == 7);
  CHECK(smallest_prime_factor(1024) == 2);
}
