#include <doctest.h>

#include <random>
#include <set>

#include "addcomb/subset.hpp"

using namespace addcomb;

TEST_CASE("insert, erase and cardinality") {
  Subset s(130);
  s.insert(0);
  s.insert(64);
  s.insert(129);
  s.insert(64);
  CHECK(s.size() == 3);
  CHECK(s.contains(129));
  CHECK_FALSE(s.contains(130));
  s.erase(64);
  CHECK(s.size() == 2);
  CHECK(s.elements() == std::vector<std::uint32_t>{0, 129});
  CHECK(s.min_element() == 0);
  CHECK_THROWS(s.insert(130));
}

TEST_CASE("complement keeps the tail clear") {
  for (std::size_t n : {1, 5, 63, 64, 65, 128, 129}) {
    const Subset e(n);
    const Subset full = e.complement();
    CHECK(full.size() == n);
    CHECK(full == Subset::full(n));
    CHECK(full.complement().empty());
  }
}

TEST_CASE("set algebra against std::set") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    Subset a(n), b(n);
    std::set<std::uint32_t> sa, sb;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (rng() % 2) a.insert(x), sa.insert(x);
      if (rng() % 3 == 0) b.insert(x), sb.insert(x);
    }
    std::set<std::uint32_t> u, i, d;
    for (auto x : sa) (sb.count(x) ? i : d).insert(x);
    u = sa;
    u.insert(sb.begin(), sb.end());
    CHECK((a | b).size() == u.size());
    CHECK((a & b).size() == i.size());
    CHECK((a - b).size() == d.size());
    CHECK(a.intersects(b) == !i.empty());
    CHECK((a & b).is_subset_of(a));
    CHECK(a.is_subset_of(a | b));
  }
}

TEST_CASE("mask and hex round trips") {
  const Subset s = Subset::from_mask(10, 0b1000100101);
  CHECK(s.elements() == std::vector<std::uint32_t>{0, 2, 5, 9});
  CHECK(s.to_mask() == 0b1000100101);
  CHECK(Subset::from_hex(10, s.to_hex()) == s);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    Subset t(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      if (rng() % 2) t.insert(x);
    }
    CHECK(Subset::from_hex(n, t.to_hex()) == t);
  }
  CHECK_THROWS(Subset::from_mask(70, 1));
  CHECK_THROWS(Subset::from_hex(4, "zz"));
}

TEST_CASE("for_each visits elements in order") {
  const Subset s = Subset::from_indices(200, {3, 70, 199, 64});
  std::vector<std::uint32_t> seen;
  s.for_each([&](std::uint32_t x) { seen.push_back(x); });
  CHECK(seen == std::vector<std::uint32_t>{3, 64, 70, 199});
}
