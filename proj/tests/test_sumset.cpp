#include <doctest.h>

#include <random>
#include <set>

#include "addcomb/sumset.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {

std::set<std::uint32_t> as_set(const Subset& s) {
  const auto e = s.elements();
  return {e.begin(), e.end()};
}

Subset random_subset(std::mt19937_64& rng, std::uint32_t n, unsigned one_in) {
  Subset s(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (rng() % one_in == 0) s.insert(x);
  }
  return s;
}

const std::vector<std::vector<std::uint32_t>> kGroups{{2}, {5}, {12}, {2, 2}, {2, 6}, {3, 3}, {64}, {65},
                                                      {101}, {2, 2, 2, 2}, {4, 8}, {200}};

}  // namespace

TEST_CASE("sumset examples") {
  const auto z5 = make_group({5});
  CHECK(sumset(z5, z5.empty_set(), z5.full_set()).empty());
  CHECK(sumset(z5, Subset::from_indices(5, {1, 2}), Subset::from_indices(5, {3})) == Subset::from_indices(5, {4, 0}));
  const auto z4 = make_group({4});
  const auto h = Subset::from_indices(4, {0, 2});
  CHECK(sumset(z4, h, h) == h);
}

TEST_CASE("sumset, difference set and convolution match the oracle") {
  std::mt19937_64 rng(21);
  for (const auto& moduli : kGroups) {
    const auto g = make_group(moduli);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_subset(rng, g.order(), 2 + trial % 5);
      const auto b = random_subset(rng, g.order(), 2 + trial % 3);
      REQUIRE(as_set(sumset(g, a, b)) == oracle::sumset(moduli, as_set(a), as_set(b)));
      REQUIRE(sumset(g, a, b) == sumset(g, b, a));
      REQUIRE(difference_set(g, a, b) == sumset(g, a, negate(g, b)));
      REQUIRE(convolution(g, a, b).counts == oracle::convolution(moduli, as_set(a), as_set(b)));
    }
  }
}

TEST_CASE("convolution examples") {
  const auto z4 = make_group({4});
  const auto a = Subset::from_indices(4, {0, 1});
  CHECK(convolution(z4, a, a).counts == std::vector<std::uint32_t>{1, 2, 1, 0});
  const auto g = make_group({6});
  for (auto c : convolution(g, g.full_set(), g.full_set()).counts) CHECK(c == 6);
  const auto b = Subset::from_indices(6, {1, 4, 5});
  CHECK(convolution(g, Subset::from_indices(6, {0}), b).counts == std::vector<std::uint32_t>{0, 1, 0, 0, 1, 1});
}

TEST_CASE("representation threshold") {
  CHECK(representation_threshold(0.5, 4) == 2);
  CHECK(representation_threshold(0.0, 4) == 1);
  CHECK(representation_threshold(1.0 / 7, 7) == 1);
  CHECK(representation_threshold(0.3, 10) == 3);  // 0.3 * 10 is 3 up to rounding
  CHECK(representation_threshold(0.31, 10) == 4);
}

TEST_CASE("thick sumset examples") {
  const auto z4 = make_group({4});
  const auto a = Subset::from_indices(4, {0, 1});
  CHECK(thick_sumset(z4, a, a, 0.5) == Subset::from_indices(4, {1}));
  CHECK(thick_sumset(z4, z4.full_set(), z4.full_set(), 1.0) == z4.full_set());
  std::mt19937_64 rng(8);
  const auto g = make_group({31});
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_subset(rng, 31, 3);
    const auto y = random_subset(rng, 31, 2);
    CHECK(thick_sumset(g, x, y, 1.0 / 31) == sumset(g, x, y));
  }
  CHECK_THROWS_AS(thick_sumset(z4, a, a, 1.5), std::invalid_argument);
}

TEST_CASE("thick sumset thresholds the convolution") {
  std::mt19937_64 rng(12);
  const auto g = make_group({4, 5});
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_subset(rng, 20, 2);
    const auto b = random_subset(rng, 20, 2);
    const double eps = static_cast<double>(rng() % 8) / 20.0;
    const auto counts = oracle::convolution({4, 5}, as_set(a), as_set(b));
    const auto thick = thick_sumset(g, a, b, eps);
    for (std::uint32_t x = 0; x < 20; ++x) {
      CHECK(thick.contains(x) == (counts[x] >= std::max(1.0, eps * 20 - 1e-9)));
    }
    CHECK(thick.is_subset_of(sumset(g, a, b)));
  }
}

TEST_CASE("thick difference") {
  const auto g = make_group({7});
  const auto z = Subset::from_indices(7, {5, 6});
  const auto y = Subset::from_indices(7, {0});
  CHECK(thick_difference(g, z, y, 0.0) == z);
  CHECK(thick_difference(g, z, y, 0.5).empty());
}

TEST_CASE("avoids") {
  const Subset e(5);
  CHECK(avoids(e, Subset::full(5)));
  CHECK_FALSE(avoids(Subset::from_indices(5, {1}), Subset::from_indices(5, {1})));
  const auto g = make_group({9});
  const auto a = Subset::from_indices(9, {0, 1, 2});
  const auto s = sumset(g, a, a);
  CHECK(avoids(s.complement(), s));
}

TEST_CASE("kneser slack examples") {
  const auto z4 = make_group({4});
  auto r = kneser_slack(z4, Subset::from_indices(4, {0, 1}), Subset::from_indices(4, {0, 1}));
  CHECK(r.sumset_size == 3);
  CHECK(r.stab_size == 1);
  CHECK(r.bound == 3);
  CHECK(r.slack == 0);
  r = kneser_slack(z4, Subset::from_indices(4, {0, 2}), Subset::from_indices(4, {0, 2}));
  CHECK(r.sumset_size == 2);
  CHECK(r.stab_size == 2);
  CHECK(r.bound == 2);
  CHECK(r.slack == 0);
  const auto g = make_group({2, 3});
  r = kneser_slack(g, g.full_set(), Subset::from_indices(6, {4}));
  CHECK(r.stab_size == 6);
  CHECK(r.bound == 6);
  CHECK(r.slack == 0);
  CHECK_THROWS_AS(kneser_slack(z4, z4.empty_set(), z4.full_set()), std::invalid_argument);
}

TEST_CASE("Cauchy-Davenport holds in Z_p for random sets") {
  std::mt19937_64 rng(33);
  for (std::uint32_t p : {11u, 13u, 101u}) {
    const auto g = make_group({p});
    for (int trial = 0; trial < 100; ++trial) {
      auto a = random_subset(rng, p, 4);
      auto b = random_subset(rng, p, 5);
      if (a.empty() || b.empty()) continue;
      const auto size = sumset(g, a, b).size();
      CHECK(size >= std::min<std::size_t>(p, a.size() + b.size() - 1));
      CHECK(kneser_slack(g, a, b).slack >= 0);
    }
  }
}
