#include <doctest.h>

#include <cmath>
#include <random>

#include "addcomb/structure.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {

Subset interval(std::uint32_t n, std::uint32_t lo, std::uint32_t hi) {
  Subset s(n);
  for (std::uint32_t x = lo; x <= hi; ++x) s.insert(x % n);
  return s;
}

}  // namespace

TEST_CASE("pollard slack examples") {
  const auto f7 = make_group({7});
  auto r = pollard_slack(f7, f7.full_set(), f7.full_set(), 0.01);
  REQUIRE_FALSE(r.skipped);
  CHECK(r.thick_size == 7);
  CHECK(r.rhs_bound == doctest::Approx(5.6));
  CHECK(r.slack == doctest::Approx(1.4));

  const auto a = interval(7, 0, 2);
  r = pollard_slack(f7, a, a, 0.02);
  REQUIRE_FALSE(r.skipped);
  CHECK(r.thick_size == 5);
  CHECK(r.rhs_bound == doctest::Approx(6 - 14 * std::sqrt(0.02)));
  CHECK(r.slack == doctest::Approx(5 - 6 + 14 * std::sqrt(0.02)));

  r = pollard_slack(f7, Subset::from_indices(7, {0}), a, 0.05);
  CHECK(r.skipped);
  CHECK(r.holds());
}

TEST_CASE("general pollard examples") {
  const auto z4 = make_group({4});
  const auto h = Subset::from_indices(4, {0, 2});
  auto r = general_pollard_slack(z4, h, h, 0.1);
  REQUIRE_FALSE(r.skipped);
  CHECK(r.thick_size == 2);
  CHECK(r.rhs_bound < 0);
  CHECK(r.slack > 0);

  const auto z6 = make_group({6});
  r = general_pollard_slack(z6, z6.full_set(), z6.full_set(), 0.05);
  REQUIRE_FALSE(r.skipped);
  CHECK(r.thick_size == 6);
  CHECK(r.rhs_bound <= 6);
  CHECK(r.slack >= 0);

  const auto evens = Subset::from_indices(6, {0, 2, 4});
  r = general_pollard_slack(z6, evens, evens, 0.05);
  REQUIRE_FALSE(r.skipped);
  CHECK(r.subgroup_size == 3);
  CHECK(r.rhs_bound == doctest::Approx(3 - 18 * std::sqrt(0.05)));
  CHECK(r.thick_size == 3);
  CHECK(r.slack > 0);

  CHECK_THROWS_AS(general_pollard_slack(make_group({}), Subset::full(1), Subset::full(1), 0.1), std::invalid_argument);
}

TEST_CASE("pollard bound on random dense sets in Z_101") {
  std::mt19937_64 rng(40);
  const auto g = make_group({101});
  for (int trial = 0; trial < 200; ++trial) {
    Subset a(101), b(101);
    for (std::uint32_t x = 0; x < 101; ++x) {
      if (rng() % 3 == 0) a.insert(x);
      if (rng() % 2 == 0) b.insert(x);
    }
    const double eps = 0.0005 * (1 + trial % 10);
    const auto r = pollard_slack(g, a, b, eps);
    CHECK(r.holds());
    if (!r.skipped) {
      const auto counts = oracle::convolution({101}, {a.elements().begin(), a.elements().end()},
                                              {b.elements().begin(), b.elements().end()});
      std::size_t thick = 0;
      for (auto c : counts) thick += c >= std::max(1.0, eps * 101 - 1e-9);
      CHECK(r.thick_size == thick);
    }
  }
}

TEST_CASE("size-sum check") {
  const auto g = make_group({2, 4});
  const auto h = Subset::from_indices(8, {0, 2, 4, 6});
  const auto coset = h.complement();
  // Wa = coset, Wb = Wc = H: H + H = H misses the coset.
  const auto r = size_sum_check(g, coset, h, h, 0.3, 0.3 * 0.3 / kSizeSumDeltaDivisor);
  REQUIRE_FALSE(r.skipped);
  CHECK(r.total == 12);
  CHECK(r.holds());
}

TEST_CASE("robust filter examples") {
  const auto f7 = make_group({7});
  const auto x = Subset::from_indices(7, {0, 1, 2, 3});
  const auto y = Subset::from_indices(7, {0});
  const auto z = Subset::from_indices(7, {5, 6});
  const auto r = robust_filter(f7, x, y, z, 1.0 / 7, 4.0 / 7, 2);
  CHECK(r.eta == doctest::Approx(0.5));
  CHECK(r.thick_difference.empty());
  CHECK(r.x_prime.empty());
}

TEST_CASE("decompose errors") {
  const auto f7 = make_group({7});
  CHECK_THROWS_AS(decompose(f7, f7.full_set(), f7.full_set(), 0.3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(decompose(f7, f7.empty_set(), f7.full_set(), 0.3, 0.5), std::invalid_argument);
  const auto a = interval(7, 0, 1);
  CHECK_THROWS_AS(decompose_thick(f7, a, a, Subset::from_indices(7, {1}), 0.0, 0.3, 0.5), std::invalid_argument);
}

TEST_CASE("decompose on an interval pair in F_11") {
  const auto g = make_group({11});
  const auto a = interval(11, 0, 2);
  const auto d = decompose(g, a, a, 0.3, 0.5);
  CHECK(d.y.empty());
  CHECK(d.y_bound < 1);
  CHECK(d.c == interval(11, 5, 10));
  CHECK(d.c.is_subset_of(d.w));
  const auto counts = convolution(g, a, a).counts;
  d.w.for_each([&](std::uint32_t w) { CHECK(counts[w] < 3.3); });
  CHECK(d.all_ok());
}

TEST_CASE("decompose_thick agrees with decompose at eta 0") {
  const auto g = make_group({31});
  const auto a = interval(31, 0, 9);
  const auto b = interval(31, 3, 11);
  const auto c = sumset(g, a, b).complement();
  const auto d1 = decompose(g, a, b, 0.25, 0.5);
  const auto d2 = decompose_thick(g, a, b, c, 0.0, 0.25, 0.5);
  CHECK(d1.w == d2.w);
  CHECK(d1.y == d2.y);
  CHECK(d1.c == d2.c);
}

TEST_CASE("decompose_thick on intervals in F_31") {
  const auto g = make_group({31});
  const auto a = interval(31, 0, 9);
  const double eta = 1.0 / 31;
  const auto c = thick_sumset(g, a, a, eta).complement();
  const auto d = decompose_thick(g, a, a, c, eta, 0.25, 0.5);
  CHECK(d.container_ok);
  CHECK(d.exceptional_ok);
  CHECK(d.avoidance_ok);
  CHECK(d.size_ok);
  CHECK(d.energy_ok);
  CHECK(d.all_ok());
}

TEST_CASE("decomposition invariants on sampled pairs") {
  for (std::uint32_t p : {31u, 61u, 101u}) {
    const auto g = make_group({p});
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const auto [a, b] = sample_avoiding_pair(p, 0.2 + 0.015 * seed, 0.3, seed);
      const auto d = decompose(g, a, b, 0.1 + 0.1 * (seed % 3), 0.3 + 0.2 * (seed % 3));
      CHECK(d.all_ok());
      CHECK((d.c - d.y).is_subset_of(d.w));
      CHECK(avoids(d.w, thick_sumset(g, a, b, std::min(1.0, d.params.delta))));
      CHECK(d.w.is_subset_of(d.w_core));
      CHECK(d.w_core.is_subset_of(d.w_raw));
    }
  }
}

TEST_CASE("sample_avoiding_pair") {
  const auto [a, b] = sample_avoiding_pair(101, 0.3, 0.25, 7);
  CHECK(a.size() == 30);
  CHECK(b.size() == 25);
  CHECK(sumset(make_group({101}), a, b).size() < 101);
  const auto again = sample_avoiding_pair(101, 0.3, 0.25, 7);
  CHECK(again.a == a);
  CHECK(again.b == b);
  CHECK_THROWS_AS(sample_avoiding_pair(100, 0.3, 0.3, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_avoiding_pair(101, 0.0, 0.3, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_avoiding_pair(31, 0.9, 0.9, 1), std::invalid_argument);
}

TEST_CASE("decomposition json uses decimal strings for sizes") {
  const auto g = make_group({31});
  const auto a = interval(31, 0, 9);
  const auto text = to_json(decompose(g, a, a, 0.25, 0.5));
  CHECK(text.find("\"C\": \"") != std::string::npos);
  CHECK(text.find("\"ok\": true") != std::string::npos);
}
