#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "addcomb/hypergraph.hpp"
#include "oracles.hpp"

using namespace addcomb;

namespace {

Hypergraph random_hypergraph(std::mt19937_64& rng, std::uint32_t n, std::size_t m) {
  std::set<std::vector<std::uint32_t>> edges;
  while (edges.size() < m) {
    std::set<std::uint32_t> e;
    const std::size_t k = 2 + rng() % 3;
    while (e.size() < k) e.insert(static_cast<std::uint32_t>(rng() % n));
    edges.insert({e.begin(), e.end()});
  }
  return make_hypergraph(n, {edges.begin(), edges.end()});
}

}  // namespace

TEST_CASE("mod hypergraph construction") {
  auto h = build_mod_hypergraph(1);
  CHECK(h.n_vertices == 3);
  CHECK(h.edges.size() == 1);

  h = build_mod_hypergraph(2);
  CHECK(h.n_vertices == 6);
  const std::set<std::vector<std::uint32_t>> expected{{0, 2, 4}, {0, 3, 5}, {1, 2, 5}, {1, 3, 4}};
  CHECK(std::set<std::vector<std::uint32_t>>(h.edges.begin(), h.edges.end()) == expected);

  h = build_mod_hypergraph(3);
  CHECK(h.n_vertices == 9);
  CHECK(h.edges.size() == 9);
  std::vector<int> degree(9, 0);
  for (const auto& e : h.edges) {
    for (auto v : e) ++degree[v];
  }
  for (int d : degree) CHECK(d == 3);
  CHECK_THROWS_AS(build_mod_hypergraph(0), std::invalid_argument);
}

TEST_CASE("validate") {
  for (std::uint32_t d = 1; d <= 12; ++d) {
    const auto s = validate(build_mod_hypergraph(d));
    CHECK(s.linear);
    CHECK(s.uniform_k == 3u);
    CHECK(s.regular_d == d);
    CHECK(s.tripartite);
  }
  auto s = validate(make_hypergraph(5, {{1, 2, 3}, {1, 2, 4}}));
  CHECK_FALSE(s.linear);
  s = validate(make_hypergraph(4, {}));
  CHECK(s.linear);
  CHECK_FALSE(s.uniform_k.has_value());
  // Without labels the search has to find the three parts itself.
  auto unlabeled = build_mod_hypergraph(4);
  unlabeled.parts.clear();
  CHECK(validate(unlabeled).tripartite);
  // Each part of the Fano plane would need 7/3 points.
  const auto fano = make_hypergraph(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
  s = validate(fano);
  CHECK(s.linear);
  CHECK(s.regular_d == 3u);
  CHECK_FALSE(s.tripartite);
}

TEST_CASE("make_hypergraph rejects malformed input") {
  CHECK_THROWS_AS(make_hypergraph(3, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hypergraph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hypergraph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hypergraph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_hypergraph(3, {{0, 1}}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(make_hypergraph(3, {{0, 1}}, {0, 1, 3}), std::invalid_argument);
}

TEST_CASE("independent set counts") {
  CHECK(count_independent(build_mod_hypergraph(1)) == 7);
  CHECK(count_independent(build_mod_hypergraph(2)) == 41);
  for (std::uint32_t n : {0u, 1u, 10u, 26u}) CHECK(count_independent(make_hypergraph(n, {})) == BigInt(1) << n);
}

TEST_CASE("generic counter matches subset enumeration") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t n = 4 + rng() % 15;
    const auto h = random_hypergraph(rng, n, 1 + rng() % (2 * n));
    CHECK(count_independent_generic(h) == oracle::count_independent(n, h.edges));
  }
  for (std::uint32_t d = 1; d <= 6; ++d) {
    const auto h = build_mod_hypergraph(d);
    CHECK(count_independent_generic(h) == oracle::count_independent(h.n_vertices, h.edges));
  }
}

TEST_CASE("mod hypergraph counts equal cyclic censuses") {
  for (std::uint32_t d = 1; d <= 8; ++d) {
    const auto h = build_mod_hypergraph(d);
    CHECK(count_independent_generic(h) == run_census(parse_group(std::to_string(d)), CensusMethod::reduced).count);
  }
  // Past the generic guard the count goes through the census.
  CHECK(count_independent(build_mod_hypergraph(12)) == 80761898);
  CHECK_THROWS_AS(count_independent_generic(build_mod_hypergraph(9)), GuardExceeded);
}

TEST_CASE("independent sets multiply over disjoint unions") {
  const auto a = build_mod_hypergraph(2);
  const auto b = make_hypergraph(5, {{0, 1, 2}, {2, 3}, {3, 4, 0}});
  const auto u = disjoint_union(a, b);
  CHECK(u.n_vertices == 11);
  CHECK(u.edges.size() == 7);
  CHECK(count_independent(u) == count_independent(a) * count_independent(b));
}

TEST_CASE("lower bound") {
  CHECK(mod_lower_bound(1) == 7);
  CHECK(mod_lower_bound(2) == 37);
  CHECK(mod_lower_bound(10) == 3142657);
  for (std::uint32_t d = 1; d <= 8; ++d) CHECK(count_independent(build_mod_hypergraph(d)) >= mod_lower_bound(d));
  CHECK_THROWS_AS(mod_lower_bound(0), std::invalid_argument);
}

TEST_CASE("conjecture gap") {
  for (std::uint32_t d : {1u, 2u, 5u, 40u}) {
    const BigInt i = 3 * pow_big(4, d);
    const auto g = conjecture_gap(3, d, 3 * d, i);
    CHECK(g.lhs == doctest::Approx(2.0 / 3 + std::log2(3.0) / (3 * d)).epsilon(1e-12));
    CHECK(g.margin == doctest::Approx(0.0).epsilon(1e-12));
  }
  auto g = conjecture_gap(build_mod_hypergraph(2), 41);
  CHECK(g.lhs == doctest::Approx(std::log2(41.0) / 6));
  CHECK(g.rhs == doctest::Approx(2.0 / 3 + std::log2(3.0) / 6));
  CHECK(g.margin == doctest::Approx(0.0378).epsilon(1e-2));
  g = conjecture_gap(build_mod_hypergraph(1), 7);
  CHECK(g.lhs == doctest::Approx(std::log2(7.0) / 3));
  CHECK(g.rhs == doctest::Approx(2.0 / 3 + std::log2(3.0) / 3));
  CHECK(g.margin > 0);
  CHECK_THROWS_AS(conjecture_gap(make_hypergraph(5, {{1, 2, 3}, {1, 2, 4}}), 3), std::invalid_argument);
}

TEST_CASE("json round trip") {
  const auto h = build_mod_hypergraph(3);
  const auto back = hypergraph_from_json(to_json(h));
  CHECK(back.n_vertices == h.n_vertices);
  CHECK(back.edges == h.edges);
  const auto plain = hypergraph_from_json(R"({"n": 4, "edges": [[0, 1, 2], [3, 1]]})");
  CHECK(plain.edges.size() == 2);
  CHECK(plain.edges[1] == std::vector<std::uint32_t>{1, 3});
  CHECK_THROWS(hypergraph_from_json(R"({"n": 2, "edges": [[0, 5]]})"));
  CHECK_THROWS(hypergraph_from_json("not json"));
}

TEST_CASE("log2 of big integers") {
  CHECK(log2_big(BigInt(1) << 300) == doctest::Approx(300.0));
  CHECK(log2_big(BigInt(41)) == doctest::Approx(std::log2(41.0)));
  CHECK_THROWS_AS(log2_big(BigInt(0)), std::invalid_argument);
}
