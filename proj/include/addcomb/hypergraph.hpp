#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addcomb/census.hpp"
#include "addcomb/common.hpp"

namespace addcomb {

inline constexpr std::uint32_t kGenericCountGuard = 26;

// Edges are stored sorted; parts, when present, assign every vertex a class
// in {0, 1, 2} and are used by validate() instead of searching for one.
struct Hypergraph {
  std::uint32_t n_vertices = 0;
  std::vector<std::vector<std::uint32_t>> edges;
  std::vector<std::uint8_t> parts;
  std::optional<std::uint32_t> mod_order;  // set by build_mod_hypergraph
};

struct HypergraphShape {
  bool linear = true;
  std::optional<std::uint32_t> uniform_k;
  std::optional<std::uint32_t> regular_d;
  bool tripartite = false;
};

struct ConjectureGap {
  double lhs = 0.0;  // log2(i) / n
  double rhs = 0.0;  // (k-1)/k + log2(k)/(k d)
  double margin = 0.0;
};

// Normalizes and checks: every edge inside [0, n), size >= 2, no duplicates.
Hypergraph make_hypergraph(std::uint32_t n_vertices, std::vector<std::vector<std::uint32_t>> edges,
                           std::vector<std::uint8_t> parts = {});

// Vertices x, d + y, 2d + z for the three copies of Z/dZ; edges x + y = z.
Hypergraph build_mod_hypergraph(std::uint32_t d);
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);

HypergraphShape validate(const Hypergraph& h);

// Exact number of independent sets. Up to kGenericCountGuard vertices by
// branch and prune; mod hypergraphs beyond that go to the census.
BigInt count_independent(const Hypergraph& h, const CensusOptions& opts = {});
BigInt count_independent_generic(const Hypergraph& h);

ConjectureGap conjecture_gap(const Hypergraph& h, const BigInt& independent_sets);
ConjectureGap conjecture_gap(std::uint32_t k, std::uint32_t d, std::uint32_t n, const BigInt& independent_sets);

BigInt mod_lower_bound(std::uint32_t d);

std::string to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const std::string& text);

double log2_big(const BigInt& v);

}  // namespace addcomb
