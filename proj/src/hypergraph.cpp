#include "addcomb/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace addcomb {

Hypergraph make_hypergraph(std::uint32_t n_vertices, std::vector<std::vector<std::uint32_t>> edges,
                           std::vector<std::uint8_t> parts) {
  for (auto& e : edges) {
    std::sort(e.begin(), e.end());
    if (e.size() < 2) throw std::invalid_argument("hypergraph: edges need at least two vertices");
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw std::invalid_argument("hypergraph: repeated vertex inside an edge");
    }
    if (e.back() >= n_vertices) throw std::invalid_argument("hypergraph: edge vertex out of range");
  }
  std::set<std::vector<std::uint32_t>> seen(edges.begin(), edges.end());
  if (seen.size() != edges.size()) throw std::invalid_argument("hypergraph: duplicate edge");
  if (!parts.empty()) {
    if (parts.size() != n_vertices) throw std::invalid_argument("hypergraph: parts must label every vertex");
    for (auto c : parts) {
      if (c > 2) throw std::invalid_argument("hypergraph: part labels must be 0, 1 or 2");
    }
  }
  Hypergraph h;
  h.n_vertices = n_vertices;
  h.edges = std::move(edges);
  h.parts = std::move(parts);
  return h;
}

Hypergraph build_mod_hypergraph(std::uint32_t d) {
  if (d < 1) throw std::invalid_argument("build_mod_hypergraph: d must be >= 1");
  std::vector<std::vector<std::uint32_t>> edges;
  edges.reserve(std::size_t{d} * d);
  for (std::uint32_t x = 0; x < d; ++x) {
    for (std::uint32_t y = 0; y < d; ++y) edges.push_back({x, d + y, 2 * d + (x + y) % d});
  }
  std::vector<std::uint8_t> parts(3 * std::size_t{d});
  for (std::uint32_t v = 0; v < 3 * d; ++v) parts[v] = static_cast<std::uint8_t>(v / d);
  Hypergraph h = make_hypergraph(3 * d, std::move(edges), std::move(parts));
  h.mod_order = d;
  return h;
}

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
  auto edges = a.edges;
  for (const auto& e : b.edges) {
    auto& moved = edges.emplace_back(e);
    for (auto& v : moved) v += a.n_vertices;
  }
  std::vector<std::uint8_t> parts;
  if (!a.parts.empty() && !b.parts.empty()) {
    parts = a.parts;
    parts.insert(parts.end(), b.parts.begin(), b.parts.end());
  }
  return make_hypergraph(a.n_vertices + b.n_vertices, std::move(edges), std::move(parts));
}

namespace {

// Backtracking search for a labelling with one vertex of each class per edge.
bool find_three_coloring(const Hypergraph& h) {
  std::vector<std::vector<std::uint32_t>> incident(h.n_vertices);
  for (std::uint32_t i = 0; i < h.edges.size(); ++i) {
    for (auto v : h.edges[i]) incident[v].push_back(i);
  }
  std::vector<int> color(h.n_vertices, -1);
  auto consistent = [&](std::uint32_t v) {
    for (auto e : incident[v]) {
      for (auto w : h.edges[e]) {
        if (w != v && color[w] == color[v]) return false;
      }
    }
    return true;
  };
  std::function<bool(std::uint32_t)> assign = [&](std::uint32_t v) -> bool {
    if (v == h.n_vertices) return true;
    // Isolated vertices need no branching.
    const int limit = incident[v].empty() ? 1 : 3;
    for (int c = 0; c < limit; ++c) {
      color[v] = c;
      if (consistent(v) && assign(v + 1)) return true;
    }
    color[v] = -1;
    return false;
  };
  return assign(0);
}

}  // namespace

HypergraphShape validate(const Hypergraph& h) {
  HypergraphShape s;
  // Two distinct edges sharing two vertices share a vertex pair.
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& e : h.edges) {
    for (std::size_t i = 0; i < e.size() && s.linear; ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        if (!pairs.emplace(e[i], e[j]).second) {
          s.linear = false;
          break;
        }
      }
    }
    if (!s.linear) break;
  }
  if (!h.edges.empty()) {
    const auto k = h.edges.front().size();
    if (std::all_of(h.edges.begin(), h.edges.end(), [&](const auto& e) { return e.size() == k; })) {
      s.uniform_k = static_cast<std::uint32_t>(k);
    }
  }
  std::vector<std::uint32_t> degree(h.n_vertices, 0);
  for (const auto& e : h.edges) {
    for (auto v : e) ++degree[v];
  }
  if (h.n_vertices > 0 && std::adjacent_find(degree.begin(), degree.end(), std::not_equal_to<>()) == degree.end()) {
    s.regular_d = degree.front();
  }
  if (s.uniform_k == 3u) {
    if (!h.parts.empty()) {
      s.tripartite = std::all_of(h.edges.begin(), h.edges.end(), [&](const auto& e) {
        return h.parts[e[0]] != h.parts[e[1]] && h.parts[e[0]] != h.parts[e[2]] && h.parts[e[1]] != h.parts[e[2]];
      });
    } else {
      s.tripartite = find_three_coloring(h);
    }
  }
  return s;
}

namespace {

class IndependentCounter {
 public:
  explicit IndependentCounter(const Hypergraph& h) : n_(h.n_vertices) {
    std::vector<std::uint32_t> degree(n_, 0);
    for (const auto& e : h.edges) {
      for (auto v : e) ++degree[v];
    }
    std::vector<std::uint32_t> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return degree[x] > degree[y]; });
    std::vector<std::uint32_t> position(n_);
    for (std::uint32_t i = 0; i < n_; ++i) position[order[i]] = i;

    containing_.resize(n_);
    closing_.resize(n_);
    for (std::uint32_t i = 0; i < h.edges.size(); ++i) {
      std::uint32_t last = 0;
      for (auto v : h.edges[i]) {
        const auto p = position[v];
        containing_[p].push_back(i);
        last = std::max(last, p);
      }
      closing_[last].push_back(i);
    }
    excluded_.assign(h.edges.size(), 0);
    live_ = h.edges.size();
  }

  std::uint64_t run() { return visit(0); }

 private:
  // An edge is live while none of its vertices has been excluded. Every live
  // edge closing at an earlier position would be fully chosen, so none exists.
  std::uint64_t visit(std::uint32_t i) {
    if (live_ == 0) return std::uint64_t{1} << (n_ - i);
    if (i == n_) return 1;
    std::uint64_t total = 0;
    bool can_take = true;
    for (auto e : closing_[i]) {
      if (excluded_[e] == 0) {
        can_take = false;
        break;
      }
    }
    if (can_take) total += visit(i + 1);
    for (auto e : containing_[i]) live_ -= excluded_[e]++ == 0;
    total += visit(i + 1);
    for (auto e : containing_[i]) live_ += --excluded_[e] == 0;
    return total;
  }

  std::uint32_t n_;
  std::vector<std::vector<std::uint32_t>> containing_;
  std::vector<std::vector<std::uint32_t>> closing_;
  std::vector<std::uint32_t> excluded_;
  std::size_t live_ = 0;
};

bool is_mod_shaped(const Hypergraph& h) {
  if (!h.mod_order) return false;
  const Hypergraph reference = build_mod_hypergraph(*h.mod_order);
  return reference.n_vertices == h.n_vertices && reference.edges == h.edges;
}

}  // namespace

BigInt count_independent_generic(const Hypergraph& h) {
  if (h.n_vertices > kGenericCountGuard) throw GuardExceeded("count_independent: generic path needs n <= 26");
  IndependentCounter counter(h);
  return BigInt(counter.run());
}

BigInt count_independent(const Hypergraph& h, const CensusOptions& opts) {
  if (h.n_vertices <= kGenericCountGuard) return count_independent_generic(h);
  if (is_mod_shaped(h) && *h.mod_order <= kSymmetricGuard) {
    return count_symmetric(make_group({*h.mod_order}), opts).count;
  }
  throw GuardExceeded("count_independent: hypergraph too large for exact counting");
}

double log2_big(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("log2_big: value must be positive");
  const auto top = boost::multiprecision::msb(v);
  if (top < 53) return std::log2(v.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(top) - 52;
  const BigInt head = v >> shift;
  return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

ConjectureGap conjecture_gap(std::uint32_t k, std::uint32_t d, std::uint32_t n, const BigInt& independent_sets) {
  if (k < 2 || d < 1 || n < 1) throw std::invalid_argument("conjecture_gap: need k >= 2, d >= 1, n >= 1");
  ConjectureGap gap;
  const double kk = k;
  gap.lhs = log2_big(independent_sets) / n;
  gap.rhs = (kk - 1.0) / kk + std::log2(kk) / (kk * d);
  gap.margin = gap.rhs - gap.lhs;
  return gap;
}

ConjectureGap conjecture_gap(const Hypergraph& h, const BigInt& independent_sets) {
  const HypergraphShape s = validate(h);
  if (!s.linear || !s.uniform_k || !s.regular_d || *s.regular_d == 0) {
    throw std::invalid_argument("conjecture_gap: hypergraph must be linear, uniform and regular");
  }
  return conjecture_gap(*s.uniform_k, *s.regular_d, h.n_vertices, independent_sets);
}

BigInt mod_lower_bound(std::uint32_t d) {
  if (d < 1) throw std::invalid_argument("mod_lower_bound: d must be >= 1");
  return lower_bound_count(d);
}

std::string to_json(const Hypergraph& h) {
  nlohmann::json j;
  j["n"] = h.n_vertices;
  j["edges"] = h.edges;
  if (!h.parts.empty()) j["parts"] = h.parts;
  return j.dump();
}

Hypergraph hypergraph_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  auto parts = j.contains("parts") ? j.at("parts").get<std::vector<std::uint8_t>>() : std::vector<std::uint8_t>{};
  return make_hypergraph(j.at("n").get<std::uint32_t>(), j.at("edges").get<std::vector<std::vector<std::uint32_t>>>(),
                         std::move(parts));
}

}  // namespace addcomb
