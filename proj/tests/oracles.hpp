// Slow, obviously-correct reference implementations used only by tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "hamcycle/bipartite.hpp"
#include "hamcycle/hypergraph.hpp"
#include "hamcycle/rng.hpp"

namespace oracle {

using hamcycle::BipartiteGraph;
using hamcycle::Hypergraph;
using hamcycle::VertexList;

inline bool has_subset(const VertexList& edge, const VertexList& a) {
  return std::includes(edge.begin(), edge.end(), a.begin(), a.end());
}

// Min and max d-degree by testing every d-subset against every edge.
inline std::pair<std::uint64_t, std::uint64_t> degree_range(const Hypergraph& h, int d) {
  std::uint64_t lo = UINT64_MAX, hi = 0;
  const int n = h.n();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != d) continue;
    VertexList a;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) a.push_back(v);
    std::uint64_t deg = 0;
    for (const auto& e : h.edges()) deg += has_subset(e, a);
    lo = std::min(lo, deg);
    hi = std::max(hi, deg);
  }
  return {lo, hi};
}

// r|X| <= e(X,Y) + r(m - |Y|) over every pair of subsets.
inline bool gale_ryser_pairs(const BipartiteGraph& g, int r) {
  const int m = g.m();
  for (std::uint32_t x = 0; x < (1u << m); ++x) {
    for (std::uint32_t y = 0; y < (1u << m); ++y) {
      long exy = 0;
      for (const auto& [s, t] : g.edges()) exy += (x >> s & 1) && (y >> t & 1);
      if (long(r) * __builtin_popcount(x) > exy + long(r) * (m - __builtin_popcount(y))) return false;
    }
  }
  return true;
}

// Permanent by summing over all m! permutations.
inline std::uint64_t permanent(const BipartiteGraph& g) {
  std::vector<int> perm(g.m());
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int s = 0; s < g.m() && ok; ++s) ok = g.has_edge(s, perm[s]);
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Number of vertex orderings all of whose (k,ell)-segments are edges.
inline std::uint64_t valid_orderings(const Hypergraph& h, int ell) {
  const int n = h.n(), k = h.k(), step = k - ell;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; i < n / step && ok; ++i) {
      VertexList seg;
      for (int j = 0; j < k; ++j) seg.push_back(perm[(i * step + j) % n]);
      std::sort(seg.begin(), seg.end());
      ok = h.contains(seg);
    }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Perfect matchings of a hypergraph: every subset of edges of size n/k
// that covers each vertex once.
inline std::uint64_t hypergraph_perfect_matchings(const Hypergraph& h) {
  const auto& edges = h.edges();
  const int need = h.n() / h.k();
  std::uint64_t count = 0;
  std::vector<std::uint32_t> masks;
  for (const auto& e : edges) {
    std::uint32_t m = 0;
    for (int v : e) m |= 1u << v;
    masks.push_back(m);
  }
  const std::uint32_t full = (1u << h.n()) - 1;
  auto rec = [&](auto&& self, std::size_t from, std::uint32_t used, int taken) -> void {
    if (taken == need) {
      count += used == full;
      return;
    }
    for (std::size_t i = from; i < masks.size(); ++i)
      if (!(masks[i] & used)) self(self, i + 1, used | masks[i], taken + 1);
  };
  rec(rec, 0, 0, 0);
  return count;
}

inline BipartiteGraph random_bipartite(int m, double p, std::uint64_t seed) {
  hamcycle::Rng rng(seed);
  std::vector<hamcycle::BiEdge> edges;
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t)
      if (rng.bernoulli(p)) edges.emplace_back(s, t);
  return BipartiteGraph(m, edges);
}

// Random bipartite graph with minimum degree at least ceil(ratio * m).
inline BipartiteGraph dense_bipartite(int m, double p, double ratio, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    BipartiteGraph g = random_bipartite(m, p, hamcycle::derive_seed(seed, "dense", attempt));
    if (g.min_degree() >= ratio * m) return g;
  }
}

// r-regular bipartite graph t = tau((sigma(s) + j) mod m), j < r.
inline std::vector<hamcycle::BiEdge> random_regular(int m, int r, std::uint64_t seed) {
  hamcycle::Rng rng(seed);
  std::vector<int> sigma(m), tau(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::iota(tau.begin(), tau.end(), 0);
  rng.shuffle(sigma);
  rng.shuffle(tau);
  std::vector<hamcycle::BiEdge> edges;
  for (int s = 0; s < m; ++s)
    for (int j = 0; j < r; ++j) edges.emplace_back(s, tau[(sigma[s] + j) % m]);
  std::sort(edges.begin(), edges.end());
  return edges;
}

inline double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace oracle
