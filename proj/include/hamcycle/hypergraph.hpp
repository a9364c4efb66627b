#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

namespace hamcycle {

using Vertex = int;
// Sorted, duplicate-free list of vertices. Used both for edges and for
// arbitrary vertex subsets.
using VertexList = std::vector<Vertex>;

struct VertexListHash {
  std::size_t operator()(const VertexList& v) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL ^ v.size();
    for (Vertex x : v) {
      h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t binomial(int n, int r);

// Advances `comb` (sorted r-subset of 0..n-1) to the next subset in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<int>& comb, int n);

// Calls fn(subset) for every r-subset of `pool` in lexicographic order of
// positions; pool is expected sorted so subsets come out sorted.
void for_each_subset(std::span<const Vertex> pool, int r,
                     const std::function<void(const VertexList&)>& fn);

// k-uniform hypergraph on vertices 0..n-1. Immutable once built: edges are
// canonical (sorted) and stored in lexicographic order.
class Hypergraph {
 public:
  Hypergraph(int n, int k);
  // Validates every edge. Edges may be given in any vertex order.
  Hypergraph(int n, int k, std::vector<VertexList> edges);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<VertexList>& edges() const { return edges_; }

  // `edge` must be sorted.
  bool contains(const VertexList& edge) const { return index_.count(edge) != 0; }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  int k_;
  std::vector<VertexList> edges_;
  std::unordered_set<VertexList, VertexListHash> index_;
};

struct DegreeReport {
  int d = 0;
  std::uint64_t min_degree = 0;
  std::uint64_t max_degree = 0;
  VertexList witness_min;
  VertexList witness_max;
};

// Number of edges containing A.
std::uint64_t degree_of(const Hypergraph& h, const VertexList& a);

// Exact delta_d / Delta_d over all d-subsets, 1 <= d <= k-1. Witnesses are the
// lexicographically first subsets attaining the extremes.
DegreeReport degree_report(const Hypergraph& h, int d);

// |{Z subset of Y : X u Z in E(H)}| for disjoint X, Y and |X| < k.
std::uint64_t relative_degree(const Hypergraph& h, const VertexList& x, const VertexList& y);

nlohmann::json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);
Hypergraph read_hypergraph(const std::filesystem::path& path);
void write_hypergraph(const Hypergraph& h, const std::filesystem::path& path);

// Sorts and validates an arbitrary vertex subset against 0..n-1.
VertexList normalize_subset(VertexList v, int n);

}  // namespace hamcycle
