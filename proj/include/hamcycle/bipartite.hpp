#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace hamcycle {

using BigInt = boost::multiprecision::cpp_int;

// (s, t) with s indexing side S and t indexing side T.
using BiEdge = std::pair<int, int>;

// Perfect matching as a permutation: t = match[s].
using Matching = std::vector<int>;

// Balanced bipartite graph with parts S = {0..m-1} and T = {0..m-1}.
class BipartiteGraph {
 public:
  explicit BipartiteGraph(int m = 0);
  BipartiteGraph(int m, std::vector<BiEdge> edges);

  static BipartiteGraph complete(int m);

  int m() const { return m_; }
  std::size_t edge_count() const { return edges_.size(); }
  // Sorted by (s, t).
  const std::vector<BiEdge>& edges() const { return edges_; }

  bool has_edge(int s, int t) const { return adj_[static_cast<std::size_t>(s) * m_ + t] != 0; }
  const std::vector<int>& s_neighbors(int s) const { return s_adj_[s]; }
  const std::vector<int>& t_neighbors(int t) const { return t_adj_[t]; }
  int s_degree(int s) const { return static_cast<int>(s_adj_[s].size()); }
  int t_degree(int t) const { return static_cast<int>(t_adj_[t].size()); }
  int min_degree() const;
  int max_degree() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.m_ == b.m_ && a.edges_ == b.edges_;
  }

 private:
  int m_;
  std::vector<BiEdge> edges_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> s_adj_;
  std::vector<std::vector<int>> t_adj_;
};

nlohmann::json to_json(const BipartiteGraph& g);
BipartiteGraph bipartite_from_json(const nlohmann::json& j);

struct Factor {
  int r = 0;
  std::vector<BiEdge> edges;  // sorted
};

// True iff `f` is an r-factor of `host`: edges exist in host, no repeats,
// every vertex on both sides has degree exactly f.r.
bool is_factor(const Factor& f, const BipartiteGraph& host);

struct GaleRyserWitness {
  bool holds = true;
  std::vector<int> x;  // subset of S, present iff violated
  std::vector<int> y;  // subset of T, present iff violated
};

constexpr int kGaleRyserMaxM = 14;

// Exhaustive r|X| <= e(X,Y) + r(m-|Y|) check over all X subset S, Y subset T.
// For a fixed X the tightest Y is {t : e(X,t) < r}, so every pair is covered
// while only 2^m sets X are visited.
GaleRyserWitness gale_ryser_check(const BipartiteGraph& g, int r);

// Maximum matching by Hopcroft-Karp; match[s] = t or -1.
std::vector<int> maximum_matching(const BipartiteGraph& g);

std::optional<Matching> perfect_matching(const BipartiteGraph& g);

// r-factor via max flow (source -> s cap r, s -> t cap 1, t -> sink cap r).
std::optional<Factor> find_factor(const BipartiteGraph& g, int r);

struct MaxFactor {
  int r = 0;
  Factor factor;
};

// Largest r admitting an r-factor, found by binary search on r in [0, delta(G)].
MaxFactor max_factor(const BipartiteGraph& g);

// (x + sqrt(2x - 1)) / 2 for 1/2 <= x <= 1.
double csaba_rho(double delta);
double f_alpha(double x);

// alpha - 10 sqrt(epsilon), clamped at 0.
double almost_regular_bound(double alpha, double epsilon);

// Splits an r-factor into r edge-disjoint perfect matchings.
std::vector<Matching> peel_matchings(const Factor& f, const BipartiteGraph& host);

constexpr int kPermanentMaxM = 24;

// Exact permanent of the biadjacency matrix (Ryser, Gray-code order).
BigInt count_perfect_matchings(const BipartiteGraph& g);

}  // namespace hamcycle
