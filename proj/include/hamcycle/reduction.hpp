#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamcycle/bipartite.hpp"
#include "hamcycle/hypergraph.hpp"

namespace hamcycle {

// Number of edges in a Hamilton ell-cycle on n vertices, i.e. n/(k-ell).
// Throws InvalidInput unless 0 <= ell < k/2 and (k-ell) | n.
int cycle_length(int n, int k, int ell);

// Split V = A u B with the junction tuples on A and the blocks on B.
//
// ell >= 1: |A| = ell*m, tuples_a = (F_0, ..., F_{m-1}) is ordered and read
// cyclically (F_m = F_0); blocks_b holds m disjoint (k-2ell)-sets.
// ell == 0: tuples_a is an unordered family of floor(k/2)-sets and blocks_b of
// ceil(k/2)-sets; both have m = n/k members.
struct PartitionScheme {
  int n = 0;
  int k = 0;
  int ell = 0;
  int m = 0;
  VertexList part_a;
  VertexList part_b;
  std::vector<VertexList> tuples_a;  // each sorted
  std::vector<VertexList> blocks_b;  // each sorted

  int tuple_size() const { return ell > 0 ? ell : k / 2; }
  int block_size() const { return ell > 0 ? k - 2 * ell : k - k / 2; }

  friend bool operator==(const PartitionScheme&, const PartitionScheme&) = default;
};

// Uniform random scheme: a random permutation of V whose first |A| entries
// are cut into consecutive tuples and the rest into consecutive blocks.
PartitionScheme sample_scheme(const Hypergraph& h, int ell, std::uint64_t seed);

// Every scheme on n vertices: all choices of A, all ordered tuple sequences
// (unordered for ell = 0), all unordered block families. Only for tiny n.
void for_each_scheme(int n, int k, int ell,
                     const std::function<void(const PartitionScheme&)>& fn);

// The hyperedge named by the auxiliary pair (s, t), sorted.
VertexList scheme_edge(const PartitionScheme& scheme, int s, int t);

struct AuxGraph {
  PartitionScheme scheme;
  BipartiteGraph graph;
};

// s ~ t iff scheme_edge(scheme, s, t) is an edge of h.
AuxGraph build_aux_graph(const Hypergraph& h, const PartitionScheme& scheme);

// A cyclic vertex arrangement read as a (k, ell)-cycle: edge i is the k
// consecutive vertices starting at position i(k-ell), indices mod n.
struct HamiltonCycle {
  int k = 0;
  int ell = 0;
  VertexList arrangement;

  int edge_count() const;
  // Sorted vertex sets of the segments; empty when (k-ell) does not divide n.
  std::vector<VertexList> edge_list() const;

  friend bool operator==(const HamiltonCycle&, const HamiltonCycle&) = default;
  friend auto operator<=>(const HamiltonCycle& a, const HamiltonCycle& b) {
    return a.arrangement <=> b.arrangement;
  }
};

HamiltonCycle lift_matching(const AuxGraph& aux, const Matching& match);
std::vector<VertexList> lift_matching_pm(const AuxGraph& aux, const Matching& match);

struct CycleCheck {
  bool ok = true;
  std::string failure;      // first violated condition
  VertexList offending;     // offending segment, if any
};

CycleCheck verify_cycle(const Hypergraph& h, const HamiltonCycle& c);

// Least representative under rotation by (k-ell), reflection and sorting
// within junction and interior blocks.
HamiltonCycle canonicalize(const HamiltonCycle& c);

nlohmann::json to_json(const HamiltonCycle& c);
HamiltonCycle cycle_from_json(const nlohmann::json& j, int k);

nlohmann::json to_json(const PartitionScheme& s);

}  // namespace hamcycle
