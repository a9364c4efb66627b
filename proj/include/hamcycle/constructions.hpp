#pragma once

#include <cstdint>

#include "hamcycle/hypergraph.hpp"

namespace hamcycle {

Hypergraph complete_hypergraph(int n, int k);

// Each k-subset, visited in lexicographic order, is kept with probability p.
Hypergraph random_hypergraph(int n, int k, double p, std::uint64_t seed);

// All k-sets meeting part_A in an even number of vertices, where part_A is
// {0, ..., a-1} and a is the smallest odd integer >= n/2 - 1.
struct ParityConstruction {
  Hypergraph h;
  VertexList part_a;
};

int parity_part_size(int n);
ParityConstruction parity_hypergraph(int n, int k);

// True iff h is exactly parity_hypergraph(h.n(), h.k()).h.
bool is_parity_hypergraph(const Hypergraph& h);

struct ParityCertificate {
  int r = 0;
  int part_a_size = 0;
  bool part_a_odd = false;
  bool all_edges_even = false;
  // Any r-factor gives sum_f |A n f| = r|A|; the left side is even, the
  // right side odd.
  bool contradiction = false;
  bool no_r_factor = false;
  bool exhaustive_checked = false;
  std::uint64_t perfect_matchings_found = 0;
};

constexpr int kExhaustiveMatchingMaxN = 12;

// Counts perfect matchings of h by exact cover; stops after `limit` hits.
std::uint64_t count_hypergraph_perfect_matchings(const Hypergraph& h,
                                                 std::uint64_t limit = UINT64_MAX);

// Certifies that the construction has no r-factor for odd r. With r = 1 and
// n <= 12 the claim is also cross-checked by exhaustive search.
ParityCertificate verify_no_odd_factor(const ParityConstruction& c, int r);

}  // namespace hamcycle
