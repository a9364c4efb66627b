#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "hamcycle/bipartite.hpp"
#include "hamcycle/hypergraph.hpp"
#include "hamcycle/reduction.hpp"

namespace hamcycle {

constexpr int kEnumerateMaxN = 10;

// All Hamilton ell-cycles of h in canonical form, by brute force over the n!
// arrangements. `threads` splits the work on the first arrangement position.
std::set<HamiltonCycle> enumerate_cycles(const Hypergraph& h, int ell, unsigned threads = 1);

// ln( n! * (alpha / (ell! (k-2ell)!))^(n/(k-ell)) ); the (1-o(1))^n factor is
// left to the caller.
double theorem1_bound(int n, int k, int ell, double alpha);

// ln( (n-1)! * (k-ell)/2 * (p / (ell! (k-2ell)!))^(n/(k-ell)) ), the expected
// number of Hamilton ell-cycles in a random hypergraph with edge probability p.
// Returns -infinity for p = 0.
double expected_count(int n, int k, int ell, double p);

struct CountReport {
  int n = 0;
  int k = 0;
  int ell = 0;
  BigInt exact_count;     // canonical cyclic arrangements
  BigInt edge_set_count;  // distinct edge sets
  double alpha = 0;       // delta_{k-1}(H) / n
  double log_lower_bound = 0;
  double log_expected = 0;
  double slack_per_vertex = 0.1;
  bool hypothesis_met = false;  // alpha > 1/2
  // ln(exact_count) >= log_lower_bound - slack_per_vertex * n
  bool bound_satisfied = false;
};

CountReport empirical_vs_bound(const Hypergraph& h, int ell, double slack_per_vertex = 0.1,
                               unsigned threads = 1);

// Sum of perfect-matching counts of the auxiliary graphs over every partition
// scheme, together with the 2m divisor that relates it to the cycle count.
struct SchemeMatchingSum {
  BigInt total;
  std::uint64_t schemes = 0;
  int divisor = 0;  // 2m
};

SchemeMatchingSum scheme_matching_sum(const Hypergraph& h, int ell);

nlohmann::json to_json(const CountReport& r);
nlohmann::json bigint_to_json(const BigInt& v);

}  // namespace hamcycle
