#include "hamcycle/census.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hamcycle/errors.hpp"
#include "hamcycle/parallel.hpp"

namespace hamcycle {

namespace {

double log_factorial(int x) { return std::lgamma(static_cast<double>(x) + 1.0); }

// ln(ell! (k-2ell)!), the per-edge ordering divisor.
double log_block_orders(int k, int ell) { return log_factorial(ell) + log_factorial(k - 2 * ell); }

double log_bigint(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  return std::log(v.convert_to<double>());
}

}  // namespace

std::set<HamiltonCycle> enumerate_cycles(const Hypergraph& h, int ell, unsigned threads) {
  const int n = h.n();
  const int k = h.k();
  cycle_length(n, k, ell);
  if (n > kEnumerateMaxN) {
    throw SizeLimit("brute-force enumeration is limited to n <= " +
                    std::to_string(kEnumerateMaxN) + " (got n=" + std::to_string(n) +
                    "); sample via the partition reduction instead");
  }

  std::vector<std::set<HamiltonCycle>> partial(n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t first) {
    VertexList rest;
    for (int v = 0; v < n; ++v) {
      if (v != static_cast<int>(first)) rest.push_back(v);
    }
    HamiltonCycle c{k, ell, {}};
    c.arrangement.resize(n);
    c.arrangement[0] = static_cast<Vertex>(first);
    const int step = k - ell;
    const int m = n / step;
    VertexList seg(k);
    do {
      std::copy(rest.begin(), rest.end(), c.arrangement.begin() + 1);
      bool all_edges = true;
      for (int i = 0; i < m && all_edges; ++i) {
        for (int j = 0; j < k; ++j) seg[j] = c.arrangement[(i * step + j) % n];
        std::sort(seg.begin(), seg.end());
        all_edges = h.contains(seg);
      }
      if (all_edges) partial[first].insert(canonicalize(c));
    } while (std::next_permutation(rest.begin(), rest.end()));
  });

  std::set<HamiltonCycle> out;
  for (auto& p : partial) out.merge(p);
  return out;
}

double theorem1_bound(int n, int k, int ell, double alpha) {
  const int m = cycle_length(n, k, ell);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (alpha == 0.0) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) + m * (std::log(alpha) - log_block_orders(k, ell));
}

double expected_count(int n, int k, int ell, double p) {
  const int m = cycle_length(n, k, ell);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  return log_factorial(n - 1) + std::log((k - ell) / 2.0) +
         m * (std::log(p) - log_block_orders(k, ell));
}

CountReport empirical_vs_bound(const Hypergraph& h, int ell, double slack_per_vertex,
                               unsigned threads) {
  CountReport r;
  r.n = h.n();
  r.k = h.k();
  r.ell = ell;
  r.slack_per_vertex = slack_per_vertex;

  const auto cycles = enumerate_cycles(h, ell, threads);
  r.exact_count = cycles.size();
  std::set<std::vector<VertexList>> edge_sets;
  for (const auto& c : cycles) {
    auto edges = c.edge_list();
    std::sort(edges.begin(), edges.end());
    edge_sets.insert(std::move(edges));
  }
  r.edge_set_count = edge_sets.size();

  const std::uint64_t min_degree = h.k() >= 2 ? degree_report(h, h.k() - 1).min_degree : h.edge_count();
  r.alpha = static_cast<double>(min_degree) / h.n();
  r.hypothesis_met = r.alpha > 0.5;
  r.log_lower_bound = theorem1_bound(h.n(), h.k(), ell, std::min(r.alpha, 1.0));
  r.log_expected = expected_count(h.n(), h.k(), ell, std::min(r.alpha, 1.0));
  r.bound_satisfied = log_bigint(r.exact_count) >= r.log_lower_bound - slack_per_vertex * h.n();
  return r;
}

SchemeMatchingSum scheme_matching_sum(const Hypergraph& h, int ell) {
  SchemeMatchingSum sum;
  const int m = cycle_length(h.n(), h.k(), ell);
  sum.divisor = 2 * m;
  for_each_scheme(h.n(), h.k(), ell, [&](const PartitionScheme& s) {
    sum.total += count_perfect_matchings(build_aux_graph(h, s).graph);
    ++sum.schemes;
  });
  return sum;
}

nlohmann::json bigint_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) {
    return v.convert_to<std::uint64_t>();
  }
  return v.str();
}

nlohmann::json to_json(const CountReport& r) {
  auto finite_or_null = [](double x) -> nlohmann::json {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
  };
  return nlohmann::json{{"n", r.n},
                        {"k", r.k},
                        {"ell", r.ell},
                        {"exact_count", bigint_to_json(r.exact_count)},
                        {"edge_set_count", bigint_to_json(r.edge_set_count)},
                        {"alpha", r.alpha},
                        {"log_lower_bound", finite_or_null(r.log_lower_bound)},
                        {"log_expected", finite_or_null(r.log_expected)},
                        {"slack_per_vertex", r.slack_per_vertex},
                        {"hypothesis_met", r.hypothesis_met},
                        {"bound_satisfied", r.bound_satisfied},
                        {"bound_flag", r.hypothesis_met ? "hypothesis met" : "hypothesis unmet"}};
}

}  // namespace hamcycle
