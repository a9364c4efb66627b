#include "hamcycle/constructions.hpp"

#include <algorithm>
#include <string>

#include "hamcycle/errors.hpp"
#include "hamcycle/rng.hpp"

namespace hamcycle {

namespace {

template <typename Keep>
Hypergraph filtered_complete(int n, int k, Keep&& keep) {
  if (k < 1 || k > n) {
    throw InvalidInput("need 1 <= k <= n (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                       ")");
  }
  std::vector<VertexList> edges;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  do {
    if (keep(comb)) edges.push_back(comb);
  } while (next_combination(comb, n));
  return Hypergraph(n, k, std::move(edges));
}

int count_below(const VertexList& e, int bound) {
  return static_cast<int>(std::lower_bound(e.begin(), e.end(), bound) - e.begin());
}

}  // namespace

Hypergraph complete_hypergraph(int n, int k) {
  return filtered_complete(n, k, [](const VertexList&) { return true; });
}

Hypergraph random_hypergraph(int n, int k, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("edge probability must lie in [0, 1]");
  Rng rng(seed);
  return filtered_complete(n, k, [&](const VertexList&) { return rng.bernoulli(p); });
}

int parity_part_size(int n) {
  // Smallest odd integer >= n/2 - 1, i.e. >= ceil((n - 2) / 2).
  int a = n >= 2 ? (n - 1) / 2 : 0;
  if (a % 2 == 0) ++a;
  if (a > n) throw InvalidInput("no odd part size fits n=" + std::to_string(n));
  return a;
}

ParityConstruction parity_hypergraph(int n, int k) {
  if (k < 1 || k > n) {
    throw InvalidInput("need 1 <= k <= n (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                       ")");
  }
  const int a = parity_part_size(n);
  ParityConstruction c{filtered_complete(n, k,
                                         [a](const VertexList& e) {
                                           return count_below(e, a) % 2 == 0;
                                         }),
                       {}};
  c.part_a.resize(a);
  for (int v = 0; v < a; ++v) c.part_a[v] = v;
  return c;
}

bool is_parity_hypergraph(const Hypergraph& h) {
  return h == parity_hypergraph(h.n(), h.k()).h;
}

std::uint64_t count_hypergraph_perfect_matchings(const Hypergraph& h, std::uint64_t limit) {
  if (h.n() % h.k() != 0) return 0;
  // Edges grouped by their smallest vertex; the search always covers the
  // smallest uncovered vertex next.
  std::vector<std::vector<const VertexList*>> by_first(h.n());
  for (const auto& e : h.edges()) by_first[e.front()].push_back(&e);

  std::vector<char> covered(h.n(), 0);
  std::uint64_t found = 0;
  auto search = [&](auto&& self, int first_free) -> void {
    while (first_free < h.n() && covered[first_free]) ++first_free;
    if (first_free == h.n()) {
      ++found;
      return;
    }
    for (const VertexList* e : by_first[first_free]) {
      if (std::any_of(e->begin(), e->end(), [&](Vertex v) { return covered[v] != 0; })) continue;
      for (Vertex v : *e) covered[v] = 1;
      self(self, first_free + 1);
      for (Vertex v : *e) covered[v] = 0;
      if (found >= limit) return;
    }
  };
  search(search, 0);
  return found;
}

ParityCertificate verify_no_odd_factor(const ParityConstruction& c, int r) {
  if (r <= 0 || r % 2 == 0) {
    throw InvalidQuery("parity certificate needs a positive odd r, got " + std::to_string(r));
  }
  const Hypergraph& h = c.h;
  if (h.n() % h.k() != 0) {
    throw InvalidQuery("k=" + std::to_string(h.k()) + " does not divide n=" +
                       std::to_string(h.n()));
  }
  ParityCertificate cert;
  cert.r = r;
  cert.part_a_size = static_cast<int>(c.part_a.size());
  cert.part_a_odd = cert.part_a_size % 2 == 1;

  std::vector<char> in_a(h.n(), 0);
  for (Vertex v : c.part_a) in_a[v] = 1;
  cert.all_edges_even = std::all_of(h.edges().begin(), h.edges().end(), [&](const VertexList& e) {
    int inside = 0;
    for (Vertex v : e) inside += in_a[v];
    return inside % 2 == 0;
  });
  // Summing |A n f| over a hypothetical r-factor counts each A-vertex r times.
  const long long degree_sum_parity = (static_cast<long long>(r) * cert.part_a_size) % 2;
  cert.contradiction = cert.all_edges_even && degree_sum_parity == 1;
  cert.no_r_factor = cert.part_a_odd && cert.contradiction;

  if (r == 1 && h.n() <= kExhaustiveMatchingMaxN) {
    cert.exhaustive_checked = true;
    cert.perfect_matchings_found = count_hypergraph_perfect_matchings(h, 1);
    if (cert.no_r_factor && cert.perfect_matchings_found != 0) {
      throw InvariantViolation("parity certificate contradicted by a perfect matching");
    }
  }
  return cert;
}

}  // namespace hamcycle
