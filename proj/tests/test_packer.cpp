#include <set>

#include <doctest.h>

#include "hamcycle/constructions.hpp"
#include "hamcycle/errors.hpp"
#include "hamcycle/packer.hpp"
#include "oracles.hpp"

using namespace hamcycle;

namespace {

// Independent of verify_packing: segment membership, pairwise disjointness
// and conservation.
void check_packing(const Hypergraph& h, const PackingResult& r) {
  std::set<VertexList> used;
  for (const auto& c : r.cycles) {
    const int n = int(c.arrangement.size());
    CHECK(n == h.n());
    CHECK(std::set<int>(c.arrangement.begin(), c.arrangement.end()).size() == std::size_t(n));
    const int step = h.k() - r.ell;
    for (int i = 0; i < n / step; ++i) {
      VertexList seg;
      for (int j = 0; j < h.k(); ++j) seg.push_back(c.arrangement[(i * step + j) % n]);
      std::sort(seg.begin(), seg.end());
      CHECK(h.contains(seg));
      CHECK(used.insert(seg).second);
    }
  }
  std::size_t assigned = 0;
  for (const auto& p : r.partitions) assigned += p.assigned_edges;
  CHECK(assigned + r.unassigned == h.edge_count());
  CHECK(used.size() == r.covered_edges);
}

}  // namespace

TEST_CASE("default partition count") {
  const Hypergraph h = complete_hypergraph(12, 3);
  const int r = default_num_partitions(h, 1);
  CHECK(r >= 1);
  CHECK(r <= int(h.edge_count()) * 2 / 12);
}

TEST_CASE("psi counts candidates and sums to the aux edge total") {
  const Hypergraph h = random_hypergraph(12, 3, 0.8, 3);
  std::vector<PartitionScheme> schemes;
  std::size_t aux_total = 0;
  for (std::uint64_t i = 0; i < 15; ++i) {
    schemes.push_back(sample_scheme(h, 1, i));
    aux_total += build_aux_graph(h, schemes.back()).graph.edge_count();
  }
  const EdgeAssignment a = assign_edges(h, schemes, 9);
  std::size_t psi_total = 0;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const auto cands = candidate_partitions(h.edges()[e], schemes);
    CHECK(int(cands.size()) == a.psi[e]);
    psi_total += cands.size();
    if (a.psi[e] == 0) {
      CHECK(a.chosen[e] == -1);
    } else {
      CHECK(std::find(cands.begin(), cands.end(), a.chosen[e]) != cands.end());
      // the chosen scheme really names the edge
      const AuxGraph aux = build_aux_graph(h, schemes[a.chosen[e]]);
      bool named = false;
      for (const auto& [s, t] : aux.graph.edges()) named |= scheme_edge(aux.scheme, s, t) == h.edges()[e];
      CHECK(named);
    }
  }
  CHECK(psi_total == aux_total);
  const PsiStatistics st = psi_statistics(a, 15, 6);
  CHECK(st.total == psi_total);
  CHECK(st.predicted_bound == doctest::Approx(15.0 * 36 / double(h.edge_count())));
}

TEST_CASE("min-degree packing produces disjoint valid cycles") {
  const Hypergraph h = random_hypergraph(18, 3, 0.9, 1);
  PackingConfig cfg;
  cfg.seed = 4;
  const PackingResult r = pack_theorem2(h, cfg);
  CHECK(r.m == 9);
  CHECK(r.cycles.size() > 0);
  check_packing(h, r);
  CHECK(verify_packing(h, r).ok);
  cfg.threads = 4;
  CHECK(to_json(pack_theorem2(h, cfg)) == to_json(r));
  CHECK(partitions_csv(pack_theorem2(h, cfg)) == partitions_csv(r));
}

TEST_CASE("fixed factor policy and ell = 0") {
  const Hypergraph h = random_hypergraph(12, 4, 0.9, 2);
  PackingConfig cfg;
  cfg.ell = 1;
  cfg.policy = FactorPolicy::kFixed;
  cfg.fixed_factor = 1;
  cfg.num_partitions = 6;
  const PackingResult r = pack_theorem2(h, cfg);
  for (const auto& p : r.partitions) CHECK(p.factor <= 1);
  check_packing(h, r);
  cfg.ell = 0;
  cfg.policy = FactorPolicy::kFlowMax;
  const PackingResult z = pack_theorem2(h, cfg);
  check_packing(h, z);
  CHECK(verify_packing(h, z).ok);
}

TEST_CASE("small cycles never reuse an edge") {
  // m = 2: the two edges of a lifted cycle come from different aux pairs,
  // but two lifts may share an edge.
  const Hypergraph h = complete_hypergraph(4, 3);
  PackingConfig cfg;
  cfg.num_partitions = 4;
  cfg.seed = 1;
  const PackingResult r = pack_theorem2(h, cfg);
  check_packing(h, r);
  CHECK(verify_packing(h, r).ok);
}

TEST_CASE("near-regular packing on a complete hypergraph") {
  const Hypergraph h = complete_hypergraph(12, 3);
  const PackingResult r = pack_theorem3(h, 1, 0.9, 0.05, 3);
  CHECK(r.theorem == 3);
  check_packing(h, r);
  CHECK(verify_packing(h, r).ok);
  const Hypergraph skewed = parity_hypergraph(12, 3).h;
  CHECK_THROWS_AS(pack_theorem3(skewed, 1, 0.5, 0.05, 3), InvalidInput);
}

TEST_CASE("verify_packing catches tampering") {
  const Hypergraph h = random_hypergraph(12, 3, 0.9, 6);
  PackingConfig cfg;
  cfg.seed = 2;
  cfg.num_partitions = 1;
  PackingResult r = pack_theorem2(h, cfg);
  REQUIRE(r.cycles.size() >= 1);
  PackingResult dup = r;
  dup.cycles.push_back(r.cycles.front());
  CHECK_FALSE(verify_packing(h, dup).ok);
  PackingResult lost = r;
  ++lost.unassigned;
  CHECK_FALSE(verify_packing(h, lost).ok);
}
