#include <cmath>
#include <set>

#include <doctest.h>

#include "hamcycle/bipartite.hpp"
#include "hamcycle/errors.hpp"
#include "oracles.hpp"

using namespace hamcycle;

namespace {

BipartiteGraph k44_minus_matching() {
  std::vector<BiEdge> edges;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      if (s != t) edges.emplace_back(s, t);
  return BipartiteGraph(4, edges);
}

}  // namespace

TEST_CASE("construction validates edges") {
  CHECK_THROWS_AS(BipartiteGraph(3, {{0, 3}}), InvalidInput);
  CHECK_THROWS_AS(BipartiteGraph(3, {{0, 1}, {0, 1}}), InvalidInput);
  const BipartiteGraph g(3, {{2, 1}, {0, 0}});
  CHECK(g.edges().front() == BiEdge{0, 0});
  CHECK(bipartite_from_json(to_json(g)) == g);
}

TEST_CASE("derangements count perfect matchings of K44 minus a matching") {
  const BipartiteGraph g = k44_minus_matching();
  CHECK(count_perfect_matchings(g) == 9);
  CHECK(count_perfect_matchings(BipartiteGraph::complete(6)) == 720);
  CHECK(count_perfect_matchings(BipartiteGraph(3)) == 0);
}

TEST_CASE("permanent matches permutation enumeration") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const BipartiteGraph g = oracle::random_bipartite(1 + int(seed % 7), 0.6, seed);
    CHECK(count_perfect_matchings(g) == oracle::permanent(g));
  }
}

TEST_CASE("large permanents do not overflow") {
  // 20! exceeds 2^61; the count must still be exact.
  BigInt expected = 1;
  for (int i = 2; i <= 20; ++i) expected *= i;
  CHECK(count_perfect_matchings(BipartiteGraph::complete(20)) == expected);
}

TEST_CASE("Gale-Ryser check agrees with the pairwise oracle") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const int m = 1 + int(seed % 5);
    const BipartiteGraph g = oracle::random_bipartite(m, 0.3 + 0.1 * double(seed % 6), seed);
    for (int r = 0; r <= m; ++r) {
      const GaleRyserWitness w = gale_ryser_check(g, r);
      CHECK(w.holds == oracle::gale_ryser_pairs(g, r));
      if (!w.holds) {
        long exy = 0;
        for (const auto& [s, t] : g.edges())
          exy += std::count(w.x.begin(), w.x.end(), s) && std::count(w.y.begin(), w.y.end(), t);
        CHECK(long(r) * long(w.x.size()) > exy + long(r) * (m - long(w.y.size())));
      }
    }
  }
}

TEST_CASE("find_factor returns verified factors") {
  const BipartiteGraph g = k44_minus_matching();
  for (int r = 0; r <= 3; ++r) {
    const auto f = find_factor(g, r);
    REQUIRE(f.has_value());
    CHECK(is_factor(*f, g));
  }
  CHECK_FALSE(find_factor(g, 4).has_value());
  CHECK_THROWS_AS(find_factor(g, 5), InvalidQuery);
  CHECK_THROWS_AS(find_factor(g, -1), InvalidQuery);
  const MaxFactor best = max_factor(g);
  CHECK(best.r == 3);
  CHECK(is_factor(best.factor, g));
}

TEST_CASE("maximum matching size equals the brute-force optimum") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int m = 2 + int(seed % 5);
    const BipartiteGraph g = oracle::random_bipartite(m, 0.35, seed * 7);
    const auto match = maximum_matching(g);
    int size = 0;
    std::set<int> used;
    for (int s = 0; s < m; ++s) {
      if (match[s] < 0) continue;
      CHECK(g.has_edge(s, match[s]));
      CHECK(used.insert(match[s]).second);
      ++size;
    }
    int best = 0;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int c = 0;
      for (int s = 0; s < m; ++s) c += g.has_edge(s, perm[s]);
      best = std::max(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(size == best);
    CHECK(perfect_matching(g).has_value() == (best == m));
  }
}

TEST_CASE("peel_matchings partitions a factor into perfect matchings") {
  const auto edges = oracle::random_regular(9, 4, 5);
  const Factor f{4, edges};
  const BipartiteGraph host(9, edges);
  const auto ms = peel_matchings(f, host);
  REQUIRE(ms.size() == 4);
  std::set<BiEdge> seen;
  for (const auto& m : ms)
    for (int s = 0; s < 9; ++s) CHECK(seen.insert({s, m[s]}).second);
  CHECK(std::set<BiEdge>(edges.begin(), edges.end()) == seen);
  CHECK_THROWS_AS(peel_matchings(Factor{3, edges}, host), InvariantViolation);
}

TEST_CASE("factor density function") {
  CHECK(f_alpha(0.72) == doctest::Approx(0.6916).epsilon(1e-4));
  CHECK(csaba_rho(1.0) == doctest::Approx(1.0));
  CHECK(csaba_rho(0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(csaba_rho(0.49), DomainError);
  CHECK(almost_regular_bound(0.8, 0.0001) == doctest::Approx(0.7));
  CHECK(almost_regular_bound(0.5, 0.01) == 0.0);
}

TEST_CASE("max_factor meets the density guarantee on dense graphs") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const int m = 20 + int(seed);
    const BipartiteGraph g = oracle::dense_bipartite(m, 0.8, 0.6, seed);
    const double x = double(g.min_degree()) / m;
    const int floor_bound = int(std::floor((x + std::sqrt(2 * x - 1)) / 2 * m));
    CHECK(max_factor(g).r >= floor_bound);
  }
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(gale_ryser_check(BipartiteGraph(15), 1), SizeLimit);
  CHECK_THROWS_AS(count_perfect_matchings(BipartiteGraph(25)), SizeLimit);
}
