#include <doctest.h>

#include "hamcycle/constructions.hpp"
#include "hamcycle/errors.hpp"
#include "hamcycle/hypergraph.hpp"
#include "oracles.hpp"

using namespace hamcycle;

TEST_CASE("edges are stored sorted and deduplication is rejected") {
  Hypergraph h(5, 3, {{2, 0, 1}, {4, 3, 1}});
  CHECK(h.edges()[0] == VertexList{0, 1, 2});
  CHECK(h.contains({1, 3, 4}));
  CHECK_FALSE(h.contains({0, 1, 3}));
  CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1, 2}, {2, 1, 0}}), InvalidInput);
  CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1, 1}}), InvalidInput);
  CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1, 5}}), InvalidInput);
  CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1}}), InvalidInput);
  CHECK_THROWS_AS(Hypergraph(2, 3), InvalidInput);
}

TEST_CASE("degrees of the complete 3-graph on 6 vertices") {
  const Hypergraph h = complete_hypergraph(6, 3);
  CHECK(h.edge_count() == 20);
  CHECK(degree_of(h, {0, 1}) == 4);
  CHECK(degree_of(h, {0}) == 10);
  CHECK(degree_of(h, {}) == 20);
  const DegreeReport r = degree_report(h, 2);
  CHECK(r.min_degree == 4);
  CHECK(r.max_degree == 4);
  CHECK_THROWS_AS(degree_report(h, 3), InvalidQuery);
  CHECK_THROWS_AS(degree_report(h, 0), InvalidQuery);
  CHECK_THROWS_AS(degree_of(h, {0, 1, 2, 3}), InvalidQuery);
}

TEST_CASE("degree scan matches the naive oracle on random hypergraphs") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const int n = 6 + int(seed % 4), k = 3 + int(seed % 2);
    const Hypergraph h = random_hypergraph(n, k, 0.6, seed);
    for (int d = 1; d < k; ++d) {
      const DegreeReport r = degree_report(h, d);
      const auto [lo, hi] = oracle::degree_range(h, d);
      CHECK(r.min_degree == lo);
      CHECK(r.max_degree == hi);
      CHECK(degree_of(h, r.witness_min) == lo);
      CHECK(degree_of(h, r.witness_max) == hi);
    }
  }
}

TEST_CASE("relative degree counts completions inside Y") {
  const Hypergraph h = complete_hypergraph(7, 3);
  CHECK(relative_degree(h, {0, 1}, {2, 3, 4}) == 3);
  CHECK(relative_degree(h, {0}, {1, 2, 3}) == 3);
  const Hypergraph r = random_hypergraph(8, 3, 0.5, 42);
  std::uint64_t naive = 0;
  for (const auto& e : r.edges())
    naive += oracle::has_subset(e, {5}) && e.back() <= 5;
  CHECK(relative_degree(r, {5}, {0, 1, 2, 3, 4}) == naive);
  CHECK_THROWS_AS(relative_degree(h, {0, 1}, {1, 2}), InvalidQuery);
  CHECK_THROWS_AS(relative_degree(h, {0, 1, 2}, {3}), InvalidQuery);
}

TEST_CASE("json round trip and strict parsing") {
  const Hypergraph h = random_hypergraph(7, 3, 0.4, 9);
  CHECK(hypergraph_from_json(to_json(h)) == h);
  CHECK_THROWS_AS(hypergraph_from_json(nlohmann::json{{"n", 4}, {"k", 3}}), ParseError);
  CHECK_THROWS_AS(hypergraph_from_json(nlohmann::json{{"n", 4}, {"k", 3}, {"edges", {}}, {"x", 1}}),
                  ParseError);
  CHECK_THROWS_AS(hypergraph_from_json(nlohmann::json{{"n", 4}, {"k", 3}, {"edges", {{0, 1, 9}}}}),
                  ParseError);
}

TEST_CASE("subset helpers") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  CHECK(normalize_subset({3, 1}, 5) == VertexList{1, 3});
  CHECK_THROWS_AS(normalize_subset({1, 1}, 5), InvalidQuery);
  CHECK_THROWS_AS(normalize_subset({7}, 5), InvalidQuery);
  int seen = 0;
  const VertexList pool{1, 4, 6, 9};
  for_each_subset(pool, 2, [&](const VertexList&) { ++seen; });
  CHECK(seen == 6);
}
