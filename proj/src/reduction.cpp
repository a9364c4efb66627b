#include "hamcycle/reduction.hpp"

#include <algorithm>
#include <numeric>

#include "hamcycle/errors.hpp"
#include "hamcycle/rng.hpp"

namespace hamcycle {

namespace {

VertexList sorted_slice(const VertexList& v, std::size_t from, std::size_t count) {
  VertexList out(v.begin() + static_cast<std::ptrdiff_t>(from),
                 v.begin() + static_cast<std::ptrdiff_t>(from + count));
  std::sort(out.begin(), out.end());
  return out;
}

VertexList merge_sorted(std::initializer_list<const VertexList*> parts) {
  VertexList out;
  for (const VertexList* p : parts) out.insert(out.end(), p->begin(), p->end());
  std::sort(out.begin(), out.end());
  return out;
}

// Splits `pool` into consecutive groups of `size` (pool.size() == size * groups).
std::vector<VertexList> cut(const VertexList& pool, int size, int groups) {
  std::vector<VertexList> out;
  out.reserve(groups);
  for (int g = 0; g < groups; ++g) out.push_back(sorted_slice(pool, static_cast<std::size_t>(g) * size, size));
  return out;
}

// Enumerates partitions of `pool` into groups of `size`. Ordered partitions
// list every sequence; unordered ones put the smallest remaining vertex in the
// next group so each family appears once.
void partitions(const VertexList& pool, int size, int groups, bool ordered,
                std::vector<VertexList>& acc,
                const std::function<void(const std::vector<VertexList>&)>& fn) {
  if (static_cast<int>(acc.size()) == groups) {
    fn(acc);
    return;
  }
  if (size == 0) {
    acc.emplace_back();
    partitions(pool, size, groups, ordered, acc, fn);
    acc.pop_back();
    return;
  }
  if (ordered) {
    for_each_subset(pool, size, [&](const VertexList& group) {
      VertexList rest;
      std::set_difference(pool.begin(), pool.end(), group.begin(), group.end(),
                          std::back_inserter(rest));
      acc.push_back(group);
      partitions(rest, size, groups, ordered, acc, fn);
      acc.pop_back();
    });
    return;
  }
  const Vertex head = pool.front();
  const VertexList tail(pool.begin() + 1, pool.end());
  for_each_subset(tail, size - 1, [&](const VertexList& others) {
    VertexList group{head};
    group.insert(group.end(), others.begin(), others.end());
    VertexList rest;
    std::set_difference(tail.begin(), tail.end(), others.begin(), others.end(),
                        std::back_inserter(rest));
    acc.push_back(group);
    partitions(rest, size, groups, ordered, acc, fn);
    acc.pop_back();
  });
}

struct Blocks {
  std::vector<VertexList> junctions;  // empty sets when ell == 0
  std::vector<VertexList> interiors;
};

Blocks split_blocks(const HamiltonCycle& c) {
  const int n = static_cast<int>(c.arrangement.size());
  const int step = c.k - c.ell;
  const int m = n / step;
  Blocks b;
  for (int i = 0; i < m; ++i) {
    const std::size_t start = static_cast<std::size_t>(i) * step;
    b.junctions.push_back(sorted_slice(c.arrangement, start, c.ell));
    b.interiors.push_back(sorted_slice(c.arrangement, start + c.ell, c.k - 2 * c.ell));
  }
  return b;
}

void check_matching(const AuxGraph& aux, const Matching& match) {
  const int m = aux.graph.m();
  if (static_cast<int>(match.size()) != m) {
    throw InvalidInput("matching has " + std::to_string(match.size()) + " entries, expected " +
                       std::to_string(m));
  }
  std::vector<char> used(m, 0);
  for (int s = 0; s < m; ++s) {
    const int t = match[s];
    if (t < 0 || t >= m || used[t]) throw InvalidInput("matching is not a permutation of T");
    if (!aux.graph.has_edge(s, t)) {
      throw InvalidInput("matching uses non-edge (" + std::to_string(s) + "," +
                         std::to_string(t) + ")");
    }
    used[t] = 1;
  }
}

}  // namespace

int cycle_length(int n, int k, int ell) {
  if (ell < 0 || 2 * ell >= k) {
    throw InvalidInput("need 0 <= ell < k/2 (k=" + std::to_string(k) + ", ell=" +
                       std::to_string(ell) + ")");
  }
  if (n <= 0 || n % (k - ell) != 0) {
    throw InvalidInput("(k-ell)=" + std::to_string(k - ell) + " does not divide n=" +
                       std::to_string(n));
  }
  return n / (k - ell);
}

PartitionScheme sample_scheme(const Hypergraph& h, int ell, std::uint64_t seed) {
  PartitionScheme s;
  s.n = h.n();
  s.k = h.k();
  s.ell = ell;
  s.m = cycle_length(s.n, s.k, ell);

  VertexList order(s.n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  const int a_size = s.tuple_size() * s.m;
  const VertexList enum_a(order.begin(), order.begin() + a_size);
  const VertexList enum_b(order.begin() + a_size, order.end());
  s.tuples_a = cut(enum_a, s.tuple_size(), s.m);
  s.blocks_b = cut(enum_b, s.block_size(), s.m);
  if (ell == 0) std::sort(s.tuples_a.begin(), s.tuples_a.end());
  std::sort(s.blocks_b.begin(), s.blocks_b.end());
  s.part_a = enum_a;
  s.part_b = enum_b;
  std::sort(s.part_a.begin(), s.part_a.end());
  std::sort(s.part_b.begin(), s.part_b.end());
  return s;
}

void for_each_scheme(int n, int k, int ell,
                     const std::function<void(const PartitionScheme&)>& fn) {
  PartitionScheme s;
  s.n = n;
  s.k = k;
  s.ell = ell;
  s.m = cycle_length(n, k, ell);
  VertexList all(n);
  std::iota(all.begin(), all.end(), 0);
  const int a_size = s.tuple_size() * s.m;
  for_each_subset(all, a_size, [&](const VertexList& a) {
    s.part_a = a;
    s.part_b.clear();
    std::set_difference(all.begin(), all.end(), a.begin(), a.end(), std::back_inserter(s.part_b));
    std::vector<VertexList> acc_a;
    partitions(s.part_a, s.tuple_size(), s.m, ell > 0, acc_a,
               [&](const std::vector<VertexList>& tuples) {
                 s.tuples_a = tuples;
                 std::vector<VertexList> acc_b;
                 partitions(s.part_b, s.block_size(), s.m, false, acc_b,
                            [&](const std::vector<VertexList>& blocks) {
                              s.blocks_b = blocks;
                              fn(s);
                            });
               });
  });
}

VertexList scheme_edge(const PartitionScheme& scheme, int s, int t) {
  if (scheme.ell > 0) {
    return merge_sorted({&scheme.tuples_a[s], &scheme.tuples_a[(s + 1) % scheme.m],
                         &scheme.blocks_b[t]});
  }
  return merge_sorted({&scheme.tuples_a[s], &scheme.blocks_b[t]});
}

AuxGraph build_aux_graph(const Hypergraph& h, const PartitionScheme& scheme) {
  if (h.n() != scheme.n || h.k() != scheme.k) {
    throw InvalidInput("partition scheme was built for a different (n, k)");
  }
  std::vector<BiEdge> edges;
  for (int s = 0; s < scheme.m; ++s) {
    for (int t = 0; t < scheme.m; ++t) {
      if (h.contains(scheme_edge(scheme, s, t))) edges.emplace_back(s, t);
    }
  }
  return AuxGraph{scheme, BipartiteGraph(scheme.m, std::move(edges))};
}

int HamiltonCycle::edge_count() const {
  const int step = k - ell;
  return step > 0 ? static_cast<int>(arrangement.size()) / step : 0;
}

std::vector<VertexList> HamiltonCycle::edge_list() const {
  const int n = static_cast<int>(arrangement.size());
  const int step = k - ell;
  if (step <= 0 || n == 0 || n % step != 0 || k > n) return {};
  std::vector<VertexList> out;
  out.reserve(n / step);
  for (int i = 0; i < n / step; ++i) {
    VertexList e(k);
    for (int j = 0; j < k; ++j) e[j] = arrangement[(i * step + j) % n];
    std::sort(e.begin(), e.end());
    out.push_back(std::move(e));
  }
  return out;
}

HamiltonCycle lift_matching(const AuxGraph& aux, const Matching& match) {
  const PartitionScheme& s = aux.scheme;
  if (s.ell < 1) throw InvalidInput("lift_matching needs ell >= 1; use lift_matching_pm");
  check_matching(aux, match);
  HamiltonCycle c;
  c.k = s.k;
  c.ell = s.ell;
  c.arrangement.reserve(s.n);
  for (int i = 0; i < s.m; ++i) {
    const auto& f = s.tuples_a[i];
    const auto& b = s.blocks_b[match[i]];
    c.arrangement.insert(c.arrangement.end(), f.begin(), f.end());
    c.arrangement.insert(c.arrangement.end(), b.begin(), b.end());
  }
  return c;
}

std::vector<VertexList> lift_matching_pm(const AuxGraph& aux, const Matching& match) {
  if (aux.scheme.ell != 0) throw InvalidInput("lift_matching_pm needs ell = 0");
  check_matching(aux, match);
  std::vector<VertexList> edges;
  edges.reserve(match.size());
  for (int s = 0; s < aux.scheme.m; ++s) edges.push_back(scheme_edge(aux.scheme, s, match[s]));
  std::sort(edges.begin(), edges.end());
  return edges;
}

CycleCheck verify_cycle(const Hypergraph& h, const HamiltonCycle& c) {
  auto fail = [](std::string why, VertexList seg = {}) {
    return CycleCheck{false, std::move(why), std::move(seg)};
  };
  if (c.k != h.k()) return fail("cycle uniformity differs from hypergraph");
  if (c.ell < 0 || 2 * c.ell >= c.k) return fail("ell outside 0 <= ell < k/2");
  const int n = h.n();
  if (static_cast<int>(c.arrangement.size()) != n) return fail("arrangement length is not n");
  std::vector<char> seen(n, 0);
  for (Vertex v : c.arrangement) {
    if (v < 0 || v >= n || seen[v]) return fail("arrangement is not a permutation of V");
    seen[v] = 1;
  }
  if (n % (c.k - c.ell) != 0) return fail("(k-ell) does not divide n");
  const auto segments = c.edge_list();
  const int m = static_cast<int>(segments.size());
  if (m == 0) return fail("arrangement too short for a single segment");
  // With m <= 2 consecutive segments wrap onto each other, so the overlap
  // rule only constrains cycles of length >= 3.
  if (m >= 3) {
    for (int i = 0; i < m; ++i) {
      VertexList common;
      const auto& a = segments[i];
      const auto& b = segments[(i + 1) % m];
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) != c.ell) {
        return fail("consecutive segments do not overlap in exactly ell vertices", a);
      }
    }
  }
  for (const auto& seg : segments) {
    if (!h.contains(seg)) return fail("segment is not an edge of the hypergraph", seg);
  }
  return {};
}

HamiltonCycle canonicalize(const HamiltonCycle& c) {
  const int step = c.k - c.ell;
  const int n = static_cast<int>(c.arrangement.size());
  if (step <= 0 || n == 0 || n % step != 0) {
    throw InvalidInput("cycle is not structurally a (k, ell)-cycle");
  }
  const Blocks b = split_blocks(c);
  const int m = static_cast<int>(b.junctions.size());

  VertexList best;
  VertexList candidate;
  candidate.reserve(n);
  for (int start = 0; start < m; ++start) {
    for (int dir : {1, -1}) {
      candidate.clear();
      for (int i = 0; i < m; ++i) {
        const int j = ((start + dir * i) % m + m) % m;
        // Walking backwards, the interior before J_j is I_{j-1}.
        const int interior = dir == 1 ? j : (j - 1 + m) % m;
        candidate.insert(candidate.end(), b.junctions[j].begin(), b.junctions[j].end());
        candidate.insert(candidate.end(), b.interiors[interior].begin(),
                         b.interiors[interior].end());
      }
      if (best.empty() || candidate < best) best = candidate;
    }
  }
  return HamiltonCycle{c.k, c.ell, std::move(best)};
}

nlohmann::json to_json(const HamiltonCycle& c) {
  return nlohmann::json{{"ell", c.ell}, {"arrangement", c.arrangement}};
}

HamiltonCycle cycle_from_json(const nlohmann::json& j, int k) {
  if (!j.is_object() || !j.contains("ell") || !j["ell"].is_number_integer() ||
      !j.contains("arrangement") || !j["arrangement"].is_array()) {
    throw ParseError("cycle document needs integer \"ell\" and array \"arrangement\"");
  }
  HamiltonCycle c;
  c.k = k;
  c.ell = j["ell"].get<int>();
  for (const auto& v : j["arrangement"]) {
    if (!v.is_number_integer()) throw ParseError("arrangement entries must be integers");
    c.arrangement.push_back(v.get<Vertex>());
  }
  return c;
}

nlohmann::json to_json(const PartitionScheme& s) {
  return nlohmann::json{{"n", s.n},           {"k", s.k},
                        {"ell", s.ell},       {"m", s.m},
                        {"part_a", s.part_a}, {"part_b", s.part_b},
                        {"tuples_a", s.tuples_a}, {"blocks_b", s.blocks_b}};
}

}  // namespace hamcycle
