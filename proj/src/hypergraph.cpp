#include "hamcycle/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "hamcycle/errors.hpp"

namespace hamcycle {

namespace {

constexpr std::uint64_t kMaxDegreeTable = 50'000'000;

std::string describe(const VertexList& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
  return out.str();
}

// Colex rank of a sorted subset: sum_i C(v[i], i+1).
std::uint64_t colex_rank(const VertexList& v) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < v.size(); ++i) r += binomial(v[i], static_cast<int>(i) + 1);
  return r;
}

bool is_subset_sorted(const VertexList& small, const VertexList& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::uint64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    // result * (n - r + i) / i stays integral at every step.
    result = result / i * (n - r + i) + result % i * (n - r + i) / i;
  }
  return result;
}

bool next_combination(std::vector<int>& comb, int n) {
  const int r = static_cast<int>(comb.size());
  int i = r - 1;
  while (i >= 0 && comb[i] == n - r + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

void for_each_subset(std::span<const Vertex> pool, int r,
                     const std::function<void(const VertexList&)>& fn) {
  const int size = static_cast<int>(pool.size());
  if (r < 0 || r > size) return;
  std::vector<int> pos(r);
  for (int i = 0; i < r; ++i) pos[i] = i;
  VertexList subset(r);
  do {
    for (int i = 0; i < r; ++i) subset[i] = pool[pos[i]];
    fn(subset);
  } while (next_combination(pos, size));
}

VertexList normalize_subset(VertexList v, int n) {
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0 || v[i] >= n) {
      throw InvalidQuery("vertex " + std::to_string(v[i]) + " outside 0.." +
                         std::to_string(n - 1));
    }
    if (i > 0 && v[i] == v[i - 1]) {
      throw InvalidQuery("repeated vertex " + std::to_string(v[i]) + " in subset");
    }
  }
  return v;
}

Hypergraph::Hypergraph(int n, int k) : n_(n), k_(k) {
  if (k < 1 || k > n) {
    throw InvalidInput("uniformity must satisfy 1 <= k <= n (n=" + std::to_string(n) +
                       ", k=" + std::to_string(k) + ")");
  }
}

Hypergraph::Hypergraph(int n, int k, std::vector<VertexList> edges) : Hypergraph(n, k) {
  edges_.reserve(edges.size());
  index_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    VertexList e = std::move(edges[i]);
    std::sort(e.begin(), e.end());
    if (static_cast<int>(e.size()) != k) {
      throw InvalidInput("edge #" + std::to_string(i) + " " + describe(e) + " has " +
                         std::to_string(e.size()) + " vertices, expected " + std::to_string(k));
    }
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InvalidInput("edge #" + std::to_string(i) + " " + describe(e) +
                         " repeats a vertex");
    }
    if (e.front() < 0 || e.back() >= n) {
      throw InvalidInput("edge #" + std::to_string(i) + " " + describe(e) +
                         " has a vertex outside 0.." + std::to_string(n - 1));
    }
    if (!index_.insert(e).second) {
      throw InvalidInput("edge #" + std::to_string(i) + " " + describe(e) + " is a duplicate");
    }
    edges_.push_back(std::move(e));
  }
  std::sort(edges_.begin(), edges_.end());
}

std::uint64_t degree_of(const Hypergraph& h, const VertexList& a) {
  if (static_cast<int>(a.size()) > h.k()) {
    throw InvalidQuery("subset of size " + std::to_string(a.size()) + " exceeds k=" +
                       std::to_string(h.k()));
  }
  const VertexList sorted = normalize_subset(a, h.n());
  if (static_cast<int>(sorted.size()) == h.k()) return h.contains(sorted) ? 1 : 0;
  std::uint64_t count = 0;
  for (const auto& e : h.edges()) count += is_subset_sorted(sorted, e) ? 1 : 0;
  return count;
}

DegreeReport degree_report(const Hypergraph& h, int d) {
  if (d < 1 || d > h.k() - 1) {
    throw InvalidQuery("degree order d=" + std::to_string(d) + " outside 1.." +
                       std::to_string(h.k() - 1));
  }
  const std::uint64_t table = binomial(h.n(), d);
  if (table > kMaxDegreeTable) {
    throw SizeLimit("C(n,d)=" + std::to_string(table) + " subsets is too many to scan");
  }
  std::vector<std::uint64_t> counts(table, 0);
  for (const auto& e : h.edges()) {
    for_each_subset(e, d, [&](const VertexList& s) { ++counts[colex_rank(s)]; });
  }

  DegreeReport report;
  report.d = d;
  report.min_degree = std::numeric_limits<std::uint64_t>::max();
  std::vector<int> subset(d);
  for (int i = 0; i < d; ++i) subset[i] = i;
  do {
    const std::uint64_t c = counts[colex_rank(subset)];
    if (c < report.min_degree) {
      report.min_degree = c;
      report.witness_min = subset;
    }
    if (report.witness_max.empty() || c > report.max_degree) {
      report.max_degree = c;
      report.witness_max = subset;
    }
  } while (next_combination(subset, h.n()));
  return report;
}

std::uint64_t relative_degree(const Hypergraph& h, const VertexList& x, const VertexList& y) {
  const VertexList xs = normalize_subset(x, h.n());
  const VertexList ys = normalize_subset(y, h.n());
  if (static_cast<int>(xs.size()) >= h.k()) {
    throw InvalidQuery("relative degree needs |X| < k, got |X|=" + std::to_string(xs.size()));
  }
  VertexList overlap;
  std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(overlap));
  if (!overlap.empty()) {
    throw InvalidQuery("X and Y overlap at vertex " + std::to_string(overlap.front()));
  }
  const int r = h.k() - static_cast<int>(xs.size());
  if (static_cast<int>(ys.size()) < r) return 0;

  std::uint64_t count = 0;
  if (binomial(static_cast<int>(ys.size()), r) <= h.edge_count()) {
    VertexList candidate;
    for_each_subset(ys, r, [&](const VertexList& z) {
      candidate.clear();
      std::merge(xs.begin(), xs.end(), z.begin(), z.end(), std::back_inserter(candidate));
      count += h.contains(candidate) ? 1 : 0;
    });
    return count;
  }
  std::vector<char> in_y(h.n(), 0);
  for (Vertex v : ys) in_y[v] = 1;
  for (const auto& e : h.edges()) {
    if (!is_subset_sorted(xs, e)) continue;
    bool rest_in_y = true;
    for (Vertex v : e) {
      if (!std::binary_search(xs.begin(), xs.end(), v) && !in_y[v]) {
        rest_in_y = false;
        break;
      }
    }
    count += rest_in_y ? 1 : 0;
  }
  return count;
}

nlohmann::json to_json(const Hypergraph& h) {
  return nlohmann::json{{"n", h.n()}, {"k", h.k()}, {"edges", h.edges()}};
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("hypergraph document must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "n" && key != "k" && key != "edges") {
      throw ParseError("unexpected key \"" + key + "\" in hypergraph document");
    }
  }
  for (const char* key : {"n", "k"}) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      throw ParseError(std::string("missing or non-integer \"") + key + "\"");
    }
  }
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw ParseError("missing or non-array \"edges\"");
  }
  const int n = j["n"].get<int>();
  const int k = j["k"].get<int>();
  std::vector<VertexList> edges;
  edges.reserve(j["edges"].size());
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& e = j["edges"][i];
    if (!e.is_array()) throw ParseError("edge #" + std::to_string(i) + " is not an array");
    VertexList edge;
    for (const auto& v : e) {
      if (!v.is_number_integer()) {
        throw ParseError("edge #" + std::to_string(i) + " " + e.dump() +
                         " contains a non-integer vertex");
      }
      edge.push_back(v.get<Vertex>());
    }
    edges.push_back(std::move(edge));
  }
  try {
    return Hypergraph(n, k, std::move(edges));
  } catch (const InvalidInput& err) {
    throw ParseError(err.what());
  }
}

Hypergraph read_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
  try {
    return hypergraph_from_json(j);
  } catch (const ParseError& err) {
    throw ParseError(path.string() + ": " + err.what());
  }
}

void write_hypergraph(const Hypergraph& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(h).dump() << '\n';
}

}  // namespace hamcycle
