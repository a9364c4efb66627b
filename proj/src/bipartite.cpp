#include "hamcycle/bipartite.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "hamcycle/errors.hpp"

namespace hamcycle {

namespace {

// Dinic's algorithm on an explicit residual graph.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

  int add_edge(int from, int to, int cap) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, head_[from], cap});
    head_[from] = id;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = id + 1;
    return id;
  }

  int flow_on(int id) const { return arcs_[id ^ 1].cap; }

  long long max_flow(int source, int sink) {
    long long total = 0;
    while (bfs(source, sink)) {
      std::copy(head_.begin(), head_.end(), iter_.begin());
      while (int pushed = dfs(source, sink, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    int next;
    int cap;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int id = head_[v]; id != -1; id = arcs_[id].next) {
        const Arc& a = arcs_[id];
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          queue.push(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  int dfs(int v, int sink, int limit) {
    if (v == sink) return limit;
    for (int& id = iter_[v]; id != -1; id = arcs_[id].next) {
      Arc& a = arcs_[id];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      if (int pushed = dfs(a.to, sink, std::min(limit, a.cap))) {
        a.cap -= pushed;
        arcs_[id ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

void check_factor_or_throw(const Factor& f, const BipartiteGraph& host, const char* where) {
  if (!is_factor(f, host)) {
    throw InvariantViolation(std::string(where) + ": edge set is not a " + std::to_string(f.r) +
                             "-factor of the host graph");
  }
}

}  // namespace

BipartiteGraph::BipartiteGraph(int m) : BipartiteGraph(m, {}) {}

BipartiteGraph::BipartiteGraph(int m, std::vector<BiEdge> edges)
    : m_(m),
      edges_(std::move(edges)),
      adj_(static_cast<std::size_t>(std::max(m, 0)) * std::max(m, 0), 0),
      s_adj_(std::max(m, 0)),
      t_adj_(std::max(m, 0)) {
  if (m < 0) throw InvalidInput("part size must be non-negative");
  std::sort(edges_.begin(), edges_.end());
  for (const auto& [s, t] : edges_) {
    if (s < 0 || s >= m || t < 0 || t >= m) {
      throw InvalidInput("edge (" + std::to_string(s) + "," + std::to_string(t) +
                         ") outside parts of size " + std::to_string(m));
    }
    auto& cell = adj_[static_cast<std::size_t>(s) * m + t];
    if (cell) {
      throw InvalidInput("parallel edge (" + std::to_string(s) + "," + std::to_string(t) + ")");
    }
    cell = 1;
    s_adj_[s].push_back(t);
    t_adj_[t].push_back(s);
  }
  for (auto& list : t_adj_) std::sort(list.begin(), list.end());
}

BipartiteGraph BipartiteGraph::complete(int m) {
  std::vector<BiEdge> edges;
  edges.reserve(static_cast<std::size_t>(m) * m);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) edges.emplace_back(s, t);
  return BipartiteGraph(m, std::move(edges));
}

int BipartiteGraph::min_degree() const {
  if (m_ == 0) return 0;
  int best = std::numeric_limits<int>::max();
  for (int v = 0; v < m_; ++v) best = std::min({best, s_degree(v), t_degree(v)});
  return best;
}

int BipartiteGraph::max_degree() const {
  int best = 0;
  for (int v = 0; v < m_; ++v) best = std::max({best, s_degree(v), t_degree(v)});
  return best;
}

nlohmann::json to_json(const BipartiteGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [s, t] : g.edges()) edges.push_back({s, t});
  return nlohmann::json{{"m", g.m()}, {"edges", edges}};
}

BipartiteGraph bipartite_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j["m"].is_number_integer() || !j.contains("edges") ||
      !j["edges"].is_array()) {
    throw ParseError("bipartite graph document needs integer \"m\" and array \"edges\"");
  }
  for (const auto& [key, _] : j.items()) {
    if (key != "m" && key != "edges") {
      throw ParseError("unexpected key \"" + key + "\" in bipartite graph document");
    }
  }
  std::vector<BiEdge> edges;
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const auto& e = j["edges"][i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw ParseError("edge #" + std::to_string(i) + " must be a pair [s, t]");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  try {
    return BipartiteGraph(j["m"].get<int>(), std::move(edges));
  } catch (const InvalidInput& err) {
    throw ParseError(err.what());
  }
}

bool is_factor(const Factor& f, const BipartiteGraph& host) {
  const int m = host.m();
  std::vector<int> deg_s(m, 0), deg_t(m, 0);
  std::vector<BiEdge> sorted = f.edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (const auto& [s, t] : sorted) {
    if (s < 0 || s >= m || t < 0 || t >= m || !host.has_edge(s, t)) return false;
    ++deg_s[s];
    ++deg_t[t];
  }
  for (int v = 0; v < m; ++v) {
    if (deg_s[v] != f.r || deg_t[v] != f.r) return false;
  }
  return true;
}

GaleRyserWitness gale_ryser_check(const BipartiteGraph& g, int r) {
  const int m = g.m();
  if (m > kGaleRyserMaxM) {
    throw SizeLimit("exhaustive Gale-Ryser check is limited to m <= " +
                    std::to_string(kGaleRyserMaxM) + " (got m=" + std::to_string(m) +
                    "); use find_factor instead");
  }
  // t_mask[t] = set of S-neighbours of t.
  std::vector<std::uint32_t> t_mask(m, 0);
  for (const auto& [s, t] : g.edges()) t_mask[t] |= 1u << s;

  const std::uint32_t full = m == 0 ? 0u : ((1u << m) - 1u);
  for (std::uint32_t x = 0;; ++x) {
    long long rhs = static_cast<long long>(r) * m;
    std::uint32_t y = 0;
    for (int t = 0; t < m; ++t) {
      const int e = std::popcount(t_mask[t] & x);
      if (e < r) {
        rhs += e - r;
        y |= 1u << t;
      }
    }
    if (static_cast<long long>(r) * std::popcount(x) > rhs) {
      GaleRyserWitness w;
      w.holds = false;
      for (int v = 0; v < m; ++v) {
        if (x >> v & 1u) w.x.push_back(v);
        if (y >> v & 1u) w.y.push_back(v);
      }
      return w;
    }
    if (x == full) break;
  }
  return {};
}

std::vector<int> maximum_matching(const BipartiteGraph& g) {
  const int m = g.m();
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> match_s(m, -1), match_t(m, -1), dist(m);

  auto bfs = [&] {
    std::queue<int> queue;
    bool found = false;
    for (int s = 0; s < m; ++s) {
      dist[s] = match_s[s] < 0 ? 0 : kInf;
      if (match_s[s] < 0) queue.push(s);
    }
    while (!queue.empty()) {
      const int s = queue.front();
      queue.pop();
      for (int t : g.s_neighbors(s)) {
        const int next = match_t[t];
        if (next < 0) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[s] + 1;
          queue.push(next);
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> cursor(m);
  auto dfs = [&](auto&& self, int s) -> bool {
    const auto& nb = g.s_neighbors(s);
    for (std::size_t& i = cursor[s]; i < nb.size(); ++i) {
      const int t = nb[i];
      const int next = match_t[t];
      if (next < 0 || (dist[next] == dist[s] + 1 && self(self, next))) {
        match_s[s] = t;
        match_t[t] = s;
        ++i;
        return true;
      }
    }
    dist[s] = kInf;
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (int s = 0; s < m; ++s) {
      if (match_s[s] < 0) dfs(dfs, s);
    }
  }
  return match_s;
}

std::optional<Matching> perfect_matching(const BipartiteGraph& g) {
  Matching match = maximum_matching(g);
  if (std::any_of(match.begin(), match.end(), [](int t) { return t < 0; })) return std::nullopt;
  return match;
}

std::optional<Factor> find_factor(const BipartiteGraph& g, int r) {
  const int m = g.m();
  if (r < 0 || r > m) {
    throw InvalidQuery("factor degree r=" + std::to_string(r) + " outside 0.." +
                       std::to_string(m));
  }
  Factor factor;
  factor.r = r;
  if (r == 0) return factor;
  if (g.min_degree() < r) return std::nullopt;

  const int source = 2 * m;
  const int sink = 2 * m + 1;
  FlowNetwork net(2 * m + 2);
  for (int v = 0; v < m; ++v) {
    net.add_edge(source, v, r);
    net.add_edge(m + v, sink, r);
  }
  std::vector<int> arc_of_edge;
  arc_of_edge.reserve(g.edge_count());
  for (const auto& [s, t] : g.edges()) arc_of_edge.push_back(net.add_edge(s, m + t, 1));

  if (net.max_flow(source, sink) != static_cast<long long>(r) * m) return std::nullopt;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (net.flow_on(arc_of_edge[i]) > 0) factor.edges.push_back(g.edges()[i]);
  }
  check_factor_or_throw(factor, g, "find_factor");
  return factor;
}

MaxFactor max_factor(const BipartiteGraph& g) {
  // An r-factor splits into r perfect matchings, so feasibility is monotone in r.
  MaxFactor best;
  int lo = 0;
  int hi = g.min_degree();
  while (lo < hi) {
    const int mid = lo + (hi - lo + 1) / 2;
    if (auto f = find_factor(g, mid)) {
      lo = mid;
      best.factor = std::move(*f);
    } else {
      hi = mid - 1;
    }
  }
  best.r = lo;
  best.factor.r = lo;
  if (lo == 0) best.factor.edges.clear();
  return best;
}

double csaba_rho(double delta) {
  if (!(delta >= 0.5 && delta <= 1.0)) {
    throw DomainError("csaba_rho requires 1/2 <= delta <= 1, got " + std::to_string(delta));
  }
  return (delta + std::sqrt(2.0 * delta - 1.0)) / 2.0;
}

double f_alpha(double x) { return csaba_rho(x); }

double almost_regular_bound(double alpha, double epsilon) {
  if (epsilon < 0) throw DomainError("epsilon must be non-negative");
  return std::max(0.0, alpha - 10.0 * std::sqrt(epsilon));
}

std::vector<Matching> peel_matchings(const Factor& f, const BipartiteGraph& host) {
  check_factor_or_throw(f, host, "peel_matchings");
  std::vector<Matching> matchings;
  matchings.reserve(f.r);
  std::vector<BiEdge> remaining = f.edges;
  for (int round = 0; round < f.r; ++round) {
    const BipartiteGraph rest(host.m(), remaining);
    auto pm = perfect_matching(rest);
    if (!pm) {
      throw InvariantViolation("regular bipartite remainder of degree " +
                               std::to_string(f.r - round) + " has no perfect matching");
    }
    std::vector<BiEdge> next;
    next.reserve(remaining.size() - host.m());
    for (const auto& e : remaining) {
      if ((*pm)[e.first] != e.second) next.push_back(e);
    }
    remaining = std::move(next);
    matchings.push_back(std::move(*pm));
  }
  if (!remaining.empty()) {
    throw InvariantViolation("edges left over after peeling " + std::to_string(f.r) +
                             " matchings");
  }
  return matchings;
}

BigInt count_perfect_matchings(const BipartiteGraph& g) {
  const int m = g.m();
  if (m > kPermanentMaxM) {
    throw SizeLimit("permanent computation is limited to m <= " +
                    std::to_string(kPermanentMaxM) + " (got m=" + std::to_string(m) + ")");
  }
  if (m == 0) return 1;
  using boost::multiprecision::int256_t;
  // Row sums over the current column subset; Gray code flips one column per step.
  std::vector<int> row_sum(m, 0);
  int256_t total = 0;
  const std::uint64_t steps = std::uint64_t{1} << m;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const std::uint64_t next = i ^ (i >> 1);
    const int col = std::countr_zero(next ^ gray);
    const int delta = (next >> col & 1u) ? 1 : -1;
    for (int s : g.t_neighbors(col)) row_sum[s] += delta;
    gray = next;

    __int128 product = 1;
    for (int s = 0; s < m && product != 0; ++s) product *= row_sum[s];
    if (product == 0) continue;
    // Ryser: perm = sum over nonempty S of (-1)^(m-|S|) prod_i rowsum_i(S).
    const bool negative = ((m - std::popcount(gray)) & 1) != 0;
    const auto hi = static_cast<std::int64_t>(product >> 64);
    const auto lo = static_cast<std::uint64_t>(product);
    int256_t term = int256_t(hi) * (int256_t(1) << 64) + int256_t(lo);
    total += negative ? -term : term;
  }
  return BigInt(total);
}

}  // namespace hamcycle
