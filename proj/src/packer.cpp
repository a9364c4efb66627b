#include "hamcycle/packer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "hamcycle/bipartite.hpp"
#include "hamcycle/errors.hpp"
#include "hamcycle/parallel.hpp"
#include "hamcycle/rng.hpp"

namespace hamcycle {

namespace {

// Vertex -> tuple / block lookup for fast candidate tests.
struct SchemeIndex {
  std::vector<int> tuple_of;  // -1 for vertices of B
  std::vector<int> block_of;  // -1 for vertices of A

  explicit SchemeIndex(const PartitionScheme& s) : tuple_of(s.n, -1), block_of(s.n, -1) {
    for (int i = 0; i < static_cast<int>(s.tuples_a.size()); ++i)
      for (Vertex v : s.tuples_a[i]) tuple_of[v] = i;
    for (int i = 0; i < static_cast<int>(s.blocks_b.size()); ++i)
      for (Vertex v : s.blocks_b[i]) block_of[v] = i;
  }
};

bool is_candidate(const VertexList& f, const PartitionScheme& s, const SchemeIndex& idx) {
  int in_a = 0;
  int block = -1;
  int t1 = -1;
  int t2 = -1;
  for (Vertex v : f) {
    if (idx.tuple_of[v] >= 0) {
      ++in_a;
      const int t = idx.tuple_of[v];
      if (t1 < 0 || t1 == t) {
        t1 = t;
      } else if (t2 < 0 || t2 == t) {
        t2 = t;
      } else {
        return false;
      }
    } else {
      if (block >= 0 && idx.block_of[v] != block) return false;
      block = idx.block_of[v];
    }
  }
  if (static_cast<int>(f.size()) - in_a != s.block_size()) return false;
  if (s.ell > 0) {
    // Two whole tuples, cyclically consecutive.
    if (in_a != 2 * s.ell || t2 < 0) return false;
    const int gap = ((t1 - t2) % s.m + s.m) % s.m;
    return gap == 1 || gap == s.m - 1;
  }
  if (in_a != s.tuple_size()) return false;
  return s.tuple_size() == 0 || t2 < 0;
}

using SchemeCheck = std::function<bool(const BipartiteGraph&)>;
// Target degree for partition i given its auxiliary graph; < 0 means none.
using TargetFn = std::function<int(int index)>;

struct PipelineSpec {
  int theorem = 2;
  int ell = 1;
  int num_partitions = 1;
  int resample_limit = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  SchemeCheck accept;
  FactorPolicy policy = FactorPolicy::kFlowMax;
  int fixed_factor = 0;
  TargetFn report_target;
};

PackingResult run_pipeline(const Hypergraph& h, const PipelineSpec& spec, PackingResult r) {
  r.n = h.n();
  r.k = h.k();
  r.ell = spec.ell;
  r.m = cycle_length(h.n(), h.k(), spec.ell);
  r.edge_count = h.edge_count();
  r.partitions_used = spec.num_partitions;

  const int count = spec.num_partitions;
  std::vector<PartitionScheme> schemes(count);
  r.partitions.assign(count, PartitionStats{});
  parallel_for(static_cast<std::size_t>(count), spec.threads, [&](std::size_t i) {
    PartitionStats& st = r.partitions[i];
    st.index = static_cast<int>(i);
    const std::uint64_t base = derive_seed(spec.seed, "scheme", i);
    for (int attempt = 0;; ++attempt) {
      schemes[i] = sample_scheme(h, spec.ell, derive_seed(base, "attempt", attempt));
      const AuxGraph aux = build_aux_graph(h, schemes[i]);
      st.aux_min_degree = aux.graph.min_degree();
      st.aux_max_degree = aux.graph.max_degree();
      st.aux_edges = aux.graph.edge_count();
      st.retries = attempt;
      if (spec.accept(aux.graph)) break;
      if (attempt >= spec.resample_limit) {
        st.accepted = false;
        break;
      }
    }
  });
  for (const auto& st : r.partitions) {
    r.resamples += st.retries;
    r.resample_exhausted = r.resample_exhausted || !st.accepted;
  }
  if (r.resample_exhausted) {
    r.warnings.push_back("resample limit exhausted for some partitions; result is partial");
  }

  const EdgeAssignment assignment = assign_edges(h, schemes, derive_seed(spec.seed, "assign"));
  r.psi = psi_statistics(assignment, count, r.m);

  std::vector<std::vector<VertexList>> sub_edges(count);
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const int i = assignment.chosen[e];
    if (i < 0) {
      ++r.unassigned;
    } else {
      sub_edges[i].push_back(h.edges()[e]);
    }
  }

  std::vector<std::vector<HamiltonCycle>> per_partition(count);
  parallel_for(static_cast<std::size_t>(count), spec.threads, [&](std::size_t i) {
    PartitionStats& st = r.partitions[i];
    st.assigned_edges = sub_edges[i].size();
    const Hypergraph sub(h.n(), h.k(), sub_edges[i]);
    const AuxGraph aux = build_aux_graph(sub, schemes[i]);
    st.sub_aux_edges = aux.graph.edge_count();
    if (spec.report_target) st.factor_target = spec.report_target(static_cast<int>(i));

    std::optional<Factor> factor;
    if (spec.policy == FactorPolicy::kFixed) {
      if (spec.fixed_factor <= aux.graph.m()) factor = find_factor(aux.graph, spec.fixed_factor);
    } else {
      factor = max_factor(aux.graph).factor;
    }
    if (!factor || factor->r == 0) return;
    st.factor = factor->r;
    const auto matchings = peel_matchings(*factor, aux.graph);
    st.matchings = static_cast<int>(matchings.size());

    // With m = 2 two auxiliary pairs can name the same hyperedge, so guard
    // edge reuse inside the partition; for m >= 3 this never triggers.
    std::unordered_set<VertexList, VertexListHash> used;
    for (const auto& match : matchings) {
      HamiltonCycle c;
      if (spec.ell > 0) {
        c = lift_matching(aux, match);
      } else {
        c.k = h.k();
        c.ell = 0;
        for (const auto& e : lift_matching_pm(aux, match))
          c.arrangement.insert(c.arrangement.end(), e.begin(), e.end());
      }
      const auto edges = c.edge_list();
      if (std::any_of(edges.begin(), edges.end(),
                      [&](const VertexList& e) { return used.count(e) != 0; })) {
        ++st.dropped_duplicates;
        continue;
      }
      used.insert(edges.begin(), edges.end());
      per_partition[i].push_back(std::move(c));
      ++st.cycles;
    }
  });

  for (auto& list : per_partition) {
    for (auto& c : list) {
      r.covered_edges += c.edge_list().size();
      r.cycles.push_back(std::move(c));
    }
  }
  r.coverage_ratio =
      h.edge_count() == 0 ? 0.0 : static_cast<double>(r.covered_edges) / h.edge_count();
  return r;
}

double measured_alpha(const Hypergraph& h) {
  if (h.k() < 2) return 1.0;
  return static_cast<double>(degree_report(h, h.k() - 1).min_degree) / h.n();
}

int clamp_partitions(double formula, const Hypergraph& h, int ell) {
  const double upper =
      std::max(1.0, std::floor(static_cast<double>(h.edge_count()) * (h.k() - ell) / h.n()));
  if (!std::isfinite(formula)) return static_cast<int>(upper);
  return static_cast<int>(std::clamp(std::round(formula), 1.0, upper));
}

}  // namespace

int default_num_partitions(const Hypergraph& h, int ell) {
  const double n = h.n();
  const double factor = (h.k() - ell) * std::log(n) / n;
  return clamp_partitions(static_cast<double>(h.edge_count()) * factor * factor, h, ell);
}

std::vector<int> candidate_partitions(const VertexList& f,
                                      const std::vector<PartitionScheme>& schemes) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(schemes.size()); ++i) {
    if (is_candidate(f, schemes[i], SchemeIndex(schemes[i]))) out.push_back(i);
  }
  return out;
}

EdgeAssignment assign_edges(const Hypergraph& h, const std::vector<PartitionScheme>& schemes,
                            std::uint64_t seed) {
  std::vector<SchemeIndex> index;
  index.reserve(schemes.size());
  for (const auto& s : schemes) {
    if (s.n != h.n() || s.k != h.k()) {
      throw InvalidInput("partition scheme was built for a different (n, k)");
    }
    index.emplace_back(s);
  }
  EdgeAssignment a;
  a.chosen.assign(h.edge_count(), -1);
  a.psi.assign(h.edge_count(), 0);
  Rng rng(seed);
  std::vector<int> cands;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    cands.clear();
    for (int i = 0; i < static_cast<int>(schemes.size()); ++i) {
      if (is_candidate(h.edges()[e], schemes[i], index[i])) cands.push_back(i);
    }
    a.psi[e] = static_cast<int>(cands.size());
    if (!cands.empty()) a.chosen[e] = cands[rng.below(cands.size())];
  }
  return a;
}

PsiStatistics psi_statistics(const EdgeAssignment& a, int num_partitions, int m) {
  PsiStatistics s;
  for (int p : a.psi) {
    ++s.histogram[p];
    s.total += static_cast<std::uint64_t>(p);
    s.max = std::max(s.max, p);
  }
  if (!a.psi.empty()) {
    s.mean = static_cast<double>(s.total) / a.psi.size();
    s.predicted_bound = static_cast<double>(num_partitions) * m * m / a.psi.size();
  }
  return s;
}

PackingResult pack_theorem2(const Hypergraph& h, const PackingConfig& cfg) {
  PackingResult r;
  r.theorem = 2;
  r.alpha = measured_alpha(h);
  if (cfg.alpha_prime <= 0.5) {
    r.warnings.push_back("alpha' <= 1/2: outside the minimum-degree regime");
  }
  if (r.alpha <= cfg.alpha_prime) {
    r.warnings.push_back("hypothesis delta_{k-1}(H) >= alpha n with alpha > alpha' fails "
                         "(measured alpha=" + std::to_string(r.alpha) + ")");
  }
  if (cfg.resample_limit < 0) throw InvalidInput("resample limit must be >= 0");
  if (cfg.policy == FactorPolicy::kFixed && cfg.fixed_factor < 0) {
    throw InvalidInput("fixed factor degree must be >= 0");
  }
  const int count = cfg.num_partitions.value_or(default_num_partitions(h, cfg.ell));
  if (count < 1) throw InvalidInput("number of partitions must be >= 1");

  const int m = cycle_length(h.n(), h.k(), cfg.ell);
  const double min_degree = (cfg.alpha_prime + cfg.epsilon / 2.0) * m;
  PipelineSpec spec;
  spec.theorem = 2;
  spec.ell = cfg.ell;
  spec.num_partitions = count;
  spec.resample_limit = cfg.resample_limit;
  spec.seed = cfg.seed;
  spec.threads = cfg.threads;
  spec.policy = cfg.policy;
  spec.fixed_factor = cfg.fixed_factor;
  spec.accept = [min_degree](const BipartiteGraph& g) {
    return g.min_degree() >= min_degree - 1e-9;
  };
  return run_pipeline(h, spec, std::move(r));
}

PackingResult pack_theorem3(const Hypergraph& h, int ell, double delta_target, double epsilon,
                            std::uint64_t seed, unsigned threads, int resample_limit) {
  if (!(epsilon >= 0.0)) throw InvalidInput("epsilon must be >= 0");
  if (resample_limit < 0) throw InvalidInput("resample limit must be >= 0");
  const int m = cycle_length(h.n(), h.k(), ell);
  const double n = h.n();
  std::uint64_t lo = h.edge_count();
  std::uint64_t hi = h.edge_count();
  if (h.k() >= 2) {
    const DegreeReport dr = degree_report(h, h.k() - 1);
    lo = dr.min_degree;
    hi = dr.max_degree;
  }
  if (static_cast<double>(hi - lo) > 2.0 * epsilon * n + 1e-9) {
    throw InvalidInput("near-regularity fails: delta_{k-1}=" + std::to_string(lo) +
                       ", Delta_{k-1}=" + std::to_string(hi) + " differ by more than 2*eps*n=" +
                       std::to_string(2.0 * epsilon * n));
  }
  const double alpha = (static_cast<double>(lo) + static_cast<double>(hi)) / (2.0 * n);

  PackingResult r;
  r.theorem = 3;
  r.alpha = alpha;
  r.delta_target = delta_target;
  if (alpha <= 0.5) r.warnings.push_back("measured alpha <= 1/2: outside the dense regime");

  const double edges = static_cast<double>(h.edge_count());
  const double q = edges > 0 ? (alpha - epsilon) * m * m / edges : 0.0;
  const double step = (h.k() - ell) / n;
  const int count = q > 0 ? clamp_partitions(edges * step * step / q, h, ell) : 1;

  // Remark-1 window for auxiliary degrees: (alpha +- 2 eps) m.
  const double low = (alpha - 2.0 * epsilon) * m;
  const double high = (alpha + 2.0 * epsilon) * m;
  const double bound = almost_regular_bound(alpha, epsilon);
  const double retention = std::max(1.0, count * q);

  PipelineSpec spec;
  spec.theorem = 3;
  spec.ell = ell;
  spec.num_partitions = count;
  spec.resample_limit = resample_limit;
  spec.seed = seed;
  spec.threads = threads;
  spec.accept = [low, high](const BipartiteGraph& g) {
    return g.min_degree() >= low - 1e-9 && g.max_degree() <= high + 1e-9;
  };
  spec.report_target = [bound, m, retention](int) {
    return static_cast<int>(std::floor(bound * m / retention + 1e-9));
  };
  r = run_pipeline(h, spec, std::move(r));

  const double allowed = delta_target * static_cast<double>(binomial(h.n(), h.k()));
  r.goal_met = static_cast<double>(h.edge_count() - r.covered_edges) <= allowed + 1e-9;
  return r;
}

PackingCheck verify_packing(const Hypergraph& h, const PackingResult& r) {
  PackingCheck check;
  auto fail = [&](std::string why) {
    check.ok = false;
    check.failures.push_back(std::move(why));
  };
  std::unordered_set<VertexList, VertexListHash> seen;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < r.cycles.size(); ++i) {
    const CycleCheck cc = verify_cycle(h, r.cycles[i]);
    if (!cc.ok) fail("cycle #" + std::to_string(i) + ": " + cc.failure);
    for (const auto& e : r.cycles[i].edge_list()) {
      ++covered;
      if (!seen.insert(e).second) fail("cycle #" + std::to_string(i) + " reuses an edge");
    }
  }
  if (covered != r.covered_edges) fail("covered_edges does not match the cycles");
  std::size_t assigned = 0;
  for (const auto& p : r.partitions) assigned += p.assigned_edges;
  if (assigned + r.unassigned != h.edge_count()) {
    fail("conservation: sum |E(H_i)| + unassigned != |E(H)|");
  }
  return check;
}

nlohmann::json to_json(const PackingResult& r) {
  nlohmann::json cycles = nlohmann::json::array();
  for (const auto& c : r.cycles) cycles.push_back(c.arrangement);
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : r.partitions) {
    parts.push_back({{"index", p.index},
                     {"retries", p.retries},
                     {"accepted", p.accepted},
                     {"aux_min_degree", p.aux_min_degree},
                     {"aux_max_degree", p.aux_max_degree},
                     {"aux_edges", p.aux_edges},
                     {"assigned_edges", p.assigned_edges},
                     {"sub_aux_edges", p.sub_aux_edges},
                     {"factor_target", p.factor_target},
                     {"factor", p.factor},
                     {"matchings", p.matchings},
                     {"cycles", p.cycles},
                     {"dropped_duplicates", p.dropped_duplicates}});
  }
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [psi, count] : r.psi.histogram) hist[std::to_string(psi)] = count;
  nlohmann::json out{{"theorem", r.theorem},
                     {"n", r.n},
                     {"k", r.k},
                     {"ell", r.ell},
                     {"m", r.m},
                     {"edge_count", r.edge_count},
                     {"alpha", r.alpha},
                     {"cycles", cycles},
                     {"statistics",
                      {{"partitions_used", r.partitions_used},
                       {"resamples", r.resamples},
                       {"resample_exhausted", r.resample_exhausted},
                       {"cycle_count", r.cycles.size()},
                       {"covered_edges", r.covered_edges},
                       {"unassigned", r.unassigned},
                       {"coverage_ratio", r.coverage_ratio},
                       {"psi",
                        {{"histogram", hist},
                         {"total", r.psi.total},
                         {"mean", r.psi.mean},
                         {"max", r.psi.max},
                         {"predicted_bound", r.psi.predicted_bound}}},
                       {"partitions", parts}}},
                     {"warnings", r.warnings}};
  if (r.theorem == 3) {
    out["delta_target"] = r.delta_target;
    out["goal_met"] = r.goal_met;
  }
  return out;
}

std::string partitions_csv(const PackingResult& r) {
  std::ostringstream out;
  out << "index,retries,accepted,aux_min_degree,aux_max_degree,aux_edges,assigned_edges,"
         "sub_aux_edges,factor_target,factor,matchings,cycles,dropped_duplicates\n";
  for (const auto& p : r.partitions) {
    out << p.index << ',' << p.retries << ',' << (p.accepted ? 1 : 0) << ',' << p.aux_min_degree
        << ',' << p.aux_max_degree << ',' << p.aux_edges << ',' << p.assigned_edges << ','
        << p.sub_aux_edges << ',' << p.factor_target << ',' << p.factor << ',' << p.matchings
        << ',' << p.cycles << ',' << p.dropped_duplicates << '\n';
  }
  return out.str();
}

}  // namespace hamcycle
