#include "hamcycle/randomlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hamcycle/errors.hpp"
#include "hamcycle/parallel.hpp"
#include "hamcycle/reduction.hpp"
#include "hamcycle/rng.hpp"

namespace hamcycle {

namespace {

// Guards floor() against products like 0.8 * 100 * 0.3 = 23.999999999999996.
constexpr double kFloorTolerance = 1e-9;

bool degree_hypothesis(const Hypergraph& h, double delta, double epsilon) {
  if (h.k() < 2) return true;
  const auto min_degree = degree_report(h, h.k() - 1).min_degree;
  return static_cast<double>(min_degree) >= (delta + epsilon) * h.n() - kFloorTolerance;
}

}  // namespace

BipartiteGraph random_subgraph(const BipartiteGraph& g, const std::vector<double>& p_map,
                               std::uint64_t seed) {
  if (p_map.size() != g.edge_count()) {
    throw InvalidInput("probability map has " + std::to_string(p_map.size()) +
                       " entries for " + std::to_string(g.edge_count()) + " edges");
  }
  Rng rng(seed);
  std::vector<BiEdge> kept;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const double p = p_map[i];
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("edge probabilities must lie in [0, 1]");
    // Always draw, so edge i consumes the same uniform regardless of p_map.
    if (rng.uniform01() < p) kept.push_back(g.edges()[i]);
  }
  return BipartiteGraph(g.m(), std::move(kept));
}

BipartiteGraph random_subgraph(const BipartiteGraph& g, double p, std::uint64_t seed) {
  return random_subgraph(g, std::vector<double>(g.edge_count(), p), seed);
}

Theorem4Experiment::Theorem4Experiment(BipartiteGraph g, double rho)
    : g_(std::move(g)), rho_(rho) {
  const int m = g_.m();
  if (!(rho > 0.0 && rho <= 1.0)) throw InvalidInput("rho must lie in (0, 1]");
  if (2 * g_.min_degree() <= m) {
    throw InvalidInput("hypothesis delta(G) > m/2 fails: delta(G)=" +
                       std::to_string(g_.min_degree()) + ", m=" + std::to_string(m));
  }
  const int base = static_cast<int>(std::floor(rho * m + kFloorTolerance));
  if (!find_factor(g_, base)) {
    throw InvalidInput("hypothesis fails: G has no " + std::to_string(base) + "-factor (rho=" +
                       std::to_string(rho) + ")");
  }
}

int Theorem4Experiment::target(double p, double epsilon) const {
  return static_cast<int>(std::floor((1.0 - epsilon) * rho_ * g_.m() * p + kFloorTolerance));
}

Theorem4Trial Theorem4Experiment::trial(double p, double epsilon, std::uint64_t seed) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in [0, 1)");
  Theorem4Trial t;
  t.seed = seed;
  t.target = target(p, epsilon);
  const BipartiteGraph sub = random_subgraph(g_, p, seed);
  MaxFactor best = max_factor(sub);
  t.r_star = best.r;
  t.success = t.target >= 1 && t.r_star >= t.target;
  if (t.success) {
    // Re-derive a factor of exactly the target degree and check it.
    auto f = find_factor(sub, t.target);
    if (!f || !is_factor(*f, sub)) {
      throw InvariantViolation("max_factor reported r*=" + std::to_string(t.r_star) +
                               " but no verified " + std::to_string(t.target) + "-factor exists");
    }
    t.witness = std::move(f);
  }
  return t;
}

Theorem4Trial theorem4_trial(const BipartiteGraph& g, double rho, double p, double epsilon,
                             std::uint64_t seed) {
  return Theorem4Experiment(g, rho).trial(p, epsilon, seed);
}

SubgraphTrialReport run_theorem4(const BipartiteGraph& g, double rho, double p, double epsilon,
                                 int trials, std::uint64_t master_seed, unsigned threads) {
  if (trials < 0) throw InvalidInput("trial count must be non-negative");
  const Theorem4Experiment exp(g, rho);
  SubgraphTrialReport r;
  r.m = g.m();
  r.p = p;
  r.rho = rho;
  r.epsilon = epsilon;
  r.trials = trials;
  r.master_seed = master_seed;
  r.per_trial.resize(trials);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    r.per_trial[i] = exp.trial(p, epsilon, derive_seed(master_seed, "factor-trial", i));
  });
  r.successes = static_cast<int>(std::count_if(r.per_trial.begin(), r.per_trial.end(),
                                               [](const auto& t) { return t.success; }));
  return r;
}

PartitionTrial lemma_key1_trial(const Hypergraph& h, const std::vector<int>& sizes, double delta,
                                double epsilon, std::uint64_t seed, double min_fraction) {
  const int n = h.n();
  if (sizes.empty() || std::accumulate(sizes.begin(), sizes.end(), 0) != n) {
    throw InvalidInput("part sizes must be non-empty and sum to n=" + std::to_string(n));
  }
  for (int s : sizes) {
    if (s <= 0 || s < min_fraction * n) {
      throw InvalidInput("part size " + std::to_string(s) + " is below the minimum " +
                         std::to_string(min_fraction) + "*n");
    }
  }
  VertexList order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<int> part_of(n);
  {
    int pos = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i)
      for (int j = 0; j < sizes[i]; ++j) part_of[order[pos++]] = static_cast<int>(i);
  }

  PartitionTrial t;
  t.seed = seed;
  t.part_min_ratio.assign(sizes.size(), std::numeric_limits<double>::infinity());
  t.thresholds.assign(sizes.size(), delta + 2.0 * epsilon / 3.0);

  VertexList all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<VertexList> rest(sizes.size());
  for_each_subset(all, h.k() - 1, [&](const VertexList& x) {
    for (auto& r : rest) r.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (!std::binary_search(x.begin(), x.end(), v)) rest[part_of[v]].push_back(v);
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      const double ratio = static_cast<double>(relative_degree(h, x, rest[i])) / sizes[i];
      t.part_min_ratio[i] = std::min(t.part_min_ratio[i], ratio);
    }
  });
  t.success = true;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    t.success = t.success && t.part_min_ratio[i] * sizes[i] >=
                                 t.thresholds[i] * sizes[i] - kFloorTolerance;
  }
  return t;
}

Key2Trial lemma_key2_trial(const Hypergraph& h, int ell, double delta, double epsilon,
                           std::uint64_t seed) {
  const PartitionScheme scheme = sample_scheme(h, ell, seed);
  const AuxGraph aux = build_aux_graph(h, scheme);
  Key2Trial t;
  t.seed = seed;
  t.m = scheme.m;
  t.min_aux_degree = aux.graph.min_degree();
  t.threshold = (delta + epsilon / 2.0) * scheme.m;
  t.success = t.min_aux_degree >= t.threshold - kFloorTolerance;
  return t;
}

PartitionTrialReport run_lemma_key1(const Hypergraph& h, const std::vector<int>& sizes,
                                    double delta, double epsilon, int trials,
                                    std::uint64_t master_seed, unsigned threads) {
  PartitionTrialReport r;
  r.lemma = "key1";
  r.trials = trials;
  r.master_seed = master_seed;
  r.hypothesis_met = degree_hypothesis(h, delta, epsilon);
  r.key1.resize(trials);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    r.key1[i] = lemma_key1_trial(h, sizes, delta, epsilon, derive_seed(master_seed, "key1", i));
  });
  r.successes = static_cast<int>(
      std::count_if(r.key1.begin(), r.key1.end(), [](const auto& t) { return t.success; }));
  return r;
}

PartitionTrialReport run_lemma_key2(const Hypergraph& h, int ell, double delta, double epsilon,
                                    int trials, std::uint64_t master_seed, unsigned threads) {
  cycle_length(h.n(), h.k(), ell);
  PartitionTrialReport r;
  r.lemma = "key2";
  r.trials = trials;
  r.master_seed = master_seed;
  r.hypothesis_met = degree_hypothesis(h, delta, epsilon);
  r.key2.resize(trials);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    r.key2[i] = lemma_key2_trial(h, ell, delta, epsilon, derive_seed(master_seed, "key2", i));
  });
  r.successes = static_cast<int>(
      std::count_if(r.key2.begin(), r.key2.end(), [](const auto& t) { return t.success; }));
  return r;
}

std::string theorem4_csv(const SubgraphTrialReport& r) {
  std::ostringstream out;
  out << "trial,seed,r_star,target,success\n";
  for (std::size_t i = 0; i < r.per_trial.size(); ++i) {
    const auto& t = r.per_trial[i];
    out << i << ',' << t.seed << ',' << t.r_star << ',' << t.target << ','
        << (t.success ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string partition_csv(const PartitionTrialReport& r) {
  std::ostringstream out;
  out.precision(17);
  if (r.lemma == "key1") {
    out << "trial,seed,part,min_ratio,threshold,success\n";
    for (std::size_t i = 0; i < r.key1.size(); ++i) {
      const auto& t = r.key1[i];
      for (std::size_t p = 0; p < t.part_min_ratio.size(); ++p) {
        out << i << ',' << t.seed << ',' << p << ',' << t.part_min_ratio[p] << ','
            << t.thresholds[p] << ',' << (t.success ? 1 : 0) << '\n';
      }
    }
  } else {
    out << "trial,seed,min_aux_degree,threshold,success\n";
    for (std::size_t i = 0; i < r.key2.size(); ++i) {
      const auto& t = r.key2[i];
      out << i << ',' << t.seed << ',' << t.min_aux_degree << ',' << t.threshold << ','
          << (t.success ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

nlohmann::json to_json(const SubgraphTrialReport& r) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.per_trial) {
    trials.push_back({{"seed", t.seed},
                      {"r_star", t.r_star},
                      {"target", t.target},
                      {"success", t.success}});
  }
  return nlohmann::json{{"m", r.m},
                        {"p", r.p},
                        {"rho", r.rho},
                        {"epsilon", r.epsilon},
                        {"trials", r.trials},
                        {"successes", r.successes},
                        {"master_seed", r.master_seed},
                        {"sampling", "coupled: edge i uses the i-th uniform of its trial seed"},
                        {"per_trial", trials}};
}

nlohmann::json to_json(const PartitionTrialReport& r) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : r.key1) {
    trials.push_back({{"seed", t.seed},
                      {"part_min_ratio", t.part_min_ratio},
                      {"thresholds", t.thresholds},
                      {"success", t.success}});
  }
  for (const auto& t : r.key2) {
    trials.push_back({{"seed", t.seed},
                      {"m", t.m},
                      {"min_aux_degree", t.min_aux_degree},
                      {"threshold", t.threshold},
                      {"success", t.success}});
  }
  return nlohmann::json{{"lemma", r.lemma},
                        {"trials", r.trials},
                        {"successes", r.successes},
                        {"master_seed", r.master_seed},
                        {"hypothesis_met", r.hypothesis_met},
                        {"per_trial", trials}};
}

}  // namespace hamcycle
