#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamcycle/bipartite.hpp"
#include "hamcycle/hypergraph.hpp"

namespace hamcycle {

// Keeps edge i of g (in g.edges() order) iff u_i < p_map[i], where u_i is the
// i-th uniform draw of the seeded stream. Sharing the seed couples the draws,
// so raising any probability can only add edges.
BipartiteGraph random_subgraph(const BipartiteGraph& g, const std::vector<double>& p_map,
                               std::uint64_t seed);
BipartiteGraph random_subgraph(const BipartiteGraph& g, double p, std::uint64_t seed);

struct Theorem4Trial {
  std::uint64_t seed = 0;
  int target = 0;  // floor((1-eps) rho m p)
  int r_star = 0;  // largest factor degree of G_p
  bool success = false;
  std::optional<Factor> witness;  // a target-factor of G_p on success
};

// Holds G after checking the hypotheses once: delta(G) > m/2 and G has a
// floor(rho m)-factor.
class Theorem4Experiment {
 public:
  Theorem4Experiment(BipartiteGraph g, double rho);

  // Target floor((1-eps) rho m p); a zero target never counts as success.
  int target(double p, double epsilon) const;
  Theorem4Trial trial(double p, double epsilon, std::uint64_t seed) const;

  const BipartiteGraph& graph() const { return g_; }
  double rho() const { return rho_; }

 private:
  BipartiteGraph g_;
  double rho_;
};

Theorem4Trial theorem4_trial(const BipartiteGraph& g, double rho, double p, double epsilon,
                             std::uint64_t seed);

struct SubgraphTrialReport {
  int m = 0;
  double p = 0;
  double rho = 0;
  double epsilon = 0;
  int trials = 0;
  int successes = 0;
  std::uint64_t master_seed = 0;
  std::vector<Theorem4Trial> per_trial;
};

// Per-trial seeds are derive_seed(master, "factor-trial", i); the report does not
// depend on `threads`.
SubgraphTrialReport run_theorem4(const BipartiteGraph& g, double rho, double p, double epsilon,
                                 int trials, std::uint64_t master_seed, unsigned threads = 1);

struct PartitionTrial {
  std::uint64_t seed = 0;
  std::vector<double> part_min_ratio;  // min_X d(X, V_i \ X) / m_i per part
  std::vector<double> thresholds;      // (delta + 2 eps / 3), as a ratio
  bool success = false;
};

// Uniform partition of V into parts of the given sizes; compares every part's
// minimum relative (k-1)-degree against (delta + 2 eps / 3) m_i.
// Sizes must sum to n and each must be >= min_fraction * n.
PartitionTrial lemma_key1_trial(const Hypergraph& h, const std::vector<int>& sizes, double delta,
                                double epsilon, std::uint64_t seed, double min_fraction = 0.0);

struct Key2Trial {
  std::uint64_t seed = 0;
  int m = 0;
  int min_aux_degree = 0;
  double threshold = 0;  // (delta + eps / 2) m
  bool success = false;
};

Key2Trial lemma_key2_trial(const Hypergraph& h, int ell, double delta, double epsilon,
                           std::uint64_t seed);

struct PartitionTrialReport {
  std::string lemma;  // "key1" or "key2"
  int trials = 0;
  int successes = 0;
  std::uint64_t master_seed = 0;
  bool hypothesis_met = false;  // delta_{k-1}(H) >= (delta + eps) n
  std::vector<PartitionTrial> key1;
  std::vector<Key2Trial> key2;
};

PartitionTrialReport run_lemma_key1(const Hypergraph& h, const std::vector<int>& sizes,
                                    double delta, double epsilon, int trials,
                                    std::uint64_t master_seed, unsigned threads = 1);
PartitionTrialReport run_lemma_key2(const Hypergraph& h, int ell, double delta, double epsilon,
                                    int trials, std::uint64_t master_seed, unsigned threads = 1);

// CSV: one row per trial.
std::string theorem4_csv(const SubgraphTrialReport& r);
std::string partition_csv(const PartitionTrialReport& r);
nlohmann::json to_json(const SubgraphTrialReport& r);
nlohmann::json to_json(const PartitionTrialReport& r);

}  // namespace hamcycle
