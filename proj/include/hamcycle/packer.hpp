#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamcycle/hypergraph.hpp"
#include "hamcycle/reduction.hpp"

namespace hamcycle {

enum class FactorPolicy {
  kFlowMax,  // largest factor the flow certifier finds
  kFixed,    // exactly `fixed_factor` if it exists, otherwise nothing
};

struct PackingConfig {
  int ell = 1;
  double alpha_prime = 0.55;
  double epsilon = 0.05;
  std::optional<int> num_partitions;  // default: default_num_partitions()
  FactorPolicy policy = FactorPolicy::kFlowMax;
  int fixed_factor = 0;
  int resample_limit = 10;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// |E|((k-ell) ln n / n)^2 rounded, clamped to [1, max(1, |E|(k-ell)/n)].
int default_num_partitions(const Hypergraph& h, int ell);

// Indices i such that f = F_{i,j} u B u F_{i,j+1} for some j and block B of
// scheme i (ell >= 1), or f = tuple u block (ell = 0). `f` must be sorted.
std::vector<int> candidate_partitions(const VertexList& f,
                                      const std::vector<PartitionScheme>& schemes);

struct EdgeAssignment {
  std::vector<int> chosen;  // per edge of H (in H.edges() order); -1 if psi = 0
  std::vector<int> psi;     // number of candidates per edge
};

// Each edge with psi > 0 picks one of its candidates uniformly; edges are
// visited in H.edges() order from a single seeded stream.
EdgeAssignment assign_edges(const Hypergraph& h, const std::vector<PartitionScheme>& schemes,
                            std::uint64_t seed);

struct PsiStatistics {
  std::map<int, std::uint64_t> histogram;  // psi value -> number of edges
  std::uint64_t total = 0;                 // sum of psi over E(H)
  double mean = 0;
  int max = 0;
  double predicted_bound = 0;  // r m^2 / |E(H)|, the bound on E[psi]
};

PsiStatistics psi_statistics(const EdgeAssignment& a, int num_partitions, int m);

struct PartitionStats {
  int index = 0;
  int retries = 0;
  bool accepted = true;  // sampled scheme met the degree check
  int aux_min_degree = 0;
  int aux_max_degree = 0;
  std::size_t aux_edges = 0;       // edges of G^(i)
  std::size_t assigned_edges = 0;  // |E(H_i)|
  std::size_t sub_aux_edges = 0;   // edges of the auxiliary subgraph of H_i
  int factor_target = 0;           // bound-based target (near-regular pipeline only)
  int factor = 0;                  // degree of the extracted factor
  int matchings = 0;
  int cycles = 0;
  int dropped_duplicates = 0;  // lifted cycles that reused an edge (only m = 2)
};

struct PackingResult {
  int theorem = 2;
  int n = 0;
  int k = 0;
  int ell = 0;
  int m = 0;
  std::size_t edge_count = 0;
  double alpha = 0;  // measured delta_{k-1}(H) / n
  int partitions_used = 0;
  int resamples = 0;
  bool resample_exhausted = false;
  std::vector<HamiltonCycle> cycles;
  std::vector<PartitionStats> partitions;
  PsiStatistics psi;
  std::size_t unassigned = 0;
  std::size_t covered_edges = 0;
  double coverage_ratio = 0;
  std::vector<std::string> warnings;
  // Near-regular pipeline: goal is at most delta_target * C(n,k) uncovered edges.
  double delta_target = 0;
  bool goal_met = false;
};

// Min-degree pipeline. Runs best-effort when the hypothesis fails (a warning
// is recorded).
PackingResult pack_theorem2(const Hypergraph& h, const PackingConfig& cfg);

// Near-regular pipeline. Throws InvalidInput when Delta_{k-1} - delta_{k-1} > 2 eps n.
PackingResult pack_theorem3(const Hypergraph& h, int ell, double delta_target, double epsilon,
                            std::uint64_t seed, unsigned threads = 1, int resample_limit = 10);

struct PackingCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

// Re-verifies a result from scratch: every cycle valid in h, no edge of h in
// two cycles, conservation of assigned and unassigned edges, coverage count.
PackingCheck verify_packing(const Hypergraph& h, const PackingResult& r);

nlohmann::json to_json(const PackingResult& r);
std::string partitions_csv(const PackingResult& r);

}  // namespace hamcycle
