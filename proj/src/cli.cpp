#include "hamcycle/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hamcycle/bipartite.hpp"
#include "hamcycle/census.hpp"
#include "hamcycle/constructions.hpp"
#include "hamcycle/errors.hpp"
#include "hamcycle/hypergraph.hpp"
#include "hamcycle/packer.hpp"
#include "hamcycle/randomlab.hpp"
#include "hamcycle/reduction.hpp"
#include "hamcycle/rng.hpp"

namespace hamcycle {

namespace {

using nlohmann::json;

struct Params {
  std::string input;
  std::string out;
  std::string cycle;
  std::string manifest;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  int ell = 1;
  double alpha_prime = 0.55;
  double epsilon = 0.05;
  std::optional<int> r;
  int trials = 100;
  int theorem = 2;
  int n = 0;
  int k = 3;
  int d = 0;
  double p = 0.5;
  double alpha = 1.0;
  double rho = 1.0;
  double delta = 0.5;
  double delta_target = 0.1;
  double slack = 0.1;
  int resample_limit = 10;
  int complete_m = 0;
  int parts = 2;
  std::string lemma = "key2";
  bool complete = false;
  bool random = false;
  bool parity = false;
  bool count_matchings = false;
};

struct Outcome {
  json doc;
  std::vector<std::pair<std::string, std::string>> extras;  // (suffix, content)
  int code = kExitOk;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Hypergraph load_hypergraph(const Params& p) {
  if (p.input.empty()) throw InvalidInput("--input is required");
  return read_hypergraph(p.input);
}

// Writes to a temporary sibling and renames, so readers never see partial files.
void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

json degree_json(const DegreeReport& r) {
  return json{{"d", r.d},
              {"min_degree", r.min_degree},
              {"max_degree", r.max_degree},
              {"witness_min", r.witness_min},
              {"witness_max", r.witness_max}};
}

json certificate_json(const ParityCertificate& c) {
  return json{{"r", c.r},
              {"part_a_size", c.part_a_size},
              {"part_a_odd", c.part_a_odd},
              {"all_edges_even", c.all_edges_even},
              {"contradiction", c.contradiction},
              {"no_r_factor", c.no_r_factor},
              {"exhaustive_checked", c.exhaustive_checked},
              {"perfect_matchings_found", c.perfect_matchings_found}};
}

json factor_json(const Factor& f) {
  json edges = json::array();
  for (const auto& [s, t] : f.edges) edges.push_back({s, t});
  return json{{"r", f.r}, {"edges", edges}};
}

Outcome run_gen(const Params& p) {
  const int kinds = int(p.complete) + int(p.random) + int(p.parity);
  if (kinds != 1) throw InvalidInput("choose exactly one of --complete, --random, --parity");
  Outcome o;
  if (p.complete) {
    o.doc = to_json(complete_hypergraph(p.n, p.k));
  } else if (p.random) {
    o.doc = to_json(random_hypergraph(p.n, p.k, p.p, derive_seed(p.seed, "gen")));
  } else {
    o.doc = to_json(parity_hypergraph(p.n, p.k).h);
  }
  return o;
}

Outcome run_degrees(const Params& p) {
  const Hypergraph h = load_hypergraph(p);
  const int d = p.d > 0 ? p.d : h.k() - 1;
  Outcome o;
  o.doc = json{{"n", h.n()}, {"k", h.k()}, {"edge_count", h.edge_count()},
               {"degrees", degree_json(degree_report(h, d))}};
  return o;
}

Outcome run_count(const Params& p) {
  const Hypergraph h = load_hypergraph(p);
  Outcome o;
  o.doc = to_json(empirical_vs_bound(h, p.ell, p.slack, p.threads));
  return o;
}

Outcome run_bound(const Params& p) {
  auto finite_or_null = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  const double log_bound = theorem1_bound(p.n, p.k, p.ell, p.alpha);
  const double log_expected = expected_count(p.n, p.k, p.ell, p.p);
  Outcome o;
  o.doc = json{{"n", p.n},
               {"k", p.k},
               {"ell", p.ell},
               {"alpha", p.alpha},
               {"p", p.p},
               {"log_lower_bound", finite_or_null(log_bound)},
               {"log_expected_count", finite_or_null(log_expected)},
               {"expected_note", std::isfinite(log_expected) ? "" : "no cycles expected"}};
  return o;
}

Outcome run_reduce(const Params& p) {
  const Hypergraph h = load_hypergraph(p);
  const PartitionScheme scheme = sample_scheme(h, p.ell, derive_seed(p.seed, "reduce"));
  const AuxGraph aux = build_aux_graph(h, scheme);
  Outcome o;
  o.doc = json{{"scheme", to_json(scheme)},
               {"aux_graph", to_json(aux.graph)},
               {"min_degree", aux.graph.min_degree()},
               {"max_degree", aux.graph.max_degree()}};
  return o;
}

Outcome run_factor(const Params& p) {
  if (p.input.empty()) throw InvalidInput("--input is required");
  const json j = read_json_file(p.input);
  Outcome o;
  if (j.is_object() && j.contains("k")) {
    const Hypergraph h = hypergraph_from_json(j);
    if (h.n() > kExhaustiveMatchingMaxN) {
      throw SizeLimit("exhaustive hypergraph perfect-matching search is limited to n <= " +
                      std::to_string(kExhaustiveMatchingMaxN));
    }
    o.doc = json{{"kind", "hypergraph"},
                 {"n", h.n()},
                 {"k", h.k()},
                 {"perfect_matchings_found", count_hypergraph_perfect_matchings(h)},
                 {"exhaustive", true}};
    if (is_parity_hypergraph(h) && h.n() % h.k() == 0) {
      const ParityConstruction c = parity_hypergraph(h.n(), h.k());
      json certs = json::array();
      std::vector<int> rs = p.r ? std::vector<int>{*p.r} : std::vector<int>{1, 3, 5};
      for (int r : rs) certs.push_back(certificate_json(verify_no_odd_factor(c, r)));
      o.doc["parity_certificates"] = certs;
    }
    return o;
  }
  const BipartiteGraph g = bipartite_from_json(j);
  o.doc = json{{"kind", "bipartite"}, {"m", g.m()}, {"min_degree", g.min_degree()}};
  Factor f;
  if (p.r) {
    auto found = find_factor(g, *p.r);
    o.doc["r"] = *p.r;
    o.doc["exists"] = found.has_value();
    if (g.m() <= kGaleRyserMaxM) {
      const auto w = gale_ryser_check(g, *p.r);
      o.doc["gale_ryser"] = json{{"holds", w.holds}, {"x", w.x}, {"y", w.y}};
      if (w.holds != found.has_value()) {
        o.code = kExitInvariantFailure;
        o.doc["error"] = "Gale-Ryser predicate and flow finder disagree";
      }
    }
    if (!found) return o;
    f = *found;
  } else {
    const MaxFactor best = max_factor(g);
    o.doc["r_star"] = best.r;
    f = best.factor;
  }
  o.doc["factor"] = factor_json(f);
  json matchings = json::array();
  for (const auto& m : peel_matchings(f, g)) matchings.push_back(m);
  o.doc["matchings"] = matchings;
  if (p.count_matchings) o.doc["perfect_matchings"] = bigint_to_json(count_perfect_matchings(g));
  return o;
}

Outcome run_pack(const Params& p) {
  const Hypergraph h = load_hypergraph(p);
  PackingResult result;
  const std::uint64_t seed = derive_seed(p.seed, "pack");
  if (p.theorem == 2) {
    PackingConfig cfg;
    cfg.ell = p.ell;
    cfg.alpha_prime = p.alpha_prime;
    cfg.epsilon = p.epsilon;
    cfg.num_partitions = p.r;
    cfg.resample_limit = p.resample_limit;
    cfg.seed = seed;
    cfg.threads = p.threads;
    result = pack_theorem2(h, cfg);
  } else if (p.theorem == 3) {
    result = pack_theorem3(h, p.ell, p.delta_target, p.epsilon, seed, p.threads, p.resample_limit);
  } else {
    throw InvalidInput("--theorem must be 2 or 3");
  }
  Outcome o;
  const PackingCheck check = verify_packing(h, result);
  o.doc = to_json(result);
  o.doc["verification"] = json{{"ok", check.ok}, {"failures", check.failures}};
  if (!check.ok) o.code = kExitInvariantFailure;
  o.extras.emplace_back(".partitions.csv", partitions_csv(result));
  return o;
}

Outcome run_mc_factor(const Params& p) {
  BipartiteGraph g;
  if (p.complete_m > 0) {
    g = BipartiteGraph::complete(p.complete_m);
  } else if (!p.input.empty()) {
    g = bipartite_from_json(read_json_file(p.input));
  } else {
    throw InvalidInput("give --input (bipartite graph) or --complete-m");
  }
  const auto report = run_theorem4(g, p.rho, p.p, p.epsilon, p.trials,
                                   derive_seed(p.seed, "mc-factor"), p.threads);
  Outcome o;
  o.doc = to_json(report);
  o.extras.emplace_back(".csv", theorem4_csv(report));
  return o;
}

Outcome run_mc_partition(const Params& p) {
  const Hypergraph h = load_hypergraph(p);
  const std::uint64_t seed = derive_seed(p.seed, "mc-partition");
  PartitionTrialReport report;
  if (p.lemma == "key1") {
    if (p.parts < 1 || h.n() % p.parts != 0) {
      throw InvalidInput("--parts must divide n for equal part sizes");
    }
    report = run_lemma_key1(h, std::vector<int>(p.parts, h.n() / p.parts), p.delta, p.epsilon,
                            p.trials, seed, p.threads);
  } else if (p.lemma == "key2") {
    report = run_lemma_key2(h, p.ell, p.delta, p.epsilon, p.trials, seed, p.threads);
  } else {
    throw InvalidInput("--lemma must be key1 or key2");
  }
  Outcome o;
  o.doc = to_json(report);
  o.extras.emplace_back(".csv", partition_csv(report));
  return o;
}

Outcome run_verify(const Params& p) {
  const Hypergraph h = load_hypergraph(p);
  if (p.cycle.empty()) throw InvalidInput("--cycle is required");
  const HamiltonCycle c = cycle_from_json(read_json_file(p.cycle), h.k());
  const CycleCheck check = verify_cycle(h, c);
  Outcome o;
  o.doc = json{{"ok", check.ok}, {"failure", check.failure}, {"offending", check.offending}};
  if (!check.ok) o.code = kExitInvariantFailure;
  return o;
}

void add_common(CLI::App* sub, Params& p) {
  sub->add_option("--out", p.out, "Write the result here (plus a .manifest.json alongside)");
  sub->add_option("--seed", p.seed, "Master seed");
  sub->add_option("--threads", p.threads, "Worker threads (output is identical for any value)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Params p;
  CLI::App app{"Hamilton l-cycle counting and packing toolkit", "hamcycle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::map<std::string, std::function<Outcome(const Params&)>> runners;

  auto* gen = app.add_subcommand("gen", "Generate a hypergraph (complete, random or parity)");
  add_common(gen, p);
  gen->add_flag("--complete", p.complete, "Complete k-uniform hypergraph");
  gen->add_flag("--random", p.random, "Random hypergraph with edge probability --p");
  gen->add_flag("--parity", p.parity, "Parity construction without odd factors");
  gen->add_option("--n", p.n, "Vertex count")->required();
  gen->add_option("--k", p.k, "Uniformity");
  gen->add_option("--p", p.p, "Edge probability");
  runners["gen"] = run_gen;

  auto* degrees = app.add_subcommand("degrees", "Exact minimum/maximum d-degrees");
  add_common(degrees, p);
  degrees->add_option("--input", p.input, "Hypergraph JSON")->required();
  degrees->add_option("--d", p.d, "Subset size (default k-1)");
  runners["degrees"] = run_degrees;

  auto* count = app.add_subcommand("count", "Exact Hamilton cycle count vs. the lower bound");
  add_common(count, p);
  count->add_option("--input", p.input, "Hypergraph JSON")->required();
  count->add_option("--ell", p.ell, "Consecutive-edge overlap");
  count->add_option("--slack", p.slack, "Per-vertex log slack for the bound check");
  runners["count"] = run_count;

  auto* bound = app.add_subcommand("bound", "Evaluate the counting formulas in log space");
  add_common(bound, p);
  bound->add_option("--n", p.n, "Vertex count")->required();
  bound->add_option("--k", p.k, "Uniformity");
  bound->add_option("--ell", p.ell, "Consecutive-edge overlap");
  bound->add_option("--alpha", p.alpha, "Minimum-degree ratio for the lower bound");
  bound->add_option("--p", p.p, "Edge probability for the expected count");
  runners["bound"] = run_bound;

  auto* reduce = app.add_subcommand("reduce", "Sample a partition scheme and emit its auxiliary graph");
  add_common(reduce, p);
  reduce->add_option("--input", p.input, "Hypergraph JSON")->required();
  reduce->add_option("--ell", p.ell, "Consecutive-edge overlap");
  runners["reduce"] = run_reduce;

  auto* factor = app.add_subcommand("factor", "Factors of a bipartite graph, or perfect matchings of a hypergraph");
  add_common(factor, p);
  factor->add_option("--input", p.input, "Bipartite graph or hypergraph JSON")->required();
  factor->add_option("--r", p.r, "Factor degree (default: largest)");
  factor->add_flag("--count-matchings", p.count_matchings, "Also count perfect matchings");
  runners["factor"] = run_factor;

  auto* pack = app.add_subcommand("pack", "Pack edge-disjoint Hamilton cycles");
  add_common(pack, p);
  pack->add_option("--input", p.input, "Hypergraph JSON")->required();
  pack->add_option("--theorem", p.theorem, "Pipeline: 2 (min-degree) or 3 (near-regular)");
  pack->add_option("--ell", p.ell, "Consecutive-edge overlap");
  pack->add_option("--alpha-prime", p.alpha_prime, "Target density alpha'");
  pack->add_option("--epsilon", p.epsilon, "Slack epsilon");
  pack->add_option("--r", p.r, "Number of random partitions");
  pack->add_option("--delta", p.delta_target, "Uncovered-edge goal (pipeline 3)");
  pack->add_option("--resample-limit", p.resample_limit, "Retries per partition");
  runners["pack"] = run_pack;

  auto* mcf = app.add_subcommand("mc-factor", "Monte Carlo: factors of random subgraphs");
  add_common(mcf, p);
  mcf->add_option("--input", p.input, "Bipartite graph JSON");
  mcf->add_option("--complete-m", p.complete_m, "Use K_{m,m} instead of --input");
  mcf->add_option("--rho", p.rho, "Factor density of the host graph");
  mcf->add_option("--p", p.p, "Edge retention probability");
  mcf->add_option("--epsilon", p.epsilon, "Slack epsilon");
  mcf->add_option("--trials", p.trials, "Number of trials");
  runners["mc-factor"] = run_mc_factor;

  auto* mcp = app.add_subcommand("mc-partition", "Monte Carlo: random partition trials");
  add_common(mcp, p);
  mcp->add_option("--input", p.input, "Hypergraph JSON")->required();
  mcp->add_option("--lemma", p.lemma, "key1 or key2");
  mcp->add_option("--ell", p.ell, "Consecutive-edge overlap (key2)");
  mcp->add_option("--delta", p.delta, "Degree ratio delta");
  mcp->add_option("--epsilon", p.epsilon, "Slack epsilon");
  mcp->add_option("--parts", p.parts, "Number of equal parts (key1)");
  mcp->add_option("--trials", p.trials, "Number of trials");
  runners["mc-partition"] = run_mc_partition;

  auto* verify = app.add_subcommand("verify", "Check a cycle file against a hypergraph");
  add_common(verify, p);
  verify->add_option("--input", p.input, "Hypergraph JSON")->required();
  verify->add_option("--cycle", p.cycle, "Cycle JSON")->required();
  runners["verify"] = run_verify;

  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("--manifest", p.manifest, "Manifest JSON")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalidInput;
  }

  if (replay->parsed()) {
    try {
      const json m = read_json_file(p.manifest);
      if (!m.contains("argv") || !m["argv"].is_array()) {
        throw ParseError("manifest has no \"argv\" array");
      }
      return cli_dispatch(m["argv"].get<std::vector<std::string>>(), out, err);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitInvalidInput;
    }
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    Outcome outcome = runners.at(command)(p);

    json params = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      const auto& results = opt->results();
      params[opt->get_name()] = results.size() == 1 ? json(results.front()) : json(results);
    }
    json inputs = json::array();
    for (const std::string& path : {p.input, p.cycle}) {
      if (!path.empty()) inputs.push_back({{"path", path}, {"fnv1a64", file_digest(path)}});
    }
    json outputs = json::array();
    if (!p.out.empty()) {
      outputs.push_back(p.out);
      for (const auto& [suffix, _] : outcome.extras) outputs.push_back(p.out + suffix);
    }
    const json manifest{{"command", command},
                        {"argv", args},
                        {"parameters", params},
                        {"master_seed", p.seed},
                        {"version", kVersion},
                        {"inputs", inputs},
                        {"outputs", outputs}};

    if (p.out.empty()) {
      json doc = outcome.doc;
      doc["manifest"] = manifest;
      out << doc.dump(2) << '\n';
    } else {
      write_atomically(p.out, outcome.doc.dump(2) + "\n");
      for (const auto& [suffix, content] : outcome.extras) write_atomically(p.out + suffix, content);
      write_atomically(p.out + ".manifest.json", manifest.dump(2) + "\n");
    }
    return outcome.code;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariantFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

}  // namespace hamcycle
