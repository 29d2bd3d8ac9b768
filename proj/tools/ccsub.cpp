// ccsub: solve, sweep and certify chance-constrained submodular instances.
//
// Exit codes: 0 success, 1 internal error (including an infeasible output),
// 2 usage or input error, 3 file I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccsub/chance.hpp"
#include "ccsub/error.hpp"
#include "ccsub/experiment.hpp"
#include "ccsub/graph.hpp"
#include "ccsub/greedy.hpp"
#include "ccsub/instances.hpp"
#include "ccsub/oracle.hpp"
#include "ccsub/validation.hpp"

using namespace ccsub;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphFlags {
  std::string path;
  std::string format = "edgelist";
  std::string problem = "mcp";
  std::string dispersion = "uniform";
  double ic_prob = 0.05;
  std::size_t ic_samples = 100;
  std::uint64_t ic_seed = 0;
};

struct SolveFlags {
  std::string instance;
  GraphFlags graph;
  std::string algorithm = "ggma";
  std::string strategy = "s2";
  std::optional<double> budget;
  std::optional<double> alpha;
  std::uint64_t seed = 0;
  std::uint64_t mc_samples = 100000;
  bool timing = false;
  bool members = false;
};

struct ExperimentFlags {
  GraphFlags graph;
  std::string graph_name;
  std::vector<double> budgets;
  std::vector<double> alphas;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  std::vector<std::string> algorithms = {"ga", "gga", "ggma"};
  std::vector<std::string> strategies = {"s1", "s2"};
  std::string out;
  std::uint64_t mc_samples = 100000;
  int jobs = 1;
  bool timing = false;
};

struct ValidateFlags {
  std::string instance;
  std::vector<ElementId> members;
  std::string algorithm;
  std::string strategy = "s2";
  std::uint64_t mc_samples = 100000;
  std::uint64_t seed = 0;
};

struct GenFlags {
  std::string family;
  std::string out;
  int budget = 5;
  std::optional<double> gamma;
  std::optional<int> n;
  std::optional<double> alpha;
  int epsilon = 5;
  double beta = 0.4;
  std::optional<double> budget_real;
  std::uint64_t seed = 0;
};

void add_graph_options(CLI::App* cmd, GraphFlags& g) {
  cmd->add_option("--format", g.format, "edgelist | dimacs | mtx");
  cmd->add_option("--problem", g.problem, "mcp | imp");
  cmd->add_option("--dispersion", g.dispersion, "uniform | degree");
  cmd->add_option("--ic-prob", g.ic_prob, "independent-cascade edge probability");
  cmd->add_option("--ic-samples", g.ic_samples, "live-edge samples");
  cmd->add_option("--ic-seed", g.ic_seed, "seed of the live-edge samples");
}

std::unique_ptr<SubmodularOracle> graph_oracle(const Graph& graph, const GraphFlags& g, Problem problem) {
  if (problem == Problem::mcp) return std::make_unique<CoverageOracle>(graph);
  if (problem == Problem::imp) {
    return std::make_unique<InfluenceOracle>(build_live_edge_samples(graph, g.ic_prob, g.ic_samples, g.ic_seed));
  }
  throw UsageError("--problem must be mcp or imp with --graph");
}

std::string join_ids(std::span<const ElementId> ids) {
  std::string out;
  for (std::size_t k = 0; k < ids.size(); ++k) out += (k ? " " : "") + std::to_string(ids[k]);
  return out;
}

AlgorithmSpec spec_from(const std::string& algorithm, const std::string& strategy) {
  const Algorithm a = parse_algorithm(algorithm);
  if (a == Algorithm::ga) return {a, std::nullopt};
  return {a, parse_strategy(strategy)};
}

int cmd_solve(const SolveFlags& f) {
  const bool has_graph = !f.graph.path.empty();
  if (has_graph == !f.instance.empty()) throw UsageError("give exactly one of --instance or --graph");
  const AlgorithmSpec spec = spec_from(f.algorithm, f.strategy);

  SolveOptions options;
  options.mc_samples = f.mc_samples;
  options.mc_seed = f.seed;
  options.timing = f.timing;

  RunRecord label;
  std::optional<Instance> instance;
  std::unique_ptr<SubmodularOracle> oracle;
  Graph graph;
  if (has_graph) {
    if (!f.budget || !f.alpha) throw UsageError("--graph needs --budget and --alpha");
    label.problem = parse_problem(f.graph.problem);
    label.dispersion = parse_dispersion(f.graph.dispersion);
    if (label.dispersion == DispersionMode::file) throw UsageError("--dispersion must be uniform or degree");
    graph = read_graph_file(f.graph.path, parse_graph_format(f.graph.format));
    label.graph = std::filesystem::path(f.graph.path).stem().string();
    label.seed = label.dispersion == DispersionMode::degree ? 0 : f.seed;
    const auto deltas = label.dispersion == DispersionMode::degree ? degree_dispersions(graph)
                                                                   : uniform_dispersions(graph.node_count(), f.seed);
    std::vector<Element> elements;
    for (std::size_t v = 0; v < deltas.size(); ++v) elements.push_back({static_cast<ElementId>(v), deltas[v]});
    instance.emplace(ChanceParams(*f.budget, *f.alpha), std::move(elements));
    oracle = graph_oracle(graph, f.graph, label.problem);
  } else {
    Instance read = read_instance_file(f.instance);
    if (f.budget || f.alpha) {
      read = read.with_params(ChanceParams(f.budget.value_or(read.params().budget()),
                                           f.alpha.value_or(read.params().alpha())));
    }
    instance.emplace(std::move(read));
    oracle = std::make_unique<LinearOracle>(linear_oracle_for(*instance));
    label.problem = Problem::linear;
    label.dispersion = DispersionMode::file;
    label.seed = f.seed;
  }

  const RunRecord record = solve_one(*instance, *oracle, spec, label, options);
  std::cout << kCsvHeader << '\n' << to_csv_row(record) << '\n';
  if (f.members) {
    const auto result = run_algorithm(*instance, *oracle, instance->params(), spec, options.greedy);
    std::cout << "members " << join_ids(result.solution) << '\n';
  }
  return 0;
}

int cmd_experiment(const ExperimentFlags& f) {
  if (f.graph.path.empty()) throw UsageError("experiment needs --graph");
  if (f.budgets.empty() || f.alphas.empty()) throw UsageError("experiment needs --budgets and --alphas");
  if (f.out.empty()) throw UsageError("experiment needs --out");

  const Graph graph = read_graph_file(f.graph.path, parse_graph_format(f.graph.format));
  std::vector<Algorithm> algorithms;
  for (const auto& a : f.algorithms) algorithms.push_back(parse_algorithm(a));
  std::vector<Strategy> strategies;
  for (const auto& s : f.strategies) strategies.push_back(parse_strategy(s));

  GridSpec spec;
  spec.problem = parse_problem(f.graph.problem);
  spec.graph_name = f.graph_name.empty() ? std::filesystem::path(f.graph.path).stem().string() : f.graph_name;
  spec.graph = &graph;
  spec.dispersion = parse_dispersion(f.graph.dispersion);
  spec.budgets = f.budgets;
  spec.alphas = f.alphas;
  spec.seeds = f.seeds;
  spec.algorithms = algorithm_grid(algorithms, strategies);
  spec.mc_samples = f.mc_samples;
  spec.ic_prob = f.graph.ic_prob;
  spec.ic_samples = f.graph.ic_samples;
  spec.ic_seed = f.graph.ic_seed;
  spec.jobs = f.jobs;
  spec.timing = f.timing;
  const auto records = run_grid(spec);

  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + f.out);
  write_csv(out, records);
  if (!out) throw std::ios_base::failure("write failed for " + f.out);
  std::cerr << "wrote " << records.size() << " rows to " << f.out << '\n';
  return 0;
}

int cmd_validate(const ValidateFlags& f) {
  const Instance instance = read_instance_file(f.instance);
  const ChanceParams& params = instance.params();
  std::vector<ElementId> members = f.members;
  if (!f.algorithm.empty()) {
    if (!members.empty()) throw UsageError("give --members or --algorithm, not both");
    const LinearOracle oracle = linear_oracle_for(instance);
    members = run_algorithm(instance, oracle, params, spec_from(f.algorithm, f.strategy)).solution;
  }

  SelectionState state(params);
  for (ElementId id : members) {
    if (state.contains(id)) throw InputError("duplicate member " + std::to_string(id));
    state.insert(instance[instance.require_index(id)]);
  }
  const double rate =
      members.empty() ? 0.0 : mc_violation_estimate(members, instance, params, f.mc_samples, f.seed);
  std::cout << "members " << join_ids(members) << '\n';
  std::cout << "surrogate " << format_decimal(state.surrogate()) << '\n';
  std::cout << "budget " << format_decimal(params.budget()) << '\n';
  std::cout << "surrogate_feasible " << (state.surrogate() <= params.budget() ? "yes" : "no") << '\n';
  std::cout << "alpha " << format_decimal(params.alpha()) << '\n';
  std::cout << "mc_samples " << f.mc_samples << '\n';
  std::cout << "mc_violation_rate " << format_decimal(rate) << '\n';
  if (members.size() == 1) {
    std::cout << "exact_violation_prob "
              << format_decimal(single_violation_prob(instance[instance.require_index(members[0])].delta,
                                                      params.budget()))
              << '\n';
  }
  return 0;
}

int cmd_oracle(const std::string& path) {
  const Instance instance = read_instance_file(path);
  const LinearOracle oracle = linear_oracle_for(instance);
  const ValidationReport report = check_theorem_bounds(instance, oracle, instance.params());
  std::cout << "opt_surrogate " << format_decimal(report.opt_surrogate_value) << '\n';
  std::cout << "opt_surrogate_set " << join_ids(report.opt_surrogate_set) << '\n';
  std::cout << "opt_det " << format_decimal(report.opt_det_value) << '\n';
  std::cout << "opt_det_set " << join_ids(report.opt_det_set) << '\n';
  std::cout << "algorithm,strategy,f_value,surrogate,ratio,solution\n";
  for (const auto& o : report.outcomes) {
    std::cout << o.algorithm << ',' << (o.strategy ? strategy_name(*o.strategy) : "-") << ','
              << format_decimal(o.objective) << ',' << format_decimal(o.surrogate) << ',' << format_decimal(o.ratio)
              << ',' << join_ids(o.solution) << '\n';
  }
  std::cout << "property_failures " << report.property_failures.size() << '\n';
  for (const auto& failure : report.property_failures) {
    std::cout << "  " << failure.property << ": " << failure.witness << '\n';
  }
  return 0;
}

int cmd_gen(const GenFlags& f) {
  if (f.out.empty()) throw UsageError("gen needs --out");
  Instance instance = [&] {
    if (f.family == "i1") {
      return build_i1({f.budget, f.gamma.value_or(I1Params{}.gamma), f.n, f.alpha}).instance;
    }
    if (f.family == "i2") {
      I2Params p;
      p.epsilon = f.epsilon;
      p.n = f.n;
      if (f.alpha) p.alpha = *f.alpha;
      if (f.gamma) p.gamma = *f.gamma;
      p.beta = f.beta;
      return build_i2(p).instance;
    }
    if (f.family == "random") {
      if (!f.n) throw UsageError("random family needs --n");
      return build_random_instance(*f.n, f.budget_real.value_or(f.budget), f.alpha.value_or(0.1), f.seed);
    }
    throw UsageError("--family must be i1, i2 or random");
  }();
  write_instance_file(f.out, instance);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chance-constrained submodular maximization with a Chebyshev surrogate"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "run one algorithm and print a CSV record");
  solve_cmd->add_option("--instance", solve.instance, "instance file (linear objective)");
  solve_cmd->add_option("--graph", solve.graph.path, "graph file");
  add_graph_options(solve_cmd, solve.graph);
  solve_cmd->add_option("--algorithm", solve.algorithm, "ga | gga | ggma");
  solve_cmd->add_option("--strategy", solve.strategy, "s1 | s2");
  solve_cmd->add_option("--budget", solve.budget, "budget B");
  solve_cmd->add_option("--alpha", solve.alpha, "failure probability");
  solve_cmd->add_option("--seed", solve.seed, "dispersion and Monte-Carlo seed");
  solve_cmd->add_option("--mc-samples", solve.mc_samples, "Monte-Carlo samples (0 disables)");
  solve_cmd->add_flag("--timing", solve.timing, "fill runtime_ms");
  solve_cmd->add_flag("--members", solve.members, "also print the solution ids");

  ExperimentFlags exp;
  auto* exp_cmd = app.add_subcommand("experiment", "run a (B, alpha, seed, algorithm) grid to CSV");
  exp_cmd->add_option("--graph", exp.graph.path, "graph file")->required();
  add_graph_options(exp_cmd, exp.graph);
  exp_cmd->add_option("--graph-name", exp.graph_name, "name written to the graph column");
  exp_cmd->add_option("--budgets", exp.budgets, "budgets")->delimiter(',');
  exp_cmd->add_option("--alphas", exp.alphas, "failure probabilities")->delimiter(',');
  exp_cmd->add_option("--seeds", exp.seeds, "dispersion seeds")->delimiter(',');
  exp_cmd->add_option("--algorithms", exp.algorithms, "subset of ga,gga,ggma")->delimiter(',');
  exp_cmd->add_option("--strategies", exp.strategies, "subset of s1,s2")->delimiter(',');
  exp_cmd->add_option("--out", exp.out, "output CSV");
  exp_cmd->add_option("--mc-samples", exp.mc_samples, "Monte-Carlo samples per row");
  exp_cmd->add_option("--jobs", exp.jobs, "parallel grid cells")->check(CLI::PositiveNumber);
  exp_cmd->add_flag("--timing", exp.timing, "fill runtime_ms (breaks byte-identical output)");

  ValidateFlags val;
  auto* val_cmd = app.add_subcommand("validate", "Monte-Carlo check of a solution");
  val_cmd->add_option("--instance", val.instance, "instance file")->required();
  val_cmd->add_option("--members", val.members, "solution ids")->delimiter(',');
  val_cmd->add_option("--algorithm", val.algorithm, "solve first with ga | gga | ggma");
  val_cmd->add_option("--strategy", val.strategy, "s1 | s2");
  val_cmd->add_option("--mc-samples", val.mc_samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  val_cmd->add_option("--seed", val.seed, "Monte-Carlo seed");

  std::string oracle_instance;
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive optima and approximation ratios (n <= 25)");
  oracle_cmd->add_option("--instance", oracle_instance, "instance file")->required();

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "write an instance file");
  gen_cmd->add_option("--family", gen.family, "i1 | i2 | random")->required();
  gen_cmd->add_option("--out", gen.out, "output path");
  gen_cmd->add_option("--B", gen.budget, "integer budget (i1, random)");
  gen_cmd->add_option("--budget", gen.budget_real, "real budget (random)");
  gen_cmd->add_option("--gamma", gen.gamma, "gamma (i1 default 0.9, i2 default 0.1)");
  gen_cmd->add_option("--n", gen.n, "element count");
  gen_cmd->add_option("--alpha", gen.alpha, "failure probability");
  gen_cmd->add_option("--epsilon", gen.epsilon, "epsilon (i2)");
  gen_cmd->add_option("--beta", gen.beta, "beta (i2)");
  gen_cmd->add_option("--seed", gen.seed, "dispersion seed (random)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve);
    if (*exp_cmd) return cmd_experiment(exp);
    if (*val_cmd) return cmd_validate(val);
    if (*oracle_cmd) return cmd_oracle(oracle_instance);
    if (*gen_cmd) return cmd_gen(gen);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "ccsub: " << e.what() << '\n';
    return kExitIo;
  } catch (const InfeasibleOutput& e) {
    std::cerr << "ccsub: infeasible output: " << e.what() << '\n';
    return kExitInternal;
  } catch (const UsageError& e) {
    std::cerr << "ccsub: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RefusalError& e) {
    std::cerr << "ccsub: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "ccsub: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ccsub: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "ccsub: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ccsub: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
