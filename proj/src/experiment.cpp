#include "ccsub/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <memory>
#include <ostream>
#include <string>
#include <tuple>

#include "ccsub/error.hpp"
#include "ccsub/instances.hpp"

namespace ccsub {

std::string_view problem_name(Problem p) {
  switch (p) {
    case Problem::mcp:
      return "mcp";
    case Problem::imp:
      return "imp";
    case Problem::linear:
      return "linear";
  }
  return "?";
}

std::string_view dispersion_name(DispersionMode m) {
  switch (m) {
    case DispersionMode::uniform:
      return "uniform";
    case DispersionMode::degree:
      return "degree";
    case DispersionMode::file:
      return "file";
  }
  return "?";
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ga:
      return "ga";
    case Algorithm::gga:
      return "gga";
    case Algorithm::ggma:
      return "ggma";
  }
  return "?";
}

Problem parse_problem(std::string_view s) {
  if (s == "mcp") return Problem::mcp;
  if (s == "imp") return Problem::imp;
  if (s == "linear") return Problem::linear;
  throw InputError("unknown problem '" + std::string(s) + "'");
}

DispersionMode parse_dispersion(std::string_view s) {
  if (s == "uniform") return DispersionMode::uniform;
  if (s == "degree") return DispersionMode::degree;
  if (s == "file") return DispersionMode::file;
  throw InputError("unknown dispersion mode '" + std::string(s) + "'");
}

Algorithm parse_algorithm(std::string_view s) {
  if (s == "ga") return Algorithm::ga;
  if (s == "gga") return Algorithm::gga;
  if (s == "ggma") return Algorithm::ggma;
  throw InputError("unknown algorithm '" + std::string(s) + "'");
}

Strategy parse_strategy(std::string_view s) {
  if (s == "s1") return Strategy::dispersion_sum;
  if (s == "s2") return Strategy::surrogate_weight;
  throw InputError("unknown strategy '" + std::string(s) + "'");
}

std::vector<AlgorithmSpec> algorithm_grid(std::span<const Algorithm> algorithms,
                                          std::span<const Strategy> strategies) {
  std::vector<AlgorithmSpec> out;
  for (Algorithm a : algorithms) {
    if (a == Algorithm::ga) {
      out.push_back({a, std::nullopt});
      continue;
    }
    for (Strategy s : strategies) out.push_back({a, s});
  }
  return out;
}

std::string format_decimal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_csv_row(const RunRecord& r) {
  std::string row;
  row += problem_name(r.problem);
  row += ',' + r.graph;
  row += ',';
  row += algorithm_name(r.algorithm);
  row += ',';
  row += r.strategy ? strategy_name(*r.strategy) : std::string_view("-");
  row += ',' + format_decimal(r.budget);
  row += ',' + format_decimal(r.alpha);
  row += ',';
  row += dispersion_name(r.dispersion);
  row += ',' + std::to_string(r.seed);
  row += ',' + format_decimal(r.f_value);
  row += ',' + std::to_string(r.solution_size);
  row += ',' + format_decimal(r.surrogate);
  row += ',' + std::to_string(r.runtime_ms);
  row += ',' + format_decimal(r.mc_violation_rate);
  return row;
}

void write_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << to_csv_row(r) << '\n';
}

bool record_less(const RunRecord& a, const RunRecord& b) {
  auto strategy_rank = [](const RunRecord& r) { return r.strategy ? 1 + static_cast<int>(*r.strategy) : 0; };
  return std::forward_as_tuple(a.graph, a.budget, a.alpha, a.algorithm, strategy_rank(a), a.seed) <
         std::forward_as_tuple(b.graph, b.budget, b.alpha, b.algorithm, strategy_rank(b), b.seed);
}

GreedyResult run_algorithm(const Instance& instance, const SubmodularOracle& oracle, const ChanceParams& params,
                           const AlgorithmSpec& spec, GreedyOptions options) {
  switch (spec.algorithm) {
    case Algorithm::ga:
      return run_ga(instance, oracle, params, options);
    case Algorithm::gga:
      return run_gga(instance, oracle, params, spec.strategy.value_or(Strategy::surrogate_weight), options);
    case Algorithm::ggma:
      return run_ggma(instance, oracle, params, spec.strategy.value_or(Strategy::surrogate_weight), options);
  }
  throw std::logic_error("unhandled algorithm");
}

RunRecord solve_one(const Instance& instance, const SubmodularOracle& oracle, const AlgorithmSpec& spec,
                    const RunRecord& label, const SolveOptions& options) {
  const ChanceParams& params = instance.params();
  const auto start = std::chrono::steady_clock::now();
  const GreedyResult result = run_algorithm(instance, oracle, params, spec, options.greedy);
  const auto elapsed = std::chrono::steady_clock::now() - start;

  if (result.surrogate > params.budget()) {
    // Only the GGA singleton swap may exceed the surrogate budget, and only
    // when its exact violation probability is within alpha.
    const bool certified =
        result.swapped_singleton &&
        single_violation_prob(instance[instance.require_index(*result.swapped_singleton)].delta, params.budget()) <=
            params.alpha();
    if (!certified) {
      throw InfeasibleOutput(std::string(algorithm_name(spec.algorithm)) + " returned Gamma " +
                             format_decimal(result.surrogate) + " > B " + format_decimal(params.budget()));
    }
  }

  RunRecord r = label;
  r.algorithm = spec.algorithm;
  r.strategy = spec.algorithm == Algorithm::ga ? std::nullopt : spec.strategy;
  r.budget = params.budget();
  r.alpha = params.alpha();
  r.f_value = result.objective;
  r.solution_size = result.solution.size();
  r.surrogate = result.surrogate;
  r.runtime_ms =
      options.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() : std::int64_t{0};
  r.mc_violation_rate =
      options.mc_samples > 0
          ? mc_violation_estimate(result.solution, instance, params, options.mc_samples, options.mc_seed)
          : 0.0;
  return r;
}

std::vector<RunRecord> run_grid(const GridSpec& spec) {
  if (spec.graph == nullptr) throw InputError("grid needs a graph");
  if (spec.problem == Problem::linear) throw InputError("grid runs only mcp or imp problems");
  const Graph& graph = *spec.graph;

  std::unique_ptr<SubmodularOracle> oracle;
  if (spec.problem == Problem::mcp) {
    oracle = std::make_unique<CoverageOracle>(graph);
  } else {
    oracle = std::make_unique<InfluenceOracle>(
        build_live_edge_samples(graph, spec.ic_prob, spec.ic_samples, spec.ic_seed));
  }

  std::vector<std::uint64_t> seeds = spec.seeds;
  if (spec.dispersion == DispersionMode::degree) seeds = {0};
  if (spec.dispersion == DispersionMode::file) throw InputError("grid dispersion must be uniform or degree");

  struct Task {
    std::size_t seed_slot;
    double budget;
    double alpha;
    AlgorithmSpec algorithm;
  };
  std::vector<std::vector<Element>> elements(seeds.size());
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const auto deltas = spec.dispersion == DispersionMode::degree ? degree_dispersions(graph)
                                                                  : uniform_dispersions(graph.node_count(), seeds[k]);
    for (std::size_t v = 0; v < deltas.size(); ++v) elements[k].push_back({static_cast<ElementId>(v), deltas[v]});
  }
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    for (double b : spec.budgets) {
      for (double a : spec.alphas) {
        for (const auto& alg : spec.algorithms) tasks.push_back({k, b, a, alg});
      }
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  const auto count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, spec.jobs))
  for (std::int64_t t = 0; t < count; ++t) {
    try {
      const Task& task = tasks[t];
      const Instance instance(ChanceParams(task.budget, task.alpha), elements[task.seed_slot]);
      RunRecord label;
      label.problem = spec.problem;
      label.graph = spec.graph_name;
      label.dispersion = spec.dispersion;
      label.seed = seeds[task.seed_slot];
      SolveOptions options;
      options.mc_samples = spec.mc_samples;
      options.mc_seed = label.seed;
      options.timing = spec.timing;
      records[t] = solve_one(instance, *oracle, task.algorithm, label, options);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::stable_sort(records.begin(), records.end(), record_less);
  return records;
}

}  // namespace ccsub
