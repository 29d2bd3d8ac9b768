#pragma once

// Experiment records, grid runner and CSV output.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccsub/chance.hpp"
#include "ccsub/graph.hpp"
#include "ccsub/greedy.hpp"
#include "ccsub/oracle.hpp"

namespace ccsub {

enum class Problem { mcp, imp, linear };
enum class DispersionMode { uniform, degree, file };
enum class Algorithm { ga, gga, ggma };

std::string_view problem_name(Problem p);
std::string_view dispersion_name(DispersionMode m);
std::string_view algorithm_name(Algorithm a);
// Throw InputError on unknown names.
Problem parse_problem(std::string_view s);
DispersionMode parse_dispersion(std::string_view s);
Algorithm parse_algorithm(std::string_view s);
Strategy parse_strategy(std::string_view s);

struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::ga;
  std::optional<Strategy> strategy;  // ignored (and written as "-") for ga

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

// GA plus {GGA, GGMA} x {s1, s2} restricted to the requested names.
std::vector<AlgorithmSpec> algorithm_grid(std::span<const Algorithm> algorithms,
                                          std::span<const Strategy> strategies);

struct RunRecord {
  Problem problem = Problem::linear;
  std::string graph = "-";
  Algorithm algorithm = Algorithm::ga;
  std::optional<Strategy> strategy;
  double budget = 0.0;
  double alpha = 0.0;
  DispersionMode dispersion = DispersionMode::file;
  std::uint64_t seed = 0;
  double f_value = 0.0;
  std::size_t solution_size = 0;
  double surrogate = 0.0;
  std::int64_t runtime_ms = 0;
  double mc_violation_rate = 0.0;
};

inline constexpr std::string_view kCsvHeader =
    "problem,graph,algorithm,strategy,B,alpha,dispersion_mode,seed,f_value,solution_size,"
    "surrogate,runtime_ms,mc_violation_rate";

// Shortest-free 17-significant-digit rendering used for every decimal field.
std::string format_decimal(double x);
std::string to_csv_row(const RunRecord& r);
void write_csv(std::ostream& out, std::span<const RunRecord> records);

// (graph, B, alpha, algorithm, strategy, seed) ordering of grid rows.
bool record_less(const RunRecord& a, const RunRecord& b);

// Raised when an algorithm returns a set whose Gamma exceeds B and which is
// not an exactly-certified GGA singleton.
class InfeasibleOutput : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SolveOptions {
  std::uint64_t mc_samples = 100000;
  std::uint64_t mc_seed = 0;
  bool timing = false;  // runtime_ms is 0 unless set, so CSVs stay byte-stable
  GreedyOptions greedy{};
};

// Runs one algorithm and fills f, size, surrogate, runtime and MC rate.
// Context fields (problem, graph, dispersion, seed) are copied from `label`.
RunRecord solve_one(const Instance& instance, const SubmodularOracle& oracle, const AlgorithmSpec& spec,
                    const RunRecord& label, const SolveOptions& options);

GreedyResult run_algorithm(const Instance& instance, const SubmodularOracle& oracle,
                           const ChanceParams& params, const AlgorithmSpec& spec, GreedyOptions options = {});

struct GridSpec {
  Problem problem = Problem::mcp;
  std::string graph_name;
  const Graph* graph = nullptr;
  DispersionMode dispersion = DispersionMode::uniform;
  std::vector<double> budgets;
  std::vector<double> alphas;
  std::vector<std::uint64_t> seeds;  // collapsed to {0} in degree mode
  std::vector<AlgorithmSpec> algorithms;
  std::uint64_t mc_samples = 100000;
  double ic_prob = 0.05;
  std::size_t ic_samples = 100;
  std::uint64_t ic_seed = 0;
  int jobs = 1;
  bool timing = false;
};

// Full Cartesian grid, rows sorted by record_less. One oracle is built per
// graph and shared by every cell.
std::vector<RunRecord> run_grid(const GridSpec& spec);

}  // namespace ccsub
