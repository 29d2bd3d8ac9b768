#pragma once

// GA, GGA and GGMA for the chance-constrained problem.
//
// All three scan the remaining candidates for the best criterion value.
// Ties are broken by the larger f-gain and then by the smaller element id.
// With Strategy I an element of zero dispersion has ratio +inf, and a zero
// f-gain always has ratio 0.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ccsub/chance.hpp"
#include "ccsub/oracle.hpp"

namespace ccsub {

enum class Strategy {
  dispersion_sum,    // h(S) = sum of delta^2
  surrogate_weight,  // h(S) = Gamma(S)
};

std::string_view strategy_name(Strategy s);  // "s1" / "s2"

// Denominator h(S + v) - h(S) of the ratio rule.
double strategy_denominator(Strategy strategy, const SelectionState& state, const Element& element);

struct TraceStep {
  std::size_t step = 0;
  ElementId id = 0;
  double f_gain = 0.0;
  double denominator = 0.0;
  double surrogate_after = 0.0;  // Gamma of the set after the decision
  bool accepted = false;
};

struct GreedyResult {
  std::vector<ElementId> solution;  // insertion order
  double objective = 0.0;           // oracle.eval(solution)
  double surrogate = 0.0;
  std::vector<TraceStep> trace;
  std::optional<ElementId> swapped_singleton;  // GGA final swap, when taken
  std::vector<double> best_history;            // GGMA: f(T) after every improvement
};

struct GreedyOptions {
  // Skip exact gain evaluations that provably cannot win the scan, using
  // stale gains as upper bounds (valid for submodular oracles). Results are
  // identical with lazy = false.
  bool lazy = true;
  // Evaluate full gain sweeps with the OpenMP kernel.
  bool parallel = true;
};

GreedyResult run_ga(const Instance& instance, const SubmodularOracle& oracle, const ChanceParams& params,
                    GreedyOptions options = {});

GreedyResult run_gga(const Instance& instance, const SubmodularOracle& oracle, const ChanceParams& params,
                     Strategy strategy, GreedyOptions options = {});

GreedyResult run_ggma(const Instance& instance, const SubmodularOracle& oracle, const ChanceParams& params,
                      Strategy strategy, GreedyOptions options = {});

}  // namespace ccsub
