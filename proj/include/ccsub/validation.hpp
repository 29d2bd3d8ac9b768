#pragma once

// Desk-scale ground truth: exhaustive optima and property checkers.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccsub/chance.hpp"
#include "ccsub/greedy.hpp"
#include "ccsub/oracle.hpp"

namespace ccsub {

inline constexpr std::size_t kBruteForceLimit = 25;

// (1/2)(1 - 1/e), asserted for both Strategy-II algorithms.
inline const double kStrategyTwoFloor = 0.5 * (1.0 - std::exp(-1.0));

struct SubsetOptimum {
  std::vector<ElementId> members;  // ascending ids
  double value = 0.0;
};

// Gamma-feasible subset maximizing f; ties go to the lexicographically
// smallest id list. Throws RefusalError when the instance has more than 25
// elements.
SubsetOptimum brute_force_surrogate_opt(const Instance& instance, const SubmodularOracle& oracle,
                                        const ChanceParams& params);

// Best subset of size min(floor(B), n), i.e. the optimum under the
// deterministic constraint |S| <= B. Linear oracles are solved by sorting at
// any size; other oracles are enumerated under the same guard as above.
SubsetOptimum brute_force_deterministic_opt(const Instance& instance, const SubmodularOracle& oracle,
                                            const ChanceParams& params);

struct PropertyFailure {
  std::string property;
  std::string witness;
};

struct AlgorithmOutcome {
  std::string algorithm;             // ga / gga / ggma
  std::optional<Strategy> strategy;  // none for ga
  std::vector<ElementId> solution;
  double objective = 0.0;
  double surrogate = 0.0;
  double ratio = 0.0;  // objective / OPT_d
};

struct ValidationReport {
  double opt_surrogate_value = 0.0;
  std::vector<ElementId> opt_surrogate_set;
  double opt_det_value = 0.0;
  std::vector<ElementId> opt_det_set;
  std::vector<AlgorithmOutcome> outcomes;
  std::vector<PropertyFailure> property_failures;

  // Throws std::out_of_range for a combination that was not run.
  const AlgorithmOutcome& outcome(std::string_view algorithm, std::optional<Strategy> strategy) const;
  bool ok() const noexcept { return property_failures.empty(); }
};

// Runs GA and GGA/GGMA under both strategies, measures each against OPT_d,
// and records a failure for any Strategy-II ratio below kStrategyTwoFloor
// or any output with Gamma > B.
ValidationReport check_theorem_bounds(const Instance& instance, const SubmodularOracle& oracle,
                                      const ChanceParams& params);

struct AxiomReport {
  std::size_t trials = 0;
  std::size_t monotonicity_violations = 0;
  std::size_t submodularity_violations = 0;
  std::size_t consistency_violations = 0;  // marginal != eval difference
  std::vector<PropertyFailure> witnesses;  // first few violations

  bool ok() const noexcept {
    return monotonicity_violations + submodularity_violations + consistency_violations == 0;
  }
};

// Samples random triples S subset of T, v outside T and checks
// f(S) <= f(T), marginal(v, S) >= marginal(v, T), and marginal/eval agreement.
AxiomReport check_oracle_axioms(const SubmodularOracle& oracle, std::size_t universe, std::size_t trials,
                                std::uint64_t seed);

}  // namespace ccsub
