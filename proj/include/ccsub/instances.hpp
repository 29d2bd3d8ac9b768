#pragma once

// Adversarial linear families, random-dispersion instances and the
// plain-text instance format:
//
//   # comment
//   n <int>
//   B <decimal>
//   alpha <decimal>
//   elem <id> <delta> [<value>]     (n lines)
//
// Values are all present or all absent. Decimals are written with 17
// significant digits.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <utility>

#include "ccsub/chance.hpp"
#include "ccsub/oracle.hpp"

namespace ccsub {

struct LinearInstance {
  Instance instance;
  LinearOracle oracle;
};

// I1: f(S) = |S|, element 1 has delta = sqrt(gamma), every other element is
// deterministic, and alpha is tuned so that Gamma({1}) lies strictly inside
// (B - 1, B). Greedy by marginal gain picks element 1 first and then stalls.
struct I1Params {
  int budget = 5;
  double gamma = 0.9;
  std::optional<int> n;         // default budget + 1
  std::optional<double> alpha;  // default: midpoint of i1_alpha_interval
};

// Open interval of alpha values with Gamma({1}) in (B - 1, B):
// (gamma / (gamma + 3 (B-1)^2), gamma / (gamma + 3 (B-2)^2)).
std::pair<double, double> i1_alpha_interval(int budget, double gamma);

LinearInstance build_i1(const I1Params& params);

// I2: B = epsilon + 1; the first epsilon elements are worth 1 with small
// dispersion, the rest are worth epsilon with larger dispersion. Every
// epsilon-size set is surrogate-feasible and no (epsilon+1)-size set is.
struct I2Params {
  int epsilon = 5;
  std::optional<int> n;  // default 2 * epsilon
  double alpha = 0.25;
  double gamma = 0.1;
  double beta = 0.4;
};

LinearInstance build_i2(const I2Params& params);

// delta_i iid Uniform[0, 1) from the seeded stream; ids 0..n-1; no values.
Instance build_random_instance(int n, double budget, double alpha, std::uint64_t seed);

// Per-node dispersions Uniform[0, 1) for a seed (same stream as above).
std::vector<double> uniform_dispersions(std::size_t n, std::uint64_t seed);

Instance read_instance(std::istream& in);
Instance read_instance_file(const std::filesystem::path& path);
void write_instance(std::ostream& out, const Instance& instance);
void write_instance_file(const std::filesystem::path& path, const Instance& instance);

// Linear oracle over the instance values, or f(S) = |S| when it has none.
LinearOracle linear_oracle_for(const Instance& instance);

}  // namespace ccsub
