#pragma once

// Data-parallel kernels. Each OpenMP kernel has a `_serial` twin kept as the
// reference implementation; tests require bit-identical results between the
// two at any thread count, and bench/ times them against each other.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ccsub/chance.hpp"

namespace ccsub {

class OracleCursor;

using NodeId = std::uint32_t;
using Arc = std::pair<NodeId, NodeId>;

// R live-edge subgraphs in CSR form (one offsets/targets pair per sample).
struct LiveEdgeSamples {
  std::size_t node_count = 0;
  std::vector<std::vector<std::uint32_t>> offsets;
  std::vector<std::vector<NodeId>> targets;

  std::size_t sample_count() const noexcept { return offsets.size(); }
  std::span<const NodeId> out(std::size_t sample, NodeId node) const {
    const auto& off = offsets[sample];
    return std::span<const NodeId>(targets[sample]).subspan(off[node], off[node + 1] - off[node]);
  }
  friend bool operator==(const LiveEdgeSamples&, const LiveEdgeSamples&) = default;
};

struct SubsetBest {
  bool found = false;
  std::uint64_t mask = 0;
  double value = 0.0;
};

using MaskPredicate = std::function<bool(std::uint64_t)>;
using MaskScore = std::function<double(std::uint64_t)>;

namespace kernels {

// Number of trials t in [0, trials) where sum_i (1 + delta_i (2u - 1)) > budget,
// with u drawn from the (seed, t, ids[i]) stream.
std::uint64_t count_violations_serial(std::span<const ElementId> ids, std::span<const double> deltas,
                                      double budget, std::uint64_t trials, std::uint64_t seed);
std::uint64_t count_violations(std::span<const ElementId> ids, std::span<const double> deltas,
                               double budget, std::uint64_t trials, std::uint64_t seed);

// Arc a is live in sample r iff stream(seed, r, a) < p.
LiveEdgeSamples sample_live_edges_serial(std::size_t node_count, std::span<const Arc> arcs, double p,
                                         std::size_t samples, std::uint64_t seed);
LiveEdgeSamples sample_live_edges(std::size_t node_count, std::span<const Arc> arcs, double p,
                                  std::size_t samples, std::uint64_t seed);

// Sum over samples of the number of nodes reachable from `sources`.
std::uint64_t reach_count_serial(const LiveEdgeSamples& live, std::span<const NodeId> sources);
std::uint64_t reach_count(const LiveEdgeSamples& live, std::span<const NodeId> sources);

// out[k] = cursor.gain(candidates[k]).
void sweep_gains_serial(const OracleCursor& cursor, std::span<const std::uint32_t> candidates,
                        std::span<double> out);
void sweep_gains(const OracleCursor& cursor, std::span<const std::uint32_t> candidates,
                 std::span<double> out);

// Best admissible mask over `bits` bits by score; ties go to the mask whose
// ascending bit list is lexicographically smallest. `popcount` restricts the
// search to masks of exactly that size. bits <= 62.
SubsetBest best_subset_serial(unsigned bits, const MaskPredicate& admissible, const MaskScore& score,
                              std::optional<unsigned> popcount = std::nullopt);
SubsetBest best_subset(unsigned bits, const MaskPredicate& admissible, const MaskScore& score,
                       std::optional<unsigned> popcount = std::nullopt);

// Lexicographic order of the ascending set-bit lists of two masks.
bool mask_lex_less(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace kernels
}  // namespace ccsub
