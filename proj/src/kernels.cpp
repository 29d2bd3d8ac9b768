#include "ccsub/kernels.hpp"

#include <omp.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "ccsub/error.hpp"
#include "ccsub/oracle.hpp"
#include "ccsub/random.hpp"

namespace ccsub::kernels {

namespace {

bool trial_violates(std::span<const ElementId> ids, std::span<const double> deltas, double budget,
                    std::uint64_t trial, std::uint64_t seed) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double u = stream_uniform(seed, StreamTag::mc_trial, trial, ids[i]);
    sum += 1.0 + deltas[i] * (2.0 * u - 1.0);
  }
  return sum > budget;
}

// Live arcs of one sample, grouped by source in arc-index order.
void build_sample(std::size_t node_count, std::span<const Arc> arcs, double p, std::uint64_t seed,
                  std::size_t sample, std::vector<std::uint32_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(node_count + 1, 0);
  std::vector<std::uint32_t> kept;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (stream_uniform(seed, StreamTag::live_edge, sample, a) < p) {
      kept.push_back(static_cast<std::uint32_t>(a));
      ++offsets[arcs[a].first + 1];
    }
  }
  for (std::size_t v = 0; v < node_count; ++v) offsets[v + 1] += offsets[v];
  targets.assign(kept.size(), 0);
  std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::uint32_t a : kept) targets[fill[arcs[a].first]++] = arcs[a].second;
}

void check_arcs(std::size_t node_count, std::span<const Arc> arcs) {
  for (const auto& [u, v] : arcs) {
    if (u >= node_count || v >= node_count) throw InputError("arc endpoint outside node range");
  }
}

// Reach size of `sources` in one sample, using a stamp array for visited marks.
std::uint64_t reach_in_sample(const LiveEdgeSamples& live, std::size_t sample, std::span<const NodeId> sources,
                              std::vector<std::uint32_t>& stamp, std::uint32_t epoch,
                              std::vector<NodeId>& stack) {
  std::uint64_t count = 0;
  stack.clear();
  for (NodeId s : sources) {
    if (stamp[s] != epoch) {
      stamp[s] = epoch;
      stack.push_back(s);
      ++count;
    }
  }
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId w : live.out(sample, u)) {
      if (stamp[w] != epoch) {
        stamp[w] = epoch;
        stack.push_back(w);
        ++count;
      }
    }
  }
  return count;
}

bool better(double value, std::uint64_t mask, const SubsetBest& best) {
  if (!best.found) return true;
  if (value != best.value) return value > best.value;
  return mask_lex_less(mask, best.mask);
}

}  // namespace

std::uint64_t count_violations_serial(std::span<const ElementId> ids, std::span<const double> deltas,
                                      double budget, std::uint64_t trials, std::uint64_t seed) {
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (trial_violates(ids, deltas, budget, t, seed)) ++hits;
  }
  return hits;
}

std::uint64_t count_violations(std::span<const ElementId> ids, std::span<const double> deltas, double budget,
                               std::uint64_t trials, std::uint64_t seed) {
  std::uint64_t hits = 0;
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (std::int64_t t = 0; t < n; ++t) {
    if (trial_violates(ids, deltas, budget, static_cast<std::uint64_t>(t), seed)) ++hits;
  }
  return hits;
}

LiveEdgeSamples sample_live_edges_serial(std::size_t node_count, std::span<const Arc> arcs, double p,
                                         std::size_t samples, std::uint64_t seed) {
  check_arcs(node_count, arcs);
  LiveEdgeSamples live;
  live.node_count = node_count;
  live.offsets.resize(samples);
  live.targets.resize(samples);
  for (std::size_t r = 0; r < samples; ++r) {
    build_sample(node_count, arcs, p, seed, r, live.offsets[r], live.targets[r]);
  }
  return live;
}

LiveEdgeSamples sample_live_edges(std::size_t node_count, std::span<const Arc> arcs, double p,
                                  std::size_t samples, std::uint64_t seed) {
  check_arcs(node_count, arcs);
  LiveEdgeSamples live;
  live.node_count = node_count;
  live.offsets.resize(samples);
  live.targets.resize(samples);
  const auto n = static_cast<std::int64_t>(samples);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < n; ++r) {
    build_sample(node_count, arcs, p, seed, static_cast<std::size_t>(r), live.offsets[r], live.targets[r]);
  }
  return live;
}

std::uint64_t reach_count_serial(const LiveEdgeSamples& live, std::span<const NodeId> sources) {
  std::vector<std::uint32_t> stamp(live.node_count, 0);
  std::vector<NodeId> stack;
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < live.sample_count(); ++r) {
    total += reach_in_sample(live, r, sources, stamp, static_cast<std::uint32_t>(r + 1), stack);
  }
  return total;
}

std::uint64_t reach_count(const LiveEdgeSamples& live, std::span<const NodeId> sources) {
  std::uint64_t total = 0;
  const auto n = static_cast<std::int64_t>(live.sample_count());
#pragma omp parallel reduction(+ : total)
  {
    std::vector<std::uint32_t> stamp(live.node_count, 0);
    std::vector<NodeId> stack;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < n; ++r) {
      total += reach_in_sample(live, static_cast<std::size_t>(r), sources, stamp,
                               static_cast<std::uint32_t>(r + 1), stack);
    }
  }
  return total;
}

void sweep_gains_serial(const OracleCursor& cursor, std::span<const std::uint32_t> candidates,
                        std::span<double> out) {
  for (std::size_t k = 0; k < candidates.size(); ++k) out[k] = cursor.gain(candidates[k]);
}

void sweep_gains(const OracleCursor& cursor, std::span<const std::uint32_t> candidates, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < n; ++k) out[k] = cursor.gain(candidates[k]);
}

bool mask_lex_less(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == b) return false;
  const int d = std::countr_zero(a ^ b);
  const std::uint64_t above = (d >= 63) ? 0 : ~((std::uint64_t{2} << d) - 1);
  if ((a >> d) & 1U) {
    // a continues with d; b continues with something larger or ends.
    return (b & above) != 0;
  }
  return (a & above) == 0;
}

SubsetBest best_subset_serial(unsigned bits, const MaskPredicate& admissible, const MaskScore& score,
                              std::optional<unsigned> popcount) {
  if (bits > 62) throw RefusalError("subset enumeration limited to 62 elements");
  SubsetBest best;
  const std::uint64_t end = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    if (popcount && static_cast<unsigned>(std::popcount(mask)) != *popcount) continue;
    if (!admissible(mask)) continue;
    const double v = score(mask);
    if (better(v, mask, best)) best = {true, mask, v};
  }
  return best;
}

SubsetBest best_subset(unsigned bits, const MaskPredicate& admissible, const MaskScore& score,
                       std::optional<unsigned> popcount) {
  if (bits > 62) throw RefusalError("subset enumeration limited to 62 elements");
  SubsetBest best;
  const auto end = static_cast<std::int64_t>(std::uint64_t{1} << bits);
#pragma omp parallel
  {
    SubsetBest local;
#pragma omp for schedule(dynamic, 4096) nowait
    for (std::int64_t m = 0; m < end; ++m) {
      const auto mask = static_cast<std::uint64_t>(m);
      if (popcount && static_cast<unsigned>(std::popcount(mask)) != *popcount) continue;
      if (!admissible(mask)) continue;
      const double v = score(mask);
      if (better(v, mask, local)) local = {true, mask, v};
    }
#pragma omp critical(ccsub_best_subset)
    {
      if (local.found && better(local.value, local.mask, best)) best = local;
    }
  }
  return best;
}

}  // namespace ccsub::kernels
