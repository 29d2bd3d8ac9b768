#pragma once

// Monotone submodular objectives over a dense ground set {0, ..., n-1}.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ccsub/kernels.hpp"

namespace ccsub {

class Graph;

// Incremental evaluator for one growing set. gain() and value_with() are
// safe to call concurrently; add() is not.
class OracleCursor {
 public:
  virtual ~OracleCursor() = default;

  virtual double value() const = 0;
  // f(S + v) - f(S); 0 when v is already in S.
  virtual double gain(std::uint32_t v) const = 0;
  // f(S + v). Implementations keep this equal to eval() of the grown set.
  virtual double value_with(std::uint32_t v) const { return value() + gain(v); }
  virtual void add(std::uint32_t v) = 0;
};

class SubmodularOracle {
 public:
  virtual ~SubmodularOracle() = default;

  virtual std::size_t ground_size() const = 0;
  // Throws InputError for indices outside the ground set.
  virtual double eval(std::span<const std::uint32_t> members) const = 0;
  virtual double marginal(std::uint32_t v, std::span<const std::uint32_t> members) const;
  virtual std::unique_ptr<OracleCursor> cursor() const = 0;
  // f({v}) for every v when the oracle has a cheaper route than one cursor
  // gain per element; nullopt otherwise.
  virtual std::optional<std::vector<double>> singleton_values() const { return std::nullopt; }

 protected:
  void check_members(std::span<const std::uint32_t> members) const;
};

// f(S) = sum of per-element coefficients.
class LinearOracle final : public SubmodularOracle {
 public:
  explicit LinearOracle(std::vector<double> values);

  std::size_t ground_size() const override { return values_.size(); }
  double eval(std::span<const std::uint32_t> members) const override;
  double marginal(std::uint32_t v, std::span<const std::uint32_t> members) const override;
  std::unique_ptr<OracleCursor> cursor() const override;

  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

// N(S) = |S united with the neighbours of S| on an undirected graph.
class CoverageOracle final : public SubmodularOracle {
 public:
  // The graph must outlive the oracle.
  explicit CoverageOracle(const Graph& graph) : graph_(&graph) {}

  std::size_t ground_size() const override;
  double eval(std::span<const std::uint32_t> members) const override;
  std::unique_ptr<OracleCursor> cursor() const override;

  std::uint64_t covered_count(std::span<const std::uint32_t> members) const;

 private:
  const Graph* graph_;
};

// Independent-cascade spread estimated on a fixed set of live-edge samples:
// f(X) = (1/R) sum_r |reach_r(X)|.
class InfluenceOracle final : public SubmodularOracle {
 public:
  explicit InfluenceOracle(LiveEdgeSamples samples);

  std::size_t ground_size() const override { return live_.node_count; }
  double eval(std::span<const std::uint32_t> members) const override;
  double marginal(std::uint32_t v, std::span<const std::uint32_t> members) const override;
  std::unique_ptr<OracleCursor> cursor() const override;
  // Computed once per sample set, via the strongly connected components of
  // each sample; nullopt when the reachability bitsets would be too large.
  std::optional<std::vector<double>> singleton_values() const override;

  const LiveEdgeSamples& samples() const noexcept { return live_; }
  std::size_t sample_count() const noexcept { return live_.sample_count(); }

 private:
  struct SingletonCache;

  LiveEdgeSamples live_;
  std::shared_ptr<SingletonCache> singletons_;
};

// Per-node reach size summed over samples, by condensation. Empty when more
// than `max_words` 64-bit words of bitsets would be needed for one sample.
std::vector<std::uint64_t> singleton_reach_counts(const LiveEdgeSamples& live,
                                                  std::size_t max_words = std::size_t{1} << 24);

// Both directions of every undirected edge; edge e yields arcs 2e (u->v) and 2e+1 (v->u).
std::vector<Arc> symmetrized_arcs(const Graph& graph);

// Throws ParameterError unless samples >= 1 and 0 <= p <= 1.
InfluenceOracle build_live_edge_samples(std::size_t node_count, std::span<const Arc> arcs, double p,
                                        std::size_t samples, std::uint64_t seed);
InfluenceOracle build_live_edge_samples(const Graph& graph, double p, std::size_t samples,
                                        std::uint64_t seed);

double coverage_eval(const CoverageOracle& oracle, std::span<const std::uint32_t> members);
double influence_eval(const InfluenceOracle& oracle, std::span<const std::uint32_t> members);

}  // namespace ccsub
